import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enriques_kit import quadric as Q
from enriques_kit.algebra import gauss
from enriques_kit.quadric import SWAP, Topology

T, S2, E = Topology.TORUS, Topology.SPHERE, Topology.EMPTY
U_FORM = ((0, 1), (1, 0))


def test_canonical_involutions():
    s = Q.canonical_involution("s")
    assert s.matrix == Q.conjugation_matrix([[-1, 0], [0, 1]]) and not s.antiholomorphic
    assert Q.canonical_involution("c_b").matrix == Q.conjugation_matrix([[0, 1], [1, 0]])
    scb = Q.canonical_involution("s_c_b")
    assert scb.matrix == Q.conjugation_matrix([[0, -1], [1, 0]]) and scb.antiholomorphic
    with pytest.raises(Q.ActionError):
        Q.canonical_involution("c_z")


def test_s_composed_with_c_b():
    s, cb = Q.canonical_involution("s"), Q.canonical_involution("c_b")
    assert s.compose(cb) == Q.canonical_involution("s_c_b")


def test_fixed_sets():
    fs = Q.fixed_set(Q.canonical_involution("s"))
    assert fs.kind == "TwoPoints"
    assert {(str(u), str(v)) for u, v in fs.points} == {("1", "0"), ("0", "2")}
    assert Q.fixed_set(Q.canonical_involution("c_a")).kind == "Circle"
    assert Q.fixed_set(Q.canonical_involution("c_b")).kind == "Circle"
    assert Q.fixed_set(Q.canonical_involution("s_c_b")).kind == "Empty"


def test_fixed_points_of_s_are_fixed():
    s = Q.canonical_involution("s")
    for p in Q.fixed_set(s).points:
        assert s.fixes(p)
    assert not s.fixes((1, 1))


def test_holomorphic_fixed_points_with_irrational_roots():
    f = Q.P1Involution(((0, 2), (1, 0)), False)  # z -> 2/z, fixed at +-sqrt(2)
    fs = Q.fixed_set(f)
    assert fs.kind == "TwoPoints" and fs.points == ()


def test_not_an_involution():
    with pytest.raises(Q.ActionError):
        Q.P1Involution(((1, 1), (0, 1)), False)


def test_action_must_commute_with_s():
    c = Q.P1Involution(((1, 1), (1, -1)), True)
    with pytest.raises(Q.NotAnAction):
        Q.QuadricAction.product(c, "c_a")


EXPECTED = {
    1: ((T, T), (2, 2)),
    2: ((T, E), (2, 0)),
    3: ((T, E), (0, 0)),
    4: ((E, E), (0, 0)),
    5: ((S2, S2), (SWAP,)),
}


@pytest.mark.parametrize("type_id", range(1, 6))
def test_canonical_table(type_id):
    report = Q.classify_action(Q.canonical_action(type_id))
    assert report.type_id == type_id
    assert (report.halves, report.fibers) == EXPECTED[type_id]


def test_table_examples():
    assert Q.classify_action(Q.QuadricAction.product("c_a", "c_a")).halves == (T, T)
    assert Q.classify_action(Q.QuadricAction.product("c_b", "c_b")).type_id == 3
    five = Q.classify_action(Q.canonical_action(5))
    assert five.s_real_fixed == 2


def test_half_topology_examples():
    assert Q.half_topology(Q.QuadricAction.product("c_a", "c_a"), 1) is T
    assert Q.half_topology(Q.QuadricAction.product("c_b", "s_c_b"), 1) is E
    assert Q.half_topology(Q.canonical_action(5), 1) is S2


def test_invariant_fibers_examples():
    assert Q.invariant_fibers(Q.canonical_action(1), 1) == 2
    assert Q.invariant_fibers(Q.canonical_action(4), 1) == 0
    assert Q.invariant_fibers(Q.canonical_action(4), 2) == 0
    assert Q.invariant_fibers(Q.canonical_action(5), 1) == SWAP


def _preserves_u(m):
    mt = [[m[j][i] for j in range(2)] for i in range(2)]
    prod = [[sum(mt[i][k] * U_FORM[k][l] * m[l][j] for k in range(2) for l in range(2)) for j in range(2)] for i in range(2)]
    return prod == [list(r) for r in U_FORM]


def test_h2_action():
    for t in range(1, 5):
        h2 = Q.induced_h2_action(Q.canonical_action(t))
        assert h2 == ((-1, 0), (0, -1)) and _preserves_u(h2)
    h2 = Q.induced_h2_action(Q.canonical_action(5))
    assert h2 == ((0, -1), (-1, 0)) and _preserves_u(h2)


def test_exactly_five_types():
    names = ("c_a", "c_b", "s_c_b")
    ids = {Q.classify_action(Q.QuadricAction.product(a, b)).type_id for a in names for b in names}
    ids.add(Q.classify_action(Q.canonical_action(5)).type_id)
    assert ids == {1, 2, 3, 4, 5}


def test_group_elements():
    for t in range(1, 6):
        a = Q.canonical_action(t)
        assert len(Q.s_fixed_points()) == 4
        if a.decomposable:
            for f in (a.f1, a.f2, a.s_composed().f1, a.s_composed().f2):
                assert f.antiholomorphic


def test_sigma2():
    one = Q.classify_sigma2_action(Q.canonical_sigma2_action(1))
    two = Q.classify_sigma2_action(Q.canonical_sigma2_action(2))
    assert (one.type_id, one.halves, one.fibers) == (1, (T, T), (2,))
    assert (two.type_id, two.halves, two.fibers) == (2, (T, E), (0,))
    assert one.surface == two.surface == "Sigma2"


def test_sigma2_rejections():
    with pytest.raises(Q.NotReducible):
        Q.classify_sigma2_action(Q.Sigma2Action(Q.canonical_action(3), 1, "0"))
    with pytest.raises(Q.NotReducible):
        Q.classify_sigma2_action(Q.Sigma2Action(Q.canonical_action(5), 1, "0"))
    with pytest.raises(Q.NotReducible):
        Q.classify_sigma2_action(Q.Sigma2Action(Q.canonical_action(1), 3, "0"))


def test_sigma2_marked_fiber_must_be_invariant():
    # ruling 2 of type 2 carries c_b, which swaps 0 and infinity
    with pytest.raises(Q.NotReducible):
        Q.classify_sigma2_action(Q.Sigma2Action(Q.canonical_action(2), 2, "0"))


# --------------------------------------------------------------------------
# properties

nonzero = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(lambda z: z != (0, 0))


def _diag(z, w):
    return ((gauss(*z), 0), (0, gauss(*w)))


@settings(max_examples=60, deadline=None)
@given(t=st.integers(1, 5), a=nonzero, b=nonzero, c=nonzero, d=nonzero, swap=st.booleans())
def test_conjugation_invariance(t, a, b, c, d, swap):
    act = Q.canonical_action(t)
    moved = act.conjugated(_diag(a, b), _diag(c, d))
    if swap:
        moved = moved.factors_swapped()
    assert Q.classify_action(moved).type_id == t


@pytest.mark.parametrize("type_id", range(1, 6))
def test_c_and_s_c_symmetry(type_id):
    act = Q.canonical_action(type_id)
    assert Q.classify_action(act.s_composed()).type_id == type_id
