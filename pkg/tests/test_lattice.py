from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enriques_kit import lattice as L
from enriques_kit._intmat import determinant, matmul, transpose

U = L.standard_lattice("U")
D4 = L.standard_lattice("D4neg")
E8 = L.standard_lattice("E8neg")
FOUR_MINUS_ONE = L.diag([-1, -1, -1, -1])


def gram(lat):
    return [list(r) for r in lat.gram]


def test_published_grams():
    assert gram(U) == [[0, 1], [1, 0]]
    assert gram(D4) == [[-2, 0, 0, 1], [0, -2, 0, 1], [0, 0, -2, 1], [1, 1, 1, -2]]
    assert gram(FOUR_MINUS_ONE) == [[-1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert gram(L.standard_lattice("3A1")) == [[-2, 0, 0], [0, -2, 0], [0, 0, -2]]
    assert L.standard_lattice("diag(-1,2)") == L.diag([-1, 2])


def test_unknown_name():
    with pytest.raises(L.LatticeError):
        L.standard_lattice("E9")


def test_direct_sums():
    assert L.direct_sum(U, E8).rank == 10
    minus = L.direct_sum(D4, U)
    assert minus.rank == 6
    assert L.signature(minus) == (1, 5, 0)
    assert L.direct_sum(D4, L.Lattice([])) == D4


@pytest.mark.parametrize(
    "lat, sig",
    [(U, (1, 1, 0)), (E8, (0, 8, 0)), (D4, (0, 4, 0)), (L.enriques_lattice(), (1, 9, 0)), (L.diag([0, 1]), (1, 0, 1))],
)
def test_signature(lat, sig):
    assert L.signature(lat) == sig


def test_signature_of_hyperbolic_blocks():
    # zero diagonal everywhere forces the 2x2 pivot
    lat = L.direct_sum(U, U)
    assert L.signature(lat) == (2, 2, 0)


def test_e8_sigma_mod_8():
    for lat in (E8, L.direct_sum(E8, U)):
        pos, neg, _ = L.signature(lat)
        assert (pos - neg) % 8 == 0


def test_parity():
    assert L.is_even(U)
    assert not L.is_even(FOUR_MINUS_ONE)
    assert L.is_even(D4)


def test_discriminant_groups():
    assert L.discriminant_group(U) == []
    assert L.discriminant_group(D4) == [2, 2]
    assert L.discriminant_group(L.direct_sum(E8, U)) == []
    assert L.discriminant_group(L.diag([-2, -6])) == [2, 6]


def test_discriminant_group_degenerate():
    with pytest.raises(L.DegenerateLatticeError):
        L.discriminant_group(L.diag([0, -2]))


def test_discriminant_form_of_d4():
    form = L.discriminant_form(D4)
    assert form.invariant_factors == (2, 2)
    assert form.is_even
    nonzero = [form.q_values[g] for g in form.elements() if any(g)]
    assert nonzero == [1, 1, 1]


def test_discriminant_form_of_a1():
    form = L.discriminant_form(L.standard_lattice("A1"))
    assert form.invariant_factors == (2,)
    assert form.q_values[(1,)] == Fraction(3, 2)  # -1/2 mod 2
    assert not form.is_even


def test_discriminant_form_of_unimodular():
    form = L.discriminant_form(U)
    assert form.order == 1 and form.is_even


def test_discriminant_form_needs_even():
    with pytest.raises(L.OddLatticeError):
        L.discriminant_form(FOUR_MINUS_ONE)


@pytest.mark.parametrize("lat", [D4, L.standard_lattice("A1"), L.diag([-2, -6]), L.direct_sum(D4, L.diag([-4])), U])
def test_discriminant_form_polarization(lat):
    form = L.discriminant_form(lat)
    assert form.order <= 16
    for x in form.elements():
        for y in form.elements():
            lhs = form.q_values[form.add(x, y)] - form.q_values[x] - form.q_values[y]
            assert (lhs - 2 * form.b_values[(x, y)]) % 2 == 0


def test_orthogonal_complements():
    assert L.orthogonal_complement([(1, 0)], U) == [(1, 0)]
    assert L.orthogonal_complement([], U) == [(1, 0), (0, 1)]
    lat = L.direct_sum(D4, U)
    d4_block = [lat.basis_vector(i) for i in range(4)]
    comp = L.orthogonal_complement(d4_block, lat)
    assert lat.sublattice(comp).gram == U.gram


def test_reflection_examples():
    lat = L.direct_sum(U, L.standard_lattice("A1"))
    x, r = (1, 0, 1), (0, 0, 1)
    y = L.reflect_root(lat, r, x)
    assert y == (1, 0, -1)
    assert lat.norm(y) == lat.norm(x)
    assert L.reflect_root(lat, r, r) == (0, 0, -1)
    assert L.reflect_root(lat, r, (1, 1, 0)) == (1, 1, 0)


def test_reflection_rejects_non_roots():
    with pytest.raises(L.LatticeError):
        L.reflect_root(U, (1, 1), (1, 0))


def test_primitivity():
    assert L.is_primitive((1,) + (0,) * 9)
    assert not L.is_primitive((2, 4))
    assert L.is_primitive((2, 1))


def test_max_even_sublattice():
    sub, basis = L.max_even_sublattice(U)
    assert sub == U
    sub, basis = L.max_even_sublattice(FOUR_MINUS_ONE)
    assert L.is_even(sub) and sub.det() == 4
    assert abs(determinant([list(b) for b in basis])) == 2
    sub, basis = L.max_even_sublattice(L.diag([-1]))
    assert gram(sub) == [[-4]] and basis == [(2,)]


def test_isometry_examples():
    iso = L.isometry_search(D4, D4)
    assert iso is not None and _is_isometry(iso, D4, D4)
    sub, _ = L.max_even_sublattice(FOUR_MINUS_ONE)
    iso = L.isometry_search(sub, D4)
    assert iso is not None and _is_isometry(iso, sub, D4)
    other = L.diag([-2, -2, -2, -2])
    assert L.isometry_search(D4, other) is None
    assert D4.det() != other.det()


def test_isometry_none_with_equal_determinant():
    # same rank and determinant, distinguished by the count of minimal vectors
    a = L.direct_sum(L.standard_lattice("A1"), L.diag([-8]))
    b = L.diag([-4, -4])
    assert a.det() == b.det()
    assert L.isometry_search(a, b) is None
    assert len(L.vectors_of_norm(a, -2)) != len(L.vectors_of_norm(b, -2))


def test_isometry_needs_definite():
    with pytest.raises(L.IndefiniteLatticeError):
        L.isometry_search(U, U)


def test_vector_counts():
    assert len(L.vectors_of_norm(E8, -2)) == 240
    assert len(L.vectors_of_norm(D4, -2)) == 24


def _is_isometry(iso, a, b):
    M = [list(r) for r in iso.matrix]
    return matmul(matmul(transpose(M), gram(b)), M) == gram(a)


# --------------------------------------------------------------------------
# properties

small = st.integers(-6, 6)
vec10 = st.lists(small, min_size=10, max_size=10)


@st.composite
def e8_roots(draw):
    roots = L.vectors_of_norm(E8, -2)
    return (0, 0) + roots[draw(st.integers(0, len(roots) - 1))]


@settings(max_examples=60, deadline=None)
@given(x=vec10, y=vec10, r=e8_roots())
def test_reflection_preserves_form(x, y, r):
    lat = L.enriques_lattice()
    assert lat.dot(L.reflect_root(lat, r, x), L.reflect_root(lat, r, y)) == lat.dot(x, y)


@st.composite
def symmetric_lattices(draw):
    n = draw(st.integers(1, 4))
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = draw(st.integers(-4, 4))
    return L.Lattice(g)


@settings(max_examples=80, deadline=None)
@given(lat=symmetric_lattices())
def test_signature_sums_to_rank(lat):
    assert sum(L.signature(lat)) == lat.rank


@settings(max_examples=80, deadline=None)
@given(lat=symmetric_lattices())
def test_group_order_is_det(lat):
    if lat.det() == 0:
        return
    order = 1
    for d in L.discriminant_group(lat):
        order *= d
    assert order == abs(lat.det())


@settings(max_examples=40, deadline=None)
@given(diag=st.lists(st.sampled_from([-1, -2, -3, -5]), min_size=1, max_size=4))
def test_max_even_has_index_two(diag):
    lat = L.diag(diag)
    sub, _ = L.max_even_sublattice(lat)
    assert L.is_even(sub)
    if not L.is_even(lat):
        assert sub.det() == 4 * lat.det()
