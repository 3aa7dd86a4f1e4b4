from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from enriques_kit.algebra import QQ_I, gauss
from enriques_kit.model import germs, milnor
from enriques_kit.model import polynomial as P
from enriques_kit.model import singular as S
from enriques_kit.model.germs import NOT_SIMPLE, SingularityType


def germ(spec):
    return {k: QQ_I(v) for k, v in spec.items()}


# --------------------------------------------------------------------------
# germ classifier

MODELS = [
    ("A1", {(2, 0): 1, (0, 2): 1}),
    ("A1", {(1, 1): 1}),
    ("A2", {(2, 0): 1, (0, 3): 1}),
    ("A5", {(2, 0): 1, (0, 6): 1}),
    ("A8", {(2, 0): 1, (0, 9): 1}),
    ("A3", {(2, 0): 1, (1, 2): 2, (0, 4): 2}),  # (x + y^2)^2 + y^4
    ("D4", {(3, 0): 1, (0, 3): 1}),
    ("D4", {(2, 1): 1, (0, 3): -1}),
    ("D5", {(2, 1): 1, (0, 4): 1}),
    ("D7", {(2, 1): 1, (0, 6): 1}),
    ("E6", {(3, 0): 1, (0, 4): 1}),
    ("E7", {(3, 0): 1, (1, 3): 1}),
    ("E8", {(3, 0): 1, (0, 5): 1}),
]


@pytest.mark.parametrize("label, spec", MODELS)
def test_local_models(label, spec):
    g = germ(spec)
    t = germs.classify_germ(g)
    assert str(t) == label
    assert milnor.milnor_number(g) == t.milnor


def test_not_simple():
    assert germs.classify_germ(germ({(4, 0): 1, (0, 4): 1})) == NOT_SIMPLE
    assert germs.classify_germ(germ({(2, 2): 1})) == NOT_SIMPLE
    assert germs.classify_germ(germ({(3, 0): 1, (0, 6): 1})) == NOT_SIMPLE  # J10
    assert germs.classify_germ(germ({(2, 0): 1})) == SingularityType("Unknown")


def test_not_singular():
    with pytest.raises(germs.NotASingularPoint):
        germs.classify_germ(germ({(0, 0): 1, (2, 0): 1}))
    with pytest.raises(germs.NotASingularPoint):
        germs.classify_germ(germ({(1, 0): 1, (0, 2): 1}))


def test_milnor_of_non_isolated():
    assert milnor.milnor_number(germ({(2, 0): 1})) is None


def test_parse_type():
    for label in ("A3", "D6", "E8", "NotSimple", "Unknown"):
        assert str(germs.parse_type(label)) == label


coef = st.tuples(st.integers(-3, 3), st.integers(-2, 2))
LOW = [(label, spec) for label, spec in MODELS if germs.parse_type(label).milnor <= 7]


@settings(max_examples=25, deadline=None)
@given(
    idx=st.integers(0, len(LOW) - 1),
    a=coef,
    b=coef,
    c=coef,
    d=coef,
    noise=st.lists(coef, min_size=3, max_size=3),
)
def test_classifier_against_milnor_oracle(idx, a, b, c, d, noise):
    label, spec = LOW[idx]
    a, b, c, d = (gauss(*v) for v in (a, b, c, d))
    if not a * d - b * c:
        return
    g = germs.linear_change(germ(spec), (a, b), (c, d), 12)
    # terms past mu + 1 cannot change a simple type
    k = germs.parse_type(label).milnor + 2
    for key, v in zip(((k, 0), (k - 1, 1), (1, k)), noise):
        g[key] = g.get(key, QQ_I(0)) + gauss(*v)
    g = {key: v for key, v in g.items() if v}
    t = germs.classify_germ(g)
    assert str(t) == label
    assert milnor.milnor_number(g) == t.milnor


# --------------------------------------------------------------------------
# curves


def test_center_is_smooth():
    rep = S.classify_locus(P.center_polynomial())
    assert rep.smooth and rep.simple and rep.count == 0


def test_without_the_middle_term():
    # x^2 (1 + y^4) + (1 + y^4 + x^4 + x^4 y^4) / 10 has sixteen nodes
    tenth = Fraction(1, 10)
    p = P.validate({(2, 0): 1, (2, 4): 1, (0, 0): tenth, (0, 4): tenth, (4, 0): tenth, (4, 4): tenth})
    rep = S.classify_locus(p)
    assert S.summary(rep) == {"A1": 16}
    assert rep.simple


def test_double_lines():
    rep = S.classify_locus(P.monomials({"x^2 y^2": 1}))
    assert rep.non_reduced and not rep.simple
    assert S.summary(rep) == {"NotSimple": 1}


def test_reducedness():
    assert S.is_reduced(P.center_polynomial())
    assert not S.is_reduced(P.monomials({"x^2 y^2": 1}))


def test_points_at_infinity():
    # no x^4 y^4, x^3 y^4, x^4 y^3 terms: chart 3 vanishes to order two at the origin
    p = P.validate({(2, 0): 1, (2, 4): 1, (4, 0): 1, (0, 0): 1, (2, 2): 3})
    rep = S.classify_locus(p)
    assert 3 in {pt.chart for pt in rep.points}


def _parameter_basis():
    n = len(P.real_parameters())
    return [P.from_parameters([Fraction(int(i == k)) for i in range(n)]) for k in range(n)]


def _value(p, x, y, dx=0, dy=0):
    total = QQ_I(0)
    for (i, j), a in p.items():
        if i < dx or j < dy:
            continue
        ci = sympy.ff(i, dx)
        cj = sympy.ff(j, dy)
        total += a * int(ci) * int(cj) * QQ_I(x) ** (i - dx) * QQ_I(y) ** (j - dy)
    return total


def constructed_node(x0, y0, weights):
    """Solve P = P_x = P_y = 0 at (x0, y0) inside the 13-parameter family."""
    basis = _parameter_basis()
    rows = []
    for dx, dy in ((0, 0), (1, 0), (0, 1)):
        vals = [_value(b, x0, y0, dx, dy) for b in basis]
        rows.append([sympy.Rational(int(v.x.numerator), int(v.x.denominator)) for v in vals])
        rows.append([sympy.Rational(int(v.y.numerator), int(v.y.denominator)) for v in vals])
    kernel = sympy.Matrix(rows).nullspace()
    combo = sum((w * k for w, k in zip(weights, kernel)), sympy.zeros(len(basis), 1))
    values = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in combo]
    return P.from_parameters(values), len(kernel)


def test_constructed_node():
    p, dim = constructed_node(2, 3, [1, -2, 3, 1, 2, -1, 5])
    assert dim == 7
    rep = S.classify_locus(p)
    expected = {(2, 3), (-2, -3), (Fraction(1, 2), 3), (Fraction(-1, 2), -3)}
    found = set()
    for pt in rep.points:
        assert pt.chart == 0 and pt.field is None
        found.add((Fraction(str(pt.x.x)), Fraction(str(pt.y.x))))
        assert pt.x.y == 0 and pt.y.y == 0
    assert found == expected
    assert S.summary(rep) == {"A1": 4}


def test_singular_point_numeric():
    p, _ = constructed_node(2, 3, [1, -2, 3, 1, 2, -1, 5])
    rep = S.singular_locus(p)
    coords = sorted((round(x.real, 9), round(y.real, 9)) for pt in rep.points for x, y in pt.numeric())
    assert coords == [(-2.0, -3.0), (-0.5, -3.0), (0.5, 3.0), (2.0, 3.0)]


def test_conjugate_orbits():
    # the sixteen nodes above come in Galois orbits; multiplicities add up
    tenth = Fraction(1, 10)
    p = P.validate({(2, 0): 1, (2, 4): 1, (0, 0): tenth, (0, 4): tenth, (4, 0): tenth, (4, 4): tenth})
    rep = S.singular_locus(p)
    assert rep.count == 16
    assert any(pt.multiplicity > 1 for pt in rep.points)
    assert all(len(pt.numeric()) == pt.multiplicity for pt in rep.points)
