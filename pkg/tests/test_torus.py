import cmath
import math
import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from enriques_kit.model import polynomial as P
from enriques_kit.model import torus as T
from enriques_kit.model.space import perturb, random_direction

import numpy as np

X2 = P.monomials({"x^2": 1})
X2_BAND = P.monomials({"x^2": 1, "x^2 y^4": 1})
CORNER_ONLY = P.monomials({"1": 1, "y^4": 1, "x^4": 1, "x^4 y^4": 1})


def direct_f(p, theta, phi):
    """Definition-level evaluation: Re(e^{-2 i theta} P(e^{i theta}, tan phi) cos^4 phi)."""
    x = cmath.exp(1j * theta)
    s, c = math.sin(phi), math.cos(phi)
    total = 0
    for (i, j), a in p.items():
        total += complex(float(a.x), float(a.y)) * x**i * s**j * c ** (4 - j)
    return (cmath.exp(-2j * theta) * total).real


def grid():
    rng = random.Random(0)
    return [(rng.uniform(0, 2 * math.pi), rng.uniform(-math.pi / 2, math.pi / 2)) for _ in range(40)]


def test_restriction_examples():
    f = T.torus_restriction(X2)
    g = T.torus_restriction(CORNER_ONLY)
    for th, ph in grid():
        assert math.isclose(f(th, ph), math.cos(ph) ** 4, abs_tol=1e-12)
        want = 2 * math.cos(2 * th) * (math.cos(ph) ** 4 + math.sin(ph) ** 4)
        assert math.isclose(g(th, ph), want, abs_tol=1e-12)


def test_restriction_matches_definition():
    p = P.validate({(0, 0): (1, 2), (4, 0): (1, -2), (1, 1): (0, 3), (3, 1): (0, -3), (2, 2): -1, (0, 4): 2, (4, 4): 2})
    f = T.torus_restriction(p)
    for th, ph in grid():
        assert math.isclose(f(th, ph), direct_f(p, th, ph), abs_tol=1e-9)


def test_center_value():
    f = T.torus_restriction(P.center_polynomial())
    assert math.isclose(f(0, math.pi / 4), 5 / 8)


def test_chart_polynomial_has_the_sign_of_f():
    p = P.center_polynomial()
    tr = T.torus_restriction(p)
    for eps in T.CHARTS:
        chart = tr.chart(eps)
        for t in (Fraction(-1), Fraction(-1, 3), Fraction(0), Fraction(1, 2), Fraction(1)):
            for u in (Fraction(-1), Fraction(1, 5), Fraction(1)):
                theta = 2 * math.atan(t) + (0 if eps == 1 else math.pi)
                phi = 2 * math.atan(u)
                scale = (1 + t * t) ** 2 * (1 + u * u) ** 4
                assert math.isclose(float(chart.value(t, u)), tr(theta, phi) * float(scale), rel_tol=1e-9)


def test_positive_certificate():
    cert = T.certify_sign(X2_BAND)
    assert isinstance(cert, T.TorusCertificate) and cert.sign == 1
    assert T.audit_certificate(X2_BAND, cert)


def test_zero_on_a_circle():
    res = T.certify_sign(X2)
    assert isinstance(res, T.HasZero)
    (w,) = res.points
    assert w.value == 0
    _, phi = w.angles()
    assert math.isclose(abs(phi), math.pi / 2)


def test_sign_change():
    res = T.certify_sign(CORNER_ONLY)
    assert isinstance(res, T.HasZero) and res.kind == "sign_change"
    a, b = res.points
    assert a.value * b.value < 0


def test_negation_flips_sign_only():
    p = P.center_polynomial()
    a, b = T.certify_sign(p), T.certify_sign(-p)
    assert (a.sign, b.sign) == (1, -1)
    assert [box for box, _ in a.boxes] == [box for box, _ in b.boxes]
    assert T.audit_certificate(-p, b)


def test_budget():
    res = T.certify_sign(P.center_polynomial(), budget=5)
    assert isinstance(res, T.BudgetExhausted) and res.budget == 5


def test_audit_rejects_tampering():
    p = P.center_polynomial()
    cert = T.certify_sign(p)
    (box, bound), *rest = cert.boxes
    inflated = T.TorusCertificate(cert.sign, ((box, bound * 10**6), *rest), cert.depth, cert.charts)
    assert not T.audit_certificate(p, inflated)
    missing = T.TorusCertificate(cert.sign, tuple(rest), cert.depth, cert.charts)
    assert not T.audit_certificate(p, missing)
    assert not T.audit_certificate(-p, cert)


def test_exposition_sign():
    p = P.center_polynomial()
    assert T.exposition_sign(p, T.certify_sign(p)) == T.PLUS
    assert T.exposition_sign(-p, T.certify_sign(-p)) == T.MINUS
    q = p.scale(Fraction(3, 2))
    assert T.exposition_sign(q, T.certify_sign(q)) == T.PLUS


@settings(max_examples=20, deadline=None)
@given(k=st.fractions(min_value=Fraction(1, 100), max_value=100))
def test_exposition_sign_is_scale_invariant(k):
    p = P.center_polynomial().scale(k)
    assert T.exposition_sign(p, T.certify_sign(p)) == T.PLUS


def _positive_sample(seed):
    rng = np.random.default_rng(seed)
    while True:
        p = perturb(P.center_polynomial(), random_direction(rng, Fraction(1, 4)))
        cert = T.certify_sign(p)
        if isinstance(cert, T.TorusCertificate) and cert.sign == 1:
            return p


@settings(max_examples=12, deadline=None)
@given(s0=st.integers(0, 10**6), s1=st.integers(0, 10**6), t=st.fractions(min_value=0, max_value=1, max_denominator=64))
def test_convexity(s0, s1, t):
    p0, p1 = _positive_sample(s0), _positive_sample(s1)
    p = p0.scale(1 - t) + p1.scale(t) if 0 < t < 1 else (p0 if t == 0 else p1)
    res = T.certify_sign(p)
    assert not isinstance(res, T.HasZero)


@settings(max_examples=30, deadline=None)
@given(values=st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=7), min_size=13, max_size=13))
def test_restriction_is_real(values):
    if not any(values):
        return
    p = P.from_parameters(values)
    tr = T.torus_restriction(p)  # raises ImaginaryResidue on a reality bug
    th, ph = 0.7, 0.3
    assert math.isclose(tr(th, ph), direct_f(p, th, ph), abs_tol=1e-9)
