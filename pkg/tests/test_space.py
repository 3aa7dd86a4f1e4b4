from fractions import Fraction

import pytest

from enriques_kit.model import polynomial as P
from enriques_kit.model import space as M
from enriques_kit.model import torus as T

BAND = P.monomials({"x^2": 1, "x^2 y^4": 1})
CORNERS = P.monomials({"1": 1, "y^4": 1, "x^4": 1, "x^4 y^4": 1})


def test_center_is_a_member():
    cert = M.is_in_M0(P.center_polynomial())
    assert cert.valid and cert.sign == 1
    assert cert.singularities.smooth


def test_corner_clause_comes_first():
    res = M.is_in_M0(BAND)
    assert not res.valid and res.clause == "corners" and not res.inconclusive
    assert str(res).startswith("rejected on corners")


def test_sign_clause():
    res = M.is_in_M0(CORNERS)
    assert res.clause == "sign" and isinstance(res.detail, T.HasZero)


def test_budget_makes_it_inconclusive():
    res = M.is_in_M0(P.center_polynomial(), budget=3)
    assert res.clause == "sign" and res.inconclusive
    assert str(res).startswith("inconclusive")


def test_singularity_clause():
    tenth = Fraction(1, 10)
    nodal = P.validate({(2, 0): 1, (2, 4): 1, (0, 0): tenth, (0, 4): tenth, (4, 0): tenth, (4, 4): tenth})
    res = M.is_in_M0(nodal)
    # sixteen nodes are simple, so the curve is still a member
    assert res.valid and len(res.singularities.points) > 0


def test_sampling_is_seeded():
    a = M.sample_M0(42, Fraction(1, 10))
    assert a == M.sample_M0(42, Fraction(1, 10))
    assert a != M.sample_M0(43, Fraction(1, 10))
    assert M.is_in_M0(a).valid


def test_zero_radius_is_the_center():
    assert M.sample_M0(5, 0) == P.center_polynomial()


def test_perturbation_stays_in_the_family():
    import numpy as np

    d = M.random_direction(np.random.default_rng(0), Fraction(1, 4))
    assert len(d) == 13 and all(abs(v) <= Fraction(1, 4) for v in d)
    q = M.perturb(P.center_polynomial(), d)
    assert P.validate(dict(q.items())) == q


def test_constant_path():
    p = P.center_polynomial()
    path = M.connect_path(p, p, samples=5)
    assert path.valid and len(path.points) == 5 and path.repaired_count == 0
    assert [pt.t for pt in path.points] == [Fraction(k, 4) for k in range(5)]


def test_short_path():
    p0 = P.center_polynomial()
    p1 = M.sample_M0(3, Fraction(1, 10))
    path = M.connect_path(p0, p1, samples=5, seed=1)
    assert path.valid
    assert path.points[0].polynomial == p0 and path.points[-1].polynomial == p1


def test_opposite_signs():
    p = P.center_polynomial()
    with pytest.raises(M.OppositeSigns):
        M.connect_path(p, -p)


def test_uncertified_endpoint():
    with pytest.raises(M.NotCertified):
        M.connect_path(P.center_polynomial(), BAND)


def test_too_few_samples():
    p = P.center_polynomial()
    with pytest.raises(ValueError):
        M.connect_path(p, p, samples=1)


def test_thread_count(monkeypatch):
    monkeypatch.delenv("ENRIQUES_KIT_THREADS", raising=False)
    assert M.thread_count() == 1
    monkeypatch.setenv("ENRIQUES_KIT_THREADS", "4")
    assert M.thread_count() == 4
    monkeypatch.setenv("ENRIQUES_KIT_THREADS", "many")
    assert M.thread_count() == 1


def test_parallel_path_matches_serial():
    p0 = P.center_polynomial()
    p1 = M.sample_M0(3, Fraction(1, 10))
    a = M.connect_path(p0, p1, samples=5, seed=1, workers=1)
    b = M.connect_path(p0, p1, samples=5, seed=1, workers=2)
    assert [pt.polynomial for pt in a.points] == [pt.polynomial for pt in b.points]
