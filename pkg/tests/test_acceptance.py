"""Acceptance criteria AC-1 .. AC-12, each run at its stated runtime bound."""

import pytest

from enriques_kit import acceptance as A
from enriques_kit import lattice as L

from .conftest import ACCEPTANCE_LINES

IDS = [f"AC-{k}" for k in range(1, 13)]


@pytest.mark.parametrize("claim", IDS)
def test_criterion(claim):
    entry = A.run_check(claim)
    ACCEPTANCE_LINES.append(entry.line())
    print(entry.line())
    assert entry.status == A.VERIFIED, entry.detail
    if entry.bound_s is not None:
        assert entry.runtime_ms <= entry.bound_s * 1000


def test_every_criterion_is_registered_once():
    assert list(A.CHECKS) == IDS


def _corrupted_d4():
    gram = [list(row) for row in L.standard_lattice("D4neg").gram]
    gram[0][3] = gram[3][0] = 0
    return L.Lattice(gram)


def test_corrupted_d4_fails_ac1():
    report = A.verify_paper(["AC-1", "AC-2"], fixtures={"D4neg": _corrupted_d4()})
    assert [e.status for e in report.entries] == [A.FAILED, A.FAILED]
    assert not report.ok
    assert "isometric to D4" in report.entries[0].detail


def test_only_filters():
    seen = []
    report = A.verify_paper(["AC-8"], on_entry=seen.append)
    assert [e.claim for e in report.entries] == ["AC-8"] and seen == report.entries
    assert report.to_json()["ok"]


def test_unknown_id():
    with pytest.raises(KeyError):
        A.verify_paper(["AC-13"])


def test_crash_becomes_a_failed_entry():
    entry = A.run_check("AC-1", fixtures={"D4neg": "not a lattice"})
    assert entry.status == A.FAILED


@pytest.mark.parametrize("claim", ["AC-6", "AC-7", "AC-11"])
def test_seeded_checks_are_deterministic(claim):
    assert A.run_check(claim).detail == A.run_check(claim).detail
