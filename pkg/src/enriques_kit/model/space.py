"""Membership in the model space M0, sampling, and certified paths."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..algebra import rat
from .polynomial import (
    BranchPolynomial,
    center_polynomial,
    corners_nonzero,
    from_parameters,
    real_parameters,
)
from .singular import SingularityReport, classify_locus
from .torus import DEFAULT_BUDGET, BudgetExhausted, HasZero, TorusCertificate, certify_sign, exposition_sign


class ModelSpaceError(ValueError):
    pass


class RejectionLimitExceeded(ModelSpaceError):
    pass


class OppositeSigns(ModelSpaceError):
    pass


class NotCertified(ModelSpaceError):
    pass


class PathRepairFailed(ModelSpaceError):
    def __init__(self, t: Fraction, failure):
        super().__init__(f"sample t = {t} could not be repaired ({failure})")
        self.t = t
        self.failure = failure


@dataclass(frozen=True)
class M0Certificate:
    torus: TorusCertificate
    corners_nonzero: bool
    singularities: SingularityReport

    @property
    def valid(self) -> bool:
        return self.torus is not None and self.corners_nonzero and self.singularities.simple

    @property
    def sign(self) -> int:
        return self.torus.sign


@dataclass(frozen=True)
class M0Failure:
    """The first clause that failed; ``inconclusive`` marks budget or order limits."""

    clause: str  # "corners" | "sign" | "singularities"
    detail: object
    inconclusive: bool = False

    valid = False

    def __str__(self):
        kind = "inconclusive" if self.inconclusive else "rejected"
        return f"{kind} on {self.clause}: {self.detail}"


def is_in_M0(p: BranchPolynomial, budget: int = DEFAULT_BUDGET) -> M0Certificate | M0Failure:
    """Check the corner, sign and singularity clauses in that order."""
    missing = corners_nonzero(p)
    if missing:
        return M0Failure("corners", f"vanishing corner coefficients {missing}")
    torus = certify_sign(p, budget)
    if isinstance(torus, HasZero):
        return M0Failure("sign", torus)
    if isinstance(torus, BudgetExhausted):
        return M0Failure("sign", torus, inconclusive=True)
    sing = classify_locus(p)
    if not sing.simple:
        unknown = not sing.non_reduced and all(t.simple or t.family == "Unknown" for t in sing.types)
        return M0Failure("singularities", sing, inconclusive=unknown)
    return M0Certificate(torus, True, sing)


def _parameters_of(p: BranchPolynomial) -> list[Fraction]:
    out = []
    for (ij, part) in real_parameters():
        v = p[ij]
        q = v.x if part == "re" else v.y
        out.append(Fraction(int(q.numerator), int(q.denominator)))
    return out


def random_direction(rng, scale: Fraction) -> list[Fraction]:
    """Admissible perturbation: integer numerators in [-100, 100] times ``scale / 100``."""
    ints = rng.integers(-100, 101, size=len(real_parameters()))
    return [Fraction(int(k)) * scale / 100 for k in ints]


def perturb(p: BranchPolynomial, delta) -> BranchPolynomial:
    return from_parameters([a + b for a, b in zip(_parameters_of(p), delta)])


def sample_M0(seed: int, radius=Fraction(1, 4), budget: int = DEFAULT_BUDGET, max_tries: int = 200) -> BranchPolynomial:
    """Seeded perturbation of the center polynomial, resampled until it lies in M0."""
    radius = Fraction(str(rat(radius)))
    center = center_polynomial()
    if radius == 0:
        return center
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        p = perturb(center, random_direction(rng, radius))
        if is_in_M0(p, budget).valid:
            return p
    raise RejectionLimitExceeded(f"no sample in M0 after {max_tries} draws (seed {seed}, radius {radius})")


def certified_sample(seed: int, radius=Fraction(1, 4), budget: int = DEFAULT_BUDGET) -> tuple[BranchPolynomial, M0Certificate]:
    p = sample_M0(seed, radius, budget)
    return p, is_in_M0(p, budget)


def segment_point(p0: BranchPolynomial, p1: BranchPolynomial, t: Fraction) -> BranchPolynomial:
    t = Fraction(t)
    if t == 0:
        return p0
    if t == 1:
        return p1
    a, b = 1 - t, t
    # (1 - t) p0 + t p1 may vanish only if p1 = -c p0, excluded by equal signs
    return p0.scale(a) + p1.scale(b)


@dataclass(frozen=True)
class PathPoint:
    t: Fraction
    polynomial: BranchPolynomial
    certificate: M0Certificate
    repairs: int

    @property
    def repaired(self) -> bool:
        return self.repairs > 0


@dataclass(frozen=True)
class PathCertificate:
    points: tuple

    @property
    def repaired_count(self) -> int:
        return sum(1 for pt in self.points if pt.repaired)

    @property
    def valid(self) -> bool:
        return all(pt.certificate.valid for pt in self.points)


def _certify_sample(args):
    p0, p1, t, seed, budget, retries, mu = args
    p = segment_point(p0, p1, t)
    cert = is_in_M0(p, budget)
    if cert.valid:
        return PathPoint(t, p, cert, 0)
    rng = np.random.default_rng([seed, t.numerator, t.denominator])
    for attempt in range(1, retries + 1):
        q = perturb(p, random_direction(rng, mu))
        c = is_in_M0(q, budget)
        if c.valid and c.sign == cert_sign_hint(p0):
            return PathPoint(t, q, c, attempt)
    raise PathRepairFailed(t, cert)


def cert_sign_hint(p0: BranchPolynomial) -> int:
    c = certify_sign(p0)
    return c.sign if isinstance(c, TorusCertificate) else 0


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("ENRIQUES_KIT_THREADS", "1")))
    except ValueError:
        return 1


def connect_path(
    p0: BranchPolynomial,
    p1: BranchPolynomial,
    samples: int = 33,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    retries: int = 6,
    mu=Fraction(1, 1000),
    workers: int | None = None,
) -> PathCertificate:
    """Certify ``(1 - t) p0 + t p1`` at ``samples`` equispaced rational ``t``.

    A failing sample is replaced by a small seeded perturbation of it
    (codimension-two defects are avoided generically), at most ``retries``
    times. Endpoints must be certified with the same sign.
    """
    if samples < 2:
        raise ValueError("a path needs at least two samples")
    c0, c1 = is_in_M0(p0, budget), is_in_M0(p1, budget)
    if not c0.valid or not c1.valid:
        raise NotCertified("both endpoints must be certified members of M0")
    if exposition_sign(p0, c0.torus) != exposition_sign(p1, c1.torus):
        raise OppositeSigns("endpoints restrict to the torus with opposite signs; negate one")
    ts = [Fraction(k, samples - 1) for k in range(samples)]
    jobs = [(p0, p1, t, seed, budget, retries, Fraction(mu)) for t in ts[1:-1]]
    workers = workers or thread_count()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            middle = list(pool.map(_certify_sample, jobs))
    else:
        middle = [_certify_sample(j) for j in jobs]
    points = [PathPoint(ts[0], p0, c0, 0), *middle, PathPoint(ts[-1], p1, c1, 0)]
    return PathCertificate(tuple(points))
