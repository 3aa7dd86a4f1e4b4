"""(Z/2)^2-actions on the quadric P^1 x P^1 and on Sigma_2.

The holomorphic involution is always ``s(x, y) = (-x, -y)``, i.e.
``diag(-1, 1)`` on both factors. An action is fixed by its anti-holomorphic
generator ``c``: either a product ``f1 x f2`` of real structures on the
factors, or a factor-swapping map ``(p, q) -> (A q-bar, B p-bar)``.
Everything is exact over Q(i).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import QQ_I, conj, gauss

Matrix2 = tuple[tuple, tuple]


class ActionError(ValueError):
    pass


class NotAnAction(ActionError):
    pass


class NotReducible(ActionError):
    pass


class Topology(str, enum.Enum):
    TORUS = "torus"
    SPHERE = "sphere"
    EMPTY = "empty"


SWAP = "swap"


def _m(rows) -> Matrix2:
    return tuple(tuple(gauss(v) if not isinstance(v, type(QQ_I(0))) else v for v in row) for row in rows)


def _mul(a: Matrix2, b: Matrix2) -> Matrix2:
    return tuple(tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2))


def _conj(a: Matrix2) -> Matrix2:
    return tuple(tuple(conj(v) for v in row) for row in a)


def _det(a: Matrix2):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def _scalar_of(a: Matrix2):
    """``lam`` if ``a == lam * I``, else None."""
    if a[0][1] or a[1][0] or a[0][0] != a[1][1]:
        return None
    return a[0][0]


def _proportional(a: Matrix2, b: Matrix2) -> bool:
    """Projective equality of two invertible matrices."""
    ea = [a[0][0], a[0][1], a[1][0], a[1][1]]
    eb = [b[0][0], b[0][1], b[1][0], b[1][1]]
    k = next(i for i in range(4) if eb[i])
    return all(x * eb[k] == y * ea[k] for x, y in zip(ea, eb))


@dataclass(frozen=True)
class P1Involution:
    """``z -> M z`` or, when ``antiholomorphic``, ``z -> M z-bar`` on P^1."""

    matrix: Matrix2
    antiholomorphic: bool

    def __post_init__(self):
        object.__setattr__(self, "matrix", _m(self.matrix))
        if not _det(self.matrix):
            raise ActionError("involution matrix is singular")
        if self.square_scalar() is None:
            raise ActionError("matrix does not define an involution")

    def square_scalar(self):
        """``lam`` with ``M M = lam I`` (or ``M conj(M) = lam I``), else None."""
        sq = _mul(self.matrix, _conj(self.matrix) if self.antiholomorphic else self.matrix)
        return _scalar_of(sq)

    def apply(self, point):
        u, v = point
        if self.antiholomorphic:
            u, v = conj(u), conj(v)
        (a, b), (c, d) = self.matrix
        return (a * u + b * v, c * u + d * v)

    def fixes(self, point) -> bool:
        u, v = (gauss(x) for x in point)
        pu, pv = self.apply((u, v))
        return pu * v == pv * u

    def compose(self, other: "P1Involution") -> "P1Involution":
        """``self o other``; the result is anti-holomorphic iff exactly one factor is."""
        b = _conj(other.matrix) if self.antiholomorphic else other.matrix
        return P1Involution(_mul(self.matrix, b), self.antiholomorphic != other.antiholomorphic)


_CANONICAL = {
    "s": (((-1, 0), (0, 1)), False),
    "c_a": (((1, 0), (0, 1)), True),
    "c_b": (((0, 1), (1, 0)), True),
    "s_c_b": (((0, -1), (1, 0)), True),
}


def canonical_involution(name: str) -> P1Involution:
    if name not in _CANONICAL:
        raise ActionError(f"unknown involution {name!r}; expected one of {sorted(_CANONICAL)}")
    m, anti = _CANONICAL[name]
    return P1Involution(m, anti)


S = canonical_involution("s")


@dataclass(frozen=True)
class FixedSet:
    kind: str  # "TwoPoints" | "Circle" | "Empty" | "AllOfP1"
    points: tuple = ()
    equation: tuple = ()

    def __str__(self):
        return self.kind


def _gauss_sqrt(a):
    """Square root in Q(i), or None."""
    from fractions import Fraction
    from math import isqrt

    def qsqrt(q: Fraction):
        if q < 0:
            return None
        n, d = q.numerator, q.denominator
        rn, rd = isqrt(n), isqrt(d)
        return Fraction(rn, rd) if rn * rn == n and rd * rd == d else None

    x = Fraction(int(a.x.numerator), int(a.x.denominator))
    y = Fraction(int(a.y.numerator), int(a.y.denominator))
    r = qsqrt(x * x + y * y)
    if r is None:
        return None
    p = qsqrt((x + r) / 2)
    if p is None:
        return None
    if p == 0:
        q = qsqrt(-x)
        return None if q is None else gauss(0, q)
    return gauss(p, y / (2 * p))


def fixed_set(f: P1Involution) -> FixedSet:
    lam = f.square_scalar()
    if f.antiholomorphic:
        # M conj(M) = lam I forces lam real; the sign decides the conjugacy class
        return FixedSet("Circle") if lam.x > 0 else FixedSet("Empty")
    (a, b), (c, d) = f.matrix
    if not b and not c and a == d:
        return FixedSet("AllOfP1")
    # fixed points solve c u^2 + (d - a) u v - b v^2 = 0
    eq = (c, d - a, -b)
    if not c:
        return FixedSet("TwoPoints", ((QQ_I(1), QQ_I(0)), (b, d - a)), eq)
    disc = (d - a) ** 2 + 4 * b * c
    r = _gauss_sqrt(disc)
    if r is None:
        return FixedSet("TwoPoints", (), eq)
    two_c = 2 * c
    return FixedSet("TwoPoints", ((a - d + r, two_c), (a - d - r, two_c)), eq)


# --------------------------------------------------------------------------
# actions on the quadric

_ZERO = (QQ_I(0), QQ_I(1))
_INF = (QQ_I(1), QQ_I(0))


@dataclass(frozen=True)
class QuadricAction:
    """Decomposable ``c = f1 x f2`` or indecomposable ``c(p, q) = (A q-bar, B p-bar)``."""

    kind: str
    f1: P1Involution | None = None
    f2: P1Involution | None = None
    a: Matrix2 | None = None
    b: Matrix2 | None = None

    def __post_init__(self):
        if self.kind == "decomposable":
            for f in (self.f1, self.f2):
                if f is None or not f.antiholomorphic:
                    raise NotAnAction("both factors of c must be anti-holomorphic involutions")
                if not _proportional(_mul(f.matrix, S.matrix), _mul(S.matrix, f.matrix)):
                    raise NotAnAction("c does not commute with s")
        elif self.kind == "indecomposable":
            a, b = _m(self.a), _m(self.b)
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
            if not _det(a) or not _det(b):
                raise NotAnAction("singular matrix in c")
            if _scalar_of(_mul(a, _conj(b))) is None or _scalar_of(_mul(b, _conj(a))) is None:
                raise NotAnAction("c is not an involution")
            for m in (a, b):
                if not _proportional(_mul(m, S.matrix), _mul(S.matrix, m)):
                    raise NotAnAction("c does not commute with s")
        else:
            raise NotAnAction(f"unknown action kind {self.kind!r}")

    @property
    def decomposable(self) -> bool:
        return self.kind == "decomposable"

    @classmethod
    def product(cls, f1, f2) -> "QuadricAction":
        f1 = canonical_involution(f1) if isinstance(f1, str) else f1
        f2 = canonical_involution(f2) if isinstance(f2, str) else f2
        return cls("decomposable", f1=f1, f2=f2)

    @classmethod
    def swapping(cls, a, b) -> "QuadricAction":
        return cls("indecomposable", a=a, b=b)

    def apply_c(self, p, q):
        if self.decomposable:
            return self.f1.apply(p), self.f2.apply(q)
        return _apply_anti(self.a, q), _apply_anti(self.b, p)

    def s_composed(self) -> "QuadricAction":
        """The action with ``c`` replaced by ``s o c``."""
        if self.decomposable:
            return QuadricAction.product(S.compose(self.f1), S.compose(self.f2))
        return QuadricAction.swapping(_mul(S.matrix, self.a), _mul(S.matrix, self.b))

    def conjugated(self, d1: Matrix2, d2: Matrix2) -> "QuadricAction":
        """Conjugate by the holomorphic automorphism ``(p, q) -> (D1 p, D2 q)``."""
        d1, d2 = _m(d1), _m(d2)
        if self.decomposable:
            g1 = _conj_by(d1, self.f1.matrix)
            g2 = _conj_by(d2, self.f2.matrix)
            return QuadricAction.product(P1Involution(g1, True), P1Involution(g2, True))
        a = _mul(_mul(d1, self.a), _inv(_conj(d2)))
        b = _mul(_mul(d2, self.b), _inv(_conj(d1)))
        return QuadricAction.swapping(a, b)

    def factors_swapped(self) -> "QuadricAction":
        if self.decomposable:
            return QuadricAction.product(self.f2, self.f1)
        return QuadricAction.swapping(self.b, self.a)


def _apply_anti(m: Matrix2, point):
    u, v = conj(point[0]), conj(point[1])
    return (m[0][0] * u + m[0][1] * v, m[1][0] * u + m[1][1] * v)


def _inv(m: Matrix2) -> Matrix2:
    d = _det(m)
    return ((m[1][1] / d, -m[0][1] / d), (-m[1][0] / d, m[0][0] / d))


def _conj_by(d: Matrix2, m: Matrix2) -> Matrix2:
    return _mul(_mul(d, m), _inv(_conj(d)))


def _same_point(p, q) -> bool:
    return p[0] * q[1] == p[1] * q[0]


def s_fixed_points():
    """The four isolated fixed points of ``s``."""
    return [(p, q) for p in (_ZERO, _INF) for q in (_ZERO, _INF)]


def half_topology(a: QuadricAction, i: int) -> Topology:
    """Real part of ``c`` (half 1) or of ``s o c`` (half 2)."""
    if i not in (1, 2):
        raise ValueError("half index must be 1 or 2")
    act = a if i == 1 else a.s_composed()
    if not act.decomposable:
        # the fixed set is the graph of q -> A q-bar, always a sphere
        return Topology.SPHERE
    kinds = (fixed_set(act.f1).kind, fixed_set(act.f2).kind)
    return Topology.TORUS if kinds == ("Circle", "Circle") else Topology.EMPTY


def invariant_fibers(a: QuadricAction, ruling: int):
    """Fibers over the fixed points of ``s`` on the base that ``c`` also fixes."""
    if ruling not in (1, 2):
        raise ValueError("ruling must be 1 or 2")
    if not a.decomposable:
        return SWAP
    f = a.f1 if ruling == 1 else a.f2
    return sum(1 for b in (_ZERO, _INF) if _same_point(f.apply(b), b))


def induced_h2_action(a: QuadricAction) -> tuple[tuple[int, int], tuple[int, int]]:
    if a.decomposable:
        return ((-1, 0), (0, -1))
    return ((0, -1), (-1, 0))


def s_real_fixed_points(a: QuadricAction) -> int:
    return sum(1 for p, q in s_fixed_points() if all(_same_point(x, y) for x, y in zip(a.apply_c(p, q), (p, q))))


@dataclass(frozen=True)
class ActionReport:
    type_id: int
    halves: tuple[Topology, Topology]
    fibers: tuple
    h2: tuple[tuple[int, int], tuple[int, int]]
    decomposable: bool
    surface: str = "P1xP1"
    s_real_fixed: int | None = field(default=None)

    def row(self) -> str:
        halves = " / ".join("empty" if h is Topology.EMPTY else h.value for h in self.halves)
        fib = "rulings swapped" if self.fibers == (SWAP,) else " + ".join(map(str, self.fibers))
        return f"type {self.type_id}: halves {halves}; invariant fibers {fib}"


# (sorted halves, sorted fiber counts, decomposable) -> type
_SIGNATURES = {
    (("torus", "torus"), (2, 2), True): 1,
    (("empty", "torus"), (0, 2), True): 2,
    (("empty", "torus"), (0, 0), True): 3,
    (("empty", "empty"), (0, 0), True): 4,
    (("sphere", "sphere"), (SWAP,), False): 5,
}


def canonical_action(type_id: int) -> QuadricAction:
    pairs = {1: ("c_a", "c_a"), 2: ("c_a", "c_b"), 3: ("c_b", "c_b"), 4: ("c_b", "s_c_b")}
    if type_id in pairs:
        return QuadricAction.product(*pairs[type_id])
    if type_id == 5:
        one = ((1, 0), (0, 1))
        return QuadricAction.swapping(one, one)
    raise ActionError(f"no canonical action of type {type_id}")


def classify_action(a: QuadricAction) -> ActionReport:
    halves = (half_topology(a, 1), half_topology(a, 2))
    if a.decomposable:
        fibers = (invariant_fibers(a, 1), invariant_fibers(a, 2))
        key_fibers = tuple(sorted(fibers))
    else:
        fibers = key_fibers = (SWAP,)
    key = (tuple(sorted(h.value for h in halves)), key_fibers, a.decomposable)
    if key not in _SIGNATURES:
        raise NotAnAction(f"invariants {key} match no row of the classification")
    return ActionReport(
        _SIGNATURES[key], halves, fibers, induced_h2_action(a), a.decomposable, "P1xP1", s_real_fixed_points(a)
    )


TABLE = {t: classify_action(canonical_action(t)) for t in range(1, 6)}


# --------------------------------------------------------------------------
# Sigma_2 via its blown-down quadric model


@dataclass(frozen=True)
class Sigma2Action:
    """Action on Sigma_2 given by the quadric action obtained by blowing up the
    two fixed points of ``s`` off the exceptional section and contracting,
    plus the invariant fiber that the section maps to.

    ``marked_ruling`` is the ruling containing that fiber and
    ``marked_point`` its base point (``"0"`` or ``"inf"``).
    """

    reduced: QuadricAction
    marked_ruling: int
    marked_point: str


def classify_sigma2_action(a: Sigma2Action) -> ActionReport:
    if a.marked_ruling not in (1, 2) or a.marked_point not in ("0", "inf"):
        raise NotReducible("marked fiber must lie in ruling 1 or 2 over 0 or inf")
    red = a.reduced
    if not red.decomposable:
        raise NotReducible("the blown-down action must preserve both rulings")
    f = red.f1 if a.marked_ruling == 1 else red.f2
    b = _ZERO if a.marked_point == "0" else _INF
    if not _same_point(f.apply(b), b):
        raise NotReducible("the marked fiber is not invariant")
    base = classify_action(red)
    if base.type_id not in (1, 2):
        raise NotReducible(f"blown-down action has type {base.type_id}, which has no invariant fiber")
    generatrices = invariant_fibers(red, 3 - a.marked_ruling)
    type_id = 1 if generatrices == 2 else 2
    return ActionReport(type_id, base.halves, (generatrices,), base.h2, True, "Sigma2", base.s_real_fixed)


def canonical_sigma2_action(type_id: int) -> Sigma2Action:
    if type_id == 1:
        return Sigma2Action(canonical_action(1), 1, "0")
    if type_id == 2:
        return Sigma2Action(canonical_action(2), 1, "0")
    raise ActionError(f"no canonical Sigma_2 action of type {type_id}")


SIGMA2_TABLE = {t: classify_sigma2_action(canonical_sigma2_action(t)) for t in (1, 2)}


def conjugation_matrix(entries: Sequence) -> Matrix2:
    return _m(entries)
