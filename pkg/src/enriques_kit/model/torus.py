"""Certified sign of a branch polynomial on the real torus ``{|x| = 1} x RP^1``.

With ``x = e^{i theta}`` and ``y = tan(phi)`` the restriction is the real
function ``f = Re[e^{-2 i theta} sum a[i,j] e^{i i theta} sin^j cos^{4-j}]``.
Half-angle tangents make it polynomial:
``theta = 2 atan(t)`` (chart ``+1``) or ``pi + 2 atan(t)`` (chart ``-1``),
``phi = 2 atan(u)``, with ``t, u`` in ``[-1, 1]``. The chart polynomial

    F(t, u) = f * (1 + t^2)^2 * (1 + u^2)^4

has integer coefficients after clearing denominators and the same sign as
``f``. Boxes are dyadic squares of ``[-1, 1]^2``; on each one a centred
Taylor expansion gives an exact lower bound for ``|F|``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from ..algebra import QQ_I
from .polynomial import BranchPolynomial

CHARTS = (1, -1)
DEFAULT_BUDGET = 20000


def _mul_poly(a, b):
    out = [QQ_I(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _t_factor(i: int):
    """Coefficients (low degree first) of ``(1 + i t)^i (1 - i t)^(4 - i)``."""
    p = [QQ_I(1)]
    for _ in range(i):
        p = _mul_poly(p, [QQ_I(1), QQ_I(0, 1)])
    for _ in range(4 - i):
        p = _mul_poly(p, [QQ_I(1), QQ_I(0, -1)])
    return p


def _u_factor(j: int) -> list[int]:
    """Coefficients of ``(2u)^j (1 - u^2)^(4 - j)``."""
    out = [0] * 9
    for k in range(4 - j + 1):
        out[j + 2 * k] = (2**j) * comb(4 - j, k) * (-1) ** k
    return out


_T = [_t_factor(i) for i in range(5)]
_U = [_u_factor(j) for j in range(5)]


class ImaginaryResidue(AssertionError):
    """The torus restriction has a nonzero imaginary part (reality bug)."""


@dataclass(frozen=True)
class ChartPolynomial:
    """``F(t, u) = sum coeffs[m][n] t^m u^n / denominator`` (denominator > 0)."""

    chart: int
    coeffs: tuple[tuple[int, ...], ...]
    denominator: int

    def value(self, t: Fraction, u: Fraction) -> Fraction:
        total = Fraction(0)
        for m, row in enumerate(self.coeffs):
            for n, c in enumerate(row):
                if c:
                    total += c * Fraction(t) ** m * Fraction(u) ** n
        return total / self.denominator


@dataclass(frozen=True)
class TorusRestriction:
    """Real trigonometric polynomial ``f(theta, phi)`` and its two tangent charts.

    ``terms`` lists ``(k, j, A, B)`` meaning ``(A cos(k theta) + B sin(k theta)) sin^j cos^(4-j)``
    with exact rational ``A``, ``B`` and ``k >= 0``.
    """

    terms: tuple
    charts: dict = field(compare=False)

    def __call__(self, theta: float, phi: float) -> float:
        s, c = math.sin(phi), math.cos(phi)
        return sum(
            (float(a) * math.cos(k * theta) + float(b) * math.sin(k * theta)) * s**j * c ** (4 - j)
            for k, j, a, b in self.terms
        )

    def chart(self, eps: int) -> ChartPolynomial:
        return self.charts[eps]


def torus_restriction(p: BranchPolynomial) -> TorusRestriction:
    terms = []
    for (i, j), a in p.items():
        k = i - 2
        if k > 0:
            continue  # paired with 4 - i
        if k == 0:
            if a.y:
                raise ImaginaryResidue(f"a[2,{j}] is not real")
            terms.append((0, j, Fraction(int(a.x.numerator), int(a.x.denominator)), Fraction(0)))
        else:
            if p[(4 - i, j)] != QQ_I(a.x, -a.y):
                raise ImaginaryResidue(f"a[{4 - i},{j}] is not conj(a[{i},{j}])")
            re = Fraction(int(a.x.numerator), int(a.x.denominator))
            im = Fraction(int(a.y.numerator), int(a.y.denominator))
            # a e^{ik theta} + conj(a) e^{-ik theta} with k < 0
            terms.append((-k, j, 2 * re, 2 * im))
    return TorusRestriction(tuple(sorted(terms)), {eps: _chart_polynomial(p, eps) for eps in CHARTS})


def _chart_polynomial(p: BranchPolynomial, eps: int) -> ChartPolynomial:
    re = [[Fraction(0)] * 9 for _ in range(5)]
    im = [[Fraction(0)] * 9 for _ in range(5)]
    for (i, j), a in p.items():
        a = a if eps == 1 or i % 2 == 0 else -a
        for m, tc in enumerate(_T[i]):
            z = a * tc
            if not z:
                continue
            zr = Fraction(int(z.x.numerator), int(z.x.denominator))
            zi = Fraction(int(z.y.numerator), int(z.y.denominator))
            for n, uc in enumerate(_U[j]):
                if uc:
                    re[m][n] += zr * uc
                    im[m][n] += zi * uc
    if any(v for row in im for v in row):
        raise ImaginaryResidue("chart polynomial has a nonzero imaginary part")
    den = math.lcm(*(v.denominator for row in re for v in row))
    coeffs = tuple(tuple(int(v * den) for v in row) for row in re)
    return ChartPolynomial(eps, coeffs, den)


# --------------------------------------------------------------------------
# boxes


@dataclass(frozen=True, order=True)
class Box:
    """Dyadic square: chart, depth ``d``, and cell indices ``0 <= it, iu < 2^d``."""

    chart: int
    depth: int
    it: int
    iu: int

    def t_interval(self) -> tuple[Fraction, Fraction]:
        return _cell(self.depth, self.it)

    def u_interval(self) -> tuple[Fraction, Fraction]:
        return _cell(self.depth, self.iu)

    def theta_interval(self) -> tuple[float, float]:
        """Floating-point angles, for display only."""
        lo, hi = self.t_interval()
        off = 0.0 if self.chart == 1 else math.pi
        return (off + 2 * math.atan(lo), off + 2 * math.atan(hi))

    def phi_interval(self) -> tuple[float, float]:
        lo, hi = self.u_interval()
        return (2 * math.atan(lo), 2 * math.atan(hi))

    def children(self):
        d = self.depth + 1
        return [Box(self.chart, d, 2 * self.it + a, 2 * self.iu + b) for a in (0, 1) for b in (0, 1)]


def _cell(depth: int, index: int) -> tuple[Fraction, Fraction]:
    w = Fraction(2, 2**depth)
    return (-1 + index * w, -1 + (index + 1) * w)


def _shift(degree: int, k: int, d: int) -> list[list[int]]:
    """Rows ``m``: coefficients in ``a`` of ``(k + a)^m * 2^(d (degree - m))``."""
    rows = []
    for m in range(degree + 1):
        scale = 2 ** (d * (degree - m))
        rows.append([comb(m, r) * k ** (m - r) * scale for r in range(m + 1)] + [0] * (degree - m))
    return rows


def box_expansion(chart: ChartPolynomial, box: Box) -> list[list[int]]:
    """Integer coefficients ``G[a][b]`` with ``G(a, b) = 2^(12 d) * den * F(t, u)`` where
    ``t = t_c + a r``, ``u = u_c + b r`` and ``a, b`` range over ``[-1, 1]``.
    """
    d = box.depth
    kt = 2 * box.it + 1 - 2**d
    ku = 2 * box.iu + 1 - 2**d
    A = _shift(4, kt, d)
    B = _shift(8, ku, d)
    C = chart.coeffs
    # G = A^T C B
    CB = [[sum(C[m][n] * B[n][b] for n in range(9) if C[m][n]) for b in range(9)] for m in range(5)]
    return [[sum(A[m][a] * CB[m][b] for m in range(5)) for b in range(9)] for a in range(5)]


def box_bound(chart: ChartPolynomial, box: Box) -> tuple[Fraction, list[list[int]]]:
    """Exact lower bound of ``|F|`` on the box (may be <= 0) and the expansion."""
    G = box_expansion(chart, box)
    tail = sum(abs(v) for a, row in enumerate(G) for b, v in enumerate(row) if a or b)
    scaled = abs(G[0][0]) - tail
    return Fraction(scaled, 2 ** (12 * box.depth) * chart.denominator), G


# --------------------------------------------------------------------------
# outcomes


@dataclass(frozen=True)
class WitnessPoint:
    chart: int
    t: Fraction
    u: Fraction
    value: Fraction

    def angles(self) -> tuple[float, float]:
        off = 0.0 if self.chart == 1 else math.pi
        return (off + 2 * math.atan(self.t), 2 * math.atan(self.u))


@dataclass(frozen=True)
class TorusCertificate:
    sign: int
    boxes: tuple  # (Box, Fraction lower bound) sorted by box
    depth: int
    charts: dict = field(compare=False, repr=False)

    @property
    def box_count(self) -> int:
        return len(self.boxes)


@dataclass(frozen=True)
class HasZero:
    """``kind`` is ``"exact_zero"`` (one point) or ``"sign_change"`` (two points)."""

    kind: str
    points: tuple


@dataclass(frozen=True)
class BudgetExhausted:
    budget: int
    open_boxes: int


def _corner_values(G):
    out = []
    for sa in (-1, 1):
        for sb in (-1, 1):
            out.append(((sa, sb), sum(v * sa**a * sb**b for a, row in enumerate(G) for b, v in enumerate(row))))
    return out


def _point(chart: ChartPolynomial, box: Box, sa: int, sb: int, scaled: int) -> WitnessPoint:
    r = Fraction(1, 2**box.depth)
    tlo, thi = box.t_interval()
    ulo, uhi = box.u_interval()
    t = (tlo + thi) / 2 + sa * r
    u = (ulo + uhi) / 2 + sb * r
    return WitnessPoint(chart.chart, t, u, Fraction(scaled, 2 ** (12 * box.depth) * chart.denominator))


def certify_sign(p: BranchPolynomial, budget: int = DEFAULT_BUDGET):
    """Branch and bound over both charts.

    Returns a :class:`TorusCertificate`, a :class:`HasZero` witness, or
    :class:`BudgetExhausted` after ``budget`` box evaluations.
    """
    tr = torus_restriction(p)
    queue = deque(Box(eps, 0, 0, 0) for eps in CHARTS)
    leaves = []
    signs: dict[int, WitnessPoint] = {}
    processed = 0
    while queue:
        if processed >= budget:
            return BudgetExhausted(budget, len(queue))
        box = queue.popleft()
        chart = tr.chart(box.chart)
        processed += 1
        bound, G = box_bound(chart, box)
        samples = [((0, 0), G[0][0])] + _corner_values(G)
        for (sa, sb), v in samples:
            if v == 0:
                return HasZero("exact_zero", (_point(chart, box, sa, sb, 0),))
            sgn = 1 if v > 0 else -1
            if sgn not in signs:
                signs[sgn] = _point(chart, box, sa, sb, v)
                if -sgn in signs:
                    return HasZero("sign_change", (signs[1], signs[-1]))
        if bound > 0:
            leaves.append((box, bound))
        else:
            queue.extend(box.children())
    (sign,) = signs
    leaves.sort()
    depth = max(b.depth for b, _ in leaves)
    return TorusCertificate(sign, tuple(leaves), depth, tr.charts)


def audit_certificate(p: BranchPolynomial, cert: TorusCertificate) -> bool:
    """Independent replay: boxes tile both charts and every stored bound is reproduced."""
    tr = torus_restriction(p)
    for eps in CHARTS:
        boxes = sorted(b for b, _ in cert.boxes if b.chart == eps)
        if sum(Fraction(1, 4**b.depth) for b in boxes) != 1:
            return False
        cells = set()
        for b in boxes:
            if not (0 <= b.it < 2**b.depth and 0 <= b.iu < 2**b.depth):
                return False
            cells.add((b.depth, b.it, b.iu))
        # tiling: no box contains another (sum of areas then forces a partition)
        for d, it, iu in cells:
            for up in range(1, d + 1):
                if (d - up, it >> up, iu >> up) in cells:
                    return False
        if len(cells) != len(boxes):
            return False
    for box, stored in cert.boxes:
        chart = tr.chart(box.chart)
        bound, G = box_bound(chart, box)
        if stored <= 0 or bound < stored:
            return False
        if (1 if G[0][0] > 0 else -1) != cert.sign:
            return False
    return True


PLUS = "PlusExposition"
MINUS = "MinusExposition"


def exposition_sign(p: BranchPolynomial, cert: TorusCertificate) -> str:
    """Label of the exposition with empty real part: the certified sign of ``f``."""
    if not isinstance(cert, TorusCertificate):
        raise TypeError("exposition_sign needs a torus certificate")
    return PLUS if cert.sign > 0 else MINUS
