"""Singular points of the branch curve ``{P = 0}`` in P^1 x P^1.

Charts: 0 is ``(x, y)``; 1 is ``(X, y)`` with ``X = 1/x``; 2 is ``(x, Y)``
with ``Y = 1/y``; 3 is ``(X, Y)``. Each point is reported once: chart 1 only
on ``X = 0``, chart 2 only on ``Y = 0`` and chart 3 only at the origin.

Affine points are found by exact elimination over Q(i): the x-coordinates
are roots of ``gcd(Res_y(P, P_y), Res_y(P_x, P_y), Res_y(P, P_x))``; every
irreducible factor defines a number field in which the y-coordinate is a
gcd computation. Conjugate points share one record with multiplicity
equal to the field degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np
from sympy import Poly, symbols

from ..algebra import QQ_I, NumberField, NFElement, upoly_gcd, upoly_strip
from .germs import MAX_ORDER, NOT_SIMPLE, SingularityType, classify_germ
from .polynomial import BranchPolynomial

_x, _y = symbols("x y")
_SHEARS = (0, 1, -1, 2, -2, 3, -3, 5)


def chart_polynomial(p: BranchPolynomial, chart: int) -> dict:
    """Coefficients ``{(a, b): c}`` of ``P`` in the given chart."""
    out = {}
    for (i, j), c in p.items():
        a = 4 - i if chart in (1, 3) else i
        b = 4 - j if chart in (2, 3) else j
        out[(a, b)] = c
    return out


def _sym(poly: dict) -> Poly:
    return Poly.from_dict(poly, _x, _y, domain=QQ_I) if poly else Poly(0, _x, _y, domain=QQ_I)


@dataclass(frozen=True)
class SingularPoint:
    """A Galois orbit of singular points.

    ``x``, ``y`` live in ``field`` (None means Q(i)); the orbit has
    ``multiplicity = field.degree`` points.
    """

    chart: int
    field: NumberField | None
    x: object
    y: object

    @property
    def multiplicity(self) -> int:
        return 1 if self.field is None else self.field.degree

    def numeric(self) -> list[tuple[complex, complex]]:
        """Floating-point coordinates of every conjugate (display only)."""
        if self.field is None:
            return [(_c(self.x), _c(self.y))]
        mod = [complex(float(c.x), float(c.y)) for c in self.field.modulus]
        return [(_nf_num(self.x, r), _nf_num(self.y, r)) for r in np.roots(mod)]


def _c(v) -> complex:
    return complex(float(v.x), float(v.y))


def _nf_num(v, root) -> complex:
    return v.numeric(root) if isinstance(v, NFElement) else _c(v)


@dataclass(frozen=True)
class SingularityReport:
    points: tuple
    types: tuple
    non_reduced: bool = False
    notes: tuple = field(default=(), compare=False)

    @property
    def smooth(self) -> bool:
        return not self.points and not self.non_reduced

    @property
    def simple(self) -> bool:
        return not self.non_reduced and all(t.simple for t in self.types)

    @property
    def count(self) -> int:
        return sum(p.multiplicity for p in self.points)


def is_reduced(p: BranchPolynomial) -> bool:
    """No repeated component in any chart (a repeated component divides P, P_x and P_y)."""
    for chart in range(4):
        P = _sym(chart_polynomial(p, chart))
        g = P.gcd(P.diff(_x)).gcd(P.diff(_y))
        if g.total_degree() > 0:
            return False
    return True


def _shear(poly: dict, c) -> dict:
    """``P(x + c y, y)``."""
    if not c:
        return dict(poly)
    out = {}
    for (a, b), v in poly.items():
        for r in range(a + 1):
            key = (r, b + a - r)
            term = v * comb(a, r) * QQ_I(c) ** (a - r)
            out[key] = out.get(key, QQ_I(0)) + term
    return {k: v for k, v in out.items() if v}


def _specialize_x(poly: dict, xval, one) -> list:
    """Univariate polynomial in y (highest degree first) after ``x = xval``."""
    deg = max((b for _, b in poly), default=0)
    coeffs = [one * 0 for _ in range(deg + 1)]
    for (a, b), v in poly.items():
        coeffs[deg - b] = coeffs[deg - b] + v * xval**a
    return upoly_strip(coeffs)


def _squarefree(g: list) -> list:
    d = [c * (len(g) - 1 - i) for i, c in enumerate(g[:-1])]
    h = upoly_gcd(g, d)
    if len(h) <= 1:
        return g
    # exact division g / h
    q = []
    r = list(g)
    while len(r) >= len(h):
        f = r[0] / h[0]
        q.append(f)
        for i in range(len(h)):
            r[i] = r[i] - f * h[i]
        r = r[1:]
    return q


def _field_for(factor: Poly):
    coeffs = [QQ_I.convert(c) for c in factor.all_coeffs()]
    if len(coeffs) == 2:
        return None, -coeffs[1] / coeffs[0]
    K = NumberField(coeffs)
    return K, K.generator


def _affine_points(poly: dict) -> list[SingularPoint] | None:
    for c in _SHEARS:
        pts = _affine_points_sheared(poly, c)
        if pts is not None:
            return pts
    return None


def _affine_points_sheared(poly: dict, c) -> list[SingularPoint] | None:
    P = _shear(poly, c)
    SP = _sym(P)
    Px, Py = SP.diff(_x), SP.diff(_y)
    polys = [Poly(q.as_expr(), _y, _x, domain=QQ_I) for q in (SP, Px, Py)]
    g = None
    for u, v in ((0, 2), (1, 2), (0, 1)):
        if polys[u].is_zero or polys[v].is_zero:
            continue
        r = polys[u].resultant(polys[v])
        if r.is_zero:
            continue
        r = Poly(r.as_expr(), _x, domain=QQ_I)
        g = r if g is None else g.gcd(r)
    if g is None:
        return None
    if g.degree() <= 0:
        return []
    parts = [{k: v for k, v in q.as_dict(native=True).items()} for q in (SP, Px, Py)]
    parts = [{(a, b): v for (a, b), v in d.items()} for d in parts]
    out = []
    _, factors = g.factor_list()
    for h, _ in factors:
        K, alpha = _field_for(h)
        one = K.one() if K else QQ_I(1)
        common = None
        for part in parts:
            u = _specialize_x(part, alpha, one)
            common = u if common is None else upoly_gcd(common, u)
        common = upoly_strip(common)
        if len(common) <= 1:
            continue  # spurious root of the resultant
        common = _squarefree(common)
        if len(common) > 2:
            return None  # two singular points over one x: shear again
        y0 = -common[1] / common[0]
        x0 = alpha + QQ_I(c) * y0 if c else alpha
        out.append(SingularPoint(0, K, x0, y0))
    return out


def _line_points(poly: dict, chart: int) -> list[SingularPoint]:
    """Singular points on the coordinate line ``X = 0`` (chart 1) or ``Y = 0`` (chart 2)."""
    if chart == 2:
        poly = {(b, a): v for (a, b), v in poly.items()}
    P = _sym(poly)
    rest = []
    for q in (P, P.diff(_x), P.diff(_y)):
        d = {k: v for k, v in q.as_dict(native=True).items() if k[0] == 0}
        deg = max((b for _, b in d), default=0)
        coeffs = [QQ_I(0)] * (deg + 1)
        for (_, b), v in d.items():
            coeffs[deg - b] = v
        rest.append(upoly_strip(coeffs))
    common = []
    for u in rest:
        common = upoly_gcd(common, u) if common else upoly_strip(u)
    if len(common) <= 1:
        return []
    common = _squarefree(common)
    out = []
    _, factors = Poly(common, _y, domain=QQ_I).factor_list()
    for h, _ in factors:
        K, beta = _field_for(h)
        zero = K.zero() if K else QQ_I(0)
        x0, y0 = (zero, beta) if chart == 1 else (beta, zero)
        out.append(SingularPoint(chart, K, x0, y0))
    return out


def singular_locus(p: BranchPolynomial) -> SingularityReport:
    """All singular points (points only; see :func:`classify_locus` for types)."""
    if not is_reduced(p):
        return SingularityReport((), (NOT_SIMPLE,), True, ("curve has a repeated component",))
    pts = _affine_points(chart_polynomial(p, 0))
    if pts is None:
        raise RuntimeError("no shear separated the singular points")
    pts += _line_points(chart_polynomial(p, 1), 1)
    pts += _line_points(chart_polynomial(p, 2), 2)
    corner = chart_polynomial(p, 3)
    if not corner.get((0, 0)) and not corner.get((1, 0)) and not corner.get((0, 1)):
        pts.append(SingularPoint(3, None, QQ_I(0), QQ_I(0)))
    return SingularityReport(tuple(pts), ())


def local_germ(p: BranchPolynomial, pt: SingularPoint) -> dict:
    """Taylor coefficients of the chart polynomial at ``pt``."""
    poly = chart_polynomial(p, pt.chart)
    x0, y0 = pt.x, pt.y
    one = pt.field.one() if pt.field else QQ_I(1)
    out = {}
    for (a, b), v in poly.items():
        for r in range(a + 1):
            cx = v * comb(a, r) * (x0 ** (a - r) if a - r else one)
            if not cx:
                continue
            for s in range(b + 1):
                term = cx * comb(b, s) * (y0 ** (b - s) if b - s else one)
                if term:
                    out[(r, s)] = out[(r, s)] + term if (r, s) in out else term
    return {k: v for k, v in out.items() if v}


def classify_singularity(p: BranchPolynomial, pt: SingularPoint, max_order: int = MAX_ORDER) -> SingularityType:
    return classify_germ(local_germ(p, pt), max_order)


def classify_locus(p: BranchPolynomial) -> SingularityReport:
    rep = singular_locus(p)
    if rep.non_reduced:
        return rep
    types = tuple(classify_singularity(p, pt) for pt in rep.points)
    return SingularityReport(rep.points, types)


def summary(report: SingularityReport) -> dict[str, int]:
    """Counts by type, conjugates included."""
    out: dict[str, int] = {}
    if report.non_reduced:
        return {"NotSimple": 1}
    for pt, t in zip(report.points, report.types):
        out[str(t)] = out.get(str(t), 0) + pt.multiplicity
    return out


__all__ = [
    "SingularPoint",
    "SingularityReport",
    "SingularityType",
    "chart_polynomial",
    "classify_locus",
    "classify_singularity",
    "is_reduced",
    "local_germ",
    "singular_locus",
    "summary",
]
