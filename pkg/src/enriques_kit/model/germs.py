"""ADE classification of plane curve germs ``f(x, y) = 0`` at the origin.

A germ is a dict ``{(a, b): c}`` over any exact field (Gaussian rationals or
:class:`~enriques_kit.algebra.NFElement`). The classifier normalizes jets by
explicit coordinate changes and reads the type off the first surviving
coefficient; nothing is approximated. Analysis stops at order
:data:`MAX_ORDER` and answers ``Unknown`` beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

MAX_ORDER = 16

Germ = dict


class NotASingularPoint(ValueError):
    pass


@dataclass(frozen=True)
class SingularityType:
    family: str  # "A", "D", "E", "NotSimple", "Unknown"
    k: int = 0

    @property
    def simple(self) -> bool:
        return self.family in ("A", "D", "E")

    @property
    def milnor(self) -> int | None:
        return self.k if self.simple else None

    def __str__(self):
        return f"{self.family}{self.k}" if self.simple else self.family


NOT_SIMPLE = SingularityType("NotSimple")
UNKNOWN = SingularityType("Unknown")


def parse_type(label: str) -> SingularityType:
    if label in ("NotSimple", "Unknown"):
        return SingularityType(label)
    return SingularityType(label[0], int(label[1:]))


# --------------------------------------------------------------------------
# truncated bivariate arithmetic


def _clean(f: Germ, limit: int) -> Germ:
    return {k: v for k, v in f.items() if v and k[0] + k[1] <= limit}


def _mul(f: Germ, g: Germ, limit: int) -> Germ:
    out: Germ = {}
    for (a, b), u in f.items():
        for (c, d), v in g.items():
            if a + b + c + d <= limit:
                key = (a + c, b + d)
                out[key] = out[key] + u * v if key in out else u * v
    return {k: v for k, v in out.items() if v}


def _add_into(acc: Germ, g: Germ, scale=None):
    for k, v in g.items():
        v = v if scale is None else v * scale
        acc[k] = acc[k] + v if k in acc else v


def shift_x(f: Germ, lam, k: int, limit: int) -> Germ:
    """Substitute ``x -> x + lam * y^k``."""
    out: Germ = {}
    for (a, b), c in f.items():
        p = None
        for r in range(a + 1):
            # binom(a, r) x^r (lam y^k)^(a - r)
            e = a - r
            deg = r + b + k * e
            if deg > limit:
                continue
            p = lam**e if e else None
            term = c * comb(a, r) * p if p is not None else c * comb(a, r)
            key = (r, b + k * e)
            out[key] = out[key] + term if key in out else term
    return _clean(out, limit)


def shift_y(f: Germ, lam, k: int, limit: int) -> Germ:
    """Substitute ``y -> y + lam * x^k``."""
    swapped = {(b, a): c for (a, b), c in f.items()}
    return {(b, a): c for (a, b), c in shift_x(swapped, lam, k, limit).items()}


def linear_change(f: Germ, xs, ys, limit: int) -> Germ:
    """Substitute ``x -> xs[0] x + xs[1] y`` and ``y -> ys[0] x + ys[1] y``."""
    X = {k: v for k, v in {(1, 0): xs[0], (0, 1): xs[1]}.items() if v}
    Y = {k: v for k, v in {(1, 0): ys[0], (0, 1): ys[1]}.items() if v}
    maxa = max((a for a, _ in f), default=0)
    maxb = max((b for _, b in f), default=0)
    one = next(iter(f.values())) ** 0 if f else 1
    xp = [{(0, 0): one}]
    for _ in range(maxa):
        xp.append(_mul(xp[-1], X, limit))
    yp = [{(0, 0): one}]
    for _ in range(maxb):
        yp.append(_mul(yp[-1], Y, limit))
    out: Germ = {}
    for (a, b), c in f.items():
        if a + b <= limit:
            _add_into(out, _mul(xp[a], yp[b], limit), c)
    return _clean(out, limit)


def swap(f: Germ) -> Germ:
    return {(b, a): c for (a, b), c in f.items()}


def scale(f: Germ, c) -> Germ:
    inv = 1 / c
    return {k: v * inv for k, v in f.items()}


def order(f: Germ) -> int | None:
    return min((a + b for (a, b), v in f.items() if v), default=None)


# --------------------------------------------------------------------------
# classification


def classify_germ(f: Germ, max_order: int = MAX_ORDER) -> SingularityType:
    f = _clean(dict(f), max_order + 1)
    if f.get((0, 0)):
        raise NotASingularPoint("f does not vanish at the point")
    if f.get((1, 0)) or f.get((0, 1)):
        raise NotASingularPoint("the gradient does not vanish at the point")
    m = order(f)
    if m is None:
        return NOT_SIMPLE  # f vanishes to every order we can see
    if m >= 4:
        return NOT_SIMPLE
    if m == 2:
        return _corank_one(f, max_order)
    return _cubic(f, max_order)


def _get(f, a, b):
    return f.get((a, b), 0)


def _corank_one(f: Germ, max_order: int) -> SingularityType:
    A, B, C = _get(f, 2, 0), _get(f, 1, 1), _get(f, 0, 2)
    if B * B - 4 * A * C:
        return SingularityType("A", 1)
    limit = max_order + 1
    if not A:
        f = swap(f)
        A, B = C, 0
    # 2-jet A (x + B/(2A) y)^2
    f = shift_x(f, -B / (2 * A), 1, limit) if B else f
    f = scale(f, A)
    for d in range(3, limit + 1):
        c = _get(f, 1, d - 1)
        if c:
            f = shift_x(f, -c / 2, d - 1, limit)
        if _get(f, 0, d):
            return SingularityType("A", d - 1)
    return UNKNOWN


def _cubic_discriminant(c30, c21, c12, c03):
    return (
        c21 * c21 * c12 * c12
        - 4 * c30 * c12**3
        - 4 * c21**3 * c03
        - 27 * c30 * c30 * c03 * c03
        + 18 * c30 * c21 * c12 * c03
    )


def _cubic(f: Germ, max_order: int) -> SingularityType:
    limit = max_order + 1
    c = [_get(f, 3, 0), _get(f, 2, 1), _get(f, 1, 2), _get(f, 0, 3)]
    if _cubic_discriminant(*c):
        return SingularityType("D", 4)
    # make the x^3 coefficient nonzero so no root of the cubic sits at infinity
    for k in range(4):
        g = shift_y(f, k, 1, limit) if k else f
        c30 = _get(g, 3, 0)
        if c30:
            f = g
            break
    c30, c21, c12 = _get(f, 3, 0), _get(f, 2, 1), _get(f, 1, 2)
    triple = not (c21 * c21 - 3 * c30 * c12)
    if triple:
        t0 = -c21 / (3 * c30)
        # x = X + t0 Y makes the cubic c30 X^3
        f = scale(linear_change(f, (1, t0), (0, 1), limit), c30)
        return _e_ladder(f)
    # cubic = c30 (t - t0)^2 (t - t1) in t = x/y; the double root is rational:
    # q'(t) = 3 c30 t^2 + 2 c21 t + c12 and gcd(q, q') = t - t0
    t0 = _double_root(c30, c21, c12, _get(f, 0, 3))
    t1 = -c21 / c30 - 2 * t0
    # X = x - t0 y, Y = x - t1 y  =>  y = (X - Y)/(t1 - t0), x = X + t0 y
    w = 1 / (t1 - t0)
    f = linear_change(f, (1 + t0 * w, -t0 * w), (w, -w), limit)
    f = scale(f, _get(f, 2, 1))
    return _d_ladder(f, max_order)


def _double_root(c30, c21, c12, c03):
    # remainder of q by q' is linear: r1 t + r0, vanishing at the double root
    a, b, c, d = c30, c21, c12, c03
    r1 = 2 * (3 * a * c - b * b) / (9 * a)
    r0 = (9 * a * d - b * c) / (9 * a)
    return -r0 / r1


def _d_ladder(f: Germ, max_order: int) -> SingularityType:
    limit = max_order + 1
    if _get(f, 0, 3):
        return SingularityType("D", 4)
    for d in range(4, limit + 1):
        c = _get(f, d, 0)
        if c:
            f = shift_y(f, -c, d - 2, limit)
        c = _get(f, 1, d - 1)
        if c:
            f = shift_x(f, -c / 2, d - 2, limit)
        if _get(f, 0, d):
            return SingularityType("D", d + 1)
    return UNKNOWN


def _e_ladder(f: Germ) -> SingularityType:
    if _get(f, 0, 4):
        return SingularityType("E", 6)
    if _get(f, 1, 3):
        return SingularityType("E", 7)
    if _get(f, 0, 5):
        return SingularityType("E", 8)
    return NOT_SIMPLE
