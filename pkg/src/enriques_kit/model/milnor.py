"""Milnor numbers by elimination, independent of the normal-form classifier.

``mu = dim O_0 / (f_x, f_y)`` equals the local intersection multiplicity of
the two partials at the origin. After a shear that leaves no other common
zero on the line ``x = 0`` (and no zero at infinity over it), this is the
order of vanishing at ``x = 0`` of ``Res_y(f_x, f_y)``.
"""

from __future__ import annotations

from sympy import Poly, symbols

from ..algebra import QQ_I

_x, _y = symbols("x y")

_SHEARS = (0, 1, -1, 2, -2, 3, 5, 7)


def _poly(germ) -> Poly:
    return Poly.from_dict({k: QQ_I.convert(v) for k, v in germ.items()}, _x, _y, domain=QQ_I)


def milnor_number(germ) -> int | None:
    """``mu`` of an isolated critical point at the origin; None if not isolated."""
    f = _poly(germ).as_expr()
    for c in _SHEARS:
        g = f.subs(_x, _x + c * _y) if c else f
        F = Poly(g.diff(_x), _y, _x, domain=QQ_I)
        G = Poly(g.diff(_y), _y, _x, domain=QQ_I)
        if F.is_zero or G.is_zero:
            return None
        # the only common zero on x = 0 must be the origin ...
        on_line = Poly(F.as_expr().subs(_x, 0), _y, domain=QQ_I).gcd(Poly(G.as_expr().subs(_x, 0), _y, domain=QQ_I))
        if on_line.is_zero or on_line.terms()[-1][0][0] != on_line.degree():
            continue
        # ... and none may escape to infinity over it
        lead_f = Poly(F.as_expr().coeff(_y, F.degree(_y)), _x, domain=QQ_I)
        lead_g = Poly(G.as_expr().coeff(_y, G.degree(_y)), _x, domain=QQ_I)
        if not lead_f.eval(0) and not lead_g.eval(0):
            continue
        res = F.resultant(G)
        if res.is_zero:
            return None
        coeffs = res.all_coeffs()[::-1]
        return next(i for i, v in enumerate(coeffs) if v)
    return None
