"""Exact scalars: Gaussian rationals and finite extensions of Q(i).

Gaussian rationals are sympy's ``QQ_I`` domain elements (gmpy2-backed when
available); rationals are ``QQ`` elements. :class:`NumberField` adds
arithmetic modulo an irreducible polynomial over ``QQ_I`` so singular points
with algebraic coordinates can be handled exactly.
"""

from __future__ import annotations

import copyreg
from fractions import Fraction
from typing import Sequence

from sympy.polys.densearith import dup_add, dup_mul, dup_neg, dup_rem, dup_sub
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.euclidtools import dup_invert

__all__ = ["QQ", "QQ_I", "gauss", "conj", "rat", "fmt_rational", "NumberField", "NFElement"]


def rat(v) -> "QQ.dtype":
    """Rational from int, Fraction, QQ element or a ``"p/q"`` string."""
    if isinstance(v, str):
        v = Fraction(v.strip())
    if isinstance(v, Fraction):
        return QQ(v.numerator, v.denominator)
    if isinstance(v, float):
        raise TypeError("floats are not accepted as exact rationals")
    return QQ.convert(v)


def gauss(re=0, im=0):
    if isinstance(re, type(QQ_I(0))):
        if im:
            raise TypeError("pass either a Gaussian rational or real/imag parts")
        return re
    return QQ_I(rat(re), rat(im))


def conj(a):
    return QQ_I(a.x, -a.y)


def abs2(a):
    return a.x * a.x + a.y * a.y


def fmt_rational(q) -> str:
    q = Fraction(int(q.numerator), int(q.denominator))
    return str(q)


# --------------------------------------------------------------------------
# number fields over Q(i)


class NumberField:
    """``QQ_I[t] / (modulus)`` for an irreducible monic ``modulus``.

    ``modulus`` is a dense coefficient list, highest degree first.
    """

    def __init__(self, modulus: Sequence):
        mod = [QQ_I.convert(c) for c in modulus]
        lead = mod[0]
        self.modulus = [c / lead for c in mod]
        self.degree = len(self.modulus) - 1
        if self.degree < 1:
            raise ValueError("modulus must have positive degree")

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(tuple(self.modulus))

    def __repr__(self):
        return f"NumberField({self.modulus})"

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            if value.field != self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, (list, tuple)):
            return NFElement(self, [QQ_I.convert(c) for c in value])
        return NFElement(self, [gauss(value)])

    @property
    def generator(self) -> "NFElement":
        if self.degree == 1:
            return self(-self.modulus[1])
        return NFElement(self, [QQ_I(1), QQ_I(0)])

    def zero(self) -> "NFElement":
        return NFElement(self, [])

    def one(self) -> "NFElement":
        return NFElement(self, [QQ_I(1)])


class NFElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        c = dup_rem(_strip(list(coeffs)), field.modulus, QQ_I) if len(coeffs) > field.degree else _strip(list(coeffs))
        self.coeffs = c

    def _coerce(self, other):
        if isinstance(other, NFElement):
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        return NFElement(self.field, dup_add(self.coeffs, o.coeffs, QQ_I))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NFElement(self.field, dup_sub(self.coeffs, o.coeffs, QQ_I))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return NFElement(self.field, dup_neg(self.coeffs, QQ_I))

    def __mul__(self, other):
        o = self._coerce(other)
        return NFElement(self.field, dup_mul(self.coeffs, o.coeffs, QQ_I))

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero in a number field")
        if len(self.coeffs) == 1:
            return NFElement(self.field, [QQ_I(1) / self.coeffs[0]])
        return NFElement(self.field, dup_invert(self.coeffs, self.field.modulus, QQ_I))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        try:
            return not (self - other).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def __repr__(self):
        return f"NFElement({self.coeffs})"

    def is_gaussian(self) -> bool:
        return len(self.coeffs) <= 1

    def to_gaussian(self):
        if not self.is_gaussian():
            raise ValueError("element is not in Q(i)")
        return self.coeffs[0] if self.coeffs else QQ_I(0)

    def numeric(self, root: complex) -> complex:
        """Value under the embedding sending the generator to ``root``."""
        v = 0j
        for c in self.coeffs:
            v = v * root + complex(float(c.x), float(c.y))
        return v


def _strip(c):
    i = 0
    while i < len(c) and not c[i]:
        i += 1
    return c[i:]


# --------------------------------------------------------------------------
# dense univariate polynomials over any exact field (highest degree first)


def upoly_strip(p):
    i = 0
    while i < len(p) and not p[i]:
        i += 1
    return list(p[i:])


def upoly_rem(a, b):
    a = upoly_strip(a)
    b = upoly_strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = 1 / b[0]
    while len(a) >= len(b):
        f = a[0] * inv
        for i in range(1, len(b)):
            a[i] = a[i] - f * b[i]
        a = upoly_strip(a[1:])
    return a


def upoly_gcd(a, b):
    """Monic gcd (empty list for two zero polynomials)."""
    a, b = upoly_strip(a), upoly_strip(b)
    while b:
        a, b = b, upoly_rem(a, b)
    if not a:
        return []
    lead = a[0]
    return [c / lead for c in a]


def upoly_eval(p, x):
    v = None
    for c in p:
        v = c if v is None else v * x + c
    return v if v is not None else 0


def _gauss_from_parts(re: Fraction, im: Fraction):
    return QQ_I(rat(re), rat(im))


def _reduce_gauss(a):
    return _gauss_from_parts, (Fraction(int(a.x.numerator), int(a.x.denominator)), Fraction(int(a.y.numerator), int(a.y.denominator)))


# sympy's Gaussian elements do not pickle; worker processes need them to
copyreg.pickle(type(QQ_I(0)), _reduce_gauss)
