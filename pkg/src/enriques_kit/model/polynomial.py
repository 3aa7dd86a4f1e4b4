"""s-invariant bidegree (4,4) branch polynomials.

``P(x, y) = sum a[i, j] x^i y^j`` with ``0 <= i, j <= 4``. Invariance under
``s(x, y) = (-x, -y)`` forces ``i = j mod 2``; compatibility with the real
structure ``(x, y) -> (1/x-bar, y-bar)`` forces ``a[4-i, j] = conj(a[i, j])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from ..algebra import QQ, QQ_I, conj, gauss, rat

GaussRat = type(QQ_I(0))

ADMISSIBLE = tuple((i, j) for i in range(5) for j in range(5) if (i - j) % 2 == 0)
CORNERS = ((0, 0), (0, 4), (4, 0), (4, 4))


class PolynomialError(ValueError):
    pass


@dataclass(frozen=True)
class ParityViolation:
    i: int
    j: int

    def __str__(self):
        return f"ParityViolation({self.i},{self.j}): i and j must have the same parity"


@dataclass(frozen=True)
class RealityViolation:
    i: int
    j: int

    def __str__(self):
        return f"RealityViolation({self.i},{self.j}): a[{4 - self.i},{self.j}] must be the conjugate of a[{self.i},{self.j}]"


@dataclass(frozen=True)
class ZeroPolynomial:
    def __str__(self):
        return "ZeroPolynomial: all coefficients vanish"


@dataclass(frozen=True)
class RangeViolation:
    i: int
    j: int

    def __str__(self):
        return f"RangeViolation({self.i},{self.j}): exponents must lie in 0..4"


class ValidationError(PolynomialError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(map(str, self.violations)))


class BranchPolynomial:
    """Validated coefficient map; zero coefficients are dropped."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[tuple[int, int], GaussRat], *, _trusted=False):
        if not _trusted:
            raise PolynomialError("construct branch polynomials with validate()")
        self._coeffs = {k: v for k, v in sorted(coeffs.items()) if v}
        self._hash = None

    @property
    def coeffs(self) -> dict[tuple[int, int], GaussRat]:
        return dict(self._coeffs)

    def __getitem__(self, ij) -> GaussRat:
        return self._coeffs.get(tuple(ij), QQ_I(0))

    def items(self):
        return self._coeffs.items()

    def __eq__(self, other):
        return isinstance(other, BranchPolynomial) and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __repr__(self):
        return f"BranchPolynomial({format_polynomial(self)})"

    def __neg__(self):
        return BranchPolynomial({k: -v for k, v in self._coeffs.items()}, _trusted=True)

    def __add__(self, other: "BranchPolynomial"):
        keys = set(self._coeffs) | set(other._coeffs)
        return BranchPolynomial({k: self[k] + other[k] for k in keys}, _trusted=True)

    def __sub__(self, other: "BranchPolynomial"):
        return self + (-other)

    def scale(self, r) -> "BranchPolynomial":
        """Multiply by a nonzero rational."""
        r = rat(r)
        if not r:
            raise PolynomialError("scaling by zero leaves the space")
        q = QQ_I(r, 0)
        return BranchPolynomial({k: q * v for k, v in self._coeffs.items()}, _trusted=True)

    def is_zero(self) -> bool:
        return not self._coeffs


def _gauss_of(v) -> GaussRat:
    if isinstance(v, GaussRat):
        return v
    if isinstance(v, complex):
        raise TypeError("complex floats are not exact; pass (re, im) rationals")
    if isinstance(v, (tuple, list)) and len(v) == 2:
        return gauss(rat(v[0]), rat(v[1]))
    return gauss(rat(v), 0)


def validate(raw: Mapping | Iterable) -> BranchPolynomial:
    """Check parity, reality and nonvanishing; collect every violation.

    ``raw`` maps ``(i, j)`` to a coefficient: an int, Fraction, ``"p/q"``
    string, ``(re, im)`` pair or a Gaussian rational.
    """
    items = raw.items() if isinstance(raw, Mapping) else raw
    coeffs: dict[tuple[int, int], GaussRat] = {}
    for (i, j), v in items:
        i, j = int(i), int(j)
        coeffs[(i, j)] = coeffs.get((i, j), QQ_I(0)) + _gauss_of(v)
    violations = []
    for (i, j), v in sorted(coeffs.items()):
        if not v:
            continue
        if not (0 <= i <= 4 and 0 <= j <= 4):
            violations.append(RangeViolation(i, j))
        elif (i - j) % 2:
            violations.append(ParityViolation(i, j))
    seen = set()
    for (i, j) in sorted(coeffs):
        if not (0 <= i <= 4 and 0 <= j <= 4) or (i - j) % 2 or (i, j) in seen:
            continue
        partner = (4 - i, j)
        seen.update({(i, j), partner})
        if conj(coeffs.get(partner, QQ_I(0))) != coeffs[(i, j)]:
            violations.append(RealityViolation(min(i, 4 - i), j))
    if not any(coeffs.values()):
        violations.append(ZeroPolynomial())
    if violations:
        raise ValidationError(violations)
    return BranchPolynomial(coeffs, _trusted=True)


def monomials(spec: str | Mapping) -> BranchPolynomial:
    """Shorthand: ``{"x^2": 1, "x^2 y^4": 1}``-style maps (real coefficients)."""
    import re

    out = {}
    for term, coeff in spec.items():
        i = j = 0
        for var, exp in re.findall(r"([xy])(?:\^(\d+))?", term):
            if var == "x":
                i += int(exp or 1)
            else:
                j += int(exp or 1)
        out[(i, j)] = coeff
    return validate(out)


def center_polynomial() -> BranchPolynomial:
    """``x^2 (1 + y^4) + (x^2 y^2 + 1 + y^4 + x^4 + x^4 y^4) / 10``.

    On the torus this restricts to
    ``(cos^4 + sin^4)(1 + cos(2 theta)/5) + sin^2 cos^2 / 10`` in ``phi``,
    which is positive; the curve is smooth.
    """
    tenth = Fraction(1, 10)
    return validate(
        {
            (2, 0): 1,
            (2, 4): 1,
            (2, 2): tenth,
            (0, 0): tenth,
            (0, 4): tenth,
            (4, 0): tenth,
            (4, 4): tenth,
        }
    )


def corners_nonzero(p: BranchPolynomial) -> list[tuple[int, int]]:
    """The corner coefficients that vanish (empty when the clause holds)."""
    return [c for c in CORNERS if not p[c]]


def _abs2(v: GaussRat):
    return v.x * v.x + v.y * v.y


def normalize(p: BranchPolynomial) -> BranchPolynomial:
    """Representative of ``p`` in real projective space.

    The largest-magnitude coefficient (ties broken by the smallest ``(i, j)``)
    is scaled to have positive real part, or positive imaginary part when
    it is purely imaginary; its modulus is not changed.
    """
    if p.is_zero():
        raise PolynomialError("zero polynomial has no projective class")
    best = max(p.items(), key=lambda kv: (_abs2(kv[1]), [-kv[0][0], -kv[0][1]]))[1]
    lead = best.x if best.x else best.y
    return -p if lead < 0 else p


def real_parameters() -> list[tuple[tuple[int, int], str]]:
    """Free real coordinates of the space: ``((i, j), "re" | "im")`` for ``i <= 2``."""
    out = []
    for i, j in ADMISSIBLE:
        if i < 2:
            out += [((i, j), "re"), ((i, j), "im")]
        elif i == 2:
            out.append(((i, j), "re"))
    return out


def from_parameters(values) -> BranchPolynomial:
    """Inverse of :func:`real_parameters` (the mirrored half is filled by conjugation)."""
    params = real_parameters()
    if len(values) != len(params):
        raise PolynomialError(f"expected {len(params)} real parameters")
    re_im: dict[tuple[int, int], list] = {}
    for ((i, j), part), v in zip(params, values):
        re_im.setdefault((i, j), [QQ(0), QQ(0)])[part == "im"] = rat(v)
    coeffs = {}
    for (i, j), (a, b) in re_im.items():
        coeffs[(i, j)] = QQ_I(a, b)
        if i != 2:
            coeffs[(4 - i, j)] = QQ_I(a, -b)
    return validate(coeffs)


def format_coefficient(v: GaussRat) -> str:
    from ..algebra import fmt_rational

    if not v.y:
        return fmt_rational(v.x)
    if not v.x:
        return f"{fmt_rational(v.y)}*I"
    return f"({fmt_rational(v.x)}{'+' if v.y > 0 else '-'}{fmt_rational(abs(v.y))}*I)"


def format_polynomial(p: BranchPolynomial) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for (i, j), v in p.items():
        mono = "*".join(
            s for s in (f"x^{i}" if i > 1 else "x" * i, f"y^{j}" if j > 1 else "y" * j) if s
        )
        c = format_coefficient(v)
        terms.append(f"{c}*{mono}" if mono else c)
    return " + ".join(terms)
