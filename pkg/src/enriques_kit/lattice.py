"""Finite-rank integral lattices given by exact Gram matrices.

Everything is exact: Python integers for Gram data and coordinates,
:class:`fractions.Fraction` wherever a rational is unavoidable (signature
pivots, dual-lattice coordinates, discriminant values).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from . import _intmat as im

Vector = tuple[int, ...]


class LatticeError(ValueError):
    pass


class DegenerateLatticeError(LatticeError):
    pass


class OddLatticeError(LatticeError):
    pass


class IndefiniteLatticeError(LatticeError):
    pass


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        g = tuple(tuple(int(v) for v in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError(f"Gram matrix not symmetric at ({i}, {j})")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != n:
                raise LatticeError("labels must match the rank")
            object.__setattr__(self, "labels", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        self._check(x)
        self._check(y)
        return im.bilinear(self.gram, x, y)

    def norm(self, x: Sequence[int]) -> int:
        return self.dot(x, x)

    def det(self) -> int:
        return int(im.determinant(self.gram))

    def basis_vector(self, i: int) -> Vector:
        return tuple(int(k == i) for k in range(self.rank))

    def vector(self, label: str) -> Vector:
        if self.labels is None or label not in self.labels:
            raise KeyError(label)
        return self.basis_vector(self.labels.index(label))

    def sublattice(self, basis: Sequence[Sequence[int]], labels=None) -> "Lattice":
        """Lattice spanned by ``basis`` (coordinate vectors) with the induced form."""
        return Lattice(im.congruence(self.gram, basis), labels)

    def _check(self, x):
        if len(x) != self.rank:
            raise LatticeError(f"vector of length {len(x)} used with a rank-{self.rank} lattice")


@dataclass(frozen=True)
class Isometry:
    """Matrix ``M`` (columns = images of the source basis) with ``M^T G_b M = G_a``."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(v) for v in row) for row in self.matrix))

    def apply(self, x: Sequence[int]) -> Vector:
        return tuple(im.matvec(self.matrix, x))

    def preserves(self, source: Lattice, target: Lattice) -> bool:
        mt = im.transpose(self.matrix)
        return im.matmul(im.matmul(mt, target.gram), self.matrix) == [list(r) for r in source.gram]


@dataclass(frozen=True)
class DiscriminantForm:
    """Finite quadratic form on ``L^*/L``.

    Group elements are tuples ``(a_1, ..., a_k)`` with ``0 <= a_i < d_i``.
    ``q_values`` live in ``[0, 2)`` and ``b_values`` in ``[0, 1)``.
    """

    invariant_factors: tuple[int, ...]
    q_values: dict = field(compare=False)
    b_values: dict = field(compare=False)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_even(self) -> bool:
        return all(q.denominator == 1 for q in self.q_values.values())

    def elements(self) -> list[tuple[int, ...]]:
        return list(product(*(range(d) for d in self.invariant_factors)))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))


# --------------------------------------------------------------------------
# construction

_E8_EDGES = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]


def _negative_root_gram(n: int, edges) -> list[list[int]]:
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


def diag(entries: Iterable[int]) -> Lattice:
    entries = [int(e) for e in entries]
    n = len(entries)
    return Lattice([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def standard_lattice(name: str | Sequence[int]) -> Lattice:
    """Published lattices: ``U``, ``E8neg``, ``D4neg``, ``nA1`` (n copies of <-2>).

    A list of integers, or a string ``diag(a,b,...)``, builds a diagonal lattice.
    ``D4neg`` uses generators with e_i^2 = -2, e_i.e_j = 0 (i<j<=3) and e_i.e_4 = 1.
    """
    if not isinstance(name, str):
        return diag(name)
    if name == "U":
        return Lattice([[0, 1], [1, 0]], ("x1", "x2"))
    if name == "E8neg":
        return Lattice(_negative_root_gram(8, _E8_EDGES), tuple(f"r{i}" for i in range(1, 9)))
    if name == "D4neg":
        return Lattice(_negative_root_gram(4, [(0, 3), (1, 3), (2, 3)]), ("e1", "e2", "e3", "e4"))
    m = re.fullmatch(r"(\d*)A1", name)
    if m:
        return diag([-2] * int(m.group(1) or 1))
    m = re.fullmatch(r"diag\(([-\d,\s]*)\)", name)
    if m:
        body = m.group(1).strip()
        return diag([int(v) for v in body.split(",")] if body else [])
    raise LatticeError(f"unknown lattice name {name!r}")


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    if not b.rank:
        return a
    if not a.rank:
        return b
    n, m = a.rank, b.rank
    gram = [list(row) + [0] * m for row in a.gram] + [[0] * n + list(row) for row in b.gram]
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = a.labels + b.labels
    return Lattice(gram, labels)


def enriques_lattice() -> Lattice:
    """``U + E8neg`` with basis x1, x2, r1..r8: the lattice H_2(E)/Tors."""
    return direct_sum(standard_lattice("U"), standard_lattice("E8neg"))


# --------------------------------------------------------------------------
# invariants


def signature(lat: Lattice) -> tuple[int, int, int]:
    """Inertia ``(pos, neg, zero)`` by exact symmetric pivoting over Q.

    A diagonal pivot contributes its sign; when every remaining diagonal entry
    vanishes, a hyperbolic 2x2 block contributes one of each.
    """
    A = [[Fraction(v) for v in row] for row in lat.gram]
    active = list(range(lat.rank))
    pos = neg = 0
    while active:
        k = next((i for i in active if A[i][i] != 0), None)
        if k is not None:
            d = A[k][k]
            if d > 0:
                pos += 1
            else:
                neg += 1
            active.remove(k)
            for i in active:
                if A[i][k]:
                    f = A[i][k] / d
                    for j in active:
                        A[i][j] -= f * A[k][j]
            continue
        pair = next(((i, j) for i in active for j in active if i < j and A[i][j] != 0), None)
        if pair is None:
            break
        k, l = pair
        b = A[k][l]
        pos += 1
        neg += 1
        active.remove(k)
        active.remove(l)
        cols_k = {i: A[i][k] for i in active}
        cols_l = {i: A[i][l] for i in active}
        for i in active:
            for j in active:
                A[i][j] -= (cols_k[i] * cols_l[j] + cols_l[i] * cols_k[j]) / b
    return pos, neg, len(active)


def is_even(lat: Lattice) -> bool:
    return all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))


def is_definite(lat: Lattice) -> bool:
    pos, neg, zero = signature(lat)
    return zero == 0 and (pos == 0 or neg == 0)


def discriminant_group(lat: Lattice) -> list[int]:
    """Invariant factors (> 1) of ``Z^n / gram Z^n``; empty iff unimodular."""
    if lat.rank and lat.det() == 0:
        raise DegenerateLatticeError("discriminant group of a degenerate lattice")
    if lat.rank == 0:
        return []
    D, _, _ = smith_normal_form_of(lat)
    return [D[i][i] for i in range(lat.rank) if D[i][i] > 1]


def smith_normal_form_of(lat: Lattice):
    return im.smith_normal_form(lat.gram)


def discriminant_form(lat: Lattice) -> DiscriminantForm:
    """Discriminant quadratic form of an even nondegenerate lattice.

    Dual generators are read off the Smith transform: with ``U G V = D``,
    the columns ``V[:, k] / d_k`` generate ``L^*/L``.
    """
    if lat.rank and lat.det() == 0:
        raise DegenerateLatticeError("discriminant form of a degenerate lattice")
    if not is_even(lat):
        raise OddLatticeError("discriminant quadratic form needs an even lattice")
    if lat.rank == 0:
        return DiscriminantForm((), {(): Fraction(0)}, {((), ()): Fraction(0)})
    D, _, V = smith_normal_form_of(lat)
    n = lat.rank
    idx = [k for k in range(n) if D[k][k] > 1]
    factors = tuple(D[k][k] for k in idx)
    gens = [[Fraction(V[i][k], D[k][k]) for i in range(n)] for k in idx]

    def dual_vector(a):
        return [sum(ai * g[i] for ai, g in zip(a, gens)) for i in range(n)]

    def pair(u, v):
        return sum(u[i] * sum(lat.gram[i][j] * v[j] for j in range(n)) for i in range(n))

    elements = list(product(*(range(d) for d in factors)))
    vecs = {a: dual_vector(a) for a in elements}
    q = {a: pair(v, v) % 2 for a, v in vecs.items()}
    b = {(a, c): pair(vecs[a], vecs[c]) % 1 for a in elements for c in elements}
    return DiscriminantForm(factors, q, b)


# --------------------------------------------------------------------------
# sublattices and vectors


def orthogonal_complement(vectors: Sequence[Sequence[int]], lat: Lattice) -> list[Vector]:
    """Saturated basis of ``{x : x.v = 0 for all v}``."""
    if not vectors:
        return [lat.basis_vector(i) for i in range(lat.rank)]
    rows = [im.matvec(lat.gram, v) for v in vectors]  # gram symmetric: (G v)^T x = v.x
    return [tuple(v) for v in im.integer_kernel(rows, lat.rank)]


def is_primitive(x: Sequence[int]) -> bool:
    g = im.vector_gcd(x)
    if g == 0:
        raise LatticeError("the zero vector is not primitive")
    return g == 1


def reflect_root(lat: Lattice, r: Sequence[int], x: Sequence[int]) -> Vector:
    """Reflection in a (-2)-vector: ``x + (x.r) r``."""
    if lat.norm(r) != -2:
        raise LatticeError(f"reflection vector has square {lat.norm(r)}, expected -2")
    c = lat.dot(x, r)
    return tuple(xi + c * ri for xi, ri in zip(x, r))


def max_even_sublattice(lat: Lattice) -> tuple[Lattice, list[Vector]]:
    """Kernel of the parity functional ``x -> x^2 mod 2`` with its basis.

    The functional is linear mod 2 and given by the diagonal parities.
    """
    parity = [lat.gram[i][i] % 2 for i in range(lat.rank)]
    if not any(parity):
        basis = [lat.basis_vector(i) for i in range(lat.rank)]
        return lat, basis
    k = parity.index(1)
    basis = []
    for j in range(lat.rank):
        if j == k:
            basis.append(tuple(2 * int(i == k) for i in range(lat.rank)))
        else:
            basis.append(tuple(int(i == j) - parity[j] * int(i == k) for i in range(lat.rank)))
    return lat.sublattice(basis), basis


# --------------------------------------------------------------------------
# short vectors and isometries


def _pohst_form(gram) -> tuple[list[Fraction], list[list[Fraction]]]:
    n = len(gram)
    q = [[Fraction(v) for v in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise IndefiniteLatticeError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return [q[i][i] for i in range(n)], q


def vectors_of_norm(lat: Lattice, norm: int) -> list[Vector]:
    """All ``x`` with ``x^2 == norm`` in a definite lattice (sign taken from the form).

    Completes squares (Fincke-Pohst) and enumerates coordinates from the last
    one down, each within the exact interval the remaining budget allows.
    """
    pos, neg, zero = signature(lat)
    if zero or (pos and neg):
        raise IndefiniteLatticeError("short-vector enumeration needs a definite lattice")
    sign = 1 if neg == 0 else -1
    target = Fraction(sign * norm)
    if target < 0:
        return []
    gram = [[sign * v for v in row] for row in lat.gram]
    d, q = _pohst_form(gram)
    n = lat.rank
    x = [0] * n
    out: list[Vector] = []

    def rec(i: int, remaining: Fraction):
        c = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        r2 = remaining / d[i]
        b = math.isqrt(math.floor(r2)) + 1
        for xi in range(math.floor(c) - b, math.ceil(c) + b + 1):
            t = d[i] * (xi - c) ** 2
            if t > remaining:
                continue
            x[i] = xi
            if i == 0:
                if t == remaining:
                    out.append(tuple(x))
            else:
                rec(i - 1, remaining - t)
        x[i] = 0

    if n == 0:
        return [()] if target == 0 else []
    rec(n - 1, target)
    return out


def isometry_search(a: Lattice, b: Lattice) -> Isometry | None:
    """Exhaustive search for an isometry ``a -> b`` of definite lattices.

    Candidate images of the i-th basis vector of ``a`` are the vectors of ``b``
    with the right norm; backtracking matches the rest of the Gram matrix.
    Returns ``None`` when no isometry exists.
    """
    if a.rank != b.rank:
        return None
    if not (is_definite(a) and is_definite(b)):
        raise IndefiniteLatticeError("isometry search is only supported for definite lattices")
    if a.rank == 0:
        return Isometry(())
    if a.det() != b.det() or signature(a) != signature(b):
        return None
    n = a.rank
    pools = {}
    for i in range(n):
        norm = a.gram[i][i]
        if norm not in pools:
            pools[norm] = vectors_of_norm(b, norm)
    chosen: list[Vector] = []

    def rec(i: int) -> bool:
        if i == n:
            return True
        for y in pools[a.gram[i][i]]:
            if all(b.dot(y, chosen[j]) == a.gram[i][j] for j in range(i)):
                chosen.append(y)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    if not rec(0):
        return None
    return Isometry(im.from_columns(chosen))
