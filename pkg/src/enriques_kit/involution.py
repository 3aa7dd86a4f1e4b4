"""Real structures acting on ``H_2(E; Z) = L + Z/2``.

An :class:`ExtendedInvolution` is an involutive isometry ``m`` of ``L`` plus
a mod-2 functional ``eps``; the pair acts on ``L + Z/2`` by
``(v, t) -> (m v, eps(v) + t)``. On the (-1)-eigenlattice ``eps`` is the
delta invariant: ``delta(y) = w2`` exactly when ``eps(y)`` is odd.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _intmat as im
from .lattice import (
    Lattice,
    LatticeError,
    Vector,
    enriques_lattice,
    is_primitive,
    reflect_root,
    signature,
    vectors_of_norm,
)


class InvolutionError(ValueError):
    pass


class NotInvolutive(InvolutionError):
    pass


class NotIsometry(InvolutionError):
    pass


class EpsIncompatible(InvolutionError):
    pass


class YNotInMinusEigenlattice(InvolutionError):
    pass


class NotStandardPair(InvolutionError):
    pass


class NotInvariant(InvolutionError):
    pass


class NeitherType(InvolutionError):
    pass


class NoPlaneInSearchedFamily(InvolutionError):
    """delta vanishes on the pair and every tested D4 vector: not empty-type data."""


class NotIsotropic(InvolutionError):
    pass


class NotPrimitive(InvolutionError):
    pass


class StepLimitExceeded(RuntimeError):
    def __init__(self, word, vector):
        super().__init__(f"reflection reduction did not terminate after {len(word)} steps")
        self.word = word
        self.vector = vector


class PlaneType(enum.Enum):
    I00 = "I(0,0)"
    I0w2 = "I(0,w2)"
    Iw2w2 = "I(w2,w2)"
    II = "II"

    def __str__(self):
        return self.value


class RealityVerdict(enum.Enum):
    NotReal = "NotReal"
    RealWithRealFibers = "RealWithRealFibers"
    RealWithConjugateFibers = "RealWithConjugateFibers"


class PairCase(enum.Enum):
    PairOfPencils = "PairOfPencils"
    PencilPlusNode = "PencilPlusNode"


W2 = "w2"


@dataclass(frozen=True)
class ExtendedInvolution:
    m: tuple[tuple[int, ...], ...]
    eps: tuple[int, ...]
    lattice: Lattice

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def apply(self, v: Sequence[int]) -> Vector:
        return tuple(im.matvec(self.m, v))

    def in_minus(self, y: Sequence[int]) -> bool:
        return all(a + b == 0 for a, b in zip(y, self.apply(y)))

    def eps_of(self, y: Sequence[int]) -> int:
        return sum(e * c for e, c in zip(self.eps, y)) % 2


def make_involution(m, eps, lattice: Lattice | None = None) -> ExtendedInvolution:
    """Validate ``(m, eps)``; each failure names the violated invariant."""
    lat = lattice if lattice is not None else enriques_lattice()
    n = lat.rank
    m = [[int(v) for v in row] for row in m]
    eps = tuple(int(e) % 2 for e in eps)
    if len(m) != n or any(len(row) != n for row in m) or len(eps) != n:
        raise InvolutionError(f"expected a {n}x{n} matrix and a length-{n} eps vector")
    if im.matmul(m, m) != im.identity(n):
        raise NotInvolutive("m @ m != I")
    mt = im.transpose(m)
    if im.matmul(im.matmul(mt, lat.gram), m) != [list(r) for r in lat.gram]:
        raise NotIsometry("m^T G m != G")
    one_plus_m = [[m[i][j] + (i == j) for j in range(n)] for i in range(n)]
    if any(sum(eps[i] * one_plus_m[i][j] for i in range(n)) % 2 for j in range(n)):
        raise EpsIncompatible("eps o (I + m) is not 0 mod 2")
    return ExtendedInvolution(tuple(map(tuple, m)), eps, lat)


def compatible_eps_basis(m) -> list[list[int]]:
    """Basis of the F_2-space of functionals ``eps`` with ``eps o (I + m) = 0``."""
    n = len(m)
    one_plus_m = [[m[i][j] + (i == j) for j in range(n)] for i in range(n)]
    return im.gf2_left_kernel(one_plus_m)


def eigenlattice(inv: ExtendedInvolution, sign: int) -> list[Vector]:
    """Saturated basis of ``ker(m - sign I)``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = inv.rank
    a = [[inv.m[i][j] - sign * (i == j) for j in range(n)] for i in range(n)]
    return [tuple(v) for v in im.integer_kernel(a, n)]


def delta(inv: ExtendedInvolution, y: Sequence[int]):
    """``0`` or ``"w2"``."""
    if not inv.in_minus(y):
        raise YNotInMinusEigenlattice(f"{tuple(y)} is not in L^-")
    return W2 if inv.eps_of(y) else 0


def _check_standard_pair(lat: Lattice, u1, u2):
    if lat.norm(u1) != 0 or lat.norm(u2) != 0 or lat.dot(u1, u2) != 1:
        raise NotStandardPair("expected u1^2 = u2^2 = 0 and u1.u2 = 1")


def _plane_coords(lat: Lattice, u1, u2, v):
    """Coordinates of ``v`` in the standard basis (u1, u2), or None if outside the span."""
    a, b = lat.dot(v, u2), lat.dot(v, u1)
    if tuple(a * p + b * q for p, q in zip(u1, u2)) != tuple(v):
        return None
    return a, b


def classify_plane(inv: ExtendedInvolution, u1, u2) -> PlaneType:
    lat = inv.lattice
    _check_standard_pair(lat, u1, u2)
    c1 = _plane_coords(lat, u1, u2, inv.apply(u1))
    c2 = _plane_coords(lat, u1, u2, inv.apply(u2))
    if c1 is None or c2 is None:
        raise NotInvariant("span{u1, u2} is not m-invariant")
    if c1 == (-1, 0) and c2 == (0, -1):
        d = sorted((inv.eps_of(u1), inv.eps_of(u2)))
        return {(0, 0): PlaneType.I00, (0, 1): PlaneType.I0w2, (1, 1): PlaneType.Iw2w2}[tuple(d)]
    if c1 == (0, 1) and c2 == (1, 0):
        return PlaneType.II
    raise NeitherType(f"m acts on the plane by {[list(c1), list(c2)]}")


def find_plane_I0w2(inv: ExtendedInvolution, u1, u2, d4) -> tuple[Vector, Vector]:
    """Standard pair of type I(0,w2) built from a pair ``u1, u2`` and a D4 basis.

    The search family is ``{u1, u2, u1 + u2 + e}`` with
    ``e`` in ``{e1, .., e4, e1 + e4}``. The first vector returned has delta 0.
    """
    lat = inv.lattice
    _check_standard_pair(lat, u1, u2)
    e = [tuple(v) for v in d4]
    if len(e) != 4:
        raise InvolutionError("expected four D4 generators")
    for i in range(4):
        for j in range(4):
            want = -2 if i == j else (1 if 3 in (i, j) else 0)
            if lat.dot(e[i], e[j]) != want:
                raise InvolutionError("e1..e4 do not satisfy the D4 relations")
        if lat.dot(e[i], u1) or lat.dot(e[i], u2):
            raise InvolutionError("D4 generators must be orthogonal to the pair")
    for v in (u1, u2, *e):
        if not inv.in_minus(v):
            raise YNotInMinusEigenlattice(f"{tuple(v)} is not in L^-")

    d1, d2 = inv.eps_of(u1), inv.eps_of(u2)
    if d1 != d2:
        return (tuple(u1), tuple(u2)) if d1 == 0 else (tuple(u2), tuple(u1))
    family = e + [tuple(a + b for a, b in zip(e[0], e[3]))]
    want = 0 if d1 == 1 else 1
    for f in family:
        if inv.eps_of(f) == want:
            w = tuple(a + b + c for a, b, c in zip(u1, u2, f))
            return (w, tuple(u1)) if d1 == 1 else (tuple(u1), w)
    raise NoPlaneInSearchedFamily("delta vanishes on the pair and on the whole searched family")


@dataclass(frozen=True)
class IsotropicSearch:
    vector: Vector | None
    bound: int
    exhausted: bool


def _pair_reduce(vectors, inner) -> list[list[int]]:
    """Greedy pairwise size reduction under a positive definite ``inner``."""
    b = [list(v) for v in vectors]
    changed = True
    while changed:
        changed = False
        b.sort(key=lambda v: inner(v, v))
        for i in range(len(b)):
            for j in range(len(b)):
                nj = inner(b[j], b[j])
                if i == j or not nj:
                    continue
                k = (2 * inner(b[i], b[j]) + nj) // (2 * nj)
                if k:
                    new = [x - k * y for x, y in zip(b[i], b[j])]
                    if inner(new, new) < inner(b[i], b[i]):
                        b[i] = new
                        changed = True
    return b


def size_reduce(basis) -> list[Vector]:
    """Pairwise reduction of ``basis`` in the coordinate norm; spans the same lattice."""
    return [tuple(v) for v in _pair_reduce(basis, lambda u, v: sum(x * y for x, y in zip(u, v)))]


def _shortest_positive(gram) -> tuple[list[int], int]:
    """A coefficient vector of small positive norm: the best ``{-1, 0, 1}`` combination,
    else a rounded positive eigendirection."""
    k = len(gram)
    G = np.array(gram, dtype=object)
    combos = np.array(list(itertools.product((-1, 0, 1), repeat=k)), dtype=object)
    norms = np.einsum("ij,jk,ik->i", combos, G, combos)
    pos = [i for i in np.nonzero(norms > 0)[0]]
    if pos:
        best = min(pos, key=lambda i: (norms[i], int(np.abs(combos[i]).sum())))
        return [int(v) for v in combos[best]], int(norms[best])
    _, vecs = np.linalg.eigh(np.array(gram, dtype=float))
    v = vecs[:, -1] / np.abs(vecs[:, -1]).max()
    scale = 1
    while True:
        c = [int(round(x * scale)) for x in v]
        n = im.bilinear(gram, c, c)
        if n > 0:
            return c, n
        scale *= 2


def hyperbolic_reduce(gram) -> tuple[list[list[int]], list[int], int]:
    """Reduce a form of signature ``(1, k - 1)`` against the majorant of a short positive vector.

    For ``h`` with ``h^2 = n > 0`` the form ``Q_h(x) = 2 (x.h)^2 - n x^2`` is
    positive definite. Each round picks ``h`` among small combinations of the
    current basis and size-reduces under ``Q_h``; rounds stop when ``n`` no
    longer drops. Returns the change of basis (rows), ``h`` and ``n``.
    """
    k = len(gram)
    T = [[int(i == j) for j in range(k)] for i in range(k)]
    best = None
    for _ in range(8):
        cur = im.congruence(gram, T)
        c, n = _shortest_positive(cur)
        h = [sum(c[i] * T[i][j] for i in range(k)) for j in range(k)]
        if best is not None and n >= best[2]:
            break
        gh = im.matvec(gram, h)
        Q = [[2 * gh[i] * gh[j] - n * gram[i][j] for j in range(k)] for i in range(k)]
        T = _pair_reduce(T, lambda u, v, Q=Q: im.bilinear(Q, u, v))
        best = (T, h, n)
    return best


def find_primitive_isotropic(inv: ExtendedInvolution, bound: int = 3) -> IsotropicSearch:
    """Primitive ``x`` in ``L^-`` with ``x^2 = 0``, searched exactly within a bound.

    ``L^-`` is reduced against the majorant ``Q_h`` of a short positive vector
    ``h``; an isotropic ``x`` with ``|x.h| = s`` has ``Q_h(x) = 2 s^2``, so the
    ellipsoids ``Q_h = 2 s^2`` for ``s = 1..bound`` are enumerated completely.
    A miss is reported as ``exhausted``, not as a proof of nonexistence,
    except for definite ``L^-`` where none can exist.
    """
    basis = size_reduce(eigenlattice(inv, -1))
    lat = inv.lattice
    if not basis:
        return IsotropicSearch(None, bound, False)
    sub = lat.sublattice(basis)
    pos, neg, zero = signature(sub)
    if zero == 0 and (pos == 0 or neg == 0):
        return IsotropicSearch(None, bound, False)
    if pos != 1 or zero:
        raise InvolutionError(f"L^- has signature {(pos, neg, zero)}; expected hyperbolic")
    T, h, n = hyperbolic_reduce([list(r) for r in sub.gram])
    gh = im.matvec(sub.gram, h)
    Q = [[2 * gh[i] * gh[j] - n * sub.gram[i][j] for j in range(len(h))] for i in range(len(h))]
    red = Lattice(im.congruence(Q, T))
    for s in range(1, bound + 1):
        hits = []
        for c in vectors_of_norm(red, 2 * s * s):
            coeffs = [sum(c[i] * T[i][j] for i in range(len(T))) for j in range(len(h))]
            if im.bilinear(sub.gram, coeffs, coeffs) == 0 and im.vector_gcd(coeffs) == 1:
                hits.append(tuple(sum(a * v[t] for a, v in zip(coeffs, basis)) for t in range(lat.rank)))
        if hits:
            return IsotropicSearch(min(hits, key=lambda x: (sum(map(abs, x)), [-v for v in x])), bound, False)
    return IsotropicSearch(None, bound, True)


def reduce_by_reflections(lat: Lattice, x, roots, max_steps: int = 10000) -> tuple[Vector, list[int]]:
    """Reflect ``x`` until it pairs nonnegatively with every root.

    At each step the first root with negative pairing is used. Returns the
    final vector and the word of root indices (replayable with
    :func:`replay_word`).
    """
    roots = [tuple(r) for r in roots]
    for r in roots:
        if lat.norm(r) != -2:
            raise LatticeError(f"root {r} has square {lat.norm(r)}")
    if lat.norm(x) < 0:
        raise LatticeError("reflection reduction expects x^2 >= 0")
    y = tuple(x)
    word: list[int] = []
    while True:
        k = next((i for i, r in enumerate(roots) if lat.dot(y, r) < 0), None)
        if k is None:
            return y, word
        if len(word) >= max_steps:
            raise StepLimitExceeded(word, y)
        y = reflect_root(lat, roots[k], y)
        word.append(k)


def replay_word(lat: Lattice, x, roots, word) -> Vector:
    y = tuple(x)
    for k in word:
        y = reflect_root(lat, roots[k], y)
    return y


def pencil_reality(inv: ExtendedInvolution, x) -> RealityVerdict:
    lat = inv.lattice
    if lat.norm(x) != 0:
        raise NotIsotropic("a half-pencil class has square 0")
    if not is_primitive(x):
        raise NotPrimitive("a half-pencil class is primitive")
    if not inv.in_minus(x):
        return RealityVerdict.NotReal
    return RealityVerdict.RealWithConjugateFibers if inv.eps_of(x) else RealityVerdict.RealWithRealFibers


def u_pair_case(lat: Lattice, y1, y2, roots) -> PairCase:
    """Pencil-plus-node exactly when ``y2 - y1`` is one of the supplied nodal classes.

    Lattice-level stand-in for the special/nonspecial split: nodal classes are
    input data, so membership is tested against the explicit list.
    """
    _check_standard_pair(lat, y1, y2)
    d = tuple(b - a for a, b in zip(y1, y2))
    if lat.norm(d) == -2 and d in {tuple(r) for r in roots}:
        return PairCase.PencilPlusNode
    return PairCase.PairOfPencils


# --------------------------------------------------------------------------
# sample involutions

# E8 nodes spanning a D4 (node 3 is the trivalent one), offset by the U block
_D4_NODES = (1, 2, 3, 4)
_D4_CENTRE = 3


@dataclass(frozen=True)
class PairData:
    """An involution together with a standard pair and a D4 basis inside ``L^-``."""

    inv: ExtendedInvolution
    u1: Vector
    u2: Vector
    d4: tuple[Vector, ...]


def _projection_involution(lat: Lattice, plus_basis) -> list[list[int]]:
    """``2P - I`` for the orthogonal projection ``P`` onto span(plus_basis)."""
    B = im.from_columns(plus_basis)
    G = [list(r) for r in lat.gram]
    inner = im.rational_inverse(im.matmul(im.matmul(im.transpose(B), G), B))
    P = im.matmul(im.matmul(B, inner), im.matmul(im.transpose(B), G))
    n = lat.rank
    m = [[2 * P[i][j] - (i == j) for j in range(n)] for i in range(n)]
    if any(v.denominator != 1 for row in m for v in row):
        raise InvolutionError("projection involution is not integral")
    return [[int(v) for v in row] for row in m]


def _d4_in_complement(lat: Lattice, comp: Sequence[Vector]) -> tuple[Vector, ...]:
    """A basis of the complement in D4neg shape, by isometry search."""
    from .lattice import isometry_search, standard_lattice

    sub = lat.sublattice(comp)
    iso = isometry_search(standard_lattice("D4neg"), sub)
    if iso is None:
        raise InvolutionError("complement is not a D4")
    cols = im.transpose(iso.matrix)
    return tuple(tuple(sum(c * v[k] for c, v in zip(col, comp)) for k in range(lat.rank)) for col in cols)


def base_pair_data() -> PairData:
    """``-1`` on U and on a D4 in E8, ``+1`` on its orthogonal D4; eps = 0."""
    lat = enriques_lattice()
    plus = [lat.basis_vector(2 + k) for k in _D4_NODES]
    m = _projection_involution(lat, plus)
    inv = make_involution(m, [0] * lat.rank, lat)
    u1, u2 = lat.basis_vector(0), lat.basis_vector(1)
    minus_e8 = [v for v in eigenlattice(inv, -1) if v[0] == 0 and v[1] == 0]
    return PairData(inv, u1, u2, _d4_in_complement(lat, minus_e8))


def random_root(lat: Lattice, rng) -> Vector:
    """A (-2)-vector ``x1 + (k-1) x2 + e`` with ``e`` in E8, ``e^2 = -2k``."""
    while True:
        e = [int(v) for v in rng.integers(-1, 2, size=8)]
        v = (0, 0, *e)
        k = -lat.norm(v) // 2
        if k >= 1:
            return (1, k - 1, *e)


def _conjugate(lat, m, roots):
    """``g m g^-1`` for ``g`` the product of the reflections in ``roots``."""
    n = lat.rank
    cols = [lat.basis_vector(j) for j in range(n)]
    # g^-1 applied to basis, then m, then g
    out = []
    for v in cols:
        for r in reversed(roots):
            v = reflect_root(lat, r, v)
        v = tuple(im.matvec(m, v))
        for r in roots:
            v = reflect_root(lat, r, v)
        out.append(v)
    return im.from_columns(out)


def _apply_word(lat, roots, v):
    for r in roots:
        v = reflect_root(lat, r, v)
    return v


def random_pair_data(rng, reflections: int = 3, base: PairData | None = None) -> PairData:
    """Conjugate of :func:`base_pair_data` by random reflections, with random eps.

    eps is drawn uniformly from the compatible functionals, conditioned on not
    vanishing on the U + D4 part of ``L^-``.
    """
    base = base or base_pair_data()
    lat = base.inv.lattice
    roots = [random_root(lat, rng) for _ in range(reflections)]
    m = _conjugate(lat, [list(r) for r in base.inv.m], roots)
    u1, u2 = (_apply_word(lat, roots, v) for v in (base.u1, base.u2))
    d4 = tuple(_apply_word(lat, roots, v) for v in base.d4)
    kernel = compatible_eps_basis(m)
    span = (u1, u2, *d4)
    while True:
        picks = rng.integers(0, 2, size=len(kernel))
        eps = [sum(int(p) * k[i] for p, k in zip(picks, kernel)) % 2 for i in range(lat.rank)]
        if any(sum(a * b for a, b in zip(eps, v)) % 2 for v in span):
            break
    return PairData(make_involution(m, eps, lat), u1, u2, d4)
