"""Exact basis reduction and bounded enumeration on Gram matrices.

All operations work purely on Gram matrices and coefficient vectors; there
are no basis vectors and no floats. LLL and KZ return a unimodular transform
alongside the reduced Gram so callers can map coefficients back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import linalg as la
from .errors import BoundTooLarge, PreconditionViolated
from .lattice import Lattice, dual, make_lattice, norm_sq

DEFAULT_DELTA = Fraction(3, 4)
ENUM_CAP = 10**8


@dataclass(frozen=True)
class GSO:
    """Gram-Schmidt data: unit lower-triangular mu and squared lengths."""

    mu: la.RatMat
    gs_norms_sq: la.RatVec


@dataclass(frozen=True)
class ReducedBasis:
    L: Lattice
    U: la.IntMat


def _gso_raw(G):
    n = len(G)
    mu = [[Fraction(0)] * n for _ in range(n)]
    r = [[Fraction(0)] * n for _ in range(n)]
    gs = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            r[i][j] = Fraction(G[i][j]) - sum(
                (r[i][k] * mu[j][k] for k in range(j)), Fraction(0)
            )
            mu[i][j] = r[i][j] / gs[j]
        mu[i][i] = Fraction(1)
        gs[i] = Fraction(G[i][i]) - sum(
            (mu[i][k] * r[i][k] for k in range(i)), Fraction(0)
        )
        assert gs[i] > 0
    return mu, gs


def gso(L: Lattice) -> GSO:
    """Exact Gram-Schmidt coefficients and squared orthogonal lengths."""
    mu, gs = _gso_raw(L.gram)
    return GSO(tuple(tuple(row) for row in mu), tuple(gs))


def _shear(G, U, k, j, r):
    # b_k <- b_k - r*b_j: congruence update of G, column update of U
    for row in G:
        row[k] -= r * row[j]
    for col in range(len(G)):
        G[k][col] -= r * G[j][col]
    for row in U:
        row[k] -= r * row[j]


def _swap(G, U, k):
    for row in G:
        row[k - 1], row[k] = row[k], row[k - 1]
    G[k - 1], G[k] = G[k], G[k - 1]
    for row in U:
        row[k - 1], row[k] = row[k], row[k - 1]


def lll_reduce(L: Lattice, delta=DEFAULT_DELTA) -> ReducedBasis:
    """Exact LLL reduction of a Gram matrix."""
    d = Fraction(delta)
    if not Fraction(1, 4) < d < 1:
        raise PreconditionViolated(f"delta must lie in (1/4, 1), got {delta}")
    n = L.n
    G = [list(row) for row in L.gram]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    k = 1
    while k < n:
        mu, gs = _gso_raw(G)
        for j in range(k - 1, -1, -1):
            r = round(mu[k][j])
            if r:
                _shear(G, U, k, j, r)
                mu, gs = _gso_raw(G)
        if gs[k] >= (d - mu[k][k - 1] ** 2) * gs[k - 1]:
            k += 1
        else:
            _swap(G, U, k)
            k = max(k - 1, 1)
    return ReducedBasis(
        make_lattice(tuple(tuple(row) for row in G)),
        tuple(tuple(row) for row in U),
    )


def _floor_plus_sqrt(f: Fraction, V: Fraction) -> int:
    """floor(f + sqrt(V)) computed exactly; requires V >= 0."""
    a, b = V.numerator, V.denominator
    s = isqrt(a * b)
    x = (f.numerator * b + f.denominator * s) // (f.denominator * b)
    while True:
        t = x + 1 - f
        if t <= 0 or t * t <= V:
            x += 1
        else:
            return x


def _floor_sqrt(f: Fraction) -> int:
    return _floor_plus_sqrt(Fraction(0), f)


def _enumerate_iter(L: Lattice, bound: Fraction, cap: int):
    """Yield all nonzero coefficient vectors with norm_sq <= bound, unsorted."""
    n = L.n
    if n == 0 or bound < 0:
        return
    red = lll_reduce(L)
    mu, gs = _gso_raw(red.L.gram)
    predicted = 1
    for q in gs:
        predicted *= 2 * _floor_sqrt(bound / q) + 1
    if predicted > cap:
        raise BoundTooLarge(
            f"predicted {predicted} enumeration candidates exceed cap {cap}"
        )
    U = red.U
    y = [0] * n

    def walk(i, used):
        if i < 0:
            if any(y):
                yield tuple(sum(U[r][c] * y[c] for c in range(n)) for r in range(n))
            return
        c = sum((mu[j][i] * y[j] for j in range(i + 1, n)), Fraction(0))
        rem = (bound - used) / gs[i]
        hi = _floor_plus_sqrt(-c, rem)
        lo = -_floor_plus_sqrt(c, rem)
        for xi in range(lo, hi + 1):
            y[i] = xi
            yield from walk(i - 1, used + gs[i] * (xi + c) ** 2)
        y[i] = 0

    yield from walk(n - 1, Fraction(0))


def enumerate_below(L: Lattice, bound_sq, cap: int = ENUM_CAP) -> list:
    """All nonzero coefficient vectors of squared norm <= bound_sq.

    Output is sorted by (squared norm, coordinates) and closed under
    negation. Raises BoundTooLarge if the predicted candidate count
    exceeds cap.
    """
    out = list(_enumerate_iter(L, Fraction(bound_sq), cap))
    out.sort(key=lambda v: (norm_sq(L, v), v))
    return out


def _sign_normalize(v):
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def shortest_vector(L: Lattice) -> la.IntVec:
    """A shortest nonzero coefficient vector, deterministically chosen.

    Ties are broken by sign-normalizing (first nonzero coordinate positive)
    and then comparing coordinates from the last to the first.
    """
    if L.n == 0:
        raise PreconditionViolated("rank must be at least 1")
    red = lll_reduce(L)
    bound = min(red.L.gram[i][i] for i in range(L.n))
    vecs = enumerate_below(L, bound)
    lam = norm_sq(L, vecs[0])
    cands = {_sign_normalize(v) for v in vecs if norm_sq(L, v) == lam}
    return min(cands, key=lambda v: tuple(reversed(v)))


def _size_reduce(G0, U0):
    n = len(G0)
    G = [list(row) for row in G0]
    U = [list(row) for row in U0]
    for i in range(1, n):
        for j in range(i - 1, -1, -1):
            mu, _ = _gso_raw(G)
            r = round(mu[i][j])
            if r:
                _shear(G, U, i, j, r)
    return tuple(tuple(row) for row in G), tuple(tuple(row) for row in U)


def kz_basis(L: Lattice) -> ReducedBasis:
    """Reduce so every GSO norm is the first minimum of its tail projection."""
    n = L.n
    if n == 0:
        return ReducedBasis(L, ())
    v = shortest_vector(L)
    # complete the (primitive) shortest vector to a full unimodular matrix
    _, _, winv = la.hnf_with_inverse(la.transpose(tuple((x,) for x in v)))
    V = la.transpose(winv)
    if n == 1:
        U = V
    else:
        G1 = la.mat_mul(la.transpose(V), la.mat_mul(L.gram, V))
        sub = kz_basis(make_lattice(la.schur_complement(G1, (0,))))
        blk = [[0] * n for _ in range(n)]
        blk[0][0] = 1
        for i in range(n - 1):
            for j in range(n - 1):
                blk[i + 1][j + 1] = sub.U[i][j]
        U = la.mat_mul(V, tuple(tuple(row) for row in blk))
    G2 = la.mat_mul(la.transpose(U), la.mat_mul(L.gram, U))
    Gf, Uf = _size_reduce(G2, U)
    return ReducedBasis(make_lattice(Gf), Uf)


def dual_kz_basis(L: Lattice) -> ReducedBasis:
    """Reduce so the dual of the output Gram is KZ-reduced."""
    n = L.n
    if n == 0:
        return ReducedBasis(L, ())
    kd = kz_basis(dual(L))
    uinv = la.inverse(kd.U)
    rows = []
    for row in la.transpose(uinv):
        assert all(x.denominator == 1 for x in row)
        rows.append(tuple(x.numerator for x in row))
    U = tuple(rows)
    G = la.mat_mul(la.transpose(U), la.mat_mul(L.gram, U))
    return ReducedBasis(make_lattice(G), U)


def successive_minima_sq(L: Lattice) -> la.RatVec:
    """Exact squared successive minima, via enumeration at growing radii."""
    n = L.n
    if n == 0:
        return ()
    red = lll_reduce(L)
    bound = min(red.L.gram[i][i] for i in range(n))
    while True:
        mins = []
        chosen = ()
        for v in enumerate_below(L, bound):
            if la.int_rank(chosen + (v,)) > len(chosen):
                chosen = chosen + (v,)
                mins.append(norm_sq(L, v))
                if len(mins) == n:
                    return tuple(mins)
        bound *= 2
