"""Lattice isomorphism enumeration with unimodular certificates.

The equal-minima core pins an isolating dual vector w1 on the source,
walks the exact equal-norm dual shell of the target, and converts every
chain match into a candidate map; an exact Gram identity is the sole
acceptance test. The general case recurses: isomorphisms of the sublattice
spanned by the shortest vectors are combined with isomorphisms of the
projection along it, glued through orthogonal lifts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import CapExceeded, NotUnique, PreconditionViolated
from .isolation import Chain, extract_chain, isolation_radius, span_oracle
from .lattice import (
    Lattice,
    det_sq,
    dual,
    intersect_with_span,
    is_isomorphism,
    make_lattice,
    norm_sq,
    project_away,
)
from .reduction import (
    ENUM_CAP,
    _enumerate_iter,
    enumerate_below,
    kz_basis,
    shortest_vector,
    successive_minima_sq,
)

DEFAULT_EPS = Fraction(1, 2)
RANDOM_DRAWS_PER_RADIUS = 8


@dataclass(frozen=True)
class IsoSet:
    source: Lattice
    target: Lattice
    isoms: tuple


@dataclass(frozen=True)
class IsolatingDual:
    w: la.IntVec
    chain: Chain


def shortest_vector_set(L: Lattice) -> list:
    """All coefficient vectors of minimal norm, sorted deterministically."""
    lam = norm_sq(L, shortest_vector(L))
    return [v for v in enumerate_below(L, lam) if norm_sq(L, v) == lam]


def _as_int_matrix(M):
    rows = []
    for row in M:
        out = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                return None
            out.append(f.numerator)
        rows.append(tuple(out))
    return tuple(rows)


def find_isolating_dual(L: Lattice, eps=DEFAULT_EPS, rng_seed=0) -> IsolatingDual:
    """A dual vector whose inner products isolate a full chain of minima.

    Requires all successive minima of L to coincide. Selectors are sampled
    in the coordinates of a KZ basis of the dual, starting at a small
    radius and doubling so the winning w stays short; a deterministic scan
    of dual vectors by increasing norm backs up the sampling.
    """
    n = L.n
    if n == 0:
        raise PreconditionViolated("rank must be at least 1")
    mins = successive_minima_sq(L)
    if mins[0] != mins[-1]:
        raise PreconditionViolated("all successive minima must coincide")
    A = shortest_vector_set(L)
    D = dual(L)
    kd = kz_basis(D)
    # coordinates of the minima in the basis dual to the KZ dual basis
    Ut = la.transpose(kd.U)
    K = max(max(abs(x) for x in la.mat_vec(Ut, a)) for a in A)
    K = max(K, 1)
    lam_dual = norm_sq(D, shortest_vector(D))
    cap_sq = 25 * n**17 * lam_dual
    r_max = isolation_radius(K, n, n, eps)
    rng = random.Random(rng_seed)
    oracle = span_oracle()
    radius = 2
    while True:
        r_eff = min(radius, r_max)
        for _ in range(RANDOM_DRAWS_PER_RADIUS):
            z = tuple(rng.randint(1, r_eff) for _ in range(n))
            w = la.mat_vec(kd.U, z)
            try:
                chain = extract_chain(A, w, oracle)
            except NotUnique:
                continue
            if len(chain.vectors) != n:
                continue
            if Fraction(eps) >= Fraction(1, 2):
                assert norm_sq(D, w) <= cap_sq
            return IsolatingDual(w=w, chain=chain)
        if r_eff == r_max:
            break
        radius *= 2
    # deterministic fallback: scan dual vectors by increasing norm
    bound = lam_dual
    while bound <= cap_sq:
        for w in enumerate_below(D, min(bound, cap_sq)):
            try:
                chain = extract_chain(A, w, oracle)
            except NotUnique:
                continue
            if len(chain.vectors) == n:
                return IsolatingDual(w=w, chain=chain)
        bound *= 2
    raise CapExceeded("no isolating dual vector below the proven norm cap")


def _require_equal_minima(L: Lattice):
    if L.n == 0:
        return
    mins = successive_minima_sq(L)
    if mins[0] != mins[-1]:
        raise PreconditionViolated("all successive minima must coincide")


def _iter_equal_minima(L1: Lattice, L2: Lattice, low_memory: bool):
    """Yield isomorphisms L1 -> L2, assuming equal-minima lattices."""
    if L1.n != L2.n:
        return
    n = L1.n
    if n == 0:
        yield ()
        return
    if det_sq(L1) != det_sq(L2):
        return
    if norm_sq(L1, shortest_vector(L1)) != norm_sq(L2, shortest_vector(L2)):
        return
    A1 = shortest_vector_set(L1)
    A2 = shortest_vector_set(L2)
    if len(A1) != len(A2):
        return
    pinned = find_isolating_dual(L1)
    X = la.transpose(pinned.chain.vectors)
    Xinv = la.inverse(X)
    D2 = dual(L2)
    t = norm_sq(dual(L1), pinned.w)
    if low_memory:
        shell = (w for w in _enumerate_iter(D2, Fraction(t), ENUM_CAP) if norm_sq(D2, w) == t)
    else:
        shell = [w for w in enumerate_below(D2, t) if norm_sq(D2, w) == t]
    oracle = span_oracle()
    seen = set()
    for w2 in shell:
        try:
            chain2 = extract_chain(A2, w2, oracle)
        except NotUnique:
            continue
        if len(chain2.vectors) != n:
            continue
        Y = la.transpose(chain2.vectors)
        U = _as_int_matrix(la.mat_mul(Y, Xinv))
        if U is None or U in seen:
            continue
        if is_isomorphism(L1, L2, U):
            seen.add(U)
            yield U


def lip_equal_minima(L1: Lattice, L2: Lattice, low_memory: bool = False) -> IsoSet:
    """All isomorphisms between two lattices whose minima all coincide."""
    _require_equal_minima(L1)
    _require_equal_minima(L2)
    isoms = tuple(sorted(_iter_equal_minima(L1, L2, low_memory)))
    return IsoSet(L1, L2, isoms)


def _iter_general(L1: Lattice, L2: Lattice, low_memory: bool):
    if L1.n != L2.n:
        return
    n = L1.n
    if n == 0:
        yield ()
        return
    if det_sq(L1) != det_sq(L2):
        return
    if norm_sq(L1, shortest_vector(L1)) != norm_sq(L2, shortest_vector(L2)):
        return
    A1 = shortest_vector_set(L1)
    A2 = shortest_vector_set(L2)
    if len(A1) != len(A2):
        return
    W1 = intersect_with_span(L1, tuple(A1))
    W2 = intersect_with_span(L2, tuple(A2))
    k = len(W1[0])
    if k != len(W2[0]):
        return
    if k == n:
        yield from _iter_equal_minima(L1, L2, low_memory)
        return
    sub1 = make_lattice(la.mat_mul(la.transpose(W1), la.mat_mul(L1.gram, W1)))
    sub2 = make_lattice(la.mat_mul(la.transpose(W2), la.mat_mul(L2.gram, W2)))
    out_sub = list(_iter_equal_minima(sub1, sub2, low_memory))
    if not out_sub:
        return
    proj1, lift1 = project_away(L1, tuple(A1))
    proj2, lift2 = project_away(L2, tuple(A2))
    out_proj = list(_iter_general(proj1, proj2, low_memory))
    if not out_proj:
        return
    lift1_inv = la.inverse(lift1)
    for U1 in out_sub:
        for U2 in out_proj:
            blk = [[Fraction(0)] * n for _ in range(n)]
            for i in range(k):
                for j in range(k):
                    blk[i][j] = Fraction(U1[i][j])
            for i in range(n - k):
                for j in range(n - k):
                    blk[k + i][k + j] = Fraction(U2[i][j])
            M = la.mat_mul(lift2, la.mat_mul(tuple(tuple(r) for r in blk), lift1_inv))
            U = _as_int_matrix(M)
            if U is not None and is_isomorphism(L1, L2, U):
                yield U


def lip_general(L1: Lattice, L2: Lattice, low_memory: bool = False) -> IsoSet:
    """The complete set of isomorphisms between two lattices of any shape."""
    isoms = tuple(sorted(set(_iter_general(L1, L2, low_memory))))
    return IsoSet(L1, L2, isoms)


def lip_decide(L1: Lattice, L2: Lattice) -> bool:
    """Whether the lattices are isomorphic; stops at the first certificate."""
    for _ in _iter_general(L1, L2, False):
        return True
    return False


def automorphisms(L: Lattice) -> IsoSet:
    """The full automorphism group of L as unimodular matrices."""
    out = lip_general(L, L)
    isoms = set(out.isoms)
    assert la.identity(L.n) in isoms
    for U in isoms:
        inv = _as_int_matrix(la.inverse(U))
        assert inv is not None and inv in isoms
    return out
