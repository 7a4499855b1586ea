"""Lattices presented by exact rational Gram matrices.

A lattice is carried entirely in coefficient space: points are integer
coefficient vectors against an implicit basis whose pairwise inner products
are the Gram matrix. Every geometric question (norms, duality, projection,
sublattice index) reduces to exact rational arithmetic on the Gram matrix,
so no basis embedding and no floating point ever appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import linalg as la
from .errors import (
    DimensionMismatch,
    NotPositiveDefinite,
    NotSymmetric,
    PreconditionViolated,
    RankDeficient,
    ZeroLattice,
)

CoeffVec = la.IntVec
DualCoeffVec = la.IntVec
Isomorphism = la.IntMat


@dataclass(frozen=True)
class Lattice:
    """Positive definite Gram matrix; rank 0 (empty Gram) is allowed."""

    gram: la.RatMat

    @property
    def n(self) -> int:
        return len(self.gram)


def make_lattice(gram) -> Lattice:
    """Validate and freeze a Gram matrix.

    Requires a square symmetric positive definite matrix of ints/Fractions
    (checked via leading principal minors, exactly). The empty matrix gives
    the rank-0 lattice.
    """
    rows, cols = la._check_rect(gram)
    if rows != cols:
        raise DimensionMismatch("Gram matrix must be square")
    G = la.to_rat(gram)
    for i in range(rows):
        for j in range(i):
            if G[i][j] != G[j][i]:
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
    for k in range(1, rows + 1):
        minor = la.det(tuple(row[:k] for row in G[:k]))
        if minor <= 0:
            raise NotPositiveDefinite(f"leading {k}x{k} minor is {minor}")
    return Lattice(G)


def dual(L: Lattice) -> Lattice:
    """Dual lattice: Gram matrix is the inverse Gram matrix."""
    return Lattice(la.inverse(L.gram))


def det_sq(L: Lattice) -> Fraction:
    """Squared lattice determinant det(G); 1 for rank 0."""
    return la.det(L.gram)


def norm_sq(L: Lattice, x) -> Fraction:
    """Exact squared norm of the lattice point with coefficients x."""
    if len(x) != L.n:
        raise DimensionMismatch("coefficient vector length mismatch")
    return Fraction(sum(x[i] * sum(L.gram[i][j] * x[j] for j in range(L.n)) for i in range(L.n)))


def dual_norm_sq(L: Lattice, w) -> Fraction:
    """Exact squared norm of the dual point with dual coefficients w."""
    return norm_sq(dual(L), w)


def basis_from_generators(Ggen) -> tuple[Lattice, la.IntMat]:
    """Extract a lattice basis from a PSD Gram matrix of N generators.

    Returns (L, Z) where Z is N x n integer, the columns of Z are the
    coefficient combinations of the generators that form a basis, and
    L.gram = Z^T Ggen Z. Relations among generators are exactly the integer
    kernel of Ggen (PSD: x^T G x = 0 iff G x = 0), found via one Hermite
    normal form; the leading transform columns complete the kernel to a
    basis of Z^N, so they descend to a basis of the generated lattice.

    Raises ZeroLattice when every generator is the zero vector, and
    NotPositiveDefinite when Ggen is not PSD.
    """
    rows, cols = la._check_rect(Ggen)
    if rows != cols:
        raise DimensionMismatch("generator Gram matrix must be square")
    G = la.to_rat(Ggen)
    for i in range(rows):
        for j in range(i):
            if G[i][j] != G[j][i]:
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
    if all(all(e == 0 for e in row) for row in G):
        raise ZeroLattice("all generators are zero")
    A = tuple(tuple(r) for r in la._scale_rows_to_int(G))
    H, U = la.hnf(A)
    r = la.nonzero_columns(H)
    Z = tuple(tuple(U[i][c] for c in range(r)) for i in range(rows))
    gram = la.mat_mul(la.mat_mul(la.transpose(Z), G), Z)
    return make_lattice(gram), Z


def intersect_with_span(L: Lattice, S) -> la.IntMat:
    """Saturated basis of L ∩ span(S), as n x k HNF coefficient columns.

    Membership of a coefficient vector in the rational span of S does not
    depend on the Gram matrix, so this is a pure coefficient-space
    computation: take the integer kernel of the rows S (the orthogonal
    complement under the standard dot product), then the kernel of that,
    which is the saturation of span(S) in Z^n. Kernels are saturated by definition,
    so no extra division step is needed.
    """
    if not S:
        raise PreconditionViolated("S must be nonempty")
    n = L.n
    for s in S:
        if len(s) != n:
            raise DimensionMismatch("span vector length mismatch")
    K1 = la.integer_kernel(tuple(tuple(s) for s in S))
    if not K1 or not K1[0]:
        return la.identity(n)
    return la.integer_kernel(la.transpose(K1))


def project_away(L: Lattice, S) -> tuple[Lattice, la.RatMat]:
    """Project L orthogonally away from span(S).

    Returns (Lproj, lift). Lproj is the projected lattice (rank n - k where
    k = rank of span(S); rank 0 when S spans everything, by design not an
    error). lift is the n x n rational matrix whose first k columns are the
    saturated sublattice basis W = L ∩ span(S) and whose last n - k columns
    are the coefficient-space lifts of the projected basis vectors; it is
    invertible, and restriction/projection data expressed against (W, tail)
    can be pulled back through it.
    """
    n = L.n
    W = intersect_with_span(L, S)
    k = len(W[0]) if W else 0
    if k == 0:
        raise PreconditionViolated("S spans no lattice direction")
    if k == n:
        return Lattice(()), la.to_rat(W)
    # complete W to a unimodular basis: transpose-HNF trick
    _, Uw, UwInv = la.hnf_with_inverse(la.transpose(W))
    V = la.transpose(UwInv)  # first k columns span the lattice of W
    G_ad = la.mat_mul(la.mat_mul(la.transpose(V), L.gram), V)
    S_idx = list(range(k))
    C_idx = list(range(k, n))
    G_SS = tuple(tuple(G_ad[i][j] for j in S_idx) for i in S_idx)
    G_SC = tuple(tuple(G_ad[i][j] for j in C_idx) for i in S_idx)
    Gamma = la.mat_mul(la.inverse(G_SS), G_SC)  # k x (n-k)
    Gproj = la.schur_complement(G_ad, S_idx)
    # lift of projected basis vector j: V @ (-Gamma_col_j ⊕ e_j)
    lift_tail = tuple(
        tuple(
            sum(
                V[i][t] * (-Gamma[t][j] if t < k else (1 if t == k + j else 0))
                for t in range(n)
            )
            for j in range(n - k)
        )
        for i in range(n)
    )
    lift = tuple(
        tuple(Fraction(W[i][c]) for c in range(k)) + tuple(lift_tail[i])
        for i in range(n)
    )
    return make_lattice(Gproj), lift


def index_of(Msub, L: Lattice) -> int:
    """Index of the full-rank sublattice spanned by the columns of Msub.

    Exact square root of det(Msub^T G Msub) / det(G); always a positive
    integer for a genuine full-rank sublattice (asserted). Raises
    RankDeficient when the columns do not have full rank.
    """
    rows, cols = la._check_rect(Msub)
    if rows != L.n or cols != L.n:
        raise DimensionMismatch("sublattice matrix must be square of the lattice rank")
    if L.n == 0:
        return 1
    sub_det = la.det(la.mat_mul(la.mat_mul(la.transpose(Msub), L.gram), Msub))
    if sub_det == 0:
        raise RankDeficient("sublattice matrix has rank below the lattice rank")
    ratio = sub_det / det_sq(L)
    assert ratio.denominator == 1, "sublattice index must be an integer"
    root = isqrt(ratio.numerator)
    assert root * root == ratio.numerator, "index squared must be a perfect square"
    return root


def is_isomorphism(L1: Lattice, L2: Lattice, U) -> bool:
    """Exact check that U is a unimodular congruence: G1 == U^T G2 U."""
    if L1.n != L2.n:
        return False
    n = L1.n
    if n == 0:
        return U == ()
    rows, cols = la._check_rect(U)
    if rows != n or cols != n:
        return False
    if any(not isinstance(e, int) for row in U for e in row):
        return False
    if abs(la.det(U)) != 1:
        return False
    return la.mat_mul(la.mat_mul(la.transpose(U), L2.gram), U) == L1.gram
