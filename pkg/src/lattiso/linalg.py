"""Exact linear algebra over arbitrary-precision integers and rationals.

Matrices are immutable row-major tuples of tuples. Integer matrices hold
Python ints; rational matrices hold ints or fractions.Fraction entries.
No floating point anywhere: elimination is fraction-free (Bareiss-style)
on integer-scaled matrices, so every result is exact no matter how large
intermediate entries grow.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _gcd

from .errors import DimensionMismatch, SingularMatrix

Int = int
Rat = Fraction
IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]
RatVec = tuple[Fraction, ...]
RatMat = tuple[RatVec, ...]


def _check_rect(M) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    for r in M:
        if len(r) != cols:
            raise DimensionMismatch("ragged matrix")
    return rows, cols


def identity(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(M):
    rows, cols = _check_rect(M)
    return tuple(tuple(M[i][j] for i in range(rows)) for j in range(cols))


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch("vector length mismatch")
    return sum(a * b for a, b in zip(u, v))


def mat_vec(M, x):
    return tuple(dot(row, x) for row in M)


def mat_mul(A, B):
    ra, ca = _check_rect(A)
    rb, cb = _check_rect(B)
    if ca != rb:
        raise DimensionMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def to_rat(M) -> RatMat:
    """Normalize every entry to Fraction."""
    return tuple(tuple(Fraction(e) for e in row) for row in M)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _scale_rows_to_int(M) -> list[list[int]]:
    """Clear denominators row by row (row scaling preserves kernels)."""
    out = []
    for row in M:
        den = 1
        for e in row:
            if isinstance(e, Fraction):
                d = e.denominator
                den = den * d // _gcd(den, d)
        out.append([int(e * den) for e in row])
    return out


def hnf(M) -> tuple[IntMat, IntMat]:
    """Column-style Hermite normal form H = M @ U with U unimodular.

    H's nonzero columns come first and form the canonical echelon basis of
    the column lattice of M: each has a positive pivot (topmost nonzero
    entry), pivot rows strictly increase column to column, and in a pivot's
    row every earlier column's entry is reduced into [0, pivot). Zero
    columns trail.
    """
    H, U, _ = hnf_with_inverse(M)
    return H, U


def hnf_with_inverse(M) -> tuple[IntMat, IntMat, IntMat]:
    """Like hnf() but also returns U^{-1}, tracked with O(1) extra work per op."""
    m, n = _check_rect(M)
    cols = [[M[r][c] for r in range(m)] for c in range(n)]
    ucols = [[1 if r == c else 0 for r in range(n)] for c in range(n)]
    uinv = [[1 if r == c else 0 for c in range(n)] for r in range(n)]  # rows

    def colop2(i, j, a, b, c, d):
        # (col_i, col_j) <- (a*col_i + b*col_j, c*col_i + d*col_j), det(a d - b c) = +-1
        for block in (cols, ucols):
            ci, cj = block[i], block[j]
            block[i] = [a * x + b * y for x, y in zip(ci, cj)]
            block[j] = [c * x + d * y for x, y in zip(ci, cj)]
        # inverse of [[a, c], [b, d]] acting on rows i, j of uinv
        det = a * d - b * c  # +-1
        ri, rj = uinv[i], uinv[j]
        uinv[i] = [det * (d * x - c * y) for x, y in zip(ri, rj)]
        uinv[j] = [det * (-b * x + a * y) for x, y in zip(ri, rj)]

    pc = 0
    for row in range(m):
        if pc == n:
            break
        piv = None
        for j in range(pc, n):
            if cols[j][row]:
                piv = j
                break
        if piv is None:
            continue
        if piv != pc:
            cols[pc], cols[piv] = cols[piv], cols[pc]
            ucols[pc], ucols[piv] = ucols[piv], ucols[pc]
            uinv[pc], uinv[piv] = uinv[piv], uinv[pc]
        for j in range(pc + 1, n):
            b = cols[j][row]
            if not b:
                continue
            a = cols[pc][row]
            g, s, t = _xgcd(a, b)
            colop2(pc, j, s, t, -(b // g), a // g)
        if cols[pc][row] < 0:
            cols[pc] = [-x for x in cols[pc]]
            ucols[pc] = [-x for x in ucols[pc]]
            uinv[pc] = [-x for x in uinv[pc]]
        pivval = cols[pc][row]
        for k in range(pc):
            f = cols[k][row] // pivval  # floor -> remainder lands in [0, pivval)
            if f:
                cols[k] = [x - f * y for x, y in zip(cols[k], cols[pc])]
                ucols[k] = [x - f * y for x, y in zip(ucols[k], ucols[pc])]
                uinv[pc] = [x + f * y for x, y in zip(uinv[pc], uinv[k])]
        pc += 1

    H = tuple(tuple(cols[c][r] for c in range(n)) for r in range(m))
    U = tuple(tuple(ucols[c][r] for c in range(n)) for r in range(n))
    Uinv = tuple(tuple(x for x in rowv) for rowv in uinv)
    return H, U, Uinv


def nonzero_columns(H) -> int:
    """Number of leading nonzero columns of a column-echelon matrix."""
    m, n = _check_rect(H)
    count = 0
    for c in range(n):
        if any(H[r][c] for r in range(m)):
            count += 1
    return count


def integer_kernel(M) -> IntMat:
    """Basis of {x in Z^n : M x = 0} as the columns of an n x k HNF matrix.

    Rational input is allowed (rows are scaled to integers first, which
    preserves the kernel). The result is canonical: the kernel lattice's
    own Hermite normal form. k = 0 yields a matrix of n empty rows.
    """
    A = _scale_rows_to_int(M)
    m = len(A)
    n = len(A[0]) if m else 0
    H, U = hnf(tuple(tuple(r) for r in A))
    r = nonzero_columns(H)
    if r == n:
        return tuple(() for _ in range(n))
    K = tuple(tuple(U[i][c] for c in range(r, n)) for i in range(n))
    KH, _ = hnf(K)
    return KH


def _bareiss_det_int(A: list[list[int]]) -> int:
    """Fraction-free determinant; A is consumed."""
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            rowi = A[i]
            rowk = A[k]
            for j in range(k + 1, n):
                num = akk * rowi[j] - aik * rowk[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "fraction-free elimination produced a remainder"
                rowi[j] = q
            rowi[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def det(M) -> Fraction:
    """Exact determinant of a square matrix with int or Fraction entries."""
    n, c = _check_rect(M)
    if n != c:
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    A = []
    for row in M:
        den = 1
        for e in row:
            if isinstance(e, Fraction):
                d = e.denominator
                den = den * d // _gcd(den, d)
        scale *= den
        A.append([int(e * den) for e in row])
    return Fraction(_bareiss_det_int(A), 1) / scale


def inverse(M) -> RatMat:
    """Exact inverse of a square rational matrix.

    Fraction-free Gauss-Jordan on the integer-scaled matrix; the candidate
    is verified by multiplication before returning, so a wrong answer is
    impossible (it would raise instead). Raises SingularMatrix when rank
    deficient.
    """
    n, c = _check_rect(M)
    if n != c:
        raise DimensionMismatch("inverse of a non-square matrix")
    if n == 0:
        return ()
    dens = []
    W = []
    for row in M:
        den = 1
        for e in row:
            if isinstance(e, Fraction):
                d = e.denominator
                den = den * d // _gcd(den, d)
        dens.append(den)
        W.append([int(e * den) for e in row] + [0] * n)
    for i in range(n):
        W[i][n + i] = 1

    prev = 1
    for k in range(n):
        if W[k][k] == 0:
            for i in range(k + 1, n):
                if W[i][k]:
                    W[k], W[i] = W[i], W[k]
                    break
            else:
                raise SingularMatrix("matrix is not invertible")
        piv = W[k][k]
        for i in range(n):
            if i == k:
                continue
            wik = W[i][k]
            rowi = W[i]
            rowk = W[k]
            for j in range(2 * n):
                if j == k:
                    continue
                num = piv * rowi[j] - wik * rowk[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "fraction-free elimination produced a remainder"
                rowi[j] = q
            rowi[k] = 0
        prev = piv

    d = W[0][0]
    if d == 0:
        raise SingularMatrix("matrix is not invertible")
    # B^{-1} = right block / d; M^{-1} = B^{-1} * diag(dens)
    inv = tuple(
        tuple(Fraction(W[i][n + j] * dens[j], d) for j in range(n)) for i in range(n)
    )
    # verification: M @ inv must be the identity
    prod = mat_mul(M, inv)
    for i in range(n):
        for j in range(n):
            if prod[i][j] != (1 if i == j else 0):
                raise SingularMatrix("inverse verification failed")
    return inv


def schur_complement(G, pivots) -> RatMat:
    """G_CC - G_CS G_SS^{-1} G_SC for S = pivots, C = complement (both sorted).

    Realizes orthogonal projection of a Gram matrix away from the span of
    the pivot vectors. Raises SingularMatrix if the pivot block is singular.
    """
    n, c = _check_rect(G)
    if n != c:
        raise DimensionMismatch("Schur complement of a non-square matrix")
    S = sorted(set(pivots))
    if not S or len(S) == n or any(i < 0 or i >= n for i in S):
        raise DimensionMismatch("pivots must be a nonempty proper subset of indices")
    C = [i for i in range(n) if i not in set(S)]
    G_SS = tuple(tuple(Fraction(G[i][j]) for j in S) for i in S)
    G_SC = tuple(tuple(Fraction(G[i][j]) for j in C) for i in S)
    G_CS = tuple(tuple(Fraction(G[i][j]) for j in S) for i in C)
    G_CC = tuple(tuple(Fraction(G[i][j]) for j in C) for i in C)
    X = mat_mul(mat_mul(G_CS, inverse(G_SS)), G_SC)
    return tuple(
        tuple(G_CC[i][j] - X[i][j] for j in range(len(C))) for i in range(len(C))
    )


def int_rank(rows) -> int:
    """Rank over Q of a sequence of integer (or rational) row vectors."""
    A = [list(r) for r in rows]
    m = len(A)
    if m == 0:
        return 0
    n = len(A[0])
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if A[i][col]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        arc = A[r][col]
        for i in range(r + 1, m):
            aic = A[i][col]
            if aic:
                A[i] = [arc * x - aic * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def hnf_solve(H, x):
    """Solve H y = x over Z for a column-echelon H (as produced by hnf).

    Returns the integer coefficient tuple y (padded with zeros for trailing
    zero columns), or None when x is not in the column lattice of H.
    """
    m, n = _check_rect(H)
    if len(x) != m:
        raise DimensionMismatch("vector length mismatch")
    resid = list(x)
    y = [0] * n
    for c in range(n):
        piv_row = None
        for r in range(m):
            if H[r][c]:
                piv_row = r
                break
        if piv_row is None:
            break  # zero columns trail
        q, rem = divmod(resid[piv_row], H[piv_row][c])
        if rem:
            return None
        if q:
            y[c] = q
            for r in range(m):
                resid[r] -= q * H[r][c]
    if any(resid):
        return None
    return tuple(y)
