"""Exact rational and integer linear algebra.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Matrices are plain row-major sequences of sequences; every
function returns tuples of tuples so results are hashable and immutable.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import DimensionMismatch, NotFullRank, SingularMatrix

Rational = Fraction
IntVector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]


def _shape(A: Sequence[Sequence]) -> tuple[int, int]:
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise DimensionMismatch("ragged matrix")
    return m, n


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: Sequence[Sequence]) -> tuple[tuple, ...]:
    return tuple(zip(*A))


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple[tuple, ...]:
    m, k = _shape(A)
    k2, n = _shape(B)
    if k != k2:
        raise DimensionMismatch(f"cannot multiply {m}x{k} by {k2}x{n}")
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def mat_vec(A: Sequence[Sequence], v: Sequence) -> tuple:
    if A and len(A[0]) != len(v):
        raise DimensionMismatch("matrix/vector size mismatch")
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch("dot product of vectors of different length")
    return sum(a * b for a, b in zip(u, v))


def invert_rational_matrix(B: Sequence[Sequence]) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination over Q."""
    m, n = _shape(B)
    if m != n:
        raise DimensionMismatch("only square matrices are invertible")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(B)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("determinant is zero")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def row_echelon(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon form over Q; zero rows are dropped."""
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return []
    n = len(A[0])
    out: list[list[Fraction]] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][col]
        A[r] = [x / p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    out = [row for row in A[:r]]
    return out


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return len(row_echelon(vectors))


def determinant(A: Sequence[Sequence]) -> Fraction:
    m, n = _shape(A)
    if m != n:
        raise DimensionMismatch("determinant of a non-square matrix")
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        p = M[col][col]
        det *= p
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] / p
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return det


def kernel_basis(A: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Rational basis of {x : A x = 0}."""
    _, n = _shape(A)
    R = row_echelon(A)
    pivots = []
    for row in R:
        pivots.append(next(j for j, x in enumerate(row) if x != 0))
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def primitive(v: Sequence) -> IntVector:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def integer_relation(vectors: Sequence[IntVector]) -> IntVector | None:
    """Primitive integer c with sum c_i v_i = 0 when the kernel is one-dimensional."""
    if not vectors:
        return None
    cols = transpose(vectors)
    ker = kernel_basis(cols)
    if len(ker) != 1:
        return None
    return primitive(ker[0])


def solve_rational(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Some solution x of A x = b over Q, or None if inconsistent."""
    m, n = _shape(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R = row_echelon(aug)
    x = [Fraction(0)] * n
    for row in R:
        p = next(j for j, v in enumerate(row) if v != 0)
        if p == n:
            return None
        x[p] = row[n]
    return tuple(x)


# --- integer normal forms -------------------------------------------------

def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V) with U M V = S diagonal and U, V unimodular.

    Plain gcd pivoting; the diagonal is made nonnegative but the
    divisibility chain is not enforced (solve_mod does not need it).
    """
    m, n = _shape(M)
    S = [[int(x) for x in row] for row in M]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    S[i] = [a - q * b for a, b in zip(S[i], S[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                    if S[i][t]:
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    for row in S:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                    if S[t][j]:
                        done = False
            if done:
                break
            nz = [(abs(S[i][t]), i, t) for i in range(t, m) if S[i][t]]
            nz += [(abs(S[t][j]), t, j) for j in range(t, n) if S[t][j]]
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    freeze = lambda A: tuple(tuple(r) for r in A)
    return freeze(U), freeze(S), freeze(V)


def solve_mod(M: Sequence[Sequence[int]], c: Sequence[int], d: int) -> bool:
    """Decide whether M x = c (mod d) has an integer solution."""
    if d < 1:
        raise ValueError("modulus must be positive")
    m, n = _shape(M)
    if len(c) != m:
        raise DimensionMismatch("right-hand side length differs from row count")
    if m == 0:
        return True
    U, S, _ = smith_normal_form(M)
    Uc = mat_vec(U, c)
    for i in range(m):
        s = S[i][i] if i < n else 0
        if Uc[i] % gcd(d, s) != 0:
            return False
    return True


def hermite_rows(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form of the integer row span (zero rows dropped)."""
    A = [[int(x) for x in row] for row in rows]
    if not A:
        return ()
    n = len(A[0])
    r = 0
    for col in range(n):
        while True:
            nz = [i for i in range(r, len(A)) if A[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[piv] = A[piv], A[r]
            clean = True
            for i in range(r + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // A[r][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if r < len(A) and A[r][col]:
            if A[r][col] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][col] // A[r][col]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    return tuple(tuple(row) for row in A[:r])


def element_order_lcm(generators: Sequence[IntVector]) -> int:
    """lcm of the orders of elements of Z^n / lattice(generators)."""
    n = len(generators)
    if n == 0 or any(len(g) != n for g in generators):
        raise NotFullRank("need n generators in Z^n")
    B = transpose(generators)
    try:
        Binv = invert_rational_matrix(B)
    except SingularMatrix as exc:
        raise NotFullRank("generators are linearly dependent") from exc
    return lcm(*(x.denominator for row in Binv for x in row))
