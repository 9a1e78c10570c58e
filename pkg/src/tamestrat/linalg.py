"""Dense exact linear algebra over a :class:`~tamestrat.fields.Field`.

Matrices are lists of rows of FieldElements.  Every routine takes the field
explicitly so empty matrices are well defined.
"""
from __future__ import annotations

from .errors import ZeroDivision

Matrix = list  # list[list[FieldElement]]


def zeros(F, rows: int, cols: int) -> Matrix:
    return [[F.zero] * cols for _ in range(rows)]


def identity(F, n: int) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def to_matrix(F, rows) -> Matrix:
    return [[F(v) for v in row] for row in rows]


def transpose(M: Matrix, cols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(F, A: Matrix, B: Matrix) -> Matrix:
    """A (r x n) times B (n x c)."""
    cols = len(B[0]) if B else 0
    out = zeros(F, len(A), cols)
    for i, row in enumerate(A):
        acc = out[i]
        for k, a in enumerate(row):
            if a.is_zero():
                continue
            for j, b in enumerate(B[k]):
                acc[j] = acc[j] + a * b
    return out


def matadd(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matsub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(c, A: Matrix) -> Matrix:
    return [[c * a for a in row] for row in A]


def matpow(F, A: Matrix, n: int) -> Matrix:
    result, base = identity(F, len(A)), A
    while n:
        if n & 1:
            result = matmul(F, result, base)
        base = matmul(F, base, base)
        n >>= 1
    return result


def is_zero_matrix(A: Matrix) -> bool:
    return all(a.is_zero() for row in A for a in row)


def rref(F, M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (input is not modified)."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    ncols = len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if not R[i][c].is_zero()), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = R[r][c].inverse()
        R[r] = [v * inv for v in R[r]]
        for i in range(len(R)):
            if i != r and not R[i][c].is_zero():
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(F, M: Matrix) -> int:
    """Rank by forward elimination only (independent of :func:`rref`)."""
    R = [list(row) for row in M if row]
    if not R:
        return 0
    ncols = len(R[0])
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(R)) if not R[i][c].is_zero()), None)
        if piv is None:
            continue
        R[rk], R[piv] = R[piv], R[rk]
        inv = R[rk][c].inverse()
        for i in range(rk + 1, len(R)):
            if not R[i][c].is_zero():
                f = R[i][c] * inv
                R[i] = [a - f * b for a, b in zip(R[i], R[rk])]
        rk += 1
        if rk == len(R):
            break
    return rk


def nullspace(F, M: Matrix, ncols: int) -> list[list]:
    """Basis of {v : M v = 0} as a list of vectors of length ``ncols``."""
    if not M:
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(F, M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in enumerate(pivots):
            v[pc] = -R[row][fc]
        basis.append(v)
    return basis


def inverse(F, A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(row) + e for row, e in zip(A, identity(F, n))]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivision("singular matrix")
    return [row[n:] for row in R]


def span_rank(F, vectors: list[list]) -> int:
    return rank(F, [list(v) for v in vectors])


def flatten(A: Matrix) -> list:
    return [a for row in A for a in row]
