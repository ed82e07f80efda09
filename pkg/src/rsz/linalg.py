"""Exact dense linear algebra over a :class:`~rsz.field.FieldSpec`.

Matrices are tuples of row tuples.  Shapes with zero rows cannot record a
column count, so callers that may meet empty matrices pass shapes explicitly.
"""

from __future__ import annotations

from .errors import InvariantError
from .field import FieldSpec

Matrix = tuple


def zeros(rows: int, cols: int, F: FieldSpec) -> Matrix:
    z = F.zero
    return tuple((z,) * cols for _ in range(rows))


def identity(n: int, F: FieldSpec) -> Matrix:
    z, o = F.zero, F.one
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def is_zero(A: Matrix) -> bool:
    return all(x == 0 for row in A for x in row)


def matmul(A: Matrix, B: Matrix, F: FieldSpec, inner: int | None = None, cols: int | None = None) -> Matrix:
    n = len(B) if inner is None else inner
    m = (len(B[0]) if B else 0) if cols is None else cols
    if F.kind == "Q":
        return tuple(
            tuple(sum((row[k] * B[k][j] for k in range(n)), F.zero) for j in range(m)) for row in A
        )
    p = F.p
    return tuple(tuple(sum(row[k] * B[k][j] for k in range(n)) % p for j in range(m)) for row in A)


def add(A: Matrix, B: Matrix, F: FieldSpec) -> Matrix:
    return tuple(tuple(F.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def sub(A: Matrix, B: Matrix, F: FieldSpec) -> Matrix:
    return tuple(tuple(F.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def scale(c, A: Matrix, F: FieldSpec) -> Matrix:
    return tuple(tuple(F.mul(c, x) for x in row) for row in A)


def transpose(A: Matrix, cols: int | None = None) -> Matrix:
    m = (len(A[0]) if A else 0) if cols is None else cols
    return tuple(tuple(A[i][j] for i in range(len(A))) for j in range(m))


def mat_pow(A: Matrix, k: int, F: FieldSpec) -> Matrix:
    n = len(A)
    result, base = identity(n, F), A
    while k:
        if k & 1:
            result = matmul(result, base, F, n, n)
        base = matmul(base, base, F, n, n)
        k >>= 1
    return result


def rref(A, ncols: int, F: FieldSpec) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns. ``A`` is not modified."""
    M = [list(row) for row in A]
    pivots: list[int] = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A, ncols: int, F: FieldSpec) -> int:
    return len(rref(A, ncols, F)[1])


def nullspace(A, ncols: int, F: FieldSpec) -> list[tuple]:
    """Basis of ``{x : A x = 0}``, one vector per free column, in column order."""
    R, pivots = rref(A, ncols, F)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [F.zero] * ncols
        x[free] = F.one
        for row, pc in zip(R, pivots):
            x[pc] = F.neg(row[free])
        basis.append(tuple(x))
    return basis


def column_space(A, nrows: int, ncols: int, F: FieldSpec) -> list[tuple]:
    """Basis (as vectors) of the span of the columns of ``A``."""
    R, _ = rref(transpose(A, ncols), nrows, F)
    return [tuple(row) for row in R]


def kernel(A, nrows: int, ncols: int, F: FieldSpec) -> list[tuple]:
    return nullspace(A, ncols, F) if nrows else [
        tuple(F.one if i == j else F.zero for i in range(ncols)) for j in range(ncols)
    ]


def solve(A, B, ncols: int, F: FieldSpec) -> Matrix:
    """Some ``X`` with ``A X = B``; raises if the system is inconsistent."""
    n_rhs = len(B[0]) if B else 0
    aug = [list(ra) + list(rb) for ra, rb in zip(A, B)]
    R, pivots = rref(aug, ncols + n_rhs, F)
    if any(p >= ncols for p in pivots):
        raise InvariantError("inconsistent linear system")
    X = [[F.zero] * n_rhs for _ in range(ncols)]
    for row, pc in zip(R, pivots):
        X[pc] = row[ncols:]
    return tuple(tuple(r) for r in X)


def from_columns(cols: list[tuple], nrows: int, F: FieldSpec) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(tuple(c[i] for c in cols) for i in range(nrows))


def inverse(A: Matrix, F: FieldSpec) -> Matrix | None:
    n = len(A)
    aug = [list(row) + list(e) for row, e in zip(A, identity(n, F))]
    R, pivots = rref(aug, 2 * n, F)
    if pivots != list(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in R)


def complement_basis(vectors: list[tuple], n: int, F: FieldSpec) -> list[tuple]:
    """Standard basis vectors completing ``vectors`` (assumed independent) to a basis."""
    R, pivots = rref(vectors, n, F)
    pivset = set(pivots)
    return [tuple(F.one if i == j else F.zero for i in range(n)) for j in range(n) if j not in pivset]
