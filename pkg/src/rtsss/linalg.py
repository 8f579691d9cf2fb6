"""Exact Gaussian elimination over an :class:`~rtsss.gf.ExtensionField`.

Matrices are sequences of rows whose entries are integer element codes.
F_p-valued matrices need no conversion: their codes are the constants
``0 .. p-1`` of any extension of F_p, and rank does not change under field
extension. Pivots are the first nonzero entry scanning top to bottom.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NoSolution, Underdetermined


def shape(A) -> tuple[int, int]:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    for row in A:
        if len(row) != cols:
            raise DimensionMismatch("ragged matrix")
    return rows, cols


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A) -> list[list[int]]:
    return [list(col) for col in zip(*A)]


def hstack(*blocks) -> list[list[int]]:
    rows = len(blocks[0])
    if any(len(b) != rows for b in blocks):
        raise DimensionMismatch("blocks must have equal row counts")
    return [sum((list(b[r]) for b in blocks), []) for r in range(rows)]


def matmul(field, A, B) -> list[list[int]]:
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise DimensionMismatch(f"cannot multiply {n}x{k} by {k2}x{m}")
    add, mul = field.add, field.mul
    out = []
    for row in A:
        acc = [0] * m
        for a, brow in zip(row, B):
            if a == 0:
                continue
            for j, b in enumerate(brow):
                if b:
                    acc[j] = add(acc[j], mul(a, b))
        out.append(acc)
    return out


def vecmat(field, v, A) -> list[int]:
    """Row vector times matrix."""
    return matmul(field, [list(v)], A)[0]


def row_reduce(field, A, ncols=None):
    """Reduced row echelon form of a copy of ``A``.

    Only the first ``ncols`` columns are used for pivoting (the remainder
    is carried along, as for an augmented system). Returns ``(R, pivots)``.
    """
    R = [list(row) for row in A]
    rows = len(R)
    if ncols is None:
        ncols = len(R[0]) if rows else 0
    sub, mul, inv = field.sub, field.mul, field.inv
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        prow = R[r]
        if prow[c] != 1:
            s = inv(prow[c])
            prow[:] = [mul(s, x) if x else 0 for x in prow]
        for i in range(rows):
            if i == r:
                continue
            f = R[i][c]
            if f:
                row = R[i]
                for j in range(c, len(row)):
                    if prow[j]:
                        row[j] = sub(row[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(field, A) -> int:
    if not A or not A[0]:
        return 0
    return len(row_reduce(field, A)[1])


def column_basis(field, A) -> list[int]:
    """Indices of a maximal independent set of columns (the pivot columns)."""
    if not A or not A[0]:
        return []
    return row_reduce(field, A)[1]


def solve(field, A, B, *, unique: bool = True):
    """Solve ``A @ X = B``.

    Raises :class:`NoSolution` for an inconsistent system. When the
    solution is not unique, raises :class:`Underdetermined` unless
    ``unique`` is false, in which case the particular solution with all
    free variables set to zero is returned.
    """
    return _solve(field, A, B, unique)[0]


def solve_linear(field, A, B):
    """Unique solution of ``A @ X = B`` together with ``rank(A)``."""
    return _solve(field, A, B, True)


def _solve(field, A, B, unique):
    n, k = shape(A)
    n2, m = shape(B)
    if n != n2:
        raise DimensionMismatch("A and B must have the same number of rows")
    aug = [list(a) + list(b) for a, b in zip(A, B)]
    R, pivots = row_reduce(field, aug, ncols=k)
    r = len(pivots)
    for i in range(r, n):
        if any(R[i][k:]):
            raise NoSolution("inconsistent linear system")
    if r < k and unique:
        raise Underdetermined(f"rank {r} < {k} unknowns")
    X = [[0] * m for _ in range(k)]
    for i, c in enumerate(pivots):
        X[c] = R[i][k:]
    return X, r


def inverse(field, A) -> list[list[int]]:
    n, k = shape(A)
    if n != k:
        raise DimensionMismatch("only square matrices are invertible")
    try:
        return solve(field, A, identity(n))
    except Underdetermined:
        raise NoSolution("singular matrix") from None


def determinant(field, A) -> int:
    n, k = shape(A)
    if n != k:
        raise DimensionMismatch("determinant of a non-square matrix")
    R = [list(row) for row in A]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if R[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            R[c], R[piv] = R[piv], R[c]
            det = field.neg(det)
        det = field.mul(det, R[c][c])
        s = field.inv(R[c][c])
        for i in range(c + 1, n):
            f = field.mul(R[i][c], s)
            if f:
                R[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(R[i], R[c])]
    return det
