"""Dense exact linear algebra over GF(p) on int64 numpy arrays.

Matrices are plain 2-D ``np.int64`` arrays with entries in ``[0, p)``.
Functions that take data operands accept extra leading (batch) dimensions,
so a whole file's worth of stripes goes through one call.
"""

import numpy as np

DTYPE = np.int64


class SingularMatrixError(ArithmeticError):
    """Raised when elimination finds no pivot; ``row`` is the first dependent row."""

    def __init__(self, row, msg=None):
        self.row = row
        super().__init__(msg or f"matrix is singular: row {row} is linearly dependent")


def asmatrix(a, p):
    return np.asarray(a, dtype=DTYPE) % p


def matmul(a, b, p):
    return np.matmul(np.asarray(a, dtype=DTYPE), np.asarray(b, dtype=DTYPE)) % p


def identity(m):
    return np.eye(m, dtype=DTYPE)


def vandermonde(points, cols, p):
    """Rows ``(1, x, x**2, ..., x**(cols-1))`` for each point ``x``."""
    pts = [int(x) % p for x in points]
    if len(set(pts)) != len(pts):
        raise ValueError("vandermonde points must be distinct")
    if cols < 1:
        raise ValueError("cols must be >= 1")
    out = np.empty((len(pts), cols), dtype=DTYPE)
    for i, x in enumerate(pts):
        v = 1
        for j in range(cols):
            out[i, j] = v
            v = v * x % p
    return out


def _inv_scalar(a, p):
    return pow(int(a), p - 2, p)


def solve_system(a, b, p):
    """Solve ``A X = B`` for square ``A`` by Gauss-Jordan elimination.

    ``b`` may be a vector (shape ``(m,)``) or a matrix ``(m, c)``; the
    result has the same shape. Pivots are the first nonzero entry at or
    below the diagonal, which keeps the procedure deterministic.
    """
    a = asmatrix(a, p)
    m = a.shape[0]
    if a.ndim != 2 or a.shape[1] != m:
        raise ValueError(f"coefficient matrix must be square, got {a.shape}")
    b = asmatrix(b, p)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    if b.shape[0] != m:
        raise ValueError("right-hand side has the wrong number of rows")
    a0 = a
    a = a.copy()
    b = b.copy()
    for col in range(m):
        nz = np.nonzero(a[col:, col])[0]
        if nz.size == 0:
            raise SingularMatrixError(first_dependent_row(a0, p))
        piv = col + int(nz[0])
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            b[[col, piv]] = b[[piv, col]]
        f = _inv_scalar(a[col, col], p)
        a[col] = a[col] * f % p
        b[col] = b[col] * f % p
        others = np.nonzero(a[:, col])[0]
        others = others[others != col]
        if others.size:
            factors = a[others, col][:, None]
            a[others] = (a[others] - factors * a[col]) % p
            b[others] = (b[others] - factors * b[col]) % p
    return b[:, 0] if vec else b


def first_dependent_row(a, p):
    """Index of the first row lying in the span of the rows above it, or None."""
    a = asmatrix(a, p)
    for i in range(a.shape[0]):
        if rank(a[: i + 1], p) <= i:
            return i
    return None


def inverse(a, p):
    a = asmatrix(a, p)
    return solve_system(a, identity(a.shape[0]), p)


def rank(a, p):
    a = asmatrix(a, p).copy()
    rows, cols = a.shape
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * _inv_scalar(a[r, col], p) % p
        below = np.arange(r + 1, rows)
        if below.size:
            a[below] = (a[below] - a[below, col][:, None] * a[r]) % p
        r += 1
    return r


def det(a, p):
    """Determinant by elimination (0 for singular input)."""
    a = asmatrix(a, p).copy()
    m = a.shape[0]
    if a.shape != (m, m):
        raise ValueError("determinant needs a square matrix")
    result = 1
    for col in range(m):
        nz = np.nonzero(a[col:, col])[0]
        if nz.size == 0:
            return 0
        piv = col + int(nz[0])
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            result = -result
        pv = int(a[col, col])
        result = result * pv % p
        f = _inv_scalar(pv, p)
        below = np.arange(col + 1, m)
        if below.size:
            a[below] = (a[below] - (a[below, col] * f % p)[:, None] * a[col]) % p
    return result % p


def solve_rows(a, y, p):
    """Solve ``A x = y`` for every row vector ``y`` along the last axis.

    ``y`` has shape ``(..., m)``; used for batched stripes against one
    fixed coefficient matrix.
    """
    a_inv = inverse(a, p)
    return matmul(y, a_inv.T, p)


# symmetric packing: upper triangle, row-major, diagonal included

def sym_size(dim):
    return dim * (dim + 1) // 2


def sym_dim(count):
    dim = int((np.sqrt(8 * count + 1) - 1) // 2)
    if sym_size(dim) != count:
        raise ValueError(f"{count} is not a triangular number")
    return dim


def symmetric_pack(symbols, dim=None):
    """Fill a symmetric matrix from its row-major upper triangle.

    ``symbols`` has shape ``(..., dim*(dim+1)/2)``; returns ``(..., dim, dim)``.
    """
    symbols = np.asarray(symbols, dtype=DTYPE)
    count = symbols.shape[-1]
    if dim is None:
        dim = sym_dim(count)
    elif count != sym_size(dim):
        raise ValueError(f"expected {sym_size(dim)} symbols for dim {dim}, got {count}")
    iu = np.triu_indices(dim)
    out = np.zeros(symbols.shape[:-1] + (dim, dim), dtype=DTYPE)
    out[..., iu[0], iu[1]] = symbols
    out[..., iu[1], iu[0]] = symbols
    return out


def symmetric_unpack(mat):
    mat = np.asarray(mat, dtype=DTYPE)
    dim = mat.shape[-1]
    iu = np.triu_indices(dim)
    return mat[..., iu[0], iu[1]]


def is_symmetric(mat):
    mat = np.asarray(mat)
    return bool(np.array_equal(mat, np.swapaxes(mat, -1, -2)))
