"""Dense linear algebra over a FieldCtx: elimination, rank, inverse, powers.

Matrices are 2-d numpy arrays of field indices.  Elimination is vectorized
row-wise through the field's add/mul tables, which is plenty for the desk
scale sizes used here (K up to a few hundred, n up to a few thousand).
"""

from __future__ import annotations

import numpy as np

from . import errors
from .gf import FieldCtx


def _as_mat(A):
    A = np.array(A, dtype=np.int16, copy=True)
    if A.ndim != 2:
        raise errors.DimensionMismatch("expected a 2-d matrix")
    return A


def rref(F: FieldCtx, A, max_rank: int | None = None):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    A = _as_mat(A)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows or (max_rank is not None and r >= max_rank):
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = int(F.inv_t[A[r, c]])
        if inv != 1:
            A[r] = F.mul_index(inv, A[r])
        other = np.nonzero(A[:, c])[0]
        other = other[other != r]
        if other.size:
            factors = F.neg_t[A[other, c]]
            upd = F.mul_index(factors[:, None], A[r][None, :])
            A[other] = F.add_index(A[other], upd)
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: FieldCtx, A, stop_at: int | None = None) -> int:
    """Rank by forward elimination, optionally stopping early at `stop_at`."""
    A = _as_mat(A)
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows or (stop_at is not None and r >= stop_at):
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        below = np.nonzero(A[r + 1 :, c])[0] + r + 1
        if below.size:
            factors = F.mul_index(F.neg_t[A[below, c]], int(F.inv_t[A[r, c]]))
            upd = F.mul_index(factors[:, None], A[r][None, :])
            A[below] = F.add_index(A[below], upd)
        r += 1
    return r


def mat_inv(F: FieldCtx, A):
    """Inverse of a square matrix; raises SingularMatrix."""
    A = _as_mat(A)
    n = A.shape[0]
    if A.shape[1] != n:
        raise errors.DimensionMismatch("matrix is not square")
    eye = np.zeros((n, n), dtype=np.int16)
    eye[np.arange(n), np.arange(n)] = 1
    R, pivots = rref(F, np.hstack([A, eye]))
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise errors.SingularMatrix("matrix is singular")
    return np.ascontiguousarray(R[:, n:])


def mat_pow(F: FieldCtx, A, t: int):
    """A^t by square and multiply (t >= 0)."""
    A = _as_mat(A)
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int16)
    out[np.arange(n), np.arange(n)] = 1
    base = A
    while t:
        if t & 1:
            out = F.matmul(out, base)
        base = F.matmul(base, base)
        t >>= 1
    return out


def is_invertible(F: FieldCtx, A) -> bool:
    A = _as_mat(A)
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def in_row_space(F: FieldCtx, G, w) -> bool:
    """True iff the vector w lies in the F_q-row space of G."""
    G = _as_mat(G)
    w = np.asarray(w, dtype=np.int16).reshape(1, -1)
    if w.shape[1] != G.shape[1]:
        raise errors.DimensionMismatch("vector length does not match matrix")
    base = rank(F, G)
    return rank(F, np.vstack([G, w])) == base
