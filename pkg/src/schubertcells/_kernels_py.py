"""Pure-numpy kernels for quaternion-component arrays.

Every scalar is a length-4 float64 vector (w, x, y, z); matrices over the
ground field are arrays of shape (rows, cols, 4).  Real and complex data ride
along with their upper components identically zero, so a single code path
serves all three fields.  Coefficients act on the LEFT throughout (left
K-modules), which is why `compose` multiplies the inner map's entry first.

The compiled sibling `_kernels_c` implements the same four entry points with
identical semantics; `backend` picks one at import time.
"""

from __future__ import annotations

import numpy as np


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Componentwise quaternion product a*b, broadcasting over leading axes."""
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    out = np.empty(np.broadcast(a, b).shape, dtype=np.float64)
    out[..., 0] = aw * bw - ax * bx - ay * by - az * bz
    out[..., 1] = aw * bx + ax * bw + ay * bz - az * by
    out[..., 2] = aw * by - ax * bz + ay * bw + az * bx
    out[..., 3] = aw * bz + ax * by - ay * bx + az * bw
    return out


def qconj(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[..., 1:] = -out[..., 1:]
    return out


def compose(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Matrix of the composed map outer∘inner over a left K-module.

    outer is p×m, inner is m×n (both (rows, cols, 4)); the result C is p×n
    with C[i,k] = sum_j inner[j,k] * outer[i,j] — inner's entry on the left,
    which over H differs from the commutative matrix product.
    """
    if outer.shape[1] != inner.shape[0]:
        raise ValueError(
            f"compose shape mismatch: outer {outer.shape[:2]} vs inner {inner.shape[:2]}"
        )
    # terms[i, j, k] = inner[j, k] * outer[i, j]
    terms = qmul(inner[None, :, :, :], outer[:, :, None, :])
    return terms.sum(axis=1)


def gram(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise column inner products G[i,j] = <a_col_i, b_col_j>.

    Both arguments are (rows, cols, 4) with equal row counts; the inner
    product is sum_r a[r,i] * conj(b[r,j]) (left-linear in the first slot).
    """
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"gram row mismatch: {a.shape[0]} vs {b.shape[0]}")
    terms = qmul(a[:, :, None, :], qconj(b)[:, None, :, :])
    return terms.sum(axis=0)


def mgs(a: np.ndarray, tol: float):
    """Pivoted modified Gram–Schmidt on the columns of a (rows, cols, 4) array.

    At each step the remaining column of largest norm becomes the next pivot;
    columns are rejected once the largest remaining norm is <= tol.  Returns
    (q, rank, min_accept, max_reject) where q holds `rank` orthonormal columns
    spanning the same left K-span as the input, min_accept is the smallest
    accepted pivot norm (inf if none) and max_reject the largest rejected norm
    (0.0 if none) — callers use the pair to detect decisions too close to tol.
    """
    m, n = a.shape[0], a.shape[1]
    work = np.array(a, dtype=np.float64, copy=True)
    remaining = list(range(n))
    q_cols = []
    min_accept = np.inf
    max_reject = 0.0
    while remaining:
        norms = np.sqrt(
            np.sum(work[:, remaining, :] ** 2, axis=(0, 2))
        )
        j_local = int(np.argmax(norms))
        pivot_norm = float(norms[j_local])
        if pivot_norm <= tol:
            max_reject = pivot_norm
            break
        min_accept = min(min_accept, pivot_norm)
        j = remaining.pop(j_local)
        q = work[:, j, :] / pivot_norm
        q_cols.append(q)
        if remaining:
            rest = work[:, remaining, :]
            coeffs = qmul(rest, qconj(q)[:, None, :]).sum(axis=0)  # <x, q>
            work[:, remaining, :] = rest - qmul(coeffs[None, :, :], q[:, None, :])
    rank = len(q_cols)
    if rank:
        q_arr = np.stack(q_cols, axis=1)
    else:
        q_arr = np.zeros((m, 0, 4), dtype=np.float64)
    return q_arr, rank, float(min_accept), float(max_reject)
