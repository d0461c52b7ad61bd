# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for quaternion-component arrays.

Same contracts as `_kernels_py` (see its docstring): scalars are (w, x, y, z)
float64 quadruples, matrices are (rows, cols, 4) arrays, coefficients act on
the left.  Only the loop-heavy entry points live here; elementwise helpers
stay in numpy.
"""

from libc.math cimport sqrt, INFINITY

import numpy as np


cdef inline void _qmul(const double* a, const double* b, double* out) nogil:
    out[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    out[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2]
    out[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1]
    out[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]


def compose(outer, inner):
    """C[i,k] = sum_j inner[j,k] * outer[i,j] for a p×m outer and m×n inner."""
    cdef const double[:, :, ::1] b = np.ascontiguousarray(outer, dtype=np.float64)
    cdef const double[:, :, ::1] a = np.ascontiguousarray(inner, dtype=np.float64)
    if b.shape[1] != a.shape[0]:
        raise ValueError(
            f"compose shape mismatch: outer ({b.shape[0]}, {b.shape[1]}) "
            f"vs inner ({a.shape[0]}, {a.shape[1]})"
        )
    cdef Py_ssize_t p = b.shape[0], m = a.shape[0], n = a.shape[1]
    out_arr = np.zeros((p, n, 4), dtype=np.float64)
    cdef double[:, :, ::1] c = out_arr
    cdef Py_ssize_t i, j, k
    cdef double prod[4]
    with nogil:
        for i in range(p):
            for j in range(m):
                for k in range(n):
                    _qmul(&a[j, k, 0], &b[i, j, 0], prod)
                    c[i, k, 0] += prod[0]
                    c[i, k, 1] += prod[1]
                    c[i, k, 2] += prod[2]
                    c[i, k, 3] += prod[3]
    return out_arr


def gram(a, b):
    """G[i,j] = sum_r a[r,i] * conj(b[r,j]) for (rows, cols, 4) inputs."""
    cdef const double[:, :, ::1] x = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[:, :, ::1] y = np.ascontiguousarray(b, dtype=np.float64)
    if x.shape[0] != y.shape[0]:
        raise ValueError(f"gram row mismatch: {x.shape[0]} vs {y.shape[0]}")
    cdef Py_ssize_t m = x.shape[0], p = x.shape[1], q = y.shape[1]
    out_arr = np.zeros((p, q, 4), dtype=np.float64)
    cdef double[:, :, ::1] g = out_arr
    cdef Py_ssize_t r, i, j
    cdef double yc[4]
    cdef double prod[4]
    with nogil:
        for r in range(m):
            for i in range(p):
                for j in range(q):
                    yc[0] = y[r, j, 0]
                    yc[1] = -y[r, j, 1]
                    yc[2] = -y[r, j, 2]
                    yc[3] = -y[r, j, 3]
                    _qmul(&x[r, i, 0], yc, prod)
                    g[i, j, 0] += prod[0]
                    g[i, j, 1] += prod[1]
                    g[i, j, 2] += prod[2]
                    g[i, j, 3] += prod[3]
    return out_arr


def mgs(a, double tol):
    """Pivoted modified Gram–Schmidt; see `_kernels_py.mgs` for the contract."""
    arr = np.array(a, dtype=np.float64, copy=True, order="C")
    cdef double[:, :, ::1] work = arr
    cdef Py_ssize_t m = work.shape[0], n = work.shape[1]
    cdef Py_ssize_t[::1] remaining = np.arange(n, dtype=np.intp)
    cdef Py_ssize_t n_rem = n
    cdef Py_ssize_t rank = 0
    cdef double min_accept = INFINITY
    cdef double max_reject = 0.0
    q_arr = np.zeros((m, n, 4), dtype=np.float64)
    cdef double[:, :, ::1] q = q_arr
    cdef Py_ssize_t r, t, j, best_t
    cdef double nrm2, best
    cdef double coeff[4]
    cdef double qc[4]
    cdef double prod[4]
    with nogil:
        while n_rem > 0:
            best = -1.0
            best_t = 0
            for t in range(n_rem):
                j = remaining[t]
                nrm2 = 0.0
                for r in range(m):
                    nrm2 += (
                        work[r, j, 0] * work[r, j, 0]
                        + work[r, j, 1] * work[r, j, 1]
                        + work[r, j, 2] * work[r, j, 2]
                        + work[r, j, 3] * work[r, j, 3]
                    )
                if nrm2 > best:
                    best = nrm2
                    best_t = t
            best = sqrt(best)
            if best <= tol:
                max_reject = best
                break
            if best < min_accept:
                min_accept = best
            j = remaining[best_t]
            # shift-left removal keeps the original column order, matching the
            # numpy backend's tie-breaking exactly
            for t in range(best_t, n_rem - 1):
                remaining[t] = remaining[t + 1]
            n_rem -= 1
            for r in range(m):
                q[r, rank, 0] = work[r, j, 0] / best
                q[r, rank, 1] = work[r, j, 1] / best
                q[r, rank, 2] = work[r, j, 2] / best
                q[r, rank, 3] = work[r, j, 3] / best
            for t in range(n_rem):
                j = remaining[t]
                coeff[0] = coeff[1] = coeff[2] = coeff[3] = 0.0
                for r in range(m):
                    qc[0] = q[r, rank, 0]
                    qc[1] = -q[r, rank, 1]
                    qc[2] = -q[r, rank, 2]
                    qc[3] = -q[r, rank, 3]
                    _qmul(&work[r, j, 0], qc, prod)
                    coeff[0] += prod[0]
                    coeff[1] += prod[1]
                    coeff[2] += prod[2]
                    coeff[3] += prod[3]
                for r in range(m):
                    _qmul(coeff, &q[r, rank, 0], prod)
                    work[r, j, 0] -= prod[0]
                    work[r, j, 1] -= prod[1]
                    work[r, j, 2] -= prod[2]
                    work[r, j, 3] -= prod[3]
            rank += 1
    return np.ascontiguousarray(q_arr[:, :rank, :]), int(rank), float(min_accept), float(max_reject)
