# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: banded SBP matvec and dense eigenvalue solver.

Direct ports of the pure-numpy routines in ``_kernels_py``; selected at
import through ``_backend``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

DEF RADIX2 = 4.0


class EigenConvergenceError(RuntimeError):
    def __init__(self, lo, hi):
        self.block = (lo, hi)
        super().__init__(
            f"QR iteration did not converge on the block [{lo}, {hi}]"
        )


def apply_banded(double[:, ::1] left, double[:, ::1] right,
                 double[::1] stencil, double[::1] v, double inv_h,
                 out=None):
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t r = left.shape[0]
    cdef Py_ssize_t w = left.shape[1]
    cdef Py_ssize_t m = (stencil.shape[0] - 1) // 2
    if out is None:
        out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, j, k
    cdef double acc, c
    for i in range(r):
        acc = 0.0
        for j in range(w):
            acc += left[i, j] * v[j]
        o[i] = acc * inv_h
        acc = 0.0
        for j in range(w):
            acc += right[i, j] * v[n - w + j]
        o[n - r + i] = acc * inv_h
    for i in range(r, n - r):
        acc = 0.0
        for k in range(2 * m + 1):
            c = stencil[k]
            if c != 0.0:
                acc += c * v[i + k - m]
        o[i] = acc * inv_h
    return out


def balance(double[:, ::1] A):
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t i, j
    cdef double c, r, g, f, s
    cdef bint converged = False
    while not converged:
        converged = True
        for i in range(n):
            c = 0.0
            r = 0.0
            for j in range(n):
                if j != i:
                    c += fabs(A[j, i])
                    r += fabs(A[i, j])
            if c == 0.0 or r == 0.0:
                continue
            g = r / 2.0
            f = 1.0
            s = c + r
            while c < g:
                f *= 2.0
                c *= RADIX2
            g = r * 2.0
            while c >= g:
                f /= 2.0
                c /= RADIX2
            if (c + r) / f < 0.95 * s:
                converged = False
                g = 1.0 / f
                for j in range(n):
                    A[i, j] *= g
                for j in range(n):
                    A[j, i] *= f
    return np.asarray(A)


def hessenberg(double[:, ::1] A):
    cdef Py_ssize_t n = A.shape[0]
    cdef double[::1] v = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t k, i, j, nv
    cdef double alpha, beta, denom, tau, s
    cdef double tiny = np.finfo(np.float64).tiny
    for k in range(n - 2):
        nv = n - k - 1
        alpha = 0.0
        for i in range(nv):
            alpha += A[k + 1 + i, k] * A[k + 1 + i, k]
        alpha = sqrt(alpha)
        if alpha <= tiny:
            continue
        if A[k + 1, k] >= 0.0:
            beta = -alpha
        else:
            beta = alpha
        denom = A[k + 1, k] - beta
        tau = (beta - A[k + 1, k]) / beta
        v[0] = 1.0
        for i in range(1, nv):
            v[i] = A[k + 1 + i, k] / denom
        A[k + 1, k] = beta
        for i in range(1, nv):
            A[k + 1 + i, k] = 0.0
        # rows k+1..n-1, columns k+1..n-1
        for j in range(k + 1, n):
            s = 0.0
            for i in range(nv):
                s += v[i] * A[k + 1 + i, j]
            s *= tau
            for i in range(nv):
                A[k + 1 + i, j] -= v[i] * s
        # all rows, columns k+1..n-1
        for i in range(n):
            s = 0.0
            for j in range(nv):
                s += A[i, k + 1 + j] * v[j]
            s *= tau
            for j in range(nv):
                A[i, k + 1 + j] -= s * v[j]
    return np.asarray(A)


def francis_eigvals(double[:, ::1] H, int maxiter=60):
    cdef Py_ssize_t n = H.shape[0]
    wr_arr = np.empty(n, dtype=np.float64)
    wi_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] wr = wr_arr
    cdef double[::1] wi = wi_arr
    cdef double eps = np.finfo(np.float64).eps
    cdef double tiny = np.finfo(np.float64).tiny
    cdef Py_ssize_t hi, lo, k, i, j, nr, rhi
    cdef int its
    cdef double hnorm = 0.0, tst, thresh
    cdef double ssum, sprod, sd, x, y, z
    cdef double v0, v1, v2, alpha, beta, tau, s
    cdef double a, b, c, d, mean, det, disc, sq, l1, l2

    if n == 1:
        wr[0] = H[0, 0]
        wi[0] = 0.0
        return wr_arr, wi_arr
    for i in range(n):
        for j in range(n):
            hnorm += fabs(H[i, j])

    hi = n - 1
    its = 0
    while hi >= 0:
        if hi == 0:
            wr[0] = H[0, 0]
            wi[0] = 0.0
            break
        lo = hi
        while lo > 0:
            tst = fabs(H[lo - 1, lo - 1]) + fabs(H[lo, lo])
            if tst == 0.0:
                tst = hnorm
            thresh = eps * tst
            if thresh < tiny:
                thresh = tiny
            if fabs(H[lo, lo - 1]) <= thresh:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            wr[hi] = H[hi, hi]
            wi[hi] = 0.0
            hi -= 1
            its = 0
            continue
        if lo == hi - 1:
            a = H[lo, lo]
            b = H[lo, hi]
            c = H[hi, lo]
            d = H[hi, hi]
            mean = 0.5 * (a + d)
            det = a * d - b * c
            disc = mean * mean - det
            if disc >= 0.0:
                sq = sqrt(disc)
                l1 = mean + sq if mean >= 0.0 else mean - sq
                l2 = det / l1 if l1 != 0.0 else 0.0
                wr[lo] = l1
                wi[lo] = 0.0
                wr[hi] = l2
                wi[hi] = 0.0
            else:
                sq = sqrt(-disc)
                wr[lo] = mean
                wi[lo] = sq
                wr[hi] = mean
                wi[hi] = -sq
            hi -= 2
            its = 0
            continue

        its += 1
        if its > maxiter:
            raise EigenConvergenceError(lo, hi)
        if its % 10 == 0:
            sd = fabs(H[hi, hi - 1]) + fabs(H[hi - 1, hi - 2])
            ssum = 1.5 * sd
            sprod = -0.4375 * sd * sd
        else:
            ssum = H[hi - 1, hi - 1] + H[hi, hi]
            sprod = (H[hi - 1, hi - 1] * H[hi, hi]
                     - H[hi - 1, hi] * H[hi, hi - 1])

        x = (H[lo, lo] * H[lo, lo] + H[lo, lo + 1] * H[lo + 1, lo]
             - ssum * H[lo, lo] + sprod)
        y = H[lo + 1, lo] * (H[lo, lo] + H[lo + 1, lo + 1] - ssum)
        z = H[lo + 1, lo] * H[lo + 2, lo + 1]

        for k in range(lo, hi):
            nr = hi - k + 1
            if nr > 3:
                nr = 3
            if k > lo:
                x = H[k, k - 1]
                y = H[k + 1, k - 1]
                z = H[k + 2, k - 1] if nr == 3 else 0.0
            alpha = x * x + y * y
            if nr == 3:
                alpha += z * z
            alpha = sqrt(alpha)
            if alpha <= tiny:
                continue
            beta = -alpha if x >= 0.0 else alpha
            tau = (beta - x) / beta
            v0 = 1.0
            v1 = y / (x - beta)
            v2 = z / (x - beta) if nr == 3 else 0.0
            if k > lo:
                H[k, k - 1] = beta
                H[k + 1, k - 1] = 0.0
                if nr == 3:
                    H[k + 2, k - 1] = 0.0
            # rows k..k+nr-1, columns k..hi
            for j in range(k, hi + 1):
                s = H[k, j] + v1 * H[k + 1, j]
                if nr == 3:
                    s += v2 * H[k + 2, j]
                s *= tau
                H[k, j] -= s
                H[k + 1, j] -= s * v1
                if nr == 3:
                    H[k + 2, j] -= s * v2
            # columns k..k+nr-1, rows lo..min(k+3, hi)
            rhi = k + 3
            if rhi > hi:
                rhi = hi
            for i in range(lo, rhi + 1):
                s = H[i, k] + v1 * H[i, k + 1]
                if nr == 3:
                    s += v2 * H[i, k + 2]
                s *= tau
                H[i, k] -= s
                H[i, k + 1] -= s * v1
                if nr == 3:
                    H[i, k + 2] -= s * v2
    return wr_arr, wi_arr


def eigvals_core(A):
    """All eigenvalues of a dense real matrix (balance + Hessenberg + QR)."""
    A = np.array(A, dtype=np.float64, order="C", copy=True)
    balance(A)
    hessenberg(A)
    wr, wi = francis_eigvals(A)
    return wr + 1j * wi
