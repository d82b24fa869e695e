"""Pure-numpy implementations of the hot kernels.

These are the fallback twins of the compiled routines in ``_core``: a banded
matrix-vector product for SBP derivative operators, and a dense nonsymmetric
eigenvalue solver (balancing, Householder-Hessenberg reduction, Francis
implicit double-shift QR). Semantics match the compiled versions; only speed
differs.
"""

import numpy as np

_EPS = np.finfo(np.float64).eps
_TINY = np.finfo(np.float64).tiny


class EigenConvergenceError(RuntimeError):
    """QR iteration failed to deflate a block within the iteration cap."""

    def __init__(self, lo, hi):
        self.block = (lo, hi)
        super().__init__(
            f"QR iteration did not converge on the block [{lo}, {hi}]"
        )


def apply_banded(left, right, stencil, v, inv_h, out=None):
    """out = D @ v for a banded-interior operator with dense closure blocks.

    ``left`` and ``right`` are the (rows, width) boundary blocks, ``stencil``
    the full centered interior stencil of length 2m+1, all scale-free;
    ``inv_h`` carries the 1/h grid scaling.
    """
    n = v.shape[0]
    r, w = left.shape
    m = (stencil.shape[0] - 1) // 2
    if out is None:
        out = np.empty_like(v)
    out[:r] = left @ v[:w]
    out[n - r:] = right @ v[n - w:]
    interior = np.zeros(n - 2 * r)
    for k in range(-m, m + 1):
        c = stencil[m + k]
        if c != 0.0:
            interior += c * v[r + k: n - r + k]
    out[r: n - r] = interior
    out *= inv_h
    return out


def balance(A):
    """Parlett-Reinsch diagonal balancing (radix-2, in place).

    Similarity scaling only; eigenvalues are preserved exactly since the
    scale factors are powers of two.
    """
    n = A.shape[0]
    radix2 = 2.0 * 2.0
    while True:
        converged = True
        for i in range(n):
            c = np.sum(np.abs(A[:, i])) - abs(A[i, i])
            r = np.sum(np.abs(A[i, :])) - abs(A[i, i])
            if c == 0.0 or r == 0.0:
                continue
            g = r / 2.0
            f = 1.0
            s = c + r
            while c < g:
                f *= 2.0
                c *= radix2
            g = r * 2.0
            while c >= g:
                f /= 2.0
                c /= radix2
            if (c + r) / f < 0.95 * s:
                converged = False
                A[i, :] *= 1.0 / f
                A[:, i] *= f
        if converged:
            return A


def hessenberg(A):
    """Householder reduction to upper Hessenberg form (in place)."""
    n = A.shape[0]
    for k in range(n - 2):
        x = A[k + 1:, k]
        alpha = np.sqrt(np.dot(x, x))
        if alpha <= _TINY:
            continue
        beta = -alpha if x[0] >= 0.0 else alpha
        denom = x[0] - beta
        v = x / denom
        v[0] = 1.0
        tau = (beta - x[0]) / beta
        A[k + 1, k] = beta
        A[k + 2:, k] = 0.0
        # rows: A[k+1:, k+1:] -= tau v (v^T A[k+1:, k+1:])
        A[k + 1:, k + 1:] -= np.outer(tau * v, v @ A[k + 1:, k + 1:])
        # columns: A[:, k+1:] -= tau (A[:, k+1:] v) v^T
        A[:, k + 1:] -= np.outer(tau * (A[:, k + 1:] @ v), v)
    return A


def _eig2(a, b, c, d):
    """Eigenvalues of [[a, b], [c, d]]; complex pairs exactly conjugate."""
    mean = 0.5 * (a + d)
    det = a * d - b * c
    disc = mean * mean - det
    if disc >= 0.0:
        sq = np.sqrt(disc)
        l1 = mean + sq if mean >= 0.0 else mean - sq
        l2 = det / l1 if l1 != 0.0 else 0.0
        return l1, 0.0, l2, 0.0
    sq = np.sqrt(-disc)
    return mean, sq, mean, -sq


def francis_eigvals(H, maxiter=60):
    """Eigenvalues of an upper Hessenberg matrix via implicit double-shift QR.

    Returns (wr, wi). Exceptional (Wilkinson ad hoc) shifts are injected every
    10 stalled iterations; exceeding ``maxiter`` on one block raises
    EigenConvergenceError with the failing block.
    """
    n = H.shape[0]
    wr = np.empty(n)
    wi = np.empty(n)
    if n == 1:
        wr[0], wi[0] = H[0, 0], 0.0
        return wr, wi
    hnorm = np.sum(np.abs(H))
    hi = n - 1
    its = 0
    while hi >= 0:
        if hi == 0:
            wr[0], wi[0] = H[0, 0], 0.0
            break
        # find the active window [lo, hi]
        lo = hi
        while lo > 0:
            tst = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if tst == 0.0:
                tst = hnorm
            if abs(H[lo, lo - 1]) <= max(_EPS * tst, _TINY):
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            wr[hi], wi[hi] = H[hi, hi], 0.0
            hi -= 1
            its = 0
            continue
        if lo == hi - 1:
            r1, i1, r2, i2 = _eig2(H[lo, lo], H[lo, hi], H[hi, lo], H[hi, hi])
            wr[lo], wi[lo] = r1, i1
            wr[hi], wi[hi] = r2, i2
            hi -= 2
            its = 0
            continue

        its += 1
        if its > maxiter:
            raise EigenConvergenceError(lo, hi)
        if its % 10 == 0:
            # Wilkinson ad hoc exceptional shift
            sd = abs(H[hi, hi - 1]) + abs(H[hi - 1, hi - 2])
            ssum = 1.5 * sd
            sprod = -0.4375 * sd * sd
        else:
            ssum = H[hi - 1, hi - 1] + H[hi, hi]
            sprod = (H[hi - 1, hi - 1] * H[hi, hi]
                     - H[hi - 1, hi] * H[hi, hi - 1])

        # first column of (H - s1)(H - s2) restricted to the window
        x = (H[lo, lo] * H[lo, lo] + H[lo, lo + 1] * H[lo + 1, lo]
             - ssum * H[lo, lo] + sprod)
        y = H[lo + 1, lo] * (H[lo, lo] + H[lo + 1, lo + 1] - ssum)
        z = H[lo + 1, lo] * H[lo + 2, lo + 1]

        for k in range(lo, hi):
            nr = min(3, hi - k + 1)
            if k > lo:
                x = H[k, k - 1]
                y = H[k + 1, k - 1]
                z = H[k + 2, k - 1] if nr == 3 else 0.0
            v = np.array([x, y, z][:nr])
            alpha = np.sqrt(np.dot(v, v))
            if alpha <= _TINY:
                continue
            beta = -alpha if v[0] >= 0.0 else alpha
            tau = (beta - v[0]) / beta
            v = v / (v[0] - beta)
            v[0] = 1.0
            if k > lo:
                H[k, k - 1] = beta
                H[k + 1: k + nr, k - 1] = 0.0
            # rows k..k+nr-1, columns k..hi
            sub = H[k: k + nr, k: hi + 1]
            sub -= np.outer(tau * v, v @ sub)
            # columns k..k+nr-1, rows lo..min(k+3, hi)
            rhi = min(k + 3, hi)
            sub = H[lo: rhi + 1, k: k + nr]
            sub -= np.outer(tau * (sub @ v), v)
    return wr, wi


def eigvals_py(A):
    """All eigenvalues of a dense real matrix (balance + Hessenberg + QR)."""
    A = np.array(A, dtype=np.float64, order="C", copy=True)
    balance(A)
    hessenberg(A)
    wr, wi = francis_eigvals(A)
    return wr + 1j * wi
