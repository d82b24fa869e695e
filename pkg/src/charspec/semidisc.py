"""Skew-symmetric SBP-SAT semidiscretization.

The semidiscrete system is

    W_t = -Lam_D W + B W + SAT(W, data) + F(t),

with the skew-symmetric splitting

    Lam_D = 0.5 (Lam D2 + D2 Lam) - 0.5 M_cbar,
    M_cbar = diag(-diag(D cbar), +diag(D cbar)),

component-major stacking [w1; w2], and penalty coefficients alpha_0 = -cbar_0,
alpha_L = -cbar_N applied through H^-1 on the incoming characteristic at each
boundary. With homogeneous data the right-hand side is the linear operator
D_h = -Lam_D + B + P whose dense form feeds the eigenvalue studies.
"""

from dataclasses import dataclass, field

import numpy as np

from .sbp import SbpOperator, apply_D, inner_product_H
from .problem import ProblemSpec
from .state import StateVector

__all__ = ["Semidiscretization", "assemble", "rhs", "system_matrix",
           "discrete_energy", "energy_rate", "stability_bound",
           "operator_norm_H"]


@dataclass
class Semidiscretization:
    """Assembled spatial operator for one (spec, op) pair.

    Immutable after assembly; `rhs` only reads it, so one instance can be
    shared across worker processes/threads.
    """

    op: SbpOperator
    spec: ProblemSpec
    avec: np.ndarray
    bvec: np.ndarray
    cvec: np.ndarray
    dvec: np.ndarray
    cbarvec: np.ndarray
    Dcbar: np.ndarray
    sat0: float              # alpha_0 / H_00
    satL: float              # alpha_L / H_NN
    _matrix: list = field(default_factory=lambda: [None], repr=False)

    @property
    def npoints(self):
        return self.op.grid.N + 1

    @property
    def alpha0(self):
        return -self.cbarvec[0]

    @property
    def alphaL(self):
        return -self.cbarvec[-1]


def assemble(spec, op):
    """Materialize coefficient samples and SAT scalars on the grid."""
    if abs(spec.L - op.grid.L) > 1e-14 * max(1.0, spec.L):
        raise ValueError("problem and operator domain lengths differ")
    x = op.grid.x
    cbarvec = spec.cbar(x)
    if np.min(cbarvec) <= 0.0:
        raise ValueError("wave speed must be positive on the grid")
    Dcbar = apply_D(op, cbarvec)
    H = op.Hdiag
    return Semidiscretization(
        op=op, spec=spec,
        avec=spec.a(x), bvec=spec.b(x), cvec=spec.c(x), dvec=spec.d(x),
        cbarvec=cbarvec, Dcbar=Dcbar,
        sat0=-cbarvec[0] / H[0], satL=-cbarvec[-1] / H[-1],
    )


def _rhs_arrays(semi, w1, w2, t, use_data=True):
    op, spec = semi.op, semi.spec
    cb, Dcb = semi.cbarvec, semi.Dcbar
    Dw1 = apply_D(op, w1)
    Dw2 = apply_D(op, w2)
    DCw1 = apply_D(op, cb * w1)
    DCw2 = apply_D(op, cb * w2)
    # -Lam_D W, split form; reduces to -(Lam (x) D) W for constant cbar
    r1 = 0.5 * (cb * Dw1 + DCw1) - 0.5 * Dcb * w1
    r2 = -0.5 * (cb * Dw2 + DCw2) + 0.5 * Dcb * w2
    r1 += semi.avec * w1 + semi.bvec * w2
    r2 += semi.cvec * w1 + semi.dvec * w2
    h0v = spec.h0(t) if (use_data and spec.h0 is not None) else 0.0
    hLv = spec.hL(t) if (use_data and spec.hL is not None) else 0.0
    r2[0] += semi.sat0 * (w2[0] - spec.R0 * w1[0] - h0v)
    r1[-1] += semi.satL * (w1[-1] - spec.RL * w2[-1] - hLv)
    if use_data and spec.forcing is not None:
        F1, F2 = spec.forcing(op.grid.x, t)
        r1 += F1
        r2 += F2
    return r1, r2


def rhs(semi, W, t=None):
    """Time derivative of the state; data terms evaluated at time t."""
    n = semi.npoints
    data = getattr(W, "data", W)
    data = np.asarray(data, dtype=np.float64)
    if data.shape != (2 * n,):
        raise ValueError(f"state length {data.shape} does not match the "
                         f"grid ({2 * n})")
    if t is None:
        t = getattr(W, "t", 0.0)
    r1, r2 = _rhs_arrays(semi, data[:n], data[n:], t)
    return StateVector(np.concatenate([r1, r2]), t)


def system_matrix(semi):
    """Dense D_h = -Lam_D + B + P (homogeneous-data generator), cached."""
    if semi._matrix[0] is not None:
        return semi._matrix[0]
    n = semi.npoints
    D = semi.op.D
    cb = semi.cbarvec
    # 0.5 (C D + D C) with diagonal C, plus the split correction
    CD = 0.5 * (cb[:, None] * D + D * cb[None, :])
    M = np.zeros((2 * n, 2 * n))
    M[:n, :n] = CD + np.diag(semi.avec - 0.5 * semi.Dcbar)
    M[n:, n:] = -CD + np.diag(semi.dvec + 0.5 * semi.Dcbar)
    M[:n, n:] = np.diag(semi.bvec)
    M[n:, :n] = np.diag(semi.cvec)
    M[n, n] += semi.sat0
    M[n, 0] += -semi.sat0 * semi.spec.R0
    M[n - 1, n - 1] += semi.satL
    M[n - 1, 2 * n - 1] += -semi.satL * semi.spec.RL
    semi._matrix[0] = M
    return M


def discrete_energy(semi, W):
    """E_h = W^T H2 W."""
    return inner_product_H(semi.op, W, W)


def energy_rate(semi, W, t=None):
    """Instantaneous dE_h/dt = 2 (W, rhs)_H."""
    return 2.0 * inner_product_H(semi.op, W, rhs(semi, W, t))


def operator_norm_H(M, Hdiag2, seed=0, tol=1e-12, maxit=500):
    """Largest singular value of M in the H inner product, by power
    iteration on H^-1 M^T H M."""
    n = M.shape[0]
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(maxit):
        w = (M.T @ (Hdiag2 * (M @ v))) / Hdiag2
        lam_new = float(np.dot(v, Hdiag2 * w) / np.dot(v, Hdiag2 * v))
        nw = np.sqrt(np.dot(w, Hdiag2 * w))
        if nw == 0.0:
            return 0.0
        v = w / nw
        if abs(lam_new - lam) <= tol * max(1.0, abs(lam_new)):
            lam = lam_new
            break
        lam = lam_new
    return float(np.sqrt(max(lam, 0.0)))


def stability_bound(semi):
    """2 (||B||_H + ||M_cbar||_H): upper bound for energy_rate / E_h."""
    n = semi.npoints
    H2 = np.concatenate([semi.op.Hdiag, semi.op.Hdiag])
    B = np.zeros((2 * n, 2 * n))
    B[:n, :n] = np.diag(semi.avec)
    B[:n, n:] = np.diag(semi.bvec)
    B[n:, :n] = np.diag(semi.cvec)
    B[n:, n:] = np.diag(semi.dvec)
    Mc = np.zeros((2 * n, 2 * n))
    Mc[:n, :n] = np.diag(-semi.Dcbar)
    Mc[n:, n:] = np.diag(semi.Dcbar)
    return 2.0 * (operator_norm_H(B, H2) + operator_norm_H(Mc, H2))
