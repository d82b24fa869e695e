"""Diagonal-norm summation-by-parts first-derivative operators.

Operators for global accuracy orders p = 2..5 (interior centered stencils of
order 2(p-1), one-sided boundary closures of order p-1) satisfying the SBP
decomposition H D = Q with diagonal positive H and

    u^T (Q + Q^T) v = u_N v_N - u_0 v_0.

The closure tables are hard-coded as exact rationals. The boundary corner of
Q is stored as its strict upper triangle only, so antisymmetry (and with it
the SBP identity) holds to the last bit once assembled. A generated test
re-verifies the accuracy orders of every table.
"""

from dataclasses import dataclass, field
from fractions import Fraction as Fr

import numpy as np

from ._backend import apply_banded

__all__ = ["Grid", "SbpOperator", "build_sbp", "apply_D", "inner_product_H",
           "norm_H", "min_grid_size"]

SUPPORTED_ORDERS = (2, 3, 4, 5)


@dataclass(frozen=True)
class _SbpTable:
    half_width: int          # interior stencil half width m
    boundary_rows: int       # closure rows r per side
    norm: tuple              # H boundary weights (per h)
    stencil: tuple           # interior stencil, offsets +1..+m
    q_upper: tuple           # strict upper triangle of the r x r corner of Q


# Boundary closures of the diagonal-norm family with interior orders
# 2, 4, 6, 8. The (2,1) and (4,2) blocks are the classical unique operators;
# the (6,3) block is the classical one-parameter member (corner entry
# 342523/518400); the (8,4) block resolves the three remaining degrees of
# freedom by the minimum-norm member of the family, which also sits at the
# spectral-radius minimum.
_TABLES = {
    2: _SbpTable(
        half_width=1, boundary_rows=1,
        norm=(Fr(1, 2),),
        stencil=(Fr(1, 2),),
        q_upper=(),
    ),
    3: _SbpTable(
        half_width=2, boundary_rows=4,
        norm=(Fr(17, 48), Fr(59, 48), Fr(43, 48), Fr(49, 48)),
        stencil=(Fr(2, 3), Fr(-1, 12)),
        q_upper=(
            (Fr(59, 96), Fr(-1, 12), Fr(-1, 32)),
            (Fr(59, 96), Fr(0, 1)),
            (Fr(59, 96),),
        ),
    ),
    4: _SbpTable(
        half_width=3, boundary_rows=6,
        norm=(Fr(13649, 43200), Fr(12013, 8640), Fr(2711, 4320),
              Fr(5359, 4320), Fr(7877, 8640), Fr(43801, 43200)),
        stencil=(Fr(3, 4), Fr(-3, 20), Fr(1, 60)),
        q_upper=(
            (Fr(104009, 172800), Fr(30443, 259200), Fr(-33311, 86400),
             Fr(5621, 28800), Fr(-601, 20736)),
            (Fr(-311, 51840), Fr(6743, 5760), Fr(-24337, 34560),
             Fr(36661, 259200)),
            (Fr(-2231, 5184), Fr(41287, 51840), Fr(-7333, 28800)),
            (Fr(4147, 17280), Fr(25427, 259200)),
            (Fr(342523, 518400),),
        ),
    ),
    5: _SbpTable(
        half_width=4, boundary_rows=8,
        norm=(Fr(1498139, 5080320), Fr(1107307, 725760), Fr(20761, 80640),
              Fr(1304999, 725760), Fr(299527, 725760), Fr(103097, 80640),
              Fr(670091, 725760), Fr(5127739, 5080320)),
        stencil=(Fr(4, 5), Fr(-1, 5), Fr(4, 105), Fr(-1, 280)),
        q_upper=(
            (Fr(206453678869, 309818234880), Fr(-1037166409, 38727279360),
             Fr(-62219441237, 309818234880), Fr(-1175365621, 77454558720),
             Fr(6564864751, 61963646976), Fr(-345029933, 15490911744),
             Fr(-2186639, 301086720)),
            (Fr(8284654691, 44259747840), Fr(1785686071, 2766234240),
             Fr(2292481139, 44259747840), Fr(-659643601, 2212987392),
             Fr(181785827, 2950649856), Fr(1419870103, 77454558720)),
            (Fr(9666534419, 44259747840), Fr(-929740577, 11064936960),
             Fr(46626281, 1639249920), Fr(-2818117, 11064936960),
             Fr(-134242609, 61963646976)),
            (Fr(1347047221, 4917749760), Fr(844899857, 1580705280),
             Fr(-5729632301, 44259747840), Fr(-245689057, 15490911744)),
            (Fr(2065188119, 8851949568), Fr(-31631, 11290752),
             Fr(-129991573, 309818234880)),
            (Fr(30352782883, 44259747840), Fr(-4499630381, 38727279360)),
            (Fr(234869646581, 309818234880),),
        ),
    ),
}


@dataclass(frozen=True)
class Grid:
    """Uniform grid of N+1 points on [0, L]."""

    N: int
    L: float

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("grid needs at least one interval")
        if self.L <= 0:
            raise ValueError("domain length must be positive")

    @property
    def h(self):
        return self.L / self.N

    @property
    def x(self):
        return np.linspace(0.0, self.L, self.N + 1)


def min_grid_size(p):
    """Smallest admissible N+1 for order p (closure blocks must not overlap
    and the last left-closure row must couple to true interior rows)."""
    t = _TABLES[p]
    return 2 * t.boundary_rows + t.half_width


def _corner_q(table):
    """Dense r x w left corner of Q, assembled so Q[i,j] = -Q[j,i] exactly."""
    r, m = table.boundary_rows, table.half_width
    w = r + m
    q = np.zeros((r, w))
    q[0, 0] = -0.5
    for i in range(r):
        for j in range(i + 1, r):
            v = float(table.q_upper[i][j - i - 1])
            q[i, j] = v
            q[j, i] = -v
        for j in range(r, min(i + m, w - 1) + 1):
            q[i, j] = float(table.stencil[j - i - 1])
    return q


@dataclass(frozen=True)
class SbpOperator:
    """First-derivative SBP operator on a uniform grid.

    Holds the banded representation (interior stencil + closure blocks,
    scale-free) used by the fast matvec; `D`, `H`, and `Q` materialize the
    conventional matrices.
    """

    p: int
    grid: Grid
    left: np.ndarray          # (r, w) closure block of h*D
    right: np.ndarray         # (r, w) closure block of h*D
    stencil: np.ndarray       # full interior stencil, length 2m+1, of h*D
    Hdiag: np.ndarray         # diagonal of H (includes h)
    _dense: list = field(default_factory=lambda: [None], repr=False,
                         compare=False)

    @property
    def H(self):
        return self.Hdiag

    @property
    def D(self):
        """Dense (N+1)^2 materialization (cached; used for eigenproblems)."""
        if self._dense[0] is None:
            n = self.grid.N + 1
            r, w = self.left.shape
            m = (self.stencil.shape[0] - 1) // 2
            D = np.zeros((n, n))
            D[:r, :w] = self.left
            D[n - r:, n - w:] = self.right
            for i in range(r, n - r):
                D[i, i - m: i + m + 1] = self.stencil
            D /= self.grid.h
            self._dense[0] = D
        return self._dense[0]

    @property
    def Q(self):
        return self.Hdiag[:, None] * self.D


def build_sbp(p, grid):
    """Construct the diagonal-norm SBP operator of global order p on grid."""
    if p not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported order p={p}; supported: "
                         f"{SUPPORTED_ORDERS}")
    table = _TABLES[p]
    nmin = min_grid_size(p)
    if grid.N + 1 < nmin:
        raise ValueError(
            f"grid too small for the p={p} closure: need N+1 >= {nmin}, "
            f"got {grid.N + 1}")
    r = table.boundary_rows
    q = _corner_q(table)
    hb = np.array([float(v) for v in table.norm])
    left = q / hb[:, None]
    right = -left[::-1, ::-1]
    m = table.half_width
    stencil = np.zeros(2 * m + 1)
    for k, c in enumerate(table.stencil, start=1):
        stencil[m + k] = float(c)
        stencil[m - k] = -float(c)
    n = grid.N + 1
    Hdiag = np.ones(n)
    Hdiag[:r] = hb
    Hdiag[n - r:] = hb[::-1]
    Hdiag *= grid.h
    return SbpOperator(p=p, grid=grid,
                       left=np.ascontiguousarray(left),
                       right=np.ascontiguousarray(right),
                       stencil=stencil, Hdiag=Hdiag)


def apply_D(op, v):
    """D @ v through the banded kernel."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (op.grid.N + 1,):
        raise ValueError(
            f"expected a grid function of length {op.grid.N + 1}, "
            f"got {v.shape}")
    return apply_banded(op.left, op.right, op.stencil,
                        np.ascontiguousarray(v), 1.0 / op.grid.h)


def _stacked(u, n):
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (2 * n,):
        raise ValueError(f"expected a stacked state of length {2 * n}, "
                         f"got {u.shape}")
    return u


def inner_product_H(op, U, W):
    """(U, W)_H = u1^T H w1 + u2^T H w2 for stacked states."""
    n = op.grid.N + 1
    U = _stacked(getattr(U, "data", U), n)
    W = _stacked(getattr(W, "data", W), n)
    return float(np.dot(op.Hdiag, U[:n] * W[:n] + U[n:] * W[n:]))


def norm_H(op, U):
    """H-norm of a stacked state."""
    return np.sqrt(max(inner_product_H(op, U, U), 0.0))
