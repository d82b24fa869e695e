"""Continuous problem definitions.

The characteristic system

    W_t + Lambda(x) W_x = B(x) W + F(x, t),   Lambda = diag(-cbar, +cbar)

on [0, L] with reflection boundary conditions

    w2(0, t) = R0 w1(0, t) + h0(t),    w1(L, t) = RL w2(L, t) + hL(t),

where B = [[a, b], [c, d]] has affine-in-x entries. Includes the benchmark
case catalog, the trigonometric manufactured solution with its compatible
forcing and boundary data, and Gaussian pulse initial data.
"""

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .state import StateVector

__all__ = ["AffineField", "GaussianPulse", "ProblemSpec", "CASE_IDS",
           "make_case", "manufactured_data", "gaussian_initial_data"]

CASE_IDS = ("1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b")

# Table of benchmark coefficients: (a, b, c, d, cbar) as (intercept, slope).
_CASE_TABLE = {
    "1a": ((-0.7, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.3, 0.0), (1.2, 0.0)),
    "1b": ((0.7, 0.0), (0.0, 0.0), (0.0, 0.0), (1.3, 0.0), (1.2, 0.0)),
    "2a": ((1.0, 0.0), (-3.0, 0.0), (3.0, 0.0), (-5.0, 0.0), (1.2, 0.0)),
    "2b": ((2.0, 0.0), (3.0, 0.0), (2.0, 0.0), (4.0, 0.0), (1.2, 0.0)),
    "3a": ((-0.7, -1.0), (0.0, 0.0), (0.0, 0.0), (-1.3, 0.1), (1.2, 0.5)),
    "3b": ((0.7, 1.0), (0.0, 0.0), (0.0, 0.0), (1.3, 0.1), (1.2, 0.5)),
    "4a": ((0.0, 1.0), (0.0, -3.0), (0.0, 3.0), (0.0, -5.0), (1.2, 0.5)),
    "4b": ((2.0, 1.0), (0.0, 3.0), (0.0, 2.0), (-1.0, 4.0), (1.2, 0.5)),
}


@dataclass(frozen=True)
class AffineField:
    """Coefficient field value(x) = intercept + slope * x."""

    intercept: float
    slope: float = 0.0

    def __call__(self, x):
        return self.intercept + self.slope * np.asarray(x, dtype=np.float64)

    @property
    def is_constant(self):
        return self.slope == 0.0

    def min_on(self, lo, hi):
        return min(self(lo), self(hi))

    def max_on(self, lo, hi):
        return max(self(lo), self(hi))


@dataclass(frozen=True)
class GaussianPulse:
    """Pulse exp(-(x - center)^2 / width^2)."""

    center: float
    width: float

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("pulse width must be positive")

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.exp(-((x - self.center) / self.width) ** 2)


@dataclass(frozen=True)
class ProblemSpec:
    """Coefficients, boundary reflection data, and optional data functions.

    ``h0``/``hL`` are boundary data in the reflection conditions, ``forcing``
    maps (x, t) to the pair (F1, F2), and ``f`` maps x to the initial pair
    (w1, w2). Absent data functions mean homogeneous data.
    """

    L: float
    a: AffineField
    b: AffineField
    c: AffineField
    d: AffineField
    cbar: AffineField
    R0: float
    RL: float
    h0: Optional[Callable] = None
    hL: Optional[Callable] = None
    forcing: Optional[Callable] = None
    f: Optional[Callable] = None
    label: str = ""

    def __post_init__(self):
        if not (-1.0 <= self.R0 <= 1.0 and -1.0 <= self.RL <= 1.0):
            raise ValueError("reflection coefficients must lie in [-1, 1]")
        if self.cbar.min_on(0.0, self.L) <= 0.0:
            raise ValueError("wave speed must be positive on [0, L]")

    @property
    def diagonal_B(self):
        """True when b = c = 0 (decoupled interior)."""
        return (self.b.intercept == self.b.slope == 0.0
                and self.c.intercept == self.c.slope == 0.0)

    @property
    def constant_coefficients(self):
        return all(f.is_constant for f in (self.a, self.b, self.c,
                                           self.d, self.cbar))

    @property
    def structure(self):
        """Tag pair ('diagonal'|'full', 'constant'|'variable')."""
        return ("diagonal" if self.diagonal_B else "full",
                "constant" if self.constant_coefficients else "variable")

    def with_reflection(self, R0=None, RL=None):
        return replace(self, R0=self.R0 if R0 is None else R0,
                       RL=self.RL if RL is None else RL)


def make_case(case_id):
    """Benchmark problem from the case catalog (L = 2, R0 = RL = 1)."""
    try:
        a, b, c, d, cbar = _CASE_TABLE[case_id]
    except KeyError:
        raise ValueError(f"unknown case id {case_id!r}; "
                         f"expected one of {CASE_IDS}") from None
    return ProblemSpec(L=2.0,
                       a=AffineField(*a), b=AffineField(*b),
                       c=AffineField(*c), d=AffineField(*d),
                       cbar=AffineField(*cbar),
                       R0=1.0, RL=1.0, label=case_id)


def manufactured_data(spec):
    """Manufactured solution with its compatible forcing and boundary data.

    The exact solution w1 = sin(pi x - t), w2 = cos(2 pi x + t) solves the
    system for arbitrary coefficients once the returned forcing and boundary
    data are applied. Returns (exact, forcing, h0, hL) where exact(x, t)
    gives the pair (w1, w2).
    """
    a, b, c, d, cbar = spec.a, spec.b, spec.c, spec.d, spec.cbar
    R0, RL, L = spec.R0, spec.RL, spec.L

    def exact(x, t):
        return np.sin(np.pi * x - t), np.cos(2 * np.pi * x + t)

    def forcing(x, t):
        s1 = np.sin(np.pi * x - t)
        c1 = np.cos(np.pi * x - t)
        s2 = np.sin(2 * np.pi * x + t)
        c2 = np.cos(2 * np.pi * x + t)
        F1 = -(1.0 + cbar(x) * np.pi) * c1 - a(x) * s1 - b(x) * c2
        F2 = -(1.0 + 2.0 * cbar(x) * np.pi) * s2 - c(x) * s1 - d(x) * c2
        return F1, F2

    def h0(t):
        return np.cos(t) + R0 * np.sin(t)

    def hL(t):
        return np.sin(np.pi * L - t) - RL * np.cos(2 * np.pi * L + t)

    return exact, forcing, h0, hL


def with_manufactured_data(spec):
    """Copy of spec carrying the manufactured forcing/boundary/initial data."""
    exact, forcing, h0, hL = manufactured_data(spec)

    def f(x):
        return exact(x, 0.0)

    return replace(spec, h0=h0, hL=hL, forcing=forcing, f=f)


def gaussian_initial_data(grid, pulse):
    """Initial state with w1 = 0 and w2 the sampled pulse."""
    x = grid.x
    return StateVector.from_components(np.zeros_like(x), pulse(x), t=0.0)
