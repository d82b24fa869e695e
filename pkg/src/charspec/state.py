"""Stacked two-component grid states."""

from dataclasses import dataclass

import numpy as np

__all__ = ["StateVector"]


@dataclass
class StateVector:
    """Stacked characteristic unknowns [w1; w2] at one time.

    ``data`` has length 2(N+1), component-major (all of w1, then all of w2);
    ``t`` is the time tag.
    """

    data: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.float64)
        if self.data.ndim != 1 or self.data.shape[0] % 2 != 0:
            raise ValueError("state data must be a flat vector of even length")

    @classmethod
    def from_components(cls, w1, w2, t=0.0):
        w1 = np.asarray(w1, dtype=np.float64)
        w2 = np.asarray(w2, dtype=np.float64)
        if w1.shape != w2.shape:
            raise ValueError("component length mismatch")
        return cls(np.concatenate([w1, w2]), t)

    @property
    def npoints(self):
        return self.data.shape[0] // 2

    @property
    def w1(self):
        return self.data[: self.npoints]

    @property
    def w2(self):
        return self.data[self.npoints:]

    def copy(self):
        return StateVector(self.data.copy(), self.t)
