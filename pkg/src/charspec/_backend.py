"""Backend selection: compiled extension core with pure-Python fallback.

The compiled module ``charspec._core`` provides the hot kernels (banded SBP
matvec, balancing, Hessenberg reduction, Francis QR). If it is unavailable,
or if ``CHARSPEC_PURE_PYTHON=1`` is set, the numpy fallbacks from
``_kernels_py`` are used instead. The selection happens once at import.
"""

import os

from . import _kernels_py

try:
    from . import _core
except ImportError:
    _core = None

_force_py = os.environ.get("CHARSPEC_PURE_PYTHON", "") not in ("", "0")

if _core is not None and not _force_py:
    BACKEND = "compiled"
    apply_banded = _core.apply_banded
    eigvals_dense_backend = _core.eigvals_core
    EigenConvergenceError = _core.EigenConvergenceError
else:
    BACKEND = "python"
    apply_banded = _kernels_py.apply_banded
    eigvals_dense_backend = _kernels_py.eigvals_py
    EigenConvergenceError = _kernels_py.EigenConvergenceError


def active_backend():
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return BACKEND


def get_backend(name):
    """Fetch a specific backend's kernels by name (used by the benchmark)."""
    if name == "python":
        return _kernels_py.apply_banded, _kernels_py.eigvals_py
    if name == "compiled":
        if _core is None:
            raise RuntimeError("compiled backend is not available")
        return _core.apply_banded, _core.eigvals_core
    raise ValueError(f"unknown backend {name!r}")
