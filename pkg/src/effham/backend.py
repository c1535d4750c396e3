"""Kernel backend selection: compiled (numba) or pure numpy.

The two kernel modules expose the same functions with the same RNG
consumption layout, so a given seed produces the same physics on either
backend (bit-for-bit for path construction, up to summation order for
reductions). Selection order:

  1. explicit `name` argument,
  2. EFFHAM_BACKEND environment variable (auto|numba|numpy),
  3. auto: numba when importable, else numpy.
"""

from __future__ import annotations

import os

try:
    import numba  # noqa: F401
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

_ENV_VAR = "EFFHAM_BACKEND"
_VALID = ("auto", "numba", "numpy")


def backend_name(name: str | None = None) -> str:
    """Resolve the backend name ('numba' or 'numpy')."""
    choice = name or os.environ.get(_ENV_VAR, "auto")
    if choice not in _VALID:
        raise ValueError(f"{_ENV_VAR} must be one of {_VALID}, got {choice!r}")
    if choice == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return choice


def get_kernels(name: str | None = None):
    """Return the kernel module for the resolved backend."""
    resolved = backend_name(name)
    if resolved == "numba":
        from . import _kernels_numba as mod
    else:
        from . import _kernels_numpy as mod
    return mod
