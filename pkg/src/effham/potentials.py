"""Potential evaluation and the potential part of the Euclidean action."""

from __future__ import annotations

import numpy as np

from .model import Free, Harmonic, Polynomial, Potential, Sech2

# Integer codes used to pass potentials into compiled kernels.
KIND_FREE = 0
KIND_HARMONIC = 1
KIND_SECH2 = 2
KIND_POLYNOMIAL = 3


def evaluate(potential: Potential, m: float, x):
    """V(x) for scalar or array x (energy units)."""
    if isinstance(potential, Free):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        return float(out) if out.ndim == 0 else out
    if isinstance(potential, Harmonic):
        out = 0.5 * m * potential.omega ** 2 * np.square(np.asarray(x, dtype=float))
        return float(out) if out.ndim == 0 else out
    if isinstance(potential, Sech2):
        out = -potential.v0 / np.cosh(np.asarray(x, dtype=float) / potential.d) ** 2
        return float(out) if out.ndim == 0 else out
    if isinstance(potential, Polynomial):
        # Horner in descending order; polyval wants highest degree first.
        out = np.polyval(potential.coeffs[::-1], np.asarray(x, dtype=float))
        return float(out) if np.ndim(out) == 0 else out
    raise TypeError(f"unknown potential {potential!r}")


def action_potential(potential: Potential, m: float, path, a0: float) -> float:
    """Trapezoidal S_V = a0 * (V0/2 + V1 + ... + V_{nt-1} + V_nt/2).

    Endpoint half-weights keep the sum invariant under path reversal and
    give O(nt**-2) convergence to the continuum integral of V along the path.
    """
    if a0 <= 0.0:
        raise ValueError("a0 must be positive")
    path = np.asarray(path, dtype=float)
    if path.size < 2:
        raise ValueError("path needs at least two points")
    v = evaluate(potential, m, path)
    return float(a0 * (np.sum(v) - 0.5 * v[0] - 0.5 * v[-1]))


def potential_code(potential: Potential) -> tuple[int, np.ndarray]:
    """(kind, parameter vector) encoding consumed by the compiled kernels."""
    if isinstance(potential, Free):
        return KIND_FREE, np.zeros(1)
    if isinstance(potential, Harmonic):
        return KIND_HARMONIC, np.array([potential.omega], dtype=float)
    if isinstance(potential, Sech2):
        return KIND_SECH2, np.array([potential.v0, potential.d], dtype=float)
    if isinstance(potential, Polynomial):
        return KIND_POLYNOMIAL, np.asarray(potential.coeffs, dtype=float)
    raise TypeError(f"unknown potential {potential!r}")
