"""Domain types shared by every module.

Everything here is an immutable value object: construct, validate, share.
Arrays stored on the matrix/spectrum types are treated as frozen by
convention (nothing in the package mutates them after construction).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

# Matrix provenance tags.
MONTE_CARLO = "monte-carlo"
EXACT_QUADRATURE = "exact-quadrature"
FREE_ANALYTIC = "free-analytic"

_SOURCES = (MONTE_CARLO, EXACT_QUADRATURE, FREE_ANALYTIC)


@dataclass(frozen=True)
class PhysicalParams:
    """Mass, hbar, Boltzmann constant, and the Euclidean evolution time T."""

    m: float = 1.0
    hbar: float = 1.0
    kb: float = 1.0
    time_t: float = 1.0

    def __post_init__(self):
        for name in ("m", "hbar", "kb", "time_t"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"PhysicalParams.{name} must be positive and finite, got {value!r}")

    @property
    def thermal_width(self) -> float:
        """Gaussian width sqrt(hbar*T/m) of the free kernel."""
        return float(np.sqrt(self.hbar * self.time_t / self.m))


@dataclass(frozen=True)
class Lattice:
    """Regular position lattice: nodes x_i = xmin + i*dx for i = 0..n.

    There are n+1 nodes and n boxes; box i is the half-open interval
    [x_i, x_{i+1}), so every point belongs to exactly one box.
    """

    xmin: float
    dx: float
    n: int

    def __post_init__(self):
        if not np.isfinite(self.dx) or self.dx <= 0.0:
            raise ValueError(f"Lattice.dx must be positive, got {self.dx!r}")
        if self.n < 2:
            raise ValueError(f"Lattice.n must be >= 2, got {self.n!r}")
        if not np.isfinite(self.xmin):
            raise ValueError("Lattice.xmin must be finite")

    @property
    def xmax(self) -> float:
        return self.xmin + self.n * self.dx

    def nodes(self) -> np.ndarray:
        return self.xmin + self.dx * np.arange(self.n + 1)

    def centers(self) -> np.ndarray:
        return self.xmin + self.dx * (np.arange(self.n) + 0.5)

    def box_bounds(self, i: int) -> tuple[float, float]:
        if not 0 <= i < self.n:
            raise IndexError(f"box index {i} out of range [0, {self.n})")
        lo = self.xmin + i * self.dx
        return lo, lo + self.dx

    @staticmethod
    def centered(dx: float, n: int, center: float = 0.0) -> "Lattice":
        """Lattice of n boxes of width dx centered on `center`."""
        return Lattice(xmin=center - 0.5 * n * dx, dx=dx, n=n)


def basis_value(lattice: Lattice, i: int, x):
    """Normalized box function e_i(x): dx**-0.5 inside box i, else 0.

    Accepts scalar or array x. The normalization makes the basis
    orthonormal, so matrix elements are between unit-norm states.
    """
    lo, hi = lattice.box_bounds(i)
    amp = lattice.dx ** -0.5
    x = np.asarray(x, dtype=float)
    out = np.where((x >= lo) & (x < hi), amp, 0.0)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# potentials

@dataclass(frozen=True)
class Free:
    """V(x) = 0."""


@dataclass(frozen=True)
class Harmonic:
    """V(x) = 0.5 * m * omega**2 * x**2."""

    omega: float

    def __post_init__(self):
        if not np.isfinite(self.omega) or self.omega <= 0.0:
            raise ValueError(f"Harmonic.omega must be positive, got {self.omega!r}")


@dataclass(frozen=True)
class Sech2:
    """Attractive well V(x) = -v0 / cosh(x/d)**2."""

    v0: float
    d: float

    def __post_init__(self):
        if not np.isfinite(self.v0) or self.v0 <= 0.0:
            raise ValueError(f"Sech2.v0 must be positive, got {self.v0!r}")
        if not np.isfinite(self.d) or self.d <= 0.0:
            raise ValueError(f"Sech2.d must be positive, got {self.d!r}")


@dataclass(frozen=True)
class Polynomial:
    """V(x) = sum_p coeffs[p] * x**p. Boundedness below is the caller's concern."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("Polynomial needs at least one coefficient")
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("Polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))


Potential = Free | Harmonic | Sech2 | Polynomial


# ---------------------------------------------------------------------------
# results

@dataclass(eq=False)
class TransitionMatrix:
    """Symmetric N x N matrix of Euclidean transition elements at time T.

    stat_errors holds one-sigma statistical errors per element (all zero
    for the analytic routes). Exact symmetry is an invariant: estimators
    fill i <= j and mirror, so M[i, j] == M[j, i] bitwise.
    """

    matrix: np.ndarray
    stat_errors: np.ndarray
    time_t: float
    source: str
    lattice: Lattice
    seed: Optional[int] = None
    negligible_count: int = 0

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        e = np.asarray(self.stat_errors, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got shape {m.shape}")
        if m.shape[0] != self.lattice.n:
            raise ValueError(f"matrix size {m.shape[0]} does not match lattice n={self.lattice.n}")
        if e.shape != m.shape:
            raise ValueError("stat_errors shape must match matrix shape")
        if self.source not in _SOURCES:
            raise ValueError(f"unknown source {self.source!r}")
        if not np.array_equal(m, m.T):
            raise ValueError("matrix must be exactly symmetric (symmetrize before constructing)")
        if np.any(e < 0.0):
            raise ValueError("stat_errors must be nonnegative")
        if self.source != MONTE_CARLO:
            if np.any(e != 0.0):
                raise ValueError("exact routes carry zero stat_errors")
            if np.any(np.diag(m) <= 0.0):
                raise ValueError("exact-route diagonal elements must be positive")
        if self.time_t <= 0.0:
            raise ValueError("time_t must be positive")
        self.matrix = m
        self.stat_errors = e

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass(eq=False)
class EffectiveHamiltonian:
    """Finite-rank effective Hamiltonian: kept energies plus basis coefficients.

    energies are ascending; coefficients[:, k] is the box-basis expansion of
    eigenstate k (orthonormal columns). dropped_count records eigenvalues
    rejected by the positivity filter before taking logarithms.
    """

    energies: np.ndarray
    coefficients: np.ndarray
    dropped_count: int
    lattice: Lattice
    time_t: float
    source: str
    seed: Optional[int] = None

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        u = np.asarray(self.coefficients, dtype=float)
        if e.ndim != 1 or u.ndim != 2:
            raise ValueError("energies must be 1-D and coefficients 2-D")
        if u.shape != (self.lattice.n, e.size):
            raise ValueError(f"coefficients must have shape (N, K) = ({self.lattice.n}, {e.size})")
        if e.size == 0:
            raise ValueError("need at least one kept energy")
        if np.any(np.diff(e) < 0.0):
            raise ValueError("energies must be ascending")
        gram = u.T @ u
        if np.max(np.abs(gram - np.eye(e.size))) > 1e-8:
            raise ValueError("coefficient columns must be orthonormal to 1e-8")
        self.energies = e
        self.coefficients = u

    @property
    def kept_count(self) -> int:
        return self.energies.size


@dataclass(eq=False)
class ThermoCurve:
    """Rows of (beta, temperature, logZ, Z, U, C) from a finite spectrum."""

    beta: np.ndarray
    temperature: np.ndarray
    log_z: np.ndarray
    z: np.ndarray
    u: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        arrays = [np.asarray(a, dtype=float) for a in
                  (self.beta, self.temperature, self.log_z, self.z, self.u, self.c)]
        n = arrays[0].size
        if any(a.shape != (n,) for a in arrays):
            raise ValueError("all thermo columns must be 1-D with equal length")
        if np.any(arrays[0] <= 0.0):
            raise ValueError("beta values must be positive")
        # Z > 0 is checked through logZ: the stored z column may underflow
        # to 0.0 at extreme beta even though log_z stays finite.
        if not np.all(np.isfinite(arrays[2])):
            raise ValueError("log Z must be finite (Z > 0) at every beta")
        if np.any(arrays[5] < 0.0):
            raise ValueError("specific heat must be nonnegative")
        self.beta, self.temperature, self.log_z, self.z, self.u, self.c = arrays


@dataclass(frozen=True)
class SamplerConfig:
    """Monte Carlo controls shared by the bridge and Metropolis samplers."""

    n_configs: int = 10_000
    n_slices: int = 64
    seed: int = 0
    method: str = "bridge"
    metropolis_step: float = 0.25
    thermalization_sweeps: int = 2_000
    decorrelation_sweeps: int = 50
    rejection_cap: int = 1_000_000

    def __post_init__(self):
        if self.n_configs < 1:
            raise ValueError("n_configs must be >= 1")
        if self.n_slices < 2:
            raise ValueError("n_slices must be >= 2")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")
        if self.method not in ("bridge", "metropolis"):
            raise ValueError(f"unknown sampler method {self.method!r}")
        if self.metropolis_step <= 0.0:
            raise ValueError("metropolis_step must be positive")
        if self.thermalization_sweeps < 0 or self.decorrelation_sweeps < 1:
            raise ValueError("thermalization_sweeps >= 0 and decorrelation_sweeps >= 1 required")
        if self.rejection_cap < 1:
            raise ValueError("rejection_cap must be >= 1")

    def slice_spacing(self, time_t: float) -> float:
        return time_t / self.n_slices
