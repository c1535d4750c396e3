"""Monte Carlo estimation of transition elements.

Paths are drawn exactly from the discretized free-action measure (endpoint
rejection plus Brownian-bridge construction), and the potential part of the
action is averaged as the observable exp(-S_V/hbar). Each matrix element is
a ratio estimate: the caller scales by the analytic free element.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .backend import get_kernels
from .model import (
    MONTE_CARLO,
    Lattice,
    PhysicalParams,
    Potential,
    SamplerConfig,
    TransitionMatrix,
)
from .oracle import free_box_element
from .potentials import potential_code

_BLOCK = 1024
# substream indices: one generator per stage so endpoint-rejection length
# can never shift the bridge (or Metropolis) draws
ENDPOINT_STREAM = 0
BRIDGE_STREAM = 1
METROPOLIS_STREAM = 2


@dataclass(frozen=True)
class PathSample:
    """One discretized path, x_0 = z through x_{n_t} = y."""

    positions: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim != 1 or pos.size < 3:
            raise ValueError("a path needs at least two slices (three points)")
        if not np.all(np.isfinite(pos)):
            raise ValueError("path positions must be finite")
        object.__setattr__(self, "positions", pos)

    @property
    def z(self) -> float:
        return float(self.positions[0])

    @property
    def y(self) -> float:
        return float(self.positions[-1])

    @property
    def n_slices(self) -> int:
        return self.positions.size - 1


@dataclass(frozen=True)
class ElementEstimate:
    """Ratio estimate <exp(-S_V/hbar)> for one element."""

    mean: float
    std_error: float
    n_samples: int
    negligible: bool = False
    autocorr_uncorrected: bool = False
    acceptance_rate: float | None = None
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.n_samples <= 0:
            raise ValueError("n_samples must be positive")
        if not self.std_error >= 0.0:
            raise ValueError("std_error must be >= 0")


def element_rng(seed: int, i: int, j: int, stream: int) -> np.random.Generator:
    """Independent generator for one (element, stage) pair.

    Keyed on (seed, i, j, stream) so estimates are reproducible and
    independent of evaluation order.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, i, j, stream))))


def _box_geometry(params: PhysicalParams, lattice: Lattice, i: int, j: int):
    lo_i, _ = lattice.box_bounds(i)
    lo_j, _ = lattice.box_bounds(j)
    coef = params.m / (2.0 * params.hbar * params.time_t)
    gap = max(0, abs(i - j) - 1) * lattice.dx
    return lo_i, lo_j, coef, gap


def sample_endpoints(params: PhysicalParams, lattice: Lattice, i: int, j: int,
                     rng: np.random.Generator, count: int | None = None,
                     cap: int = 1_000_000, backend: str | None = None):
    """Endpoint pairs (y, z) over box_i x box_j, density ~ exp(-m(y-z)^2/2hbar T).

    Rejection from the uniform proposal with the peak-density envelope at the
    minimal box separation. Scalar pair by default; arrays when count is set.
    Raises if the proposal cap is exhausted (the element is then negligible).
    """
    kern = get_kernels(backend)
    lo_i, lo_j, coef, gap = _box_geometry(params, lattice, i, j)
    n = 1 if count is None else int(count)
    if n <= 0:
        raise ValueError("count must be positive")
    max_blocks = max(1, -(-cap // _BLOCK))
    ys, zs, got = kern.endpoint_pairs(rng, lo_i, lo_j, lattice.dx, coef, gap,
                                      n, _BLOCK, max_blocks)
    if got < n:
        raise RuntimeError(
            f"endpoint rejection cap ({cap} proposals) exhausted for boxes "
            f"({i}, {j}); the element is numerically negligible")
    if count is None:
        return float(ys[0]), float(zs[0])
    return ys, zs


def brownian_bridge(params: PhysicalParams, z: float, y: float, n_t: int,
                    rng: np.random.Generator, backend: str | None = None) -> PathSample:
    """One free-measure path pinned to x_0 = z, x_{n_t} = y.

    Interior points come from the exact sequential conditionals of the
    discretized free action with slice spacing a0 = T/n_t.
    """
    if n_t < 2:
        raise ValueError("n_t must be >= 2")
    kern = get_kernels(backend)
    a0 = params.time_t / n_t
    paths = kern.bridge_paths(rng, np.array([float(z)]), np.array([float(y)]),
                              n_t, params.m, params.hbar, a0)
    return PathSample(positions=paths[0])


def bridge_ensemble(params: PhysicalParams, z, y, n_t: int,
                    rng: np.random.Generator, backend: str | None = None) -> np.ndarray:
    """Vectorized form of brownian_bridge: one path per row of (z, y)."""
    if n_t < 2:
        raise ValueError("n_t must be >= 2")
    kern = get_kernels(backend)
    z = np.ascontiguousarray(z, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    if z.shape != y.shape or z.ndim != 1:
        raise ValueError("z and y must be 1-D arrays of equal length")
    return kern.bridge_paths(rng, z, y, n_t, params.m, params.hbar,
                             params.time_t / n_t)


def estimate_element(params: PhysicalParams, lattice: Lattice, potential: Potential,
                     i: int, j: int, cfg: SamplerConfig,
                     backend: str | None = None) -> ElementEstimate:
    """Bridge-sampler ratio estimate for one element.

    Draws N_c endpoint pairs, fills each with a bridge, and averages
    exp(-S_V/hbar). The estimate multiplies free_box_element(i, j) to give
    the transition element; that scaling is the caller's job.
    """
    kern = get_kernels(backend)
    lo_i, lo_j, coef, gap = _box_geometry(params, lattice, i, j)
    nc = cfg.n_configs
    max_blocks = max(1, -(-cfg.rejection_cap // _BLOCK))
    gen_end = element_rng(cfg.seed, i, j, ENDPOINT_STREAM)
    ys, zs, got = kern.endpoint_pairs(gen_end, lo_i, lo_j, lattice.dx, coef, gap,
                                      nc, _BLOCK, max_blocks)
    if got < nc:
        return ElementEstimate(mean=0.0, std_error=0.0, n_samples=nc, negligible=True)
    kind, vparams = potential_code(potential)
    gen_bridge = element_rng(cfg.seed, i, j, BRIDGE_STREAM)
    mean, std_error = kern.bridge_ratio_from_pairs(
        gen_bridge, ys, zs, params.m, params.hbar,
        cfg.slice_spacing(params.time_t), cfg.n_slices, kind, vparams)
    return ElementEstimate(mean=mean, std_error=std_error, n_samples=nc)


def metropolis_estimate_element(params: PhysicalParams, lattice: Lattice,
                                potential: Potential, i: int, j: int,
                                cfg: SamplerConfig,
                                backend: str | None = None) -> ElementEstimate:
    """Metropolis cross-check estimate for one element.

    Random-walk updates on the discretized path with the free action as the
    target; endpoint proposals that leave their boxes are rejected. The
    standard error ignores residual autocorrelation and is flagged as such.
    """
    kern = get_kernels(backend)
    lo_i, lo_j, _, _ = _box_geometry(params, lattice, i, j)
    kind, vparams = potential_code(potential)
    gen = element_rng(cfg.seed, i, j, METROPOLIS_STREAM)
    mean, std_error, acc = kern.metropolis_ratio(
        gen, lo_i, lo_j, lattice.dx, params.m, params.hbar,
        cfg.slice_spacing(params.time_t), cfg.n_slices, cfg.n_configs,
        cfg.metropolis_step, cfg.thermalization_sweeps, cfg.decorrelation_sweeps,
        kind, vparams)
    notes = ()
    if not 0.1 <= acc <= 0.9:
        notes = (f"acceptance rate {acc:.3f} outside [0.1, 0.9]; "
                 "tune metropolis_step",)
    return ElementEstimate(mean=mean, std_error=std_error, n_samples=cfg.n_configs,
                           autocorr_uncorrected=True, acceptance_rate=acc,
                           warnings=notes)


def estimate_matrix(params: PhysicalParams, lattice: Lattice, potential: Potential,
                    cfg: SamplerConfig, backend: str | None = None) -> TransitionMatrix:
    """Full Monte Carlo transition matrix.

    Estimates the ratio for every i <= j on its own RNG substream, scales by
    the analytic free element, mirrors, and symmetrizes exactly. Elements
    whose free factor underflows (< 1e-300) are set to 0 and skipped; their
    count is reported alongside cap-exhausted elements.
    """
    n = lattice.n
    matrix = np.zeros((n, n))
    errors = np.zeros((n, n))
    negligible = 0
    use_metropolis = cfg.method == "metropolis"
    for i in range(n):
        for j in range(i, n):
            m0 = free_box_element(params, lattice, i, j)
            if m0 < 1e-300:
                negligible += 1
                continue
            if use_metropolis:
                est = metropolis_estimate_element(params, lattice, potential,
                                                  i, j, cfg, backend)
            else:
                est = estimate_element(params, lattice, potential, i, j, cfg, backend)
            if est.negligible:
                negligible += 1
                continue
            matrix[i, j] = m0 * est.mean
            matrix[j, i] = matrix[i, j]
            errors[i, j] = m0 * est.std_error
            errors[j, i] = errors[i, j]
    matrix = 0.5 * (matrix + matrix.T)  # mirrored slots: exact, bitwise symmetric
    return TransitionMatrix(matrix=matrix, stat_errors=errors, time_t=params.time_t,
                            source=MONTE_CARLO, lattice=lattice, seed=cfg.seed,
                            negligible_count=negligible)
