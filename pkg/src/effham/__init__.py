"""Effective Hamiltonians for 1-D quantum systems from Euclidean transition
matrices: Monte Carlo and exact construction, Jacobi diagonalization,
spectra, wave functions, and thermodynamics."""

from .backend import HAS_NUMBA, backend_name, get_kernels
from .model import (
    EXACT_QUADRATURE,
    FREE_ANALYTIC,
    MONTE_CARLO,
    EffectiveHamiltonian,
    Free,
    Harmonic,
    Lattice,
    PhysicalParams,
    Polynomial,
    Potential,
    SamplerConfig,
    Sech2,
    ThermoCurve,
    TransitionMatrix,
    basis_value,
)
from .oracle import (
    FreeKernel,
    HarmonicKernel,
    KernelSpec,
    exact_box_matrix,
    free_box_element,
    free_box_matrix,
    free_kernel,
    free_thermo,
    harmonic_eigenfunction,
    harmonic_energy,
    harmonic_kernel,
    harmonic_thermo,
    kernel_for,
    sech2_bound_count,
    sech2_exact_spectrum,
    sech2_q,
)
from .potentials import action_potential, evaluate
from .sampler import (
    ElementEstimate,
    PathSample,
    bridge_ensemble,
    brownian_bridge,
    element_rng,
    estimate_element,
    estimate_matrix,
    metropolis_estimate_element,
    sample_endpoints,
)
from .spectra import (
    EigenDecomposition,
    SpectrumError,
    build_heff,
    eigh_symmetric,
    extract_spectrum,
    wavefunction,
)
from .thermo import avg_energy, log_partition, partition, specific_heat, thermo_curve

try:
    from importlib.metadata import PackageNotFoundError, version
    __version__ = version("effham")
except PackageNotFoundError:
    __version__ = "unknown"

__all__ = [
    "EXACT_QUADRATURE", "FREE_ANALYTIC", "MONTE_CARLO",
    "EffectiveHamiltonian", "EigenDecomposition", "ElementEstimate",
    "Free", "FreeKernel", "HAS_NUMBA", "Harmonic", "HarmonicKernel",
    "KernelSpec", "Lattice", "PathSample", "PhysicalParams", "Polynomial",
    "Potential", "SamplerConfig", "Sech2", "SpectrumError", "ThermoCurve",
    "TransitionMatrix", "action_potential", "avg_energy", "backend_name",
    "basis_value", "bridge_ensemble", "brownian_bridge", "build_heff",
    "eigh_symmetric", "element_rng", "estimate_element", "estimate_matrix",
    "evaluate", "exact_box_matrix", "extract_spectrum", "free_box_element",
    "free_box_matrix", "free_kernel", "free_thermo", "get_kernels",
    "harmonic_eigenfunction", "harmonic_energy", "harmonic_kernel",
    "harmonic_thermo", "kernel_for", "log_partition",
    "metropolis_estimate_element", "partition", "sample_endpoints",
    "sech2_bound_count", "sech2_exact_spectrum", "sech2_q", "specific_heat",
    "thermo_curve", "wavefunction",
]
