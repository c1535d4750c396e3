"""Diagonalization of transition matrices and conversion to an effective
spectrum: energies E_k = -(hbar/T) ln D_k and box-basis wave functions."""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .backend import get_kernels
from .model import EffectiveHamiltonian, PhysicalParams, TransitionMatrix


class SpectrumError(RuntimeError):
    """Diagonalization failed or produced no usable eigenvalues."""


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a transition matrix, descending by eigenvalue.

    Columns of `vectors` are the eigenvectors; provenance fields ride along
    so the spectrum step can stamp its output.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    sweeps: int
    time_t: float
    lattice: object
    source: str
    seed: int | None

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.eigenvalues) @ self.vectors.T


def eigh_symmetric(m: TransitionMatrix, backend: str | None = None) -> EigenDecomposition:
    """Cyclic Jacobi diagonalization of a symmetric transition matrix.

    Rotations sweep until the off-diagonal Frobenius norm falls below
    1e-13 of the matrix norm. Eigenvalues come back descending; each
    eigenvector is sign-fixed so its largest-magnitude component is
    positive (deterministic regression baselines).
    """
    kern = get_kernels(backend)
    d, v, sweeps, converged = kern.jacobi_eigh(m.matrix)
    if not converged:
        fd, path = tempfile.mkstemp(suffix=".npy", prefix="jacobi-fail-")
        os.close(fd)
        np.save(path, m.matrix)
        raise SpectrumError(
            f"Jacobi sweep limit (100) hit without converging; offending "
            f"matrix dumped to {path}")
    order = np.argsort(d, kind="stable")[::-1]
    d = d[order]
    v = v[:, order]
    flip = v[np.argmax(np.abs(v), axis=0), np.arange(v.shape[1])] < 0.0
    v[:, flip] *= -1.0
    return EigenDecomposition(eigenvalues=d, vectors=v, sweeps=sweeps,
                              time_t=m.time_t, lattice=m.lattice,
                              source=m.source, seed=m.seed)


def extract_spectrum(decomp: EigenDecomposition, params: PhysicalParams,
                     drop_threshold: float = 1e-12) -> EffectiveHamiltonian:
    """Energies and states from a decomposition.

    Eigenvalues at or below drop_threshold carry no spectral information
    (Monte Carlo noise can push them negative); they are dropped and
    counted. The rest map through E_k = -(hbar/T) ln D_k, ascending.
    """
    if drop_threshold < 0.0:
        raise ValueError("drop_threshold must be >= 0")
    keep = decomp.eigenvalues > drop_threshold
    dropped = int(np.sum(~keep))
    if not np.any(keep):
        raise SpectrumError("matrix not positive: increase N_c or check action")
    d = decomp.eigenvalues[keep]
    coeff = decomp.vectors[:, keep]
    energies = -(params.hbar / decomp.time_t) * np.log(d)
    order = np.argsort(energies, kind="stable")  # no-op unless fp log ties
    return EffectiveHamiltonian(energies=energies[order],
                                coefficients=np.ascontiguousarray(coeff[:, order]),
                                dropped_count=dropped, lattice=decomp.lattice,
                                time_t=decomp.time_t, source=decomp.source,
                                seed=decomp.seed)


def wavefunction(heff: EffectiveHamiltonian, k: int, i: int | None = None):
    """Wave-function amplitude of state k: coefficient over sqrt(box width).

    With i given, the amplitude in box i; otherwise the full profile array.
    Discrete normalization sum_i psi^2 dx = 1 follows from orthonormality.
    """
    if not 0 <= k < heff.kept_count:
        raise IndexError(f"state index {k} out of range (kept {heff.kept_count})")
    root = np.sqrt(heff.lattice.dx)
    if i is None:
        return heff.coefficients[:, k] / root
    if not 0 <= i < heff.lattice.n:
        raise IndexError(f"box index {i} out of range")
    return float(heff.coefficients[i, k] / root)


def build_heff(m: TransitionMatrix, params: PhysicalParams,
               drop_threshold: float = 1e-12,
               backend: str | None = None) -> EffectiveHamiltonian:
    """Diagonalize and extract in one step, carrying provenance through."""
    return extract_spectrum(eigh_symmetric(m, backend), params, drop_threshold)
