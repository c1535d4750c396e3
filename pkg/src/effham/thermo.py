"""Thermodynamics of a finite effective spectrum.

Partition function, average energy, and specific heat are closed-form
weighted moments; the ground-state energy is factored out of every
exponential so the formulas stay finite far into the low-temperature tail.
beta is the imaginary time in units of hbar (the spectrum's own time
parameter stays fixed; one effective Hamiltonian serves the whole grid).
"""

from __future__ import annotations

import numpy as np

from .model import EffectiveHamiltonian, PhysicalParams, ThermoCurve


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not beta > 0.0 or not np.isfinite(beta):
        raise ValueError("beta must be positive and finite")
    return beta


def _weights(heff: EffectiveHamiltonian, beta: float) -> tuple[np.ndarray, float]:
    e = heff.energies
    e1 = e[0]  # ascending, so the ground state
    return np.exp(-beta * (e - e1)), e1


def log_partition(heff: EffectiveHamiltonian, beta: float) -> float:
    """log Z = -beta*E_1 + log(sum of shifted Boltzmann weights)."""
    beta = _check_beta(beta)
    w, e1 = _weights(heff, beta)
    return float(-beta * e1 + np.log(np.sum(w)))


def partition(heff: EffectiveHamiltonian, beta: float) -> float:
    """Z as a plain float; may over/underflow where only log Z is usable."""
    return float(np.exp(log_partition(heff, beta)))


def avg_energy(heff: EffectiveHamiltonian, beta: float) -> float:
    """U = weighted mean of the spectrum under Boltzmann weights."""
    beta = _check_beta(beta)
    w, _ = _weights(heff, beta)
    return float(np.sum(heff.energies * w) / np.sum(w))


def specific_heat(heff: EffectiveHamiltonian, beta: float,
                  params: PhysicalParams | None = None) -> float:
    """C = kB * beta^2 * weighted energy variance.

    The variance is accumulated as sum w*(E - <E>)^2, which cannot go
    negative in floating point, so C >= 0 holds without clamping.
    """
    beta = _check_beta(beta)
    kb = 1.0 if params is None else params.kb
    w, _ = _weights(heff, beta)
    total = np.sum(w)
    mean = np.sum(heff.energies * w) / total
    dev = heff.energies - mean
    var = np.sum(w * dev * dev) / total
    return float(kb * beta * beta * var)


def thermo_curve(heff: EffectiveHamiltonian, beta_grid,
                 params: PhysicalParams | None = None) -> ThermoCurve:
    """Z, U, C rows over a strictly increasing positive beta grid."""
    beta = np.asarray(beta_grid, dtype=float)
    if beta.ndim != 1 or beta.size == 0:
        raise ValueError("beta grid must be a nonempty 1-D array")
    if not np.all(beta > 0.0) or not np.all(np.isfinite(beta)):
        raise ValueError("beta grid values must be positive and finite")
    if not np.all(np.diff(beta) > 0.0):
        raise ValueError("beta grid must be strictly increasing")
    kb = 1.0 if params is None else params.kb
    log_z = np.array([log_partition(heff, b) for b in beta])
    u = np.array([avg_energy(heff, b) for b in beta])
    c = np.array([specific_heat(heff, b, params) for b in beta])
    return ThermoCurve(beta=beta, temperature=1.0 / (kb * beta), log_z=log_z,
                       z=np.exp(log_z), u=u, c=c)
