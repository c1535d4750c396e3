"""Shared fixtures.

The harmonic 20-box setup (dx=1, omega=0.6) is the workhorse configuration
used across the spectra, thermo and acceptance tests, so its quadrature
matrix and effective Hamiltonian are built once per session.
"""

import numpy as np
import pytest

from effham import (
    HarmonicKernel,
    Harmonic,
    Lattice,
    PhysicalParams,
    build_heff,
    exact_box_matrix,
)


@pytest.fixture(scope="session")
def params():
    return PhysicalParams()  # m = hbar = kb = 1, T = 1


@pytest.fixture(scope="session")
def lat20():
    return Lattice.centered(1.0, 20)


@pytest.fixture(scope="session")
def harmonic06():
    return Harmonic(omega=0.6)


@pytest.fixture(scope="session")
def harmonic_matrix(params, lat20):
    return exact_box_matrix(HarmonicKernel(params, 0.6), lat20)


@pytest.fixture(scope="session")
def harmonic_heff(harmonic_matrix, params):
    return build_heff(harmonic_matrix, params)
