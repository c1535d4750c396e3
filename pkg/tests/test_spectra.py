"""Jacobi diagonalization and spectrum extraction."""

import numpy as np
import pytest

from effham import (
    EXACT_QUADRATURE,
    MONTE_CARLO,
    Lattice,
    PhysicalParams,
    SpectrumError,
    TransitionMatrix,
    build_heff,
    eigh_symmetric,
    extract_spectrum,
    free_box_matrix,
    wavefunction,
)

P = PhysicalParams()


def _tm(m, lat=None, src=MONTE_CARLO, time_t=1.0, seed=None):
    m = np.asarray(m, dtype=float)
    lat = lat or Lattice.centered(1.0, m.shape[0])
    return TransitionMatrix(matrix=m, stat_errors=np.zeros_like(m),
                            time_t=time_t, source=src, lattice=lat, seed=seed)


def _random_symmetric(n, seed, eigenvalues=None):
    rng = np.random.default_rng(seed)
    if eigenvalues is None:
        a = rng.normal(size=(n, n))
        return 0.5 * (a + a.T)
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    a = (q * np.asarray(eigenvalues)) @ q.T
    return 0.5 * (a + a.T)


# ---------------------------------------------------------------- eigh

def test_two_by_two_closed_form():
    decomp = eigh_symmetric(_tm([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(decomp.eigenvalues, [3.0, 1.0], rtol=1e-14)
    r = 1.0 / np.sqrt(2.0)
    # sign rule: the largest-magnitude component of each column is positive
    np.testing.assert_allclose(decomp.vectors[:, 0], [r, r], rtol=1e-14)
    np.testing.assert_allclose(decomp.vectors[:, 1], [r, -r], rtol=1e-14)


def test_identity_is_fixed_point():
    decomp = eigh_symmetric(_tm(np.eye(4)))
    np.testing.assert_array_equal(decomp.eigenvalues, np.ones(4))
    # degenerate spectrum: column order is a tie-break detail, but each
    # column must still be a +1 standard basis vector
    np.testing.assert_array_equal(np.sort(np.abs(decomp.vectors), axis=0)[-1],
                                  np.ones(4))
    np.testing.assert_array_equal(decomp.reconstruct(), np.eye(4))
    assert np.all(decomp.vectors.max(axis=0) == 1.0)


def test_diagonal_matrix_sorted_descending():
    decomp = eigh_symmetric(_tm(np.diag([0.2, 0.9, 0.5])))
    np.testing.assert_array_equal(decomp.eigenvalues, [0.9, 0.5, 0.2])


def test_random_matrix_reconstruction():
    m = _random_symmetric(20, seed=42)
    decomp = eigh_symmetric(_tm(m))
    scale = np.abs(m).max()
    assert np.max(np.abs(decomp.reconstruct() - m)) < 1e-10 * scale
    # columns orthonormal
    gram = decomp.vectors.T @ decomp.vectors
    assert np.max(np.abs(gram - np.eye(20))) < 1e-12


def test_matches_lapack_eigenvalues():
    for seed in (0, 1, 2):
        m = _random_symmetric(15, seed=seed)
        decomp = eigh_symmetric(_tm(m))
        ref = np.linalg.eigvalsh(m)[::-1]
        np.testing.assert_allclose(decomp.eigenvalues, ref,
                                   rtol=1e-10, atol=1e-12)


def test_harmonic_matrix_matches_lapack(harmonic_matrix):
    decomp = eigh_symmetric(harmonic_matrix)
    ref = np.linalg.eigvalsh(harmonic_matrix.matrix)[::-1]
    np.testing.assert_allclose(decomp.eigenvalues, ref, rtol=1e-9, atol=1e-13)
    assert decomp.sweeps <= 100
    assert decomp.source == EXACT_QUADRATURE


# ---------------------------------------------------------------- spectrum

def test_energies_from_eigenvalues():
    d = np.exp([-0.3, -0.9])
    heff = extract_spectrum(eigh_symmetric(_tm(np.diag(d))), P)
    np.testing.assert_allclose(heff.energies, [0.3, 0.9], rtol=1e-14)
    assert heff.dropped_count == 0
    assert heff.kept_count == 2


def test_energy_uses_time_horizon():
    d = float(np.exp(-0.8))
    heff = extract_spectrum(eigh_symmetric(_tm(np.diag([d, d * 0.5]),
                                               time_t=4.0)), P)
    # E = -(hbar / T) ln D
    np.testing.assert_allclose(heff.energies[0], 0.2, rtol=1e-14)


def test_nonpositive_eigenvalues_dropped():
    m = _random_symmetric(4, seed=3, eigenvalues=[0.5, 0.2, 1e-13, -1e-4])
    heff = build_heff(_tm(m), P)
    assert heff.kept_count == 2
    assert heff.dropped_count == 2
    np.testing.assert_allclose(sorted(np.exp(-heff.energies), reverse=True),
                               [0.5, 0.2], rtol=1e-10)


def test_all_dropped_raises():
    m = _random_symmetric(3, seed=4, eigenvalues=[-0.1, -0.2, -0.3])
    with pytest.raises(SpectrumError):
        build_heff(_tm(m), P)


def test_drop_threshold_is_adjustable():
    m = np.diag([0.5, 1e-6])
    assert build_heff(_tm(m), P).kept_count == 2
    assert build_heff(_tm(m), P, drop_threshold=1e-3).kept_count == 1


def test_energies_strictly_ascending_for_distinct_eigenvalues(harmonic_heff):
    assert np.all(np.diff(harmonic_heff.energies) > 0.0)


def test_spectral_reconstruction_trace(harmonic_matrix, harmonic_heff):
    # no states dropped for this matrix, so kept weights resum the trace
    assert harmonic_heff.dropped_count == 0
    total = np.sum(np.exp(-harmonic_heff.energies * harmonic_heff.time_t))
    assert total == pytest.approx(np.trace(harmonic_matrix.matrix), rel=1e-12)


def test_free_spectrum_dense_and_monotone(params):
    lat = Lattice.centered(0.5, 100)
    heff = build_heff(free_box_matrix(params, lat), params)
    assert heff.energies[0] < 0.05          # continuum spectrum starts at 0
    assert np.all(np.diff(heff.energies) > 0.0)


def test_metadata_carried_through(harmonic_heff):
    assert harmonic_heff.source == EXACT_QUADRATURE
    assert harmonic_heff.time_t == 1.0
    assert harmonic_heff.lattice.n == 20


# ---------------------------------------------------------------- scaling covariance

def test_scaling_covariance_power_of_two(harmonic_matrix):
    # M -> c M with c = 2^k: rotations see identical floats, so the
    # wave functions are bitwise unchanged and every energy shifts by
    # exactly -(hbar/T) ln c
    base = build_heff(harmonic_matrix, P)
    for c in (8.0, 0.25):
        scaled = _tm(c * harmonic_matrix.matrix, lat=harmonic_matrix.lattice,
                     src=EXACT_QUADRATURE)
        heff = build_heff(scaled, P)
        assert np.array_equal(heff.coefficients, base.coefficients)
        shift = -(P.hbar / P.time_t) * np.log(c)
        np.testing.assert_allclose(heff.energies, base.energies + shift,
                                   rtol=0, atol=1e-12)


def test_scaling_covariance_generic_factor(harmonic_matrix):
    # non-power-of-two factors perturb the rotations at ulp level, which can
    # flip the arbitrary overall sign of near-tied columns; compare aligned
    base = build_heff(harmonic_matrix, P)
    c = 1.7
    heff = build_heff(_tm(c * harmonic_matrix.matrix,
                          lat=harmonic_matrix.lattice, src=EXACT_QUADRATURE), P)
    np.testing.assert_allclose(heff.energies, base.energies - np.log(c),
                               rtol=0, atol=1e-10)
    for k in range(base.kept_count):
        v = heff.coefficients[:, k]
        w = base.coefficients[:, k]
        if float(v @ w) < 0.0:
            v = -v
        np.testing.assert_allclose(v, w, rtol=0, atol=1e-10)


# ---------------------------------------------------------------- wave functions

def test_wavefunction_box_normalization(harmonic_heff):
    dx = harmonic_heff.lattice.dx
    for k in range(harmonic_heff.kept_count):
        psi = wavefunction(harmonic_heff, k)
        assert psi.shape == (20,)
        assert np.sum(psi * psi) * dx == pytest.approx(1.0, rel=1e-12)


def test_wavefunction_single_box_lookup(harmonic_heff):
    psi = wavefunction(harmonic_heff, 0)
    assert wavefunction(harmonic_heff, 0, i=7) == psi[7]


def test_ground_state_nodeless_peaked_at_origin(harmonic_heff):
    psi = wavefunction(harmonic_heff, 0)
    assert np.all(psi > 0.0)
    assert np.argmax(psi) in (9, 10)   # the two boxes adjacent to x = 0


def test_wavefunction_out_of_range(harmonic_heff):
    with pytest.raises(IndexError):
        wavefunction(harmonic_heff, harmonic_heff.kept_count)
    with pytest.raises(IndexError):
        wavefunction(harmonic_heff, 0, i=20)
