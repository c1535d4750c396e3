"""Compiled and pure-numpy kernels must tell the same story.

Path construction consumes the generator identically on both backends, so
sampled paths are compared bitwise. Reductions (means, accumulated action)
may differ in summation order, so estimates get a 1e-12 relative band.
"""

import numpy as np
import pytest

from effham import (
    HAS_NUMBA,
    Harmonic,
    Lattice,
    PhysicalParams,
    SamplerConfig,
    Sech2,
    backend_name,
    brownian_bridge,
    element_rng,
    estimate_element,
    estimate_matrix,
    get_kernels,
    metropolis_estimate_element,
)
from effham.potentials import potential_code

P = PhysicalParams()
LAT = Lattice.centered(1.0, 20)
HO = Harmonic(omega=0.6)

needs_numba = pytest.mark.skipif(not HAS_NUMBA, reason="numba not installed")


# ---------------------------------------------------------------- selection

def test_explicit_name_wins(monkeypatch):
    monkeypatch.setenv("EFFHAM_BACKEND", "numpy")
    assert backend_name("numpy") == "numpy"
    monkeypatch.delenv("EFFHAM_BACKEND")
    assert backend_name("numpy") == "numpy"


def test_env_var_selects(monkeypatch):
    monkeypatch.setenv("EFFHAM_BACKEND", "numpy")
    assert backend_name() == "numpy"
    assert get_kernels().__name__.endswith("_kernels_numpy")


def test_invalid_name_rejected(monkeypatch):
    monkeypatch.setenv("EFFHAM_BACKEND", "fortran")
    with pytest.raises(ValueError):
        backend_name()
    with pytest.raises(ValueError):
        backend_name("cython")


@needs_numba
def test_auto_prefers_numba(monkeypatch):
    monkeypatch.delenv("EFFHAM_BACKEND", raising=False)
    assert backend_name() == "numba"
    assert backend_name("auto") == "numba"


# ---------------------------------------------------------------- bitwise layers

@needs_numba
def test_bridge_paths_bitwise_equal():
    a = brownian_bridge(P, 0.3, -0.8, 32, element_rng(5, 1, 2, 1),
                        backend="numpy")
    b = brownian_bridge(P, 0.3, -0.8, 32, element_rng(5, 1, 2, 1),
                        backend="numba")
    np.testing.assert_array_equal(a.positions, b.positions)


@needs_numba
def test_endpoint_pairs_bitwise_equal():
    args = (LAT.box_bounds(4)[0], LAT.box_bounds(7)[0], LAT.dx,
            P.m / (2.0 * P.hbar * P.time_t), 2.0 * LAT.dx, 512, 1024, 64)
    ya, za, na = get_kernels("numpy").endpoint_pairs(element_rng(3, 4, 7, 0),
                                                     *args)
    yb, zb, nb = get_kernels("numba").endpoint_pairs(element_rng(3, 4, 7, 0),
                                                     *args)
    assert na == nb
    np.testing.assert_array_equal(ya[:na], yb[:nb])
    np.testing.assert_array_equal(za[:na], zb[:nb])


@needs_numba
def test_jacobi_eigh_parity():
    rng = np.random.default_rng(77)
    a = rng.normal(size=(30, 30))
    a = 0.5 * (a + a.T)
    da, va, _, oka = get_kernels("numpy").jacobi_eigh(a.copy())
    db, vb, _, okb = get_kernels("numba").jacobi_eigh(a.copy())
    assert oka == okb == 1
    np.testing.assert_allclose(np.sort(da), np.sort(db), rtol=1e-12,
                               atol=1e-14)
    np.testing.assert_allclose(va @ np.diag(da) @ va.T,
                               vb @ np.diag(db) @ vb.T, atol=1e-12)


# ---------------------------------------------------------------- estimates

@needs_numba
@pytest.mark.parametrize("pot", [HO, Sech2(v0=1.0, d=2.0)],
                         ids=["harmonic", "sech2"])
def test_element_estimates_match(pot):
    cfg = SamplerConfig(n_configs=2000, n_slices=32, seed=17)
    a = estimate_element(P, LAT, pot, 9, 10, cfg, backend="numpy")
    b = estimate_element(P, LAT, pot, 9, 10, cfg, backend="numba")
    assert a.mean == pytest.approx(b.mean, rel=1e-12)
    assert a.std_error == pytest.approx(b.std_error, rel=1e-12)
    assert a.n_samples == b.n_samples


@needs_numba
def test_metropolis_chains_match():
    # proposal/accept decisions are bit-identical, so the acceptance rate
    # matches exactly; the recorded means agree to summation-order noise
    cfg = SamplerConfig(n_configs=1000, n_slices=16, seed=23,
                        method="metropolis", thermalization_sweeps=200,
                        decorrelation_sweeps=10)
    a = metropolis_estimate_element(P, LAT, HO, 10, 11, cfg, backend="numpy")
    b = metropolis_estimate_element(P, LAT, HO, 10, 11, cfg, backend="numba")
    assert a.acceptance_rate == b.acceptance_rate
    assert a.mean == pytest.approx(b.mean, rel=1e-12)
    assert a.std_error == pytest.approx(b.std_error, rel=1e-12)


@needs_numba
def test_full_matrix_matches():
    lat8 = Lattice.centered(1.0, 8)
    cfg = SamplerConfig(n_configs=500, n_slices=16, seed=29)
    a = estimate_matrix(P, lat8, HO, cfg, backend="numpy")
    b = estimate_matrix(P, lat8, HO, cfg, backend="numba")
    np.testing.assert_allclose(a.matrix, b.matrix, rtol=1e-12, atol=1e-300)
    np.testing.assert_allclose(a.stat_errors, b.stat_errors, rtol=1e-12,
                               atol=1e-300)
    assert a.negligible_count == b.negligible_count


def test_numpy_backend_replay_bitwise():
    cfg = SamplerConfig(n_configs=300, n_slices=8, seed=41)
    a = estimate_element(P, LAT, HO, 10, 10, cfg, backend="numpy")
    b = estimate_element(P, LAT, HO, 10, 10, cfg, backend="numpy")
    assert a.mean == b.mean
    assert a.std_error == b.std_error


def test_potential_code_accepted_by_both_backends():
    kind, vparams = potential_code(HO)
    for name in ["numpy"] + (["numba"] if HAS_NUMBA else []):
        kern = get_kernels(name)
        rng = element_rng(1, 0, 0, 1)
        mean, err = kern.bridge_ratio_from_pairs(
            rng, np.full(64, 0.1), np.full(64, -0.1), P.m, P.hbar,
            P.time_t / 16, 16, kind, vparams)
        assert 0.0 < mean < 1.0
        assert err > 0.0
