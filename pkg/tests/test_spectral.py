import numpy as np
import pytest

from kickedtop.errors import NumericalError
from kickedtop.floquet import FloquetOperator, KickParams, floquet_operator
from kickedtop.spectral import (R_COE, R_CUE, R_POISSON, chiral_expectation,
                                detect_bound_states, mean_spacing_ratio,
                                parity_resolved_r, quasi_spectrum,
                                sector_eigenphases, stage_borders, stage_classify)
from kickedtop.spin import probe_state
from kickedtop.symmetry import symmetry_operator


def test_identity_spectrum_is_zero():
    spec = quasi_spectrum(floquet_operator(KickParams(0.0, 0.0), 6))
    assert np.abs(spec.epsilons).max() < 1e-12


def test_branch_and_sorting():
    spec = quasi_spectrum(floquet_operator(KickParams(2.0, 3.0), 20))
    assert np.all(np.diff(spec.epsilons) >= 0)
    assert spec.epsilons.min() > -np.pi - 1e-12
    assert spec.epsilons.max() <= np.pi + 1e-12


def test_chiral_pairing_of_spectrum():
    spec = quasi_spectrum(floquet_operator(KickParams(0.3, 0.3), 40))
    assert np.abs(np.sort(spec.epsilons) + np.sort(-spec.epsilons)[::-1]).max() < 1e-9


def test_eigenpairs_and_parity_purity():
    two_j = 14
    op = floquet_operator(KickParams(1.7, 2.9), two_j)
    spec = quasi_spectrum(op)
    residual = op.u @ spec.vectors - spec.vectors * np.exp(-1j * spec.epsilons)[None, :]
    assert np.linalg.norm(residual, axis=0).max() < 1e-8
    assert np.abs(np.linalg.norm(spec.vectors, axis=0) - 1.0).max() < 1e-12
    pi_mat, _ = symmetry_operator("parity", two_j)
    for k in range(spec.dim):
        v = spec.vectors[:, k]
        value = np.vdot(v, pi_mat @ v).real
        assert abs(value) >= 1.0 - 1e-6
        assert np.sign(value) == spec.parity[k]


def test_exchange_symmetry_of_quasi_energies():
    a = quasi_spectrum(floquet_operator(KickParams(1.3, 3.1), 20)).epsilons
    b = quasi_spectrum(floquet_operator(KickParams(3.1, 1.3), 20)).epsilons
    assert np.abs(a - b).max() < 1e-9


def test_sector_eigenphases_match_full_spectrum():
    op = floquet_operator(KickParams(2.2, 0.9), 12)
    eps_plus, eps_minus = sector_eigenphases(op)
    merged = np.sort(np.concatenate([eps_plus, eps_minus]))
    assert np.abs(merged - quasi_spectrum(op).epsilons).max() < 1e-10


def test_non_unitary_rejected():
    op = floquet_operator(KickParams(1.0, 1.0), 5)
    bad = FloquetOperator(u=op.u * 1.001, params=op.params, two_j=5)
    with pytest.raises(NumericalError):
        quasi_spectrum(bad)
    with pytest.raises(NumericalError):
        sector_eigenphases(bad)


def test_mean_spacing_ratio_hand_case():
    # spacings 0.1, 0.2, 0.4 -> ratios 0.5, 0.5
    assert mean_spacing_ratio([0.0, 0.1, 0.3, 0.7]) == pytest.approx(0.5, abs=1e-15)


def test_mean_spacing_ratio_equal_spacing():
    assert mean_spacing_ratio(np.linspace(-1.0, 1.0, 30)) == pytest.approx(1.0)


def test_mean_spacing_ratio_degeneracies():
    # 0/positive counts as 0, 0/0 as 1
    assert mean_spacing_ratio([1.0, 1.0, 2.0]) == pytest.approx(0.0)
    assert mean_spacing_ratio([1.0, 1.0, 1.0]) == pytest.approx(1.0)


def test_mean_spacing_ratio_needs_three_levels():
    with pytest.raises(ValueError):
        mean_spacing_ratio([0.0, 1.0])


def test_poisson_surrogate_reference_value():
    rng = np.random.default_rng(20240601)
    spacings = rng.exponential(size=25000)
    lo = np.minimum(spacings[1:], spacings[:-1])
    hi = np.maximum(spacings[1:], spacings[:-1])
    assert (lo / hi).mean() == pytest.approx(R_POISSON, abs=0.01)
    # same sequence through the library path
    levels = np.concatenate([[0.0], np.cumsum(spacings)])
    assert mean_spacing_ratio(levels) == pytest.approx(R_POISSON, abs=0.01)


def test_universal_constants():
    assert R_POISSON == pytest.approx(0.386294361119890619, abs=1e-15)
    assert R_COE == pytest.approx(0.535898384862245413, abs=1e-15)
    assert R_CUE == pytest.approx(0.602657790843584099, abs=1e-15)


def test_parity_resolved_r_sectors_agree_for_small_case():
    op = floquet_operator(KickParams(1.1, 2.4), 30)
    stats = parity_resolved_r(op)
    assert 0.0 <= stats["r_mean"] <= 1.0
    expected = 0.5 * (stats["r_plus"] + stats["r_minus"])
    assert stats["r_mean"] == pytest.approx(expected, abs=1e-12)
    via_spectrum = parity_resolved_r(quasi_spectrum(op))
    assert via_spectrum["r_mean"] == pytest.approx(stats["r_mean"], abs=1e-9)


def test_stage_classification():
    two_j = 100
    base = np.pi * (two_j + 1)
    scale = np.sqrt(base)
    assert stage_classify(0.1 * scale, scale, two_j) == "topological"
    assert stage_classify(0.3 * scale, scale, two_j) == "quasi_integrable"
    assert stage_classify(0.6 * scale, scale, two_j) == "transition"
    assert stage_classify(scale, scale, two_j) == "chaotic"   # left-closed border
    with pytest.raises(ValueError):
        stage_classify(-1.0, 1.0, two_j)


def test_stage_borders_values():
    b1, b2, b3 = stage_borders(1000)
    assert b1 == pytest.approx(786.18, abs=0.01)
    assert b2 == pytest.approx(1572.37, abs=0.01)
    assert b3 == pytest.approx(3144.74, abs=0.01)


def test_detect_bound_states_small_kick():
    spec = quasi_spectrum(floquet_operator(KickParams(0.5, 0.5, variant="sym1"), 40))
    records = detect_bound_states(spec, tol=0.05)
    near_zero = [r for r in records if r.target == 0.0]
    assert len(near_zero) >= 2
    for record in records:
        assert record.distance <= 0.05
        assert -1.0 <= record.chiral <= 1.0


def test_detect_bound_states_identity_edge_case():
    # zero kicks leave U = I: every state counts as a quasi-energy-0 state
    spec = quasi_spectrum(floquet_operator(KickParams(0.0, 0.0), 6))
    assert len(detect_bound_states(spec, tol=0.05)) == 14
    with pytest.raises(ValueError):
        detect_bound_states(spec, tol=0.0)


def test_bound_state_counts_rise_then_fall():
    # counts grow while new states form, then decay as the bulk swallows them
    two_j = 100
    base = np.pi * (two_j + 1)
    counts = []
    for product in (base / 16, base * 0.625, base * 2.0):
        kappa = np.sqrt(product / 1.7)
        spec = quasi_spectrum(floquet_operator(KickParams(kappa, 1.7 * kappa), two_j))
        counts.append(len(detect_bound_states(spec, tol=0.05)))
    topological, transition_mid, deep_chaotic = counts
    assert topological < transition_mid
    assert deep_chaotic < transition_mid


def test_chiral_expectation_basis_states():
    up = np.zeros(10, dtype=complex)
    up[4] = 1.0            # even index: spin up
    assert chiral_expectation(up) == pytest.approx(1.0)
    down = np.zeros(10, dtype=complex)
    down[5] = 1.0
    assert chiral_expectation(down) == pytest.approx(-1.0)
    assert chiral_expectation(probe_state(8, 0.9, 0.4)) == pytest.approx(0.0, abs=1e-12)
