import numpy as np
import pytest
import scipy.linalg

from kickedtop.floquet import (FloquetOperator, KickParams, coupling_generator,
                               floquet_operator, kick_unitary, refresh,
                               unitarity_defect)
from kickedtop.spin import SIGMA_Z, dim_top


def _expm_kick(axis, kappa, two_j, delta=0.0):
    gen = kappa * coupling_generator(axis, two_j)
    if delta:
        gen = gen + delta * np.kron(np.eye(dim_top(two_j)), SIGMA_Z)
    return scipy.linalg.expm(-1j * gen)


def _sorted_eigenphases(u):
    return np.sort(np.angle(np.linalg.eigvals(u)))


def test_zero_kick_is_identity():
    assert np.abs(kick_unitary("x", 0.0, 6) - np.eye(14)).max() < 1e-12


def test_pure_delta_pi_is_minus_identity():
    u = kick_unitary("y", 0.0, 3, delta=np.pi)
    assert np.abs(u + np.eye(8)).max() < 1e-10


@pytest.mark.parametrize("axis", ["x", "y"])
def test_kick_matches_expm_oracle(axis):
    u = kick_unitary(axis, 1.0, 4)
    assert np.abs(u - _expm_kick(axis, 1.0, 4)).max() < 1e-10


def test_delta_kick_matches_expm_oracle():
    u = kick_unitary("x", 1.3, 6, delta=0.7)
    assert np.abs(u - _expm_kick("x", 1.3, 6, delta=0.7)).max() < 1e-10


def test_zero_params_identity_operator():
    op = floquet_operator(KickParams(0.0, 0.0), 5)
    assert np.abs(op.u - np.eye(12)).max() < 1e-12


def test_plain_product_matches_expm_oracle():
    two_j = 20
    op = floquet_operator(KickParams(1.0, 2.0), two_j)
    oracle = _expm_kick("y", 2.0, two_j) @ _expm_kick("x", 1.0, two_j)
    assert np.abs(op.u - oracle).max() < 1e-10


def test_plain_order_x_kick_first():
    # U psi for a one-kick y operator must equal the y kick alone
    two_j = 6
    op = floquet_operator(KickParams(0.0, 1.5), two_j)
    assert np.abs(op.u - kick_unitary("y", 1.5, two_j)).max() < 1e-12


@pytest.mark.parametrize("variant", ["sym1", "sym2"])
def test_variant_spectra_agree(variant):
    rng = np.random.default_rng(11)
    for _ in range(10):
        kx, ky = rng.uniform(0.2, 4.0, size=2)
        plain = floquet_operator(KickParams(kx, ky), 20)
        other = floquet_operator(KickParams(kx, ky, variant=variant), 20)
        diff = _sorted_eigenphases(plain.u) - _sorted_eigenphases(other.u)
        assert np.abs(diff).max() < 1e-9


def test_sym1_structure():
    two_j = 8
    kx, ky = 1.1, 2.3
    op = floquet_operator(KickParams(kx, ky, variant="sym1"), two_j)
    half = kick_unitary("y", ky / 2.0, two_j)
    assert np.abs(op.u - half @ kick_unitary("x", kx, two_j) @ half).max() < 1e-12


def test_sym2_structure():
    two_j = 8
    kx, ky = 1.1, 2.3
    op = floquet_operator(KickParams(kx, ky, variant="sym2"), two_j)
    half = kick_unitary("x", kx / 2.0, two_j)
    assert np.abs(op.u - half @ kick_unitary("y", ky, two_j) @ half).max() < 1e-12


def test_kick_exchange_symmetry_of_spectrum():
    a = floquet_operator(KickParams(1.4, 2.6), 20)
    b = floquet_operator(KickParams(2.6, 1.4), 20)
    diff = _sorted_eigenphases(a.u) - _sorted_eigenphases(b.u)
    assert np.abs(diff).max() < 1e-9


@pytest.mark.parametrize("params", [
    KickParams(0.5, 0.5),
    KickParams(3.0, 7.0, variant="sym1"),
    KickParams(10.0, 20.0, variant="sym2"),
    KickParams(2.0, 4.0, delta=1.6),
])
def test_unitarity(params):
    op = floquet_operator(params, 15)
    assert unitarity_defect(op.u) < 1e-10


def test_refresh_identical_params_bit_identical():
    op = floquet_operator(KickParams(1.0, 2.0), 12)
    again = refresh(op, KickParams(1.0, 2.0))
    assert np.array_equal(op.u, again.u)


def test_refresh_equals_fresh_construction():
    op = floquet_operator(KickParams(1.0, 2.0), 12)
    moved = refresh(op, KickParams(3.0, 2.0))
    fresh = floquet_operator(KickParams(3.0, 2.0), 12)
    assert np.abs(moved.u - fresh.u).max() < 1e-10


def test_refresh_sweep_unitary():
    op = floquet_operator(KickParams(0.1, 0.1), 40)
    for kappa in np.linspace(0.1, 12.0, 100):
        op = refresh(op, KickParams(kappa, 0.7 * kappa))
        assert unitarity_defect(op.u) < 1e-10


def test_refresh_validates_cache_compatibility():
    op = floquet_operator(KickParams(1.0, 2.0), 10)
    with pytest.raises(ValueError):
        refresh(op, KickParams(1.0, 2.0, variant="sym1"))
    with pytest.raises(ValueError):
        refresh(op, KickParams(1.0, 2.0, delta=0.5))


def test_refresh_with_delta_rebuilds():
    op = floquet_operator(KickParams(1.0, 2.0, delta=1.6), 10)
    moved = refresh(op, KickParams(2.0, 2.0, delta=1.6))
    fresh = floquet_operator(KickParams(2.0, 2.0, delta=1.6), 10)
    assert np.abs(moved.u - fresh.u).max() < 1e-10


def test_operator_records_inputs():
    params = KickParams(0.3, 0.4, variant="sym2")
    op = floquet_operator(params, 9)
    assert isinstance(op, FloquetOperator)
    assert op.params == params
    assert op.two_j == 9
    assert op.dim == 20


def test_param_validation():
    with pytest.raises(ValueError):
        KickParams(-1.0, 1.0)
    with pytest.raises(ValueError):
        KickParams(1.0, 1.0, delta=-0.1)
    with pytest.raises(ValueError):
        KickParams(1.0, 1.0, variant="nope")
    with pytest.raises(ValueError):
        KickParams(1.0, 1.0, delta=0.5, variant="sym1")
    with pytest.raises(ValueError):
        kick_unitary("x", -1.0, 4)
