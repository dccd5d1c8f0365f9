"""Stroboscopic evolution and the regular-versus-chaotic dynamical probe.

An initial product state |theta0, 0> (x) |up> is kicked repeatedly; the
mean and standard deviation of Jz after each kick distinguish a state
pinned to a bound-state location (mean stays near its initial value)
from chaotic spreading (mean decays to zero, the deviation approaches
the uniform-ensemble value j/sqrt(3)).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .floquet import FloquetOperator, KickParams, floquet_operator, refresh
from .meanfield import allowed_kappa_x
from .spin import coherent_state, m_values, product_state

NORM_DRIFT_TOL = 1e-8


@dataclass
class DynamicsSeries:
    """Kick-resolved Jz statistics (in units of hbar)."""

    two_j: int
    params: KickParams
    n: np.ndarray
    jz_mean: np.ndarray
    jz_std: np.ndarray


def stroboscopic_series(operator: FloquetOperator, psi0: np.ndarray,
                        n_max: int) -> DynamicsSeries:
    """Evolve psi0 by repeated application of the one-period unitary.

    Aborts with NumericalError if the state norm drifts by more than
    1e-8 at any kick.  Entry 0 of the series is the initial state.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-10:
        raise ValueError("initial state must be normalized")
    u = operator.u
    jz_diag = np.repeat(m_values(operator.two_j), 2)
    means = np.empty(n_max + 1)
    stds = np.empty(n_max + 1)
    psi = psi0.astype(complex, copy=True)
    for n in range(n_max + 1):
        if n > 0:
            psi = u @ psi
            drift = abs(np.linalg.norm(psi) - 1.0)
            if drift > NORM_DRIFT_TOL:
                raise NumericalError(f"norm drifted by {drift:.2e} at kick {n}")
        weights = np.abs(psi) ** 2
        m1 = float(jz_diag @ weights)
        m2 = float((jz_diag ** 2) @ weights)
        means[n] = m1
        stds[n] = math.sqrt(max(m2 - m1 * m1, 0.0))
    return DynamicsSeries(two_j=operator.two_j, params=operator.params,
                          n=np.arange(n_max + 1), jz_mean=means, jz_std=stds)


def eigenbasis_series(spectrum, psi0: np.ndarray, n_max: int) -> DynamicsSeries:
    """Same series computed by phase evolution in the eigenbasis.

    Cross-check for stroboscopic_series: expand psi0 over the
    eigenvectors, attach exp(-i n eps) phases, transform back.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    coeffs = spectrum.vectors.conj().T @ psi0
    jz_diag = np.repeat(m_values(spectrum.two_j), 2)
    means = np.empty(n_max + 1)
    stds = np.empty(n_max + 1)
    for n in range(n_max + 1):
        psi = spectrum.vectors @ (np.exp(-1j * spectrum.epsilons * n) * coeffs)
        weights = np.abs(psi) ** 2
        m1 = float(jz_diag @ weights)
        m2 = float((jz_diag ** 2) @ weights)
        means[n] = m1
        stds[n] = math.sqrt(max(m2 - m1 * m1, 0.0))
    return DynamicsSeries(two_j=spectrum.two_j, params=spectrum.params,
                          n=np.arange(n_max + 1), jz_mean=means, jz_std=stds)


@dataclass
class ScanColumn:
    """One allowed-kick-strength column of a dynamical scan."""

    n_x: int
    kappa_x: float
    series: DynamicsSeries
    late_mean: float            # mean of <Jz>/j over the last 20% of kicks
    late_std: float             # mean of sigma/j over the same window


def dynamical_scan(two_j: int, kappa_y: float, z0: float, n_x_list,
                   n_max: int, delta: float = 0.0,
                   variant: str = "plain") -> list[ScanColumn]:
    """Evolve the z0 probe at every allowed kappa_x from the n_x ladder.

    The initial state is |arccos(z0), 0> (x) |up>.  Raises ValueError if
    any requested n_x has no real allowed kick strength.
    """
    theta0 = math.acos(z0)
    j = two_j / 2.0
    columns = []
    operator = None
    for n_x in n_x_list:
        kappa_x = allowed_kappa_x(z0, kappa_y, n_x)
        if kappa_x is None:
            raise ValueError(f"no allowed kappa_x for n_x = {n_x} at kappa_y = {kappa_y}")
        params = KickParams(kappa_x=kappa_x, kappa_y=kappa_y, delta=delta, variant=variant)
        operator = (floquet_operator(params, two_j) if operator is None
                    else refresh(operator, params))
        psi0 = product_state(two_j, coherent_state(two_j, theta0, 0.0),
                             np.array([1.0, 0.0]))
        series = stroboscopic_series(operator, psi0, n_max)
        window = max(1, n_max // 5)
        columns.append(ScanColumn(
            n_x=int(n_x),
            kappa_x=kappa_x,
            series=series,
            late_mean=float(series.jz_mean[-window:].mean() / j),
            late_std=float(series.jz_std[-window:].mean() / j),
        ))
    return columns
