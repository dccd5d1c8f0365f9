"""Quasi-energy spectra, level-spacing statistics, stages, bound states.

Quasi-energies are the eigenphases of the one-period unitary,
U |e> = exp(-i eps) |e>, taken on the branch (-pi, pi].  Because parity
is conserved, diagonalization happens per parity sector (complex Schur
on each block), which keeps degenerate partners from mixing across
sectors and halves the cost; spacing statistics are always computed
within a sector and averaged, since the sectors are decoupled.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericalError
from .floquet import FloquetOperator, unitarity_defect
from .symmetry import sector_indices

UNITARITY_REJECT = 1e-8
EIGEN_RESIDUAL_TOL = 1e-8
OFFBLOCK_TOL = 1e-10

STAGES = ("topological", "quasi_integrable", "transition", "chaotic")

DEFAULT_BOUND_TOL = 0.05

R_POISSON = 2.0 * np.log(2.0) - 1.0          # ~0.386
R_COE = 4.0 - 2.0 * np.sqrt(3.0)             # ~0.536
R_CUE = 2.0 * np.sqrt(3.0) / np.pi - 0.5     # ~0.603


@dataclass
class QuasiSpectrum:
    """Sorted quasi-energies with eigenvectors and parity labels."""

    two_j: int
    params: object
    epsilons: np.ndarray          # (D,), ascending in (-pi, pi]
    vectors: np.ndarray           # (D, D), columns aligned with epsilons
    parity: np.ndarray            # (D,) entries +-1

    @property
    def dim(self) -> int:
        return self.epsilons.size


def _branch(eps: np.ndarray) -> np.ndarray:
    """Map phases onto (-pi, pi], sending -pi to +pi."""
    return np.where(eps <= -np.pi, eps + 2.0 * np.pi, eps)


def sector_eigenphases(operator: FloquetOperator) -> tuple[np.ndarray, np.ndarray]:
    """Sorted quasi-energies of the two parity blocks (no eigenvectors).

    The light-weight path for spacing statistics over parameter sweeps.
    """
    u = operator.u
    defect = unitarity_defect(u)
    if defect > UNITARITY_REJECT:
        raise NumericalError(f"operator is not unitary (defect {defect:.2e})")
    out = []
    for idx in sector_indices(operator.two_j):
        block = u[np.ix_(idx, idx)]
        evals = np.linalg.eigvals(block)
        out.append(np.sort(_branch(-np.angle(evals))))
    return out[0], out[1]


def quasi_spectrum(operator: FloquetOperator) -> QuasiSpectrum:
    """Diagonalize per parity sector and assemble the sorted spectrum.

    Raises NumericalError when the operator is not unitary to 1e-8, when
    the parity off-diagonal blocks are not negligible, or when any
    eigenpair residual ||U v - exp(-i eps) v|| exceeds 1e-8.
    """
    u = operator.u
    two_j = operator.two_j
    defect = unitarity_defect(u)
    if defect > UNITARITY_REJECT:
        raise NumericalError(f"operator is not unitary (defect {defect:.2e})")

    dim = u.shape[0]
    idx_plus, idx_minus = sector_indices(two_j)
    offblock = max(np.abs(u[np.ix_(idx_plus, idx_minus)]).max(),
                   np.abs(u[np.ix_(idx_minus, idx_plus)]).max())
    if offblock > OFFBLOCK_TOL:
        raise NumericalError(f"parity off-diagonal norm {offblock:.2e}; cannot split sectors")

    epsilons = np.empty(dim)
    vectors = np.zeros((dim, dim), dtype=complex)
    parity = np.empty(dim, dtype=int)
    col = 0
    for sign, idx in ((1, idx_plus), (-1, idx_minus)):
        block = u[np.ix_(idx, idx)]
        try:
            t, q = scipy.linalg.schur(block, output="complex")
        except scipy.linalg.LinAlgError as exc:  # pragma: no cover
            raise NumericalError(f"Schur decomposition failed: {exc}") from exc
        cols = np.arange(col, col + idx.size)
        epsilons[cols] = _branch(-np.angle(np.diag(t)))
        vectors[np.ix_(idx, cols)] = q
        parity[cols] = sign
        col += idx.size

    order = np.argsort(epsilons, kind="stable")
    epsilons = epsilons[order]
    vectors = vectors[:, order]
    parity = parity[order]

    residual = u @ vectors - vectors * np.exp(-1j * epsilons)[None, :]
    worst = float(np.linalg.norm(residual, axis=0).max())
    if worst > EIGEN_RESIDUAL_TOL:
        raise NumericalError(f"eigenpair residual {worst:.2e} exceeds {EIGEN_RESIDUAL_TOL}")

    return QuasiSpectrum(two_j=two_j, params=operator.params,
                         epsilons=epsilons, vectors=vectors, parity=parity)


def mean_spacing_ratio(epsilons: np.ndarray) -> float:
    """Mean of min/max of consecutive spacings of the sorted levels.

    Degenerate pairs follow the conventions 0/0 -> 1 and 0/positive -> 0,
    so exact degeneracies depress the ratio instead of producing NaNs.
    """
    eps = np.asarray(epsilons, dtype=float)
    if eps.size < 3:
        raise ValueError(f"need at least 3 levels, got {eps.size}")
    spacings = np.diff(np.sort(eps))
    lo = np.minimum(spacings[1:], spacings[:-1])
    hi = np.maximum(spacings[1:], spacings[:-1])
    ratios = np.where(hi > 0.0, lo / np.where(hi > 0.0, hi, 1.0), 1.0)
    return float(ratios.mean())


def parity_resolved_r(source) -> dict:
    """Spacing-ratio statistics per parity sector and their weighted mean.

    Accepts a FloquetOperator or a QuasiSpectrum.  Mixing the decoupled
    sectors would depress r, so the ratio is always computed within a
    sector; r_mean weights each sector by its ratio count.
    """
    if isinstance(source, FloquetOperator):
        eps_plus, eps_minus = sector_eigenphases(source)
    else:
        eps_plus = source.epsilons[source.parity == 1]
        eps_minus = source.epsilons[source.parity == -1]
    if eps_plus.size < 3 or eps_minus.size < 3:
        raise ValueError("each parity sector needs at least 3 levels")
    r_plus = mean_spacing_ratio(eps_plus)
    r_minus = mean_spacing_ratio(eps_minus)
    w_plus = eps_plus.size - 2
    w_minus = eps_minus.size - 2
    r_mean = (r_plus * w_plus + r_minus * w_minus) / (w_plus + w_minus)
    return {"r_plus": r_plus, "r_minus": r_minus, "r_mean": r_mean}


def stage_borders(two_j: int) -> tuple[float, float, float]:
    """The three kappa_x*kappa_y border values pi(2j+1) * (1/4, 1/2, 1)."""
    base = np.pi * (two_j + 1)
    return base / 4.0, base / 2.0, base


def stage_classify(kappa_x: float, kappa_y: float, two_j: int) -> str:
    """Stage label from kappa_x*kappa_y; intervals are closed on the left."""
    if kappa_x < 0 or kappa_y < 0:
        raise ValueError("kick strengths must be non-negative")
    product = kappa_x * kappa_y
    b1, b2, b3 = stage_borders(two_j)
    if product < b1:
        return "topological"
    if product < b2:
        return "quasi_integrable"
    if product < b3:
        return "transition"
    return "chaotic"


@dataclass
class BoundStateRecord:
    """A detected quasi-energy 0 or pi state."""

    index: int
    epsilon: float
    target: float                # 0.0 or pi
    distance: float
    chiral: float                # <sigma_z> of the eigenvector


def chiral_expectation(state: np.ndarray) -> float:
    """<sigma_z> of a coupled-space state, clipped into [-1, 1]."""
    weights = np.abs(state) ** 2
    value = float(weights[0::2].sum() - weights[1::2].sum())
    return min(1.0, max(-1.0, value))


def detect_bound_states(spectrum: QuasiSpectrum,
                        tol: float = DEFAULT_BOUND_TOL) -> list[BoundStateRecord]:
    """All states within tol of quasi-energy 0 or pi, with chiral labels."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    eps = spectrum.epsilons
    dist0 = np.abs(eps)
    dist_pi = np.abs(np.pi - np.abs(eps))
    records = []
    for i in np.where(np.minimum(dist0, dist_pi) <= tol)[0]:
        near_zero = dist0[i] <= dist_pi[i]
        records.append(BoundStateRecord(
            index=int(i),
            epsilon=float(eps[i]),
            target=0.0 if near_zero else np.pi,
            distance=float(dist0[i] if near_zero else dist_pi[i]),
            chiral=chiral_expectation(spectrum.vectors[:, i]),
        ))
    return records
