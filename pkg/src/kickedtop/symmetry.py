"""Discrete symmetries of the kicked coupled top and their numerical checks.

The operators and the relations verified here (U~ is a symmetrized
one-period unitary, K is complex conjugation):

* parity      Pi  = exp(-i pi (Jz + sigma_z/2)), times i when 2j is even
              so that Pi^2 = 1 exactly;   Pi U~ Pi^-1 = U~
* time rev.   T1 = K                       T1 U~* T1^-1 = U~^-1
              T2 = exp(-i pi (Jy + sigma_y/2)) K,  same relation;
              T2^2 = +1 for 2j odd, -1 for 2j even
* part.-hole  P  = exp(-i (pi/2) sigma_z) K;  P U~* P^-1 = U~
* chiral      G  = sigma_z;                G U~ G^-1 = U~^-1

Parity is diagonal in the product basis, so its eigenvalue pattern
splits the coupled space into two sectors of dimension 2j+1 each; every
kick operator is block-diagonal across that split.

Antiunitary operators are represented as (unitary matrix, flag) pairs
and all relations are evaluated as dense matrix identities with
explicit element-wise conjugation.
"""

from dataclasses import dataclass, field

import numpy as np

from .floquet import FloquetOperator
from .spin import SIGMA_Z, dim_top, m_values, rotation_about_y, validate_two_j

KINDS = ("parity", "time_reversal_1", "time_reversal_2", "particle_hole", "chiral")

_ANTIUNITARY = {
    "parity": False,
    "time_reversal_1": True,
    "time_reversal_2": True,
    "particle_hole": True,
    "chiral": False,
}


def parity_phases(two_j: int) -> np.ndarray:
    """Exact diagonal of the parity operator (entries are +-1)."""
    two_j = validate_two_j(two_j)
    m = np.repeat(m_values(two_j), 2)
    s = np.tile([0.5, -0.5], dim_top(two_j))
    phases = np.exp(-1j * np.pi * (m + s))
    if two_j % 2 == 0:
        phases = 1j * phases
    # the phase convention makes every entry exactly +-1; round away rounding noise
    labels = np.real(np.round(np.real(phases)))
    if np.abs(phases - labels).max() > 1e-12:
        raise AssertionError("parity diagonal is not a sign pattern")
    return labels


def parity_labels(two_j: int) -> np.ndarray:
    """Sector label (+1 or -1) of every coupled-basis state."""
    return parity_phases(two_j).astype(int)


def sector_indices(two_j: int) -> tuple[np.ndarray, np.ndarray]:
    """Basis indices of the +1 and -1 parity sectors (2j+1 states each)."""
    labels = parity_labels(two_j)
    return np.where(labels == 1)[0], np.where(labels == -1)[0]


def symmetry_operator(kind: str, two_j: int) -> tuple[np.ndarray, bool]:
    """Unitary part of a symmetry operator and its conjugation flag."""
    two_j = validate_two_j(two_j)
    d = dim_top(two_j)
    if kind == "parity":
        mat = np.diag(parity_phases(two_j)).astype(complex)
    elif kind == "time_reversal_1":
        mat = np.eye(2 * d, dtype=complex)
    elif kind == "time_reversal_2":
        spin_half_turn = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
        mat = np.kron(rotation_about_y(two_j, np.pi), spin_half_turn)
    elif kind == "particle_hole":
        mat = np.kron(np.eye(d), np.diag([-1.0j, 1.0j]))
    elif kind == "chiral":
        mat = np.kron(np.eye(d), SIGMA_Z)
    else:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    return mat, _ANTIUNITARY[kind]


def squared_sign(kind: str, two_j: int) -> int:
    """Sign of the squared symmetry operator (K S K = S* for antiunitaries)."""
    mat, anti = symmetry_operator(kind, two_j)
    sq = mat @ mat.conj() if anti else mat @ mat
    sign = round(float(np.real(np.trace(sq))) / sq.shape[0])
    if np.abs(sq - sign * np.eye(sq.shape[0])).max() > 1e-10:
        raise AssertionError(f"{kind} squared is not proportional to the identity")
    return sign


@dataclass
class SymmetryReport:
    """Residuals of the symmetry relations for one Floquet operator."""

    two_j: int
    residuals: dict = field(default_factory=dict)
    squared_signs: dict = field(default_factory=dict)
    parity_offblock: float = 0.0

    def as_dict(self) -> dict:
        return {
            "two_j": self.two_j,
            "residuals": dict(self.residuals),
            "squared_signs": dict(self.squared_signs),
            "parity_offblock": self.parity_offblock,
        }


def _maxabs(a: np.ndarray) -> float:
    return float(np.abs(a).max())


def verify_symmetries(operator: FloquetOperator) -> SymmetryReport:
    """Evaluate every symmetry relation for the given operator.

    The time-reversal, particle-hole, and chiral relations hold (residuals
    at rounding level) only for the symmetrized variants with delta = 0;
    parity holds for every variant and delta.
    """
    u = operator.u
    two_j = operator.two_j
    u_conj = u.conj()
    u_inv = u.conj().T

    pi_diag = parity_phases(two_j)
    t2, _ = symmetry_operator("time_reversal_2", two_j)
    ph, _ = symmetry_operator("particle_hole", two_j)
    gamma_diag = np.tile([1.0, -1.0], dim_top(two_j))

    residuals = {
        "parity": _maxabs(pi_diag[:, None] * u * pi_diag[None, :] - u),
        "time_reversal_1": _maxabs(u_conj - u_inv),
        "time_reversal_2": _maxabs(t2 @ u_conj @ t2.conj().T - u_inv),
        "particle_hole": _maxabs(ph @ u_conj @ ph.conj().T - u),
        "chiral": _maxabs(gamma_diag[:, None] * u * gamma_diag[None, :] - u_inv),
    }
    # T2 Pi T2^-1 = (-1)^(2j+1) Pi, with the conjugation acting on Pi
    t2_parity_sign = (-1) ** (two_j + 1)
    residuals["t2_parity"] = _maxabs(
        t2 @ np.diag(pi_diag).conj() @ t2.conj().T - t2_parity_sign * np.diag(pi_diag)
    )

    idx_plus, idx_minus = sector_indices(two_j)
    offblock = max(_maxabs(u[np.ix_(idx_plus, idx_minus)]),
                   _maxabs(u[np.ix_(idx_minus, idx_plus)]))

    signs = {kind: squared_sign(kind, two_j) for kind in KINDS}
    return SymmetryReport(two_j=two_j, residuals=residuals,
                          squared_signs=signs, parity_offblock=offblock)
