"""Floquet unitaries for the twice-kicked coupled top.

One driving period applies an x kick exp(-i (kx/j) Jx sigma_x) followed
by a y kick exp(-i (ky/j) Jy sigma_y).  Two symmetrized orderings (half
kick, full kick, half kick) share the spectrum of the plain product and
make the chiral relation sigma_z U sigma_z = U^-1 hold as a matrix
identity.  A chirality-breaking term delta * sigma_z can be added inside
both kick exponents.

Kick exponentials are built from a one-time Hermitian eigendecomposition
of the generator J_a sigma_a / j per (two_j, axis), cached at module
level, so sweeping kick strengths costs two matrix multiplications per
kick instead of a fresh diagonalization.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError
from .spin import SIGMA_Z, coupling_operator, dim_top, validate_two_j

VARIANTS = ("plain", "sym1", "sym2")

UNITARITY_TOL = 1e-10

# (two_j, axis) -> (eigenvalues, eigenvectors) of J_a sigma_a / j.
# Values are immutable once stored; concurrent builders may race on
# insertion and duplicate work, but dict assignment keeps reads safe.
_GENERATOR_CACHE: dict[tuple[int, str], tuple[np.ndarray, np.ndarray]] = {}


@dataclass(frozen=True)
class KickParams:
    """Kick strengths, chirality-breaking strength, and operator ordering."""

    kappa_x: float
    kappa_y: float
    delta: float = 0.0
    variant: str = "plain"

    def __post_init__(self):
        if self.kappa_x < 0 or self.kappa_y < 0:
            raise ValueError("kick strengths must be non-negative")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.delta > 0 and self.variant != "plain":
            raise ValueError("symmetrized variants are defined only for delta = 0")


@dataclass
class FloquetOperator:
    """One-period unitary with the cached spectral factors of its generators."""

    u: np.ndarray
    params: KickParams
    two_j: int
    factors: dict | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.u.shape[0]


def coupling_generator(axis: str, two_j: int) -> np.ndarray:
    """The Hermitian kick generator J_a sigma_a / j."""
    return coupling_operator(axis, two_j) / (validate_two_j(two_j) / 2.0)


def generator_factors(two_j: int, axis: str) -> tuple[np.ndarray, np.ndarray]:
    """Cached eigendecomposition of the kick generator for (two_j, axis)."""
    key = (validate_two_j(two_j), axis)
    cached = _GENERATOR_CACHE.get(key)
    if cached is None:
        evals, evecs = np.linalg.eigh(coupling_generator(axis, two_j))
        evals.setflags(write=False)
        evecs.setflags(write=False)
        cached = _GENERATOR_CACHE.setdefault(key, (evals, evecs))
    return cached


def _kick_from_factors(factors: tuple[np.ndarray, np.ndarray], kappa: float) -> np.ndarray:
    evals, evecs = factors
    return (evecs * np.exp(-1j * kappa * evals)) @ evecs.conj().T


def kick_unitary(axis: str, kappa: float, two_j: int, delta: float = 0.0) -> np.ndarray:
    """exp(-i [ (kappa/j) J_a sigma_a + delta sigma_z ]) on the coupled space."""
    if kappa < 0 or delta < 0:
        raise ValueError("kappa and delta must be non-negative")
    if delta == 0.0:
        return _kick_from_factors(generator_factors(two_j, axis), kappa)
    # the delta term is not a kappa-scaling of a fixed generator, so no cache
    gen = kappa * coupling_generator(axis, two_j)
    gen += delta * np.kron(np.eye(dim_top(two_j)), SIGMA_Z)
    evals, evecs = np.linalg.eigh(gen)
    return (evecs * np.exp(-1j * evals)) @ evecs.conj().T


def unitarity_defect(u: np.ndarray) -> float:
    """Max-element deviation of U^dag U from the identity."""
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max())


def _assemble(two_j: int, params: KickParams, factors: dict | None) -> np.ndarray:
    if params.delta > 0.0:
        kick_x = kick_unitary("x", params.kappa_x, two_j, params.delta)
        kick_y = kick_unitary("y", params.kappa_y, two_j, params.delta)
        return kick_y @ kick_x
    fx, fy = factors["x"], factors["y"]
    if params.variant == "plain":
        return _kick_from_factors(fy, params.kappa_y) @ _kick_from_factors(fx, params.kappa_x)
    if params.variant == "sym1":
        half = _kick_from_factors(fy, params.kappa_y / 2.0)
        return half @ _kick_from_factors(fx, params.kappa_x) @ half
    half = _kick_from_factors(fx, params.kappa_x / 2.0)
    return half @ _kick_from_factors(fy, params.kappa_y) @ half


def floquet_operator(params: KickParams, two_j: int) -> FloquetOperator:
    """Build the one-period unitary for the given kick parameters.

    Orderings: plain applies the x kick first, then the y kick;
    sym1 wraps the full x kick in half y kicks; sym2 wraps the full
    y kick in half x kicks.  All three share one spectrum.
    """
    two_j = validate_two_j(two_j)
    factors = None
    if params.delta == 0.0:
        factors = {"x": generator_factors(two_j, "x"), "y": generator_factors(two_j, "y")}
    u = _assemble(two_j, params, factors)
    defect = unitarity_defect(u)
    if defect > UNITARITY_TOL:
        raise NumericalError(f"constructed operator has unitarity defect {defect:.2e}")
    return FloquetOperator(u=u, params=params, two_j=two_j, factors=factors)


def refresh(operator: FloquetOperator, params: KickParams) -> FloquetOperator:
    """Rebuild at new kick strengths, reusing the operator's cached factors.

    The variant and delta must match the original; refreshing to the
    identical parameters reproduces the identical matrix bit for bit.
    """
    old = operator.params
    if params.variant != old.variant:
        raise ValueError(f"variant mismatch: cached {old.variant!r}, requested {params.variant!r}")
    if params.delta != old.delta:
        raise ValueError(f"delta mismatch: cached {old.delta!r}, requested {params.delta!r}")
    u = _assemble(operator.two_j, params, operator.factors)
    defect = unitarity_defect(u)
    if defect > UNITARITY_TOL:
        raise NumericalError(f"refreshed operator has unitarity defect {defect:.2e}")
    return FloquetOperator(u=u, params=params, two_j=operator.two_j, factors=operator.factors)
