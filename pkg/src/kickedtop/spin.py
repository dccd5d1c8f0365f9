"""Angular momentum matrices, Pauli matrices, and spin coherent states.

Basis conventions used throughout the package:

* the top lives in the (2j+1)-dimensional space spanned by |m> with
  m = -j, ..., j in ascending order (flat index j + m);
* the coupled top + spin-1/2 space has dimension D = 2(2j+1) and the
  product state |m, s> (s = 0 for up, 1 for down) sits at flat index
  2*(j + m) + s, i.e. m-major, spin-minor;
* spins are specified by the integer two_j = 2j, so integer and
  half-integer j share one code path.

All matrices are dense complex arrays; construction is deterministic.
"""

from collections import namedtuple

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

AngularMomentum = namedtuple("AngularMomentum", ["jx", "jy", "jz", "jplus", "jminus"])

# eigendecomposition of Jy per two_j, reused for every y rotation
_JY_EIG_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def validate_two_j(two_j):
    if not isinstance(two_j, (int, np.integer)) or two_j < 1:
        raise ValueError(f"two_j must be a positive integer, got {two_j!r}")
    return int(two_j)


def dim_top(two_j: int) -> int:
    """Dimension 2j+1 of the top space."""
    return validate_two_j(two_j) + 1


def dim_coupled(two_j: int) -> int:
    """Dimension D = 2(2j+1) of the coupled top + spin-1/2 space."""
    return 2 * dim_top(two_j)


def m_values(two_j: int) -> np.ndarray:
    """Magnetic quantum numbers -j..j in ascending order."""
    j = validate_two_j(two_j) / 2.0
    return np.arange(two_j + 1) - j


def flat_index(two_j: int, m: float, s: int) -> int:
    """Flat index of |m, s> in the coupled basis (s = 0 up, 1 down)."""
    j = validate_two_j(two_j) / 2.0
    if s not in (0, 1):
        raise ValueError(f"spin index must be 0 or 1, got {s!r}")
    k = round(2 * (j + m))
    if k % 2 or not 0 <= k // 2 <= two_j:
        raise ValueError(f"m = {m!r} is not a valid projection for two_j = {two_j}")
    return k + s


def pauli_matrix(axis: str) -> np.ndarray:
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}") from None


def jz_matrix(two_j: int) -> np.ndarray:
    return np.diag(m_values(two_j)).astype(complex)


def jplus_matrix(two_j: int) -> np.ndarray:
    """Raising operator, J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>."""
    j = validate_two_j(two_j) / 2.0
    m = m_values(two_j)
    d = two_j + 1
    jp = np.zeros((d, d), dtype=complex)
    jp[np.arange(1, d), np.arange(d - 1)] = np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1))
    return jp


def jminus_matrix(two_j: int) -> np.ndarray:
    return jplus_matrix(two_j).conj().T


def angular_momentum_matrices(two_j: int) -> AngularMomentum:
    """Jx, Jy, Jz and the ladder operators for spin j = two_j / 2."""
    jp = jplus_matrix(two_j)
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    return AngularMomentum(jx, jy, jz_matrix(two_j), jp, jm)


def coupling_operator(axis: str, two_j: int) -> np.ndarray:
    """The Hermitian coupling J_a (x) sigma_a on the coupled space."""
    sigma = pauli_matrix(axis)
    ops = angular_momentum_matrices(two_j)
    top = {"x": ops.jx, "y": ops.jy, "z": ops.jz}[axis]
    return np.kron(top, sigma)


def embed_top(op_top: np.ndarray) -> np.ndarray:
    """Lift a top-only operator to the coupled space (tensor identity on the spin)."""
    return np.kron(op_top, np.eye(2, dtype=complex))


def _jy_eig(two_j: int) -> tuple[np.ndarray, np.ndarray]:
    two_j = validate_two_j(two_j)
    cached = _JY_EIG_CACHE.get(two_j)
    if cached is None:
        evals, evecs = np.linalg.eigh(angular_momentum_matrices(two_j).jy)
        evals.setflags(write=False)
        evecs.setflags(write=False)
        cached = _JY_EIG_CACHE.setdefault(two_j, (evals, evecs))
    return cached


def rotation_about_y(two_j: int, angle: float) -> np.ndarray:
    """exp(-i * angle * Jy) on the top space."""
    evals, evecs = _jy_eig(two_j)
    return (evecs * np.exp(-1j * angle * evals)) @ evecs.conj().T


def coherent_state(two_j: int, theta: float, phi: float) -> np.ndarray:
    """Spin coherent state exp(-i phi Jz) exp(-i theta Jy) |j, j>.

    Its angular momentum expectation values are
    j (sin theta cos phi, sin theta sin phi, cos theta).
    """
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
    evals, evecs = _jy_eig(two_j)
    top = evecs @ (np.exp(-1j * theta * evals) * evecs[-1].conj())
    return np.exp(-1j * phi * m_values(two_j)) * top


def probe_state(two_j: int, theta: float, phi: float) -> np.ndarray:
    """Coherent top state tensored with (|up> + |down>)/sqrt(2)."""
    return product_state(two_j, coherent_state(two_j, theta, phi),
                         np.array([1.0, 1.0]) / np.sqrt(2.0))


def product_state(two_j: int, top: np.ndarray, spin: np.ndarray) -> np.ndarray:
    """Interleave a top vector with a 2-component spinor per the basis ordering."""
    d = dim_top(two_j)
    if top.shape != (d,) or spin.shape != (2,):
        raise ValueError("component dimensions do not match two_j")
    out = np.empty(2 * d, dtype=complex)
    out[0::2] = top * spin[0]
    out[1::2] = top * spin[1]
    return out


def expectation(op: np.ndarray, psi: np.ndarray) -> complex:
    """<psi| op |psi>."""
    if op.shape != (psi.size, psi.size):
        raise ValueError(f"operator shape {op.shape} does not match state of size {psi.size}")
    return complex(np.vdot(psi, op @ psi))
