"""Two-qubit density operators in the computational basis ``|j1 j2>``.

States are plain ``numpy`` arrays (4x4 for two qubits, 2x2 for one); the
basis index of ``|j1 j2>`` is ``2*j1 + j2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-10

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)

_FLIPS = (
    np.kron(I2, I2),
    np.kron(I2, SIGMA_X),
    np.kron(SIGMA_X, I2),
    np.kron(SIGMA_X, SIGMA_X),
)


@dataclass(frozen=True)
class DiagonalObservable:
    """Real weights on the basis projectors: ``sum_k w_k |k><k|``.

    Four weights ``(w00, w01, w10, w11)`` act on two qubits, two on one.
    """

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.shape not in ((2,), (4,)):
            raise ValueError(f"expected 2 or 4 weights, got {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValueError("observable weights must be finite")
        object.__setattr__(self, "weights", tuple(float(x) for x in w))

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(np.asarray(self.weights, dtype=complex))

    def __add__(self, other: "DiagonalObservable") -> "DiagonalObservable":
        return DiagonalObservable(tuple(x + y for x, y in zip(self.weights, other.weights)))

    def scaled(self, k: float) -> "DiagonalObservable":
        return DiagonalObservable(tuple(k * x for x in self.weights))


def check_density(rho: np.ndarray, dim: int | None = None) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return ``rho`` as complex."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density operator must be square, got {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise ValueError(f"expected a {dim}x{dim} density operator, got {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > HERMITIAN_TOL:
        raise ValueError("density operator is not Hermitian")
    if abs(np.trace(rho) - 1) > TRACE_TOL:
        raise ValueError(f"density operator trace {np.trace(rho).real} != 1")
    if np.linalg.eigvalsh(rho).min() < PSD_FLOOR:
        raise ValueError("density operator is not positive semidefinite")
    return rho


def is_density(rho: np.ndarray) -> bool:
    try:
        check_density(rho)
    except ValueError:
        return False
    return True


def basis_state(j1: int, j2: int) -> np.ndarray:
    if j1 not in (0, 1) or j2 not in (0, 1):
        raise ValueError(f"bits must be 0 or 1, got ({j1}, {j2})")
    rho = np.zeros((4, 4), dtype=complex)
    rho[2 * j1 + j2, 2 * j1 + j2] = 1.0
    return rho


def pure_state(amplitudes) -> np.ndarray:
    """Projector onto a normalised two-qubit state vector."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if psi.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got {psi.shape[0]}")
    if abs(np.vdot(psi, psi).real - 1) > 1e-12:
        raise ValueError(f"state vector is not normalised (norm^2 = {np.vdot(psi, psi).real})")
    return np.outer(psi, psi.conj())


def correlated_flip_mixture(rho_in: np.ndarray, x: float, y: float) -> np.ndarray:
    """Each player keeps their qubit with probability ``x`` (resp. ``y``), else applies sigma_x."""
    for name, p in (("x", x), ("y", y)):
        if not 0 <= p <= 1:
            raise ValueError(f"{name} must lie in [0, 1], got {p}")
    weights = (x * y, x * (1 - y), (1 - x) * y, (1 - x) * (1 - y))
    rho_in = np.asarray(rho_in, dtype=complex)
    return sum(w * U @ rho_in @ U for w, U in zip(weights, _FLIPS))


def expectation(rho: np.ndarray, obs: DiagonalObservable) -> float:
    """``tr(rho O)``, real by construction up to rounding."""
    val = np.trace(np.asarray(rho) @ obs.matrix)
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise ValueError(f"expectation has imaginary part {val.imag}")
    return float(val.real)


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Reduced state of qubit ``keep`` (1 or 2)."""
    t = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("ijkj->ik", t)
    if keep == 2:
        return np.einsum("jijk->ik", t)
    raise ValueError(f"keep must be 1 or 2, got {keep}")
