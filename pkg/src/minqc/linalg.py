"""Dense complex linear algebra for few-qubit operators and statevectors.

Conventions, used consistently everywhere in this package:
  * matrices are complex128 ndarrays, row-major;
  * basis ordering is little-endian over qubit labels: qubit 0 is the least
    significant bit of the basis index;
  * ``tensor(a, b)`` places ``a`` on the higher-index qubit block, so for a
    two-qubit operator ``tensor(a, b)`` acts with ``a`` on qubit 1 and ``b``
    on qubit 0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadTargets, DimensionMismatch, NonHermitianInput, NonUnitaryArgument

# Default tolerances: constructor unitarity is tighter than identity checks,
# which must absorb roundoff from chains of up to ~60 small-matrix products.
UNITARY_ATOL = 1e-12
IDENTITY_ATOL = 1e-10


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def is_unitary(m: np.ndarray, atol: float = UNITARY_ATOL) -> bool:
    m = as_matrix(m)
    return bool(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0])) < atol)


def require_unitary(m: np.ndarray, name: str = "matrix", atol: float = UNITARY_ATOL) -> np.ndarray:
    m = as_matrix(m)
    if not is_unitary(m, atol):
        raise NonUnitaryArgument(f"{name} is not unitary within {atol:g}")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; ``a`` acts on the higher-index qubit block."""
    return np.kron(as_matrix(a), as_matrix(b))


def herm_exp(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i*h*t) for Hermitian h, via eigendecomposition (exact, no series)."""
    h = as_matrix(h)
    if np.linalg.norm(h - h.conj().T) >= 1e-10:
        raise NonHermitianInput("herm_exp requires a Hermitian matrix")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def phase_aligned_dist(a: np.ndarray, b: np.ndarray) -> float:
    """min over alpha of ||a - e^{i alpha} b||_F for equal-shape arrays."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch: {a.shape} vs {b.shape}")
    overlap = np.vdot(b, a)
    if abs(overlap) > 0:
        b = b * (overlap / abs(overlap))
    return float(np.linalg.norm(a - b))


def dist_phase(a: np.ndarray, b: np.ndarray) -> float:
    """Global-phase-insensitive distance of unitaries:
    min over alpha of ||a - e^{i alpha} b||_F.

    Computed by aligning b to the optimal phase arg(tr(a^dag b)) and taking the
    Frobenius norm of the difference.  Mathematically identical to the closed
    form sqrt(2d - 2|tr(a^dag b)|), but resolves distances all the way down to
    machine precision, which the closed form cannot (cancellation under the
    square root floors it near 1e-8).
    """
    return phase_aligned_dist(as_matrix(a), as_matrix(b))


@dataclass(frozen=True)
class StateVec:
    """Statevector of ``num_qubits`` qubits, little-endian amplitude order."""

    amplitudes: np.ndarray
    num_qubits: int

    @staticmethod
    def from_amplitudes(amps) -> "StateVec":
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        n = int(np.log2(len(amps)))
        if 2**n != len(amps):
            raise DimensionMismatch(f"amplitude vector of length {len(amps)} is not 2**n")
        return StateVec(amps, n)

    @staticmethod
    def basis(num_qubits: int, index: int) -> "StateVec":
        amps = np.zeros(2**num_qubits, dtype=complex)
        amps[index] = 1.0
        return StateVec(amps, num_qubits)

    @staticmethod
    def zero(num_qubits: int) -> "StateVec":
        return StateVec.basis(num_qubits, 0)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def apply_gate(psi: StateVec, g: np.ndarray, targets: list[int]) -> StateVec:
    """Apply ``g`` to the listed qubits (identity elsewhere).

    ``targets[0]`` addresses the highest-index qubit slot of ``g``, matching
    the ``tensor`` convention; order is significant for non-symmetric gates.
    """
    g = as_matrix(g)
    n = psi.num_qubits
    m = len(targets)
    if g.shape[0] != 2**m:
        raise BadTargets(f"gate dimension {g.shape[0]} does not match {m} targets")
    if len(set(targets)) != m or any(not (0 <= t < n) for t in targets):
        raise BadTargets(f"targets {targets} invalid for {n} qubits")
    # axis for qubit q in the reshaped tensor is n-1-q (row-major, little-endian)
    axes = [n - 1 - t for t in targets]
    tensor_state = psi.amplitudes.reshape([2] * n)
    tensor_state = np.moveaxis(tensor_state, axes, range(m))
    block = tensor_state.reshape(2**m, -1)
    block = g @ block
    tensor_state = np.moveaxis(block.reshape([2] * n), range(m), axes)
    return StateVec(tensor_state.reshape(-1), n)


def embed_gate(g: np.ndarray, targets: list[int], num_qubits: int) -> np.ndarray:
    """Dense 2^n x 2^n operator acting as ``g`` on ``targets``, identity elsewhere."""
    dim = 2**num_qubits
    out = np.empty((dim, dim), dtype=complex)
    for col in range(dim):
        out[:, col] = apply_gate(StateVec.basis(num_qubits, col), g, targets).amplitudes
    return out


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
