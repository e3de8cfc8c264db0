"""Constructors for the named one- and two-qubit gates.

Two-qubit matrices follow the package convention: the first tensor slot is
the higher-index qubit.  ``controlled(u, v, control=0)`` puts the control on
that first slot; pass ``control=1`` to condition on the second slot instead.
"""
from __future__ import annotations

import numpy as np

from .linalg import require_unitary, tensor

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def normalize_angle(theta: float) -> float:
    """Reduce an angle in radians to [0, 2*pi)."""
    return float(np.mod(theta, 2 * np.pi))


def hadamard() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def phase_gate(theta: float) -> np.ndarray:
    """diag(1, e^{i theta})."""
    return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=complex)


def t_gate() -> np.ndarray:
    return phase_gate(np.pi / 4)


def controlled(u: np.ndarray, v: np.ndarray, control: int = 0) -> np.ndarray:
    """Two-qubit gate applying ``u`` when the control qubit is |0>, ``v`` when |1>."""
    u = require_unitary(u, "u")
    v = require_unitary(v, "v")
    if control == 0:
        return tensor(_P0, u) + tensor(_P1, v)
    if control == 1:
        return tensor(u, _P0) + tensor(v, _P1)
    raise ValueError("control slot must be 0 (first/high) or 1 (second/low)")


def swap_gate() -> np.ndarray:
    return np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    )


def cz_gate() -> np.ndarray:
    return np.diag([1, 1, 1, -1]).astype(complex)


def cnot_gate() -> np.ndarray:
    """Controlled-X, control on the first (higher) slot."""
    return controlled(I2, X)


def controlled_phase(theta: float) -> np.ndarray:
    """diag(1, 1, 1, e^{i theta}); symmetric in the two qubits."""
    return np.diag([1, 1, 1, np.exp(1j * theta)]).astype(complex)


def swap_controlled(u: np.ndarray, control: int = 0) -> np.ndarray:
    """SWAP composed with controlled-u: the non-local skeleton of the swap-type interaction."""
    return swap_gate() @ controlled(I2, u, control=control)


def swap_controlled_phase(theta: float) -> np.ndarray:
    """SWAP composed with a controlled phase."""
    return swap_gate() @ controlled_phase(theta)


def sct_gate() -> np.ndarray:
    """SWAP followed by a controlled pi/4 phase."""
    return swap_controlled_phase(np.pi / 4)


def param_u2(eta: float, phi: float, psi: float, theta: float) -> np.ndarray:
    """Four-angle parametrization covering all of U(2).

    e^{i eta} [[e^{i phi} cos(theta),  e^{-i psi} sin(theta)],
               [e^{i psi} sin(theta), -e^{-i phi} cos(theta)]]
    """
    c, s = np.cos(theta), np.sin(theta)
    return np.exp(1j * eta) * np.array(
        [
            [np.exp(1j * phi) * c, np.exp(-1j * psi) * s],
            [np.exp(1j * psi) * s, -np.exp(-1j * phi) * c],
        ],
        dtype=complex,
    )


def param_u2_angles(m: np.ndarray) -> tuple[float, float, float, float]:
    """Invert :func:`param_u2`: recover (eta, phi, psi, theta) for any unitary.

    Branch cuts: theta is taken in [0, pi/2]; at the degenerate points
    psi := 0 when sin(theta) = 0 and phi := 0 when cos(theta) = 0 (the
    parametrization is not unique there).  eta is fixed up to pi by the
    determinant; the branch reproducing ``m`` (not ``-m``) is selected.
    """
    m = require_unitary(m, "m")
    theta = float(np.arctan2(abs(m[1, 0]), abs(m[0, 0])))
    det = np.linalg.det(m)
    eta = float(np.angle(-det) / 2)
    for candidate in (eta, eta + np.pi):
        ph = np.exp(-1j * candidate)
        phi = float(np.angle(m[0, 0] * ph)) if abs(m[0, 0]) > 1e-12 else 0.0
        psi = float(np.angle(m[1, 0] * ph)) if abs(m[1, 0]) > 1e-12 else 0.0
        if np.linalg.norm(param_u2(candidate, phi, psi, theta) - m) < 1e-8:
            return candidate, phi, psi, theta
    return eta, phi, psi, theta
