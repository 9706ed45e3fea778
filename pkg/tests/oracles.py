"""Independent reference implementations used only by the tests.

Nothing here reuses the package's bit-mask Pauli code, its eigh-based
simulator or its Walsh transform.
"""

from functools import reduce

import numpy as np
from scipy.linalg import expm

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_pauli(label: str, n: int) -> np.ndarray:
    """Dense Pauli string from a label like ``"X0 Z2"``; qubit 0 is the leftmost factor."""
    letters = ["I"] * n
    for tok in label.split():
        letters[int(tok[1:])] = tok[0]
    return reduce(np.kron, [PAULI[c] for c in letters])


def kron_sum(pairs, n: int) -> np.ndarray:
    return sum(c * kron_pauli(lab, n) for c, lab in pairs)


def z_product_diag(qubits, n: int) -> np.ndarray:
    """Diagonal of ``prod_q Z_q`` by explicit products of single-qubit diagonals."""
    diag = np.ones(1 << n)
    for q in qubits:
        diag = diag * np.real(np.diag(kron_pauli(f"Z{q}", n)))
    return diag


def walsh_naive(diag: np.ndarray) -> dict[tuple, float]:
    """Expansion coefficients over all Z-products by trace projection."""
    n = len(diag).bit_length() - 1
    out = {}
    for m in range(1 << n):
        qubits = tuple(q for q in range(n) if m >> (n - 1 - q) & 1)
        out[qubits] = float(diag @ z_product_diag(qubits, n)) / len(diag)
    return out


def random_hermitian(dim, rng, scale=1.0) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2


def random_unitary(dim, rng) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def padded(eigs, dim: int = 8) -> list:
    """Repeat distinct eigenvalues cyclically to fill a power-of-two dimension."""
    return [eigs[k % len(eigs)] for k in range(dim)]


def with_spectrum(eigs, rng) -> np.ndarray:
    u = random_unitary(len(eigs), rng)
    return u @ np.diag(eigs) @ u.conj().T


def energy_oracle(H, G, tau, u1, u2) -> float:
    """``<0| u1^dag e^{-i tau G} u2^dag H u2 e^{i tau G} u1 |0>`` by dense expm."""
    psi = u2 @ expm(1j * tau * G) @ u1[:, 0]
    return float(np.vdot(psi, H @ psi).real)


def gradient_oracle(H, G, tau, u1, u2) -> float:
    """Commutator form ``i <[u2^dag H u2, G]>`` from an independent expm route."""
    phi = expm(1j * tau * G) @ u1[:, 0]
    ht = u2.conj().T @ H @ u2
    return float((1j * np.vdot(phi, (ht @ G - G @ ht) @ phi)).real)


def circuit_unitary(gates) -> np.ndarray:
    """``prod exp(i a g)`` with the first gate acting first."""
    u = np.eye(gates[0][0].shape[0], dtype=complex) if gates else None
    for g, a in gates:
        u = expm(1j * a * g) @ u
    return u
