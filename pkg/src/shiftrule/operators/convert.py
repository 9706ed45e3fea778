"""Conversions between operator representations and Hermitian checks."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..errors import InputError
from .fermion import FermionSum, jordan_wigner
from .pauli import MAX_DENSE_QUBITS, PauliSum

HERMITIAN_RTOL = 1e-10


class Hermitized(NamedTuple):
    op: PauliSum
    anti_hermitian: bool


def hermitize(g: PauliSum | FermionSum, rtol: float = HERMITIAN_RTOL) -> Hermitized:
    """Return ``g`` if Hermitian, ``-1j * g`` if anti-Hermitian.

    Fermionic input is mapped with Jordan-Wigner first. With ``exp(tau * T)
    == exp(1j * tau * G)`` for ``G = -1j * T``, the amplitude ``tau`` is the
    same in both conventions.
    """
    if isinstance(g, FermionSum):
        g = jordan_wigner(g)
    scale = max(1.0, g.norm())
    herm = all(abs(c.imag) <= rtol * scale for _, c in g)
    if herm:
        return Hermitized(PauliSum(g.n_qubits, {p: c.real for p, c in g}), False)
    if all(abs(c.real) <= rtol * scale for _, c in g):
        return Hermitized(PauliSum(g.n_qubits, {p: c.imag for p, c in g}), True)
    raise InputError("operator is neither Hermitian nor anti-Hermitian")


def to_dense(op) -> np.ndarray:
    """Dense matrix of a :class:`PauliSum`, :class:`FermionSum` or array."""
    if isinstance(op, (PauliSum, FermionSum)):
        return op.to_dense()
    m = np.asarray(op, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError("dense operator must be a square matrix")
    if m.shape[0] > 1 << MAX_DENSE_QUBITS:
        raise InputError(f"dense conversion limited to {MAX_DENSE_QUBITS} qubits")
    return m


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def is_hermitian_matrix(m: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    scale = max(1.0, float(np.linalg.norm(m, 2))) if m.size else 1.0
    return hermiticity_error(m) < rtol * scale


def as_hermitian(op) -> np.ndarray:
    """Dense Hermitian matrix with a power-of-two dimension, or :class:`InputError`."""
    m = to_dense(op)
    dim = m.shape[0]
    if dim < 2 or dim & (dim - 1):
        raise InputError("dimension must be a power of two")
    if not is_hermitian_matrix(m):
        raise InputError("matrix is not Hermitian")
    return (m + m.conj().T) / 2
