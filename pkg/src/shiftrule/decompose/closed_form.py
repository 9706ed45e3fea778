"""Decompositions with explicit formulas: singlet splits, fSim, best-case fixtures."""

from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from ..errors import InputError
from ..operators.convert import hermitize
from ..operators.library import (
    SINGLET_KINDS,
    build_singlet,
    fsim_phase_part,
    fsim_swap_part,
    singlet_split_terms,
)
from ..operators.pauli import PauliString, PauliSum
from .base import DecompTerm, Decomposition, check_z_string, normalize_term, z_diagonal


def singlet_On_split(kind: str, indices, n_modes: int | None = None) -> Decomposition:
    """Hermitized split ``-i T = sum d_n O_n`` of a singlet generator."""
    if kind not in SINGLET_KINDS:
        raise InputError(f"no split for singlet kind {kind!r}")
    parts = singlet_split_terms(kind, indices, n_modes)
    terms = []
    total = None
    for part in parts:
        h = hermitize(part).op
        total = h if total is None else total + h
        dense = h.to_dense()
        norm = normalize_term(dense)
        if norm is not None:
            terms.append(DecompTerm(norm[0], norm[1], norm[2]))
    n_qubits = total.n_qubits
    decomp = Decomposition("closed_form", terms, n_qubits, info={"singlet": kind})
    g = hermitize(build_singlet(kind, indices, n_modes)).op.to_dense()
    decomp.residual = decomp.residual_against(g)
    return decomp


def fsim_parameter_split(theta: float = 1.0, phi: float = 1.0) -> tuple[PauliSum, PauliSum]:
    """``((theta/2)(XX + YY), (phi/4)(1 - Z)(1 - Z))``: generators of the two fSim parameters."""
    return theta * fsim_swap_part(), phi * fsim_phase_part()


def _gf2_rank(masks) -> int:
    rows = list(masks)
    rank = 0
    for bit in reversed(range(max(rows, default=0).bit_length())):
        pivot = next((r for r in rows if r >> bit & 1), None)
        if pivot is None:
            continue
        rows.remove(pivot)
        rows = [r ^ pivot if r >> bit & 1 else r for r in rows]
        rank += 1
    return rank


def best_case_construct(d, masks, n_qubits: int | None = None, seed: int | None = None):
    """``G = W^dag (sum d_n Z_n) W`` for a Haar-random ``W`` and its expected spectrum.

    ``masks`` are Z-strings as labels (``"Z0 Z2"``) or :class:`PauliString`.
    The expected spectrum lists, with multiplicity, every signed sum
    ``sum d_n b_n`` weighted by how many basis states realize it.
    """
    d = [float(v) for v in d]
    if len(d) != len(masks):
        raise InputError("need one mask per coefficient")
    if n_qubits is None:
        n_qubits = 1
        for m in masks:
            if isinstance(m, PauliString):
                n_qubits = max(n_qubits, m.n_qubits)
            else:
                for tok in m.split():
                    n_qubits = max(n_qubits, int(tok[1:]) + 1)
    bits = [check_z_string(m, n_qubits) for m in masks]
    if 0 in bits or _gf2_rank(bits) != len(bits):
        raise InputError("masks must be linearly independent non-identity Z-strings")
    dim = 1 << n_qubits
    x = np.arange(dim)
    diag = np.zeros(dim)
    for dn, b in zip(d, bits):
        diag += dn * z_diagonal(b, dim)
    w = unitary_group.rvs(dim, random_state=np.random.default_rng(seed))
    g = w.conj().T @ np.diag(diag) @ w
    return (g + g.conj().T) / 2, np.sort(diag)
