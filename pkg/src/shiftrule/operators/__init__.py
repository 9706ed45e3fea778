"""Pauli and fermionic operator algebra."""

from .convert import Hermitized, as_hermitian, hermitize, is_hermitian_matrix, to_dense
from .fermion import FermionSum, jordan_wigner
from .io import dumps_operator, loads_operator, operator_from_dict, operator_to_dict
from .library import (
    SINGLET_KINDS,
    build_named_gate,
    build_singlet,
    fsim,
    fsim_phase_part,
    fsim_swap_part,
    matchgate,
    singlet_split_terms,
    spin_operators,
    three_qubit_example,
    transmon,
)
from .pauli import PauliString, PauliSum, commutator, pauli_multiply

__all__ = [
    "FermionSum",
    "Hermitized",
    "PauliString",
    "PauliSum",
    "SINGLET_KINDS",
    "as_hermitian",
    "build_named_gate",
    "build_singlet",
    "commutator",
    "dumps_operator",
    "fsim",
    "fsim_phase_part",
    "fsim_swap_part",
    "hermitize",
    "is_hermitian_matrix",
    "jordan_wigner",
    "loads_operator",
    "matchgate",
    "operator_from_dict",
    "operator_to_dict",
    "pauli_multiply",
    "singlet_split_terms",
    "spin_operators",
    "three_qubit_example",
    "to_dense",
    "transmon",
]
