"""Decompositions ``G = sum d_n O_n`` into few-eigenvalue operators."""

from .base import DecompTerm, Decomposition, mask_label, normalize_term, spectrum_tag, z_diagonal
from .closed_form import best_case_construct, fsim_parameter_split, singlet_On_split
from .csa import csa_commutative, walsh
from .ncsa import csa_noncommutative
from .projector import projector_decomposition

__all__ = [
    "DecompTerm",
    "Decomposition",
    "best_case_construct",
    "csa_commutative",
    "csa_noncommutative",
    "fsim_parameter_split",
    "mask_label",
    "normalize_term",
    "projector_decomposition",
    "singlet_On_split",
    "spectrum_tag",
    "walsh",
]
