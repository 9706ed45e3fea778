"""Decomposition containers shared by every decomposition method."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError
from ..operators.pauli import PauliString
from ..spectral import eigendecompose

TAGS = ("pm", "0pm", "0l")
EXACT_TOL = 1e-10
OPTIMIZED_TOL = 1e-6


@dataclass(frozen=True)
class DecompTerm:
    """``d * op`` with ``op`` normalized to spectrum ``{+-1}``, ``{0, +-1}`` or ``{0, 1}``."""

    d: float
    op: np.ndarray = field(repr=False)
    tag: str
    mask: int | None = None  # Z-string index mask for CSA kinds

    def z_label(self, n_qubits: int) -> str | None:
        if self.mask is None:
            return None
        return mask_label(self.mask, n_qubits)


def mask_label(mask: int, n_qubits: int) -> str:
    """Label of the Z-string whose diagonal is ``(-1)^popcount(x & mask)``."""
    qubits = [q for q in range(n_qubits) if mask >> (n_qubits - 1 - q) & 1]
    return " ".join(f"Z{q}" for q in qubits)


def z_diagonal(mask: int, dim: int) -> np.ndarray:
    x = np.arange(dim)
    return 1 - 2 * (np.bitwise_count(x & mask) & 1).astype(np.int64)


def spectrum_tag(op: np.ndarray) -> str:
    """Tag of a normalized term; raises :class:`InputError` if it has none."""
    lams = eigendecompose(op).eigenvalues
    rounded = tuple(round(v, 6) for v in lams)
    if rounded == (-1.0, 1.0):
        return "pm"
    if rounded == (-1.0, 0.0, 1.0):
        return "0pm"
    if rounded == (0.0, 1.0):
        return "0l"
    raise InputError(f"term spectrum {lams} is not one of +-1, 0+-1, 01")


def normalize_term(op: np.ndarray) -> tuple[float, np.ndarray, str] | None:
    """Split a few-eigenvalue Hermitian ``op`` into ``(d, op / d, tag)``.

    Returns ``None`` for the zero operator.
    """
    lams = eigendecompose(op).eigenvalues
    nonzero = [v for v in lams if v != 0.0]
    if not nonzero:
        return None
    if len(lams) == 2 and 0.0 in lams:
        d = nonzero[0]
        return d, op / d, "0l"
    if len(lams) in (2, 3) and abs(lams[0] + lams[-1]) < 1e-8 * max(1.0, lams[-1]):
        d = lams[-1]
        if len(lams) == 2:
            return d, op / d, "pm"
        if lams[1] == 0.0:
            return d, op / d, "0pm"
    raise InputError(f"term spectrum {lams} has no closed-form shift rule")


@dataclass
class Decomposition:
    """``G = offset * 1 + sum d_n O_n``.

    ``frame`` holds the common conjugating unitary ``V`` of a commutative CSA
    decomposition (``O_n = V^dag Z_n V``); per-term unitaries of the
    non-commutative kind are kept in ``unitaries``.
    """

    kind: str
    terms: list[DecompTerm]
    n_qubits: int
    offset: float = 0.0
    residual: float = 0.0
    frame: np.ndarray | None = field(default=None, repr=False)
    unitaries: list[np.ndarray] | None = field(default=None, repr=False)
    success: bool = True
    info: dict = field(default_factory=dict)

    @property
    def K(self) -> int:
        return len(self.terms)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def reconstruct(self) -> np.ndarray:
        out = self.offset * np.eye(self.dim, dtype=complex)
        for t in self.terms:
            out = out + t.d * t.op
        return out

    def residual_against(self, g: np.ndarray) -> float:
        return float(np.linalg.norm(g - self.reconstruct()))

    @property
    def commuting(self) -> bool:
        return self.kind in ("projector", "csa_commutative")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "terms": [
                {"d": t.d, "spectrum": t.tag, "masks": t.z_label(self.n_qubits)} for t in self.terms
            ],
            "offset": self.offset,
            "residual": self.residual,
            "K": self.K,
        }


def check_z_string(label_or_string, n_qubits: int) -> int:
    """Index-bit mask of a Z-only Pauli string given as a label or :class:`PauliString`."""
    p = label_or_string if isinstance(label_or_string, PauliString) else PauliString.from_label(label_or_string, n_qubits)
    if p.x_mask:
        raise InputError(f"{p.label} is not a Z-string")
    mask = 0
    for q in range(n_qubits):
        if p.z_mask >> q & 1:
            mask |= 1 << (n_qubits - 1 - q)
    return mask
