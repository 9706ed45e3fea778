"""Eigen-subspace projector decomposition."""

from __future__ import annotations

import numpy as np

from ..spectral import SpectrumReport, eigendecompose
from .base import DecompTerm, Decomposition


def projector_decomposition(report: SpectrumReport | np.ndarray, g: np.ndarray | None = None) -> Decomposition:
    """``G = sum lam (P_+lam - P_-lam) + sum mu P_mu``.

    Eigenvalue pairs ``+-lam`` share one reflection-like term on their joint
    subspace; unpaired nonzero eigenvalues get a projector term. Accepts a
    :class:`SpectrumReport` or a dense Hermitian matrix.
    """
    if not isinstance(report, SpectrumReport):
        g = np.asarray(report)
        report = eigendecompose(g)
    lams = report.eigenvalues
    projs = report.projectors
    n_qubits = report.dim.bit_length() - 1
    used: set[int] = set()
    terms: list[DecompTerm] = []
    offset = 0.0
    if len(lams) == 1:
        offset = lams[0]
        used.add(0)
    for n in sorted(range(len(lams)), key=lambda k: -abs(lams[k])):
        lam = lams[n]
        if n in used or lam <= 0:
            continue
        m = report.index_of(-lam)
        if m is None:
            continue
        used.update((n, m))
        full = report.multiplicities[n] + report.multiplicities[m] == report.dim
        terms.append(DecompTerm(lam, projs[n] - projs[m], "pm" if full else "0pm"))
    for n in sorted(range(len(lams)), key=lambda k: -abs(lams[k])):
        if n in used or lams[n] == 0.0:
            continue
        terms.append(DecompTerm(lams[n], projs[n], "0l"))
    decomp = Decomposition("projector", terms, n_qubits, offset=offset)
    target = report.reconstruct() if g is None else g
    decomp.residual = decomp.residual_against(target)
    return decomp
