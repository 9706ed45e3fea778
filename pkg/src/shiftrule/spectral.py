"""Eigen-analysis of generators: distinct eigenvalues, multiplicities, projectors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InputError, NumericalError
from .operators.convert import as_hermitian

CLUSTER_RTOL = 1e-8


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    eigenbasis: np.ndarray
    projector_index: tuple[int, ...]
    tol: float

    @property
    def n_distinct(self) -> int:
        return len(self.eigenvalues)

    @property
    def dim(self) -> int:
        return self.eigenbasis.shape[0]

    @cached_property
    def projectors(self) -> tuple[np.ndarray, ...]:
        return tuple(subspace_projector(self, n) for n in range(self.n_distinct))

    def reconstruct(self) -> np.ndarray:
        return sum(lam * p for lam, p in zip(self.eigenvalues, self.projectors))

    def index_of(self, value: float) -> int | None:
        for n, lam in enumerate(self.eigenvalues):
            if abs(lam - value) < self.tol:
                return n
        return None


def _cluster_tol(w: np.ndarray, rtol: float) -> float:
    return rtol * max(1.0, float(np.max(np.abs(w), initial=0.0)))


def cluster_eigenvalues(w, rtol: float = CLUSTER_RTOL) -> list[list[int]]:
    """Group sorted eigenvalues closer than the clustering tolerance.

    Gap-based (single linkage) and anchor-based grouping must agree, otherwise
    the spectrum has a chain of near-degeneracies and :class:`NumericalError`
    is raised.
    """
    w = np.asarray(w, dtype=float)
    tol = _cluster_tol(w, rtol)
    gap_groups: list[list[int]] = []
    anchor_groups: list[list[int]] = []
    for k in range(len(w)):
        if gap_groups and w[k] - w[k - 1] < tol:
            gap_groups[-1].append(k)
        else:
            gap_groups.append([k])
        if anchor_groups and w[k] - w[anchor_groups[-1][0]] < tol:
            anchor_groups[-1].append(k)
        else:
            anchor_groups.append([k])
    if gap_groups != anchor_groups:
        raise NumericalError("eigenvalue clustering is ambiguous at the configured tolerance")
    return gap_groups


def eigendecompose(g, rtol: float = CLUSTER_RTOL) -> SpectrumReport:
    m = as_hermitian(g)
    w, v = np.linalg.eigh(m)
    groups = cluster_eigenvalues(w, rtol)
    index = [0] * len(w)
    for n, grp in enumerate(groups):
        for k in grp:
            index[k] = n
    distinct = tuple(float(np.mean(w[grp])) for grp in groups)
    distinct = tuple(0.0 if abs(lam) < _cluster_tol(w, rtol) else lam for lam in distinct)
    return SpectrumReport(
        eigenvalues=distinct,
        multiplicities=tuple(len(grp) for grp in groups),
        eigenbasis=v,
        projector_index=tuple(index),
        tol=_cluster_tol(w, rtol),
    )


def subspace_projector(report: SpectrumReport, n: int) -> np.ndarray:
    if not 0 <= n < report.n_distinct:
        raise InputError(f"cluster index {n} out of range (0..{report.n_distinct - 1})")
    cols = [k for k, idx in enumerate(report.projector_index) if idx == n]
    v = report.eigenbasis[:, cols]
    return v @ v.conj().T


@dataclass(frozen=True)
class SpectrumClass:
    """Tag driving rule selection.

    ``kind`` is one of ``constant``, ``two_symmetric``, ``two_general``,
    ``three_symmetric``, ``general``; ``lam`` is the scale for the symmetric
    kinds.
    """

    kind: str
    L: int
    lam: float | None = None

    def __str__(self):
        if self.lam is not None:
            return f"{self.kind}({self.lam:.17g})"
        if self.kind == "general":
            return f"general({self.L})"
        return self.kind


def classify_eigenvalues(eigenvalues, tol: float | None = None) -> SpectrumClass:
    lams = sorted(float(v) for v in eigenvalues)
    if tol is None:
        tol = _cluster_tol(np.array(lams), CLUSTER_RTOL)
    L = len(lams)
    if L == 1:
        return SpectrumClass("constant", 1)
    if L == 2:
        if abs(lams[0] + lams[1]) < tol:
            return SpectrumClass("two_symmetric", 2, (lams[1] - lams[0]) / 2)
        return SpectrumClass("two_general", 2)
    if L == 3 and abs(lams[1]) < tol and abs(lams[0] + lams[2]) < tol:
        return SpectrumClass("three_symmetric", 3, (lams[2] - lams[0]) / 2)
    return SpectrumClass("general", L)


def classify_spectrum(report: SpectrumReport) -> SpectrumClass:
    return classify_eigenvalues(report.eigenvalues, report.tol)


def is_negation_symmetric(eigenvalues, tol: float = 1e-9) -> bool:
    lams = np.sort(np.asarray(eigenvalues, dtype=float))
    return len(lams) > 0 and bool(np.all(np.abs(lams + lams[::-1]) < tol * max(1.0, np.abs(lams).max())))
