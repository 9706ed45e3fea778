"""Shift rules from the finite polynomial expansion of ``exp(i theta G)``.

For a generator with ``L`` distinct eigenvalues ``lam_n``,
``exp(i theta G) = sum_k a_k(theta) (iG)^k`` with ``k < L``. A shift rule is
a set of real weights ``C_j`` and shifts ``theta_j`` such that
``sum_j C_j E(tau + theta_j) == dE/dtau`` for every observable and state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InputError, SingularShiftError, SynthesisError
from .spectral import SpectrumReport, classify_eigenvalues, is_negation_symmetric

SPREAD_LIMIT = 1e6
RESIDUAL_TOL = 1e-10
IMAG_TOL = 1e-10
DEFAULT_L3_THETA = math.pi / 4


@dataclass(frozen=True)
class ShiftTerm:
    theta: float
    c: float
    operator: np.ndarray | None = field(default=None, compare=False, repr=False)
    label: str | None = None


@dataclass(frozen=True)
class ShiftRule:
    """``dE/dtau = sum c_j * E(shift j)``.

    In ``same_generator`` mode every term shifts the amplitude of the
    generator itself. In ``decomposed`` mode each term carries the operator
    whose exponential ``exp(i theta O)`` is inserted next to the gate.
    """

    terms: tuple[ShiftTerm, ...]
    mode: str = "same_generator"
    spectrum: tuple[float, ...] | None = None
    method: str = ""
    residual: float = 0.0

    def __len__(self):
        return len(self.terms)

    @property
    def shifts(self) -> np.ndarray:
        return np.array([t.theta for t in self.terms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([t.c for t in self.terms])

    def scaled(self, factor: float) -> "ShiftRule":
        return ShiftRule(
            tuple(ShiftTerm(t.theta, t.c * factor, t.operator, t.label) for t in self.terms),
            self.mode,
            self.spectrum,
            self.method,
            self.residual,
        )

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "method": self.method,
            "terms": [{"theta": t.theta, "c": t.c} for t in self.terms],
            "residual": self.residual,
        }


def _distinct(spectrum) -> np.ndarray:
    lams = np.sort(np.asarray(spectrum, dtype=float))
    if lams.ndim != 1 or len(lams) < 1:
        raise InputError("spectrum must be a non-empty list of eigenvalues")
    if len(lams) > 1:
        gaps = np.diff(lams)
        if gaps.min() <= 0:
            raise InputError("eigenvalues must be distinct")
        if (lams[-1] - lams[0]) / gaps.min() > SPREAD_LIMIT:
            raise SynthesisError(
                "eigenvalue spread ratio exceeds 1e6; Vandermonde system too ill-conditioned, "
                "use a decomposition method instead"
            )
    return lams


def vandermonde_matrix(spectrum) -> np.ndarray:
    lams = _distinct(spectrum)
    return np.vander(lams, len(lams), increasing=True)


def vandermonde_coefficients(spectrum, theta: float) -> np.ndarray:
    """``a_k(theta)`` for ``k = 0..L-1``: ``a_k = i^-k sum_n Winv[k, n] exp(i theta lam_n)``."""
    lams = _distinct(spectrum)
    w = np.vander(lams, len(lams), increasing=True)
    y = np.linalg.solve(w, np.exp(1j * theta * lams))
    return y * (1j) ** (-np.arange(len(lams)))


def synthesis_system(spectrum, thetas) -> tuple[np.ndarray, np.ndarray]:
    """Flattened ``(A, B)`` with ``A[(k, k'), j] = a_k a_k'^* i^(k+k') (-1)^k'``.

    Row ``(k, k')`` multiplies ``<G^k' H G^k>`` in ``E(theta_j)``; the target has
    ``B[1, 0] = i`` and ``B[0, 1] = -i``.
    """
    lams = _distinct(spectrum)
    L = len(lams)
    k = np.arange(L)
    phase = (1j) ** (k[:, None] + k[None, :]) * (-1.0) ** k[None, :]
    cols = []
    for th in np.atleast_1d(thetas):
        a = vandermonde_coefficients(lams, th)
        cols.append((a[:, None] * a.conj()[None, :] * phase).ravel())
    A = np.array(cols).T if cols else np.zeros((L * L, 0), complex)
    B = np.zeros((L, L), complex)
    if L > 1:
        B[1, 0], B[0, 1] = 1j, -1j
    return A, B.ravel()


def _frequency_system(lams: np.ndarray, thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Projector basis: E(theta) = sum_{m,n} exp(i theta (lam_n - lam_m)) <P_m H P_n>.
    d = (lams[None, :] - lams[:, None]).ravel()
    return np.exp(1j * np.outer(d, thetas)), 1j * d


def _solve_real(thetas: np.ndarray, lams: np.ndarray) -> tuple[np.ndarray, float]:
    M, b = _frequency_system(lams, thetas)
    scale = max(1.0, float(np.abs(lams).max()))
    # real unknowns: stack real and imaginary parts, scale rows to O(1)
    Ms = np.vstack([M.real, M.imag])
    bs = np.concatenate([b.real, b.imag]) / scale
    c, *_ = np.linalg.lstsq(Ms, bs, rcond=None)
    c = c * scale
    return c, float(np.linalg.norm(M @ c - b)) / scale


def _a_tol(lams: np.ndarray) -> float:
    return RESIDUAL_TOL * max(1.0, float(np.abs(lams).max())) ** (2 * len(lams) - 2)


def _consistent(thetas: np.ndarray, lams: np.ndarray) -> np.ndarray | None:
    """Real weights solving both the projector-basis and the coefficient-basis system, or ``None``."""
    c, res = _solve_real(thetas, lams)
    if res >= RESIDUAL_TOL:
        return None
    A, B = synthesis_system(lams, thetas)
    if np.linalg.norm(A @ c - B) < _a_tol(lams):
        return c
    # polish directly on the coefficient-basis system
    alt, *_ = np.linalg.lstsq(np.vstack([A.real, A.imag]), np.concatenate([B.real, B.imag]), rcond=None)
    M, b = _frequency_system(lams, thetas)
    scale = max(1.0, float(np.abs(lams).max()))
    if np.linalg.norm(A @ alt - B) < _a_tol(lams) and np.linalg.norm(M @ alt - b) / scale < RESIDUAL_TOL:
        return alt
    return None


def system_residual(spectrum, thetas, weights) -> float:
    A, B = synthesis_system(spectrum, thetas)
    return float(np.linalg.norm(A @ np.asarray(weights, dtype=complex) - B))


class L3Rule(NamedTuple):
    alpha: float
    beta: float
    shifts: tuple[float, float, float, float]
    weights: tuple[float, float, float, float]


def closed_form_l3(theta: float = DEFAULT_L3_THETA) -> L3Rule:
    """Four-shift rule for spectrum ``{0, +-1}``: ``dE = beta (alpha D1 - D2)``.

    ``Dk = E(k theta) - E(-k theta)``.
    """
    s1, c1 = math.sin(theta), math.cos(theta)
    s2, c2 = math.sin(2 * theta), math.cos(2 * theta)
    eps = 1e-9
    if abs(s1 * (c1 - 1)) < eps or abs(s2) < eps or abs(1 + 2 * c1) < eps:
        raise SingularShiftError(f"theta={theta!r} is singular for the three-eigenvalue rule")
    alpha = s2 * (c2 - 1) / (s1 * (c1 - 1))
    beta = 1.0 / (2 * s2 * ((1 - c2) / (1 - c1) - 1))
    shifts = (theta, -theta, 2 * theta, -2 * theta)
    weights = (alpha * beta, -alpha * beta, -beta, beta)
    return L3Rule(alpha, beta, shifts, weights)


def trace_shift_normalize(g: np.ndarray, report: SpectrumReport) -> tuple[np.ndarray, float]:
    """Remove the midpoint of a two-eigenvalue spectrum: result has ``{+-lam}``."""
    if report.n_distinct != 2:
        raise InputError("trace shift needs exactly two distinct eigenvalues")
    offset = (report.eigenvalues[0] + report.eigenvalues[1]) / 2
    return g - offset * np.eye(g.shape[0]), float(offset)


def _two_term(lam: float) -> tuple[list[float], list[float]]:
    s = math.pi / (4 * lam)
    return [s, -s], [lam, -lam]


def _closed_form(cls, lams, theta: float | None):
    if cls.kind == "two_symmetric":
        return _two_term(cls.lam), "two_symmetric"
    if cls.kind == "two_general":
        return _two_term((lams[1] - lams[0]) / 2), "two_general"
    if cls.kind == "three_symmetric":
        rule = closed_form_l3(DEFAULT_L3_THETA if theta is None else theta)
        lam = cls.lam
        return ([s / lam for s in rule.shifts], [w * lam for w in rule.weights]), "closed_form_l3"
    return None, None


def synthesize_shift_rule(
    spectrum,
    strategy: str = "grid",
    max_shifts: int | None = None,
    seed: int | None = None,
    theta: float | None = None,
) -> ShiftRule:
    """Shift rule for a generator with the given distinct eigenvalues.

    Spectra of two eigenvalues, or three of the form ``{0, +-lam}``, always get
    the closed-form rules. Otherwise ``grid`` adds symmetric pairs
    ``+-m pi / (2 Lam (L - 1))`` and ``random`` adds seeded uniform shifts,
    one at a time, until the system is consistent. ``closed_form`` refuses
    other spectra.
    """
    if strategy not in ("closed_form", "grid", "random"):
        raise InputError(f"unknown strategy {strategy!r}")
    lams = _distinct(spectrum)
    L = len(lams)
    if L < 2:
        raise InputError("shift rules need at least two distinct eigenvalues")
    cls = classify_eigenvalues(lams)
    closed, method = _closed_form(cls, lams, theta)
    if closed is not None:
        thetas, weights = closed
    elif strategy == "closed_form":
        raise SynthesisError(f"no closed-form rule for spectrum class {cls}")
    else:
        max_shifts = L * L if max_shifts is None else int(max_shifts)
        big = float(np.abs(lams).max())
        thetas, weights = None, None
        if strategy == "grid":
            step = math.pi / (2 * big * (L - 1))
            for m in range(1, max_shifts // 2 + 1):
                trial = np.array([s * j * step for j in range(1, m + 1) for s in (1, -1)])
                c = _consistent(trial, lams)
                if c is not None:
                    thetas, weights = trial, c
                    break
        else:
            rng = np.random.default_rng(seed)
            trial = np.empty(0)
            for _ in range(max_shifts):
                trial = np.append(trial, rng.uniform(-math.pi / big, math.pi / big))
                c = _consistent(trial, lams)
                if c is not None:
                    thetas, weights = trial, c
                    break
        if thetas is None:
            raise SynthesisError(
                f"no consistent {strategy} rule with at most {max_shifts} shifts for spectrum {lams.tolist()}"
            )
        method = strategy
    residual = system_residual(lams, thetas, weights)
    terms = tuple(ShiftTerm(float(t), float(c)) for t, c in zip(thetas, weights))
    return ShiftRule(terms, "same_generator", tuple(float(v) for v in lams), method, residual)


def expansion_matrix(g: np.ndarray, spectrum, theta: float) -> np.ndarray:
    """``sum_k a_k(theta) (iG)^k`` as a dense matrix."""
    a = vandermonde_coefficients(spectrum, theta)
    out = np.zeros_like(g, dtype=complex)
    power = np.eye(g.shape[0], dtype=complex)
    ig = 1j * g
    for ak in a:
        out += ak * power
        power = power @ ig
    return out


__all__ = [
    "L3Rule",
    "ShiftRule",
    "ShiftTerm",
    "closed_form_l3",
    "expansion_matrix",
    "is_negation_symmetric",
    "synthesis_system",
    "synthesize_shift_rule",
    "system_residual",
    "trace_shift_normalize",
    "vandermonde_coefficients",
]
