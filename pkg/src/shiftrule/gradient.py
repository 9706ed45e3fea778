"""Gradients of ``E(tau)`` by every available method, with expectation counts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .decompose import Decomposition, csa_commutative, csa_noncommutative, projector_decomposition
from .errors import InputError, NumericalError
from .operators.pauli import PauliSum
from .psr_poly import ShiftRule, synthesize_shift_rule
from .simulate import CSAFrame, ExpectationCache, GradientContext
from .spectral import eigendecompose

METHODS = ("exact", "fd", "poly", "psr", "projector", "csa", "ncsa", "lcu")
DECOMP_TOL = 1e-6


@dataclass
class GradientReport:
    method: str
    value: float
    n_expectations: int | None
    deviation_from_exact: float | None = None
    terms: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "value": self.value,
            "n_expectations": self.n_expectations,
            "error": self.deviation_from_exact,
        }


def _dense_circuit(circuit) -> np.ndarray:
    u = np.eye(1 << circuit.n_qubits, dtype=complex)
    for g in circuit.gates:
        u = expm(1j * g.amplitude * g.generator) @ u
    return u


def exact_gradient(ctx: GradientContext) -> float:
    """``i <phi| [U2^dag H U2, G] |phi>`` from dense matrix exponentials."""
    u1 = _dense_circuit(ctx.U1)
    u2 = _dense_circuit(ctx.U2)
    dim = u1.shape[0]
    zero = np.zeros(dim, dtype=complex)
    zero[0] = 1.0
    phi = expm(1j * ctx.tau * ctx.G) @ (u1 @ zero)
    ht = u2.conj().T @ ctx.H @ u2
    comm = ht @ ctx.G - ctx.G @ ht
    return float((1j * np.vdot(phi, comm @ phi)).real)


def finite_difference_gradient(ctx: GradientContext, h: float | None = None, richardson: bool = False) -> float:
    """Central difference; ``richardson`` combines steps ``h`` and ``h/2``."""
    if h is None:
        h = 1e-5 * max(1.0, abs(ctx.tau))
    if h <= 0:
        raise InputError("h must be positive")

    def central(step):
        return (ctx.energy(ctx.tau + step) - ctx.energy(ctx.tau - step)) / (2 * step)

    if not richardson:
        return central(h)
    return (4 * central(h / 2) - central(h)) / 3


def _check_rule_spectrum(ctx: GradientContext, rule: ShiftRule):
    if rule.spectrum is None:
        return
    lams = eigendecompose(ctx.G).eigenvalues
    if len(lams) != len(rule.spectrum) or not np.allclose(lams, rule.spectrum, atol=1e-8 * max(1.0, max(map(abs, lams)))):
        raise InputError(f"rule was built for spectrum {list(rule.spectrum)}, generator has {list(lams)}")


def rule_gradient(ctx: GradientContext, rule: ShiftRule, method: str = "poly") -> GradientReport:
    """``sum C_n E(tau + theta_n)`` for a same-generator rule."""
    if rule.mode != "same_generator":
        raise InputError("rule_gradient needs a same_generator rule")
    _check_rule_spectrum(ctx, rule)
    cache = ExpectationCache(ctx)
    value = 0.0
    parts = []
    for t in rule.terms:
        e = cache.shifted(t.theta)
        value += t.c * e
        parts.append({"theta": t.theta, "c": t.c, "value": e})
    return GradientReport(method, float(value), len(cache), terms=parts)


def term_rule(tag: str) -> ShiftRule:
    """Closed-form rule for a normalized term with the given spectrum tag."""
    spectra = {"pm": (-1.0, 1.0), "0pm": (-1.0, 0.0, 1.0), "0l": (0.0, 1.0)}
    if tag not in spectra:
        raise InputError(f"unknown spectrum tag {tag!r}")
    return synthesize_shift_rule(spectra[tag], strategy="closed_form")


def frame_of(decomp: Decomposition) -> CSAFrame | None:
    if decomp.kind != "csa_commutative" or decomp.frame is None:
        return None
    return CSAFrame(decomp.frame, decomp.offset, tuple(t.d for t in decomp.terms), tuple(t.mask for t in decomp.terms))


def decomposition_gradient(ctx: GradientContext, decomp: Decomposition, method: str | None = None) -> GradientReport:
    """``sum_n d_n * rule_n`` where each rule shifts with ``exp(i theta O_n)``."""
    scale = max(1.0, float(np.linalg.norm(ctx.G)))
    residual = decomp.residual_against(ctx.G)
    if residual > DECOMP_TOL * scale:
        raise NumericalError(f"decomposition does not reproduce the generator (residual {residual:.3g})")
    frame = frame_of(decomp)
    cache = ExpectationCache(ctx)
    value = 0.0
    parts = []
    for n, term in enumerate(decomp.terms):
        for t in term_rule(term.tag).terms:
            e = cache.shifted(t.theta, term.op, frame, n if frame is not None else None)
            value += term.d * t.c * e
            parts.append({"term": n, "theta": t.theta, "c": term.d * t.c, "value": e})
    return GradientReport(method or decomp.kind, float(value), len(cache), terms=parts)


def lcu_gradient(ctx: GradientContext, pauli: PauliSum | None = None) -> GradientReport:
    """``1/2 sum_k g_k [plus_k - minus_k]`` with ``W_k = i P_k``; identity terms drop out."""
    pauli = pauli if pauli is not None else ctx.g_pauli
    if pauli is None:
        pauli = PauliSum.from_dense(ctx.G)
    if np.linalg.norm(pauli.to_dense() - ctx.G) > 1e-9 * max(1.0, float(np.linalg.norm(ctx.G))):
        raise InputError("Pauli form does not match the generator")
    cache = ExpectationCache(ctx)
    value = 0.0
    parts = []
    for p, g in pauli:
        if p.is_identity():
            continue
        plus = cache.lcu(p, 1)
        minus = cache.lcu(p, -1)
        value += 0.5 * g.real * (plus - minus)
        parts.append({"pauli": p.label, "c": g.real, "plus": plus, "minus": minus})
    return GradientReport("lcu", float(value), len(cache), terms=parts)


def _spectrum_rule(ctx: GradientContext, strategy: str, max_shifts, seed) -> ShiftRule:
    lams = eigendecompose(ctx.G).eigenvalues
    return synthesize_shift_rule(lams, strategy=strategy, max_shifts=max_shifts, seed=seed)


def gradient(ctx: GradientContext, method: str, **opts) -> GradientReport:
    """Dispatch on ``method`` (one of :data:`METHODS`).

    Options: ``strategy``, ``max_shifts``, ``seed``, ``max_terms`` (K' for
    ``ncsa``), ``h``, ``decomposition`` (precomputed, for the decomposition
    methods).
    """
    seed = opts.get("seed")
    if method == "exact":
        return GradientReport("exact", exact_gradient(ctx), None)
    if method == "fd":
        return GradientReport("fd", finite_difference_gradient(ctx, opts.get("h")), 2)
    if method == "poly":
        rule = _spectrum_rule(ctx, opts.get("strategy") or "grid", opts.get("max_shifts"), seed)
        return rule_gradient(ctx, rule, "poly")
    if method == "psr":
        return rule_gradient(ctx, _spectrum_rule(ctx, "closed_form", None, None), "psr")
    if method == "lcu":
        return lcu_gradient(ctx)
    decomp = opts.get("decomposition")
    if decomp is None:
        decomp = decompose_for(method, ctx.G, seed=seed, max_terms=opts.get("max_terms"))
    return decomposition_gradient(ctx, decomp, method)


def decompose_for(method: str, g, seed=None, max_terms=None) -> Decomposition:
    """Decomposition used by the ``projector``, ``csa`` and ``ncsa`` gradient methods."""
    if method == "projector":
        return projector_decomposition(g)
    if method == "csa":
        return csa_commutative(g, seed=seed)
    if method == "ncsa":
        return csa_noncommutative(g, max_terms or 2, seed=seed)
    raise InputError(f"unknown method {method!r}; expected one of {METHODS}")


def benchmark_counts(ctx: GradientContext, methods=METHODS, **opts) -> list[dict]:
    """One row per method: value, expectation count and deviation from the exact gradient."""
    exact = exact_gradient(ctx)
    rows = []
    for m in methods:
        try:
            rep = gradient(ctx, m, **opts)
        except (InputError, NumericalError) as exc:
            rows.append({"method": m, "value": None, "n_expectations": None, "error": None, "failure": str(exc)})
            continue
        rep.deviation_from_exact = abs(rep.value - exact)
        rows.append(rep.to_dict())
    return rows


def involutory_pair(theta: float) -> tuple[float, float]:
    """Weights ``C_{+-}`` of the two-shift rule for a ``{+-1}`` operator."""
    s = math.sin(2 * theta)
    if abs(s) < 1e-12:
        raise InputError("sin(2 theta) vanishes")
    return 1 / s, -1 / s
