"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion NN: PASS|FAIL`` line (also collected in
the terminal summary) and then asserts the verdict at the stated tolerance.
"""

import math

import numpy as np
import pytest
from conftest import ACCEPTANCE_LINES, dense_parts, random_context
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from oracles import gradient_oracle, kron_pauli, random_unitary, with_spectrum

from shiftrule.decompose import (
    best_case_construct,
    csa_commutative,
    csa_noncommutative,
    projector_decomposition,
    singlet_On_split,
)
from shiftrule.fixtures import SINGLET_FIXTURES, fixture_names
from shiftrule.gradient import (
    decomposition_gradient,
    exact_gradient,
    finite_difference_gradient,
    gradient,
    lcu_gradient,
    rule_gradient,
)
from shiftrule.operators import build_singlet, fsim_phase_part, fsim_swap_part, hermitize, jordan_wigner, matchgate, transmon
from shiftrule.operators.library import kappa_single, three_qubit_example
from shiftrule.problem import load_hermitian
from shiftrule.psr_poly import closed_form_l3, synthesize_shift_rule
from shiftrule.spectral import classify_spectrum, eigendecompose, is_negation_symmetric
from shiftrule.vqe import run_vqe

pytestmark = pytest.mark.acceptance

SQ2 = math.sqrt(2)


def verdict(number, title, checks):
    """Record and assert a criterion; ``checks`` maps a description to a bool."""
    failed = [name for name, ok in checks.items() if not ok]
    status = "PASS" if not failed else "FAIL"
    line = f"criterion {number:02d}: {status}  {title}"
    if failed:
        line += "  [failed: " + "; ".join(failed) + "]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failed, line


def close(a, b, tol):
    return abs(a - b) <= tol


def distinct_with_mult(op, tol=1e-8):
    r = eigendecompose(op, rtol=tol)
    return list(zip(np.round(r.eigenvalues, 9), r.multiplicities))


# 1 ---------------------------------------------------------------------------


def test_criterion_01_two_eigenvalue_rule():
    rng = np.random.default_rng(101)
    checks = {}
    worst = 0.0
    for k in range(20):
        lam = float(rng.uniform(0.2, 3.0))
        ctx = random_context(with_spectrum([-lam, -lam, lam, lam], rng), rng)
        rule = synthesize_shift_rule([-lam, lam])
        s = math.pi / (4 * lam)
        checks[f"shifts +-pi/(4 lam) #{k}"] = np.allclose(sorted(rule.shifts), [-s, s], atol=1e-14)
        worst = max(worst, abs(rule_gradient(ctx, rule).value - exact_gradient(ctx)))
    checks[f"max deviation {worst:.1e} <= 1e-10"] = worst <= 1e-10
    verdict(1, "two-eigenvalue rule with s = pi/(4 lam)", checks)


# 2 ---------------------------------------------------------------------------


def test_criterion_02_three_eigenvalue_closed_form():
    rng = np.random.default_rng(202)
    generators = [hermitize(kappa_single(n, p, r)).op for n, p, r in [(2, 0, 1), (3, 0, 2), (4, 1, 3)]]
    thetas = [0.2, 0.5, 0.9, 1.2, 1.45]
    checks = {}
    worst = 0.0
    for gi, g in enumerate(generators):
        checks[f"spectrum {{0,+-1}} gen {gi}"] = np.allclose(eigendecompose(g).eigenvalues, [-1, 0, 1])
        ctx = random_context(g, rng, 1, 1)
        exact = exact_gradient(ctx)
        for theta in thetas:
            l3 = closed_form_l3(theta)
            d1 = ctx.energy(ctx.tau + theta) - ctx.energy(ctx.tau - theta)
            d2 = ctx.energy(ctx.tau + 2 * theta) - ctx.energy(ctx.tau - 2 * theta)
            worst = max(worst, abs(l3.beta * (l3.alpha * d1 - d2) - exact))
            rep = rule_gradient(ctx, synthesize_shift_rule([-1, 0, 1], strategy="closed_form", theta=theta))
            checks[f"4 expectations gen {gi} theta {theta}"] = rep.n_expectations == 4
            worst = max(worst, abs(rep.value - exact))
    checks[f"max deviation {worst:.1e} <= 1e-9"] = worst <= 1e-9
    verdict(2, "three-eigenvalue closed form, 4 expectations", checks)


# 3 ---------------------------------------------------------------------------

SINGLET_SPECTRA = {
    "single": {0: 6, 1: 4, -1: 4, 2: 1, -2: 1},
    "d_sen0": {0: 14, 1: 1, -1: 1},
    "d_sen2_iiab": {0: 52, 1: 4, -1: 4, SQ2: 2, -SQ2: 2},
    "d_sen2_ijaa": {0: 52, 1: 4, -1: 4, SQ2: 2, -SQ2: 2},
    "d_sen4": {0: 186, 1: 16, -1: 16, SQ2: 16, -SQ2: 16, 2: 2, -2: 2, 2 * SQ2: 1, -2 * SQ2: 1},
}
SINGLET_PAULI_COUNTS = {"single": 4, "d_sen0": 8, "d_sen2_iiab": 16, "d_sen2_ijaa": 16, "d_sen4": 32}


def test_criterion_03_singlet_spectra():
    checks = {}
    for name, (kind, idx) in SINGLET_FIXTURES.items():
        t = build_singlet(kind, idx)
        found = distinct_with_mult(hermitize(t).op)
        want = sorted((round(v, 9), m) for v, m in SINGLET_SPECTRA[kind].items())
        checks[f"{name} spectrum {found}"] = len(found) == len(want) and all(
            close(a, b, 1e-8) and ma == mb for (a, ma), (b, mb) in zip(found, want)
        )
        n_pauli = len(jordan_wigner(t))
        checks[f"{name} Pauli terms {n_pauli} == {SINGLET_PAULI_COUNTS[kind]}"] = n_pauli == SINGLET_PAULI_COUNTS[kind]
    verdict(3, "singlet spectra and Pauli counts", checks)


# 4 ---------------------------------------------------------------------------

SPLIT_LABELS = {
    "single": [(1.0, "0pm"), (2.0, "0pm")],
    "d_sen2_iiab": [(1.0, "0pm"), (SQ2, "0pm")],
    "d_sen2_ijaa": [(1.0, "0pm"), (SQ2, "0pm")],
    "d_sen4": [(1.0, "0pm"), (SQ2, "0pm"), (2.0, "0pm"), (2 * SQ2, "0pm")],
}


def test_criterion_04_singlet_splits():
    checks = {}
    for kind, labels in SPLIT_LABELS.items():
        idx = next(i for k, i in SINGLET_FIXTURES.values() if k == kind)
        d = singlet_On_split(kind, idx)
        checks[f"{kind} split residual {d.residual:.1e} <= 1e-12"] = d.residual <= 1e-12
        got = sorted((round(abs(t.d), 9), t.tag) for t in d.terms)
        want = sorted((round(v, 9), tag) for v, tag in labels)
        checks[f"{kind} term spectra {got}"] = got == want
        for n, t in enumerate(d.terms):
            ev = np.linalg.eigvalsh(t.op)
            checks[f"{kind} term {n} spectrum exactly {{0,+-1}}"] = all(
                min(abs(e - x) for x in (-1, 0, 1)) < 1e-10 for e in ev
            ) and np.any(np.abs(ev + 1) < 1e-10) and np.any(np.abs(ev - 1) < 1e-10)
    rng = np.random.default_rng(404)
    kind, idx = SINGLET_FIXTURES["singlet_ijab"]
    g = hermitize(build_singlet(kind, idx)).op
    ctx = random_context(g, rng, 1, 1)
    rep = decomposition_gradient(ctx, singlet_On_split(kind, idx))
    dev = abs(rep.value - exact_gradient(ctx))
    checks[f"sen4 gradient uses {rep.n_expectations} == 16"] = rep.n_expectations == 16
    checks[f"sen4 gradient deviation {dev:.1e} <= 1e-8"] = dev <= 1e-8
    verdict(4, "singlet O_n splits and the seniority-4 gradient", checks)


# 5 ---------------------------------------------------------------------------


def test_criterion_05_two_qubit_counts():
    rng = np.random.default_rng(505)
    checks = {}
    worst = 0.0
    for k in range(5):
        b, c = rng.uniform(-2, 2, size=2)
        cases = [
            ("transmon", transmon(b, c), "csa", 4),
            ("matchgate", matchgate(rng.uniform(-2, 2, size=6)), "csa", 4),
            ("fsim d/dtheta", fsim_swap_part(), "poly", 4),
            ("fsim d/dphi", fsim_phase_part(), "poly", 2),
        ]
        for name, g, method, count in cases:
            tau = rng.uniform(-2, 2)
            ctx = random_context(g, rng, tau=tau)
            rep = gradient(ctx, method, seed=0)
            checks[f"{name} #{k} uses {rep.n_expectations} == {count}"] = rep.n_expectations == count
            worst = max(worst, abs(rep.value - exact_gradient(ctx)))
    checks[f"max deviation {worst:.1e} <= 1e-9"] = worst <= 1e-9
    verdict(5, "transmon, match-gate and fSim expectation counts", checks)


# 6 ---------------------------------------------------------------------------

THREE_QUBIT_EXPECTED = [1.250, 0.658, 0.045, 0.045, 0.014, 0.014]


def test_criterion_06_three_qubit_example():
    g = three_qubit_example()
    checks = {}
    d = csa_commutative(g)
    coeffs = sorted((abs(t.d) for t in d.terms), reverse=True)
    checks[f"commutative K={d.K} == 6"] = d.K == 6
    checks[f"|c_n| {np.round(coeffs, 4).tolist()} match {THREE_QUBIT_EXPECTED} within 1e-3"] = len(coeffs) == 6 and all(
        close(a, b, 1e-3) for a, b in zip(coeffs, THREE_QUBIT_EXPECTED)
    )
    nd = csa_noncommutative(g, 2, seed=0)
    checks[f"non-commutative K'=2 residual {nd.residual:.1e} < 1e-6"] = nd.residual < 1e-6
    ctx = random_context(g, np.random.default_rng(606))
    rep = decomposition_gradient(ctx, nd)
    dev = abs(rep.value - exact_gradient(ctx))
    checks[f"non-commutative gradient uses {rep.n_expectations} == 4"] = rep.n_expectations == 4
    checks[f"non-commutative gradient deviation {dev:.1e} <= 1e-8"] = dev <= 1e-8
    verdict(6, "three-qubit example", checks)


# 7 ---------------------------------------------------------------------------


def test_criterion_07_diagonal_example():
    ve = np.diag([3.0, -3.0, -1.0, 1.0])
    p = [np.diag(np.eye(4)[j]) for j in range(4)]
    written = [
        np.diag([3.0, -3, 0, 0]) + np.diag([0.0, 0, -1, 1]),
        2 * np.diag([1.0, -1, -1, 1]) + np.diag([1.0, -1, 1, -1]),
        3 * (p[0] - p[1]) + (p[3] - p[2]),
    ]
    checks = {f"written expansion {k + 1} exact": np.array_equal(m, ve) for k, m in enumerate(written)}
    proj = projector_decomposition(ve)
    checks["projector decomposition exact"] = proj.residual < 1e-14 and proj.K == 2
    d = csa_commutative(ve)
    checks["commutative CSA exact"] = d.residual < 1e-14
    coeffs = sorted(abs(t.d) for t in d.terms)
    checks[f"commutative CSA K={d.K} coefficients {coeffs}"] = d.K == 2 and np.allclose(coeffs, [1, 2], atol=1e-12)
    z = 2 * kron_pauli("Z0 Z1", 2) + kron_pauli("Z1", 2)
    checks["2 Z0Z1 + Z1 equals the matrix"] = np.allclose(z, ve)
    verdict(7, "diagonal example decompositions", checks)


# 8 ---------------------------------------------------------------------------

BEST_CASE = [
    (1, ["Z0"], 2),
    (1, ["Z0 Z1 Z2"], 3),
    (2, ["Z0", "Z1"], 2),
    (2, ["Z0 Z1", "Z2"], 3),
    (3, ["Z0", "Z1", "Z2"], 3),
    (3, ["Z0 Z1", "Z1 Z2", "Z3"], 4),
]


def test_criterion_08_best_case_scaling():
    rng = np.random.default_rng(808)
    checks = {}
    for k, masks, n in BEST_CASE:
        d = rng.uniform(0.3, 2.0, size=k) * rng.choice([-1, 1], size=k)
        g, _ = best_case_construct(d, masks, n, seed=int(rng.integers(1 << 31)))
        L = eigendecompose(g).n_distinct
        dec = csa_commutative(g, seed=0)
        got = sorted(abs(t.d) for t in dec.terms)
        checks[f"K={k} on {n} qubits: found {dec.K} terms, L={L}"] = dec.K == k and L == 2**k
        checks[f"K={k} on {n} qubits coefficients"] = len(got) == k and np.allclose(got, sorted(np.abs(d)), atol=1e-8)
    verdict(8, "best-case K = log2(L) recovery", checks)


# 9 ---------------------------------------------------------------------------

LCU_TOTALS = {"singlet_ia": 8, "singlet_iiaa": 16, "singlet_iiab": 32, "singlet_ijaa": 32, "singlet_ijab": 64}


def test_criterion_09_lcu_baseline():
    rng = np.random.default_rng(909)
    checks = {}
    worst = 0.0
    for name in fixture_names():
        if name.startswith("problem_"):
            continue
        g, _ = load_hermitian(f"fixture:{name}")
        ctx = random_context(g, rng, 1, 1)
        rep = lcu_gradient(ctx)
        worst = max(worst, abs(rep.value - exact_gradient(ctx)))
        if name not in LCU_TOTALS:
            continue
        checks[f"{name} LCU uses {rep.n_expectations} == {LCU_TOTALS[name]}"] = rep.n_expectations == LCU_TOTALS[name]
        kind, idx = SINGLET_FIXTURES[name]
        counts = {"closed_form": decomposition_gradient(ctx, singlet_On_split(kind, idx)).n_expectations}
        if g.n_qubits <= 4:
            counts["ncsa"] = decomposition_gradient(ctx, csa_noncommutative(g, 2, seed=0)).n_expectations
        best = min(counts.values())
        checks[f"{name} LCU {rep.n_expectations} > decomposition {counts}"] = rep.n_expectations > best
    checks[f"max deviation {worst:.1e} <= 1e-9"] = worst <= 1e-9
    verdict(9, "LCU baseline counts", checks)


# 10 --------------------------------------------------------------------------


def test_criterion_10_synthesis_bound():
    rng = np.random.default_rng(1010)
    checks = {}
    worst = 0.0
    for k in range(20):
        L = int(rng.integers(2, 6))
        if k % 2:
            half = np.sort(rng.choice(np.arange(1, 13), size=L // 2, replace=False)) / 4
            lams = sorted(set(-half) | set(half) | ({0.0} if L % 2 else set()))
        else:
            lams = sorted(rng.choice(np.arange(-12, 13), size=L, replace=False) / 4)
        rule = synthesize_shift_rule(lams, strategy="grid")
        checks[f"spectrum {lams}: {len(rule)} <= L^2"] = len(rule) <= L * L
        if is_negation_symmetric(lams):
            shifts = sorted(rule.shifts)
            paired = np.allclose(shifts, [-s for s in reversed(shifts)], atol=1e-12)
            checks[f"spectrum {lams}: +- pairs, {len(rule)} <= {math.ceil(L * L / 2) + L}"] = (
                paired and len(rule) <= math.ceil(L * L / 2) + L
            )
        eigs = [lams[j % L] for j in range(8)]
        ctx = random_context(with_spectrum(eigs, rng), rng, 1, 1)
        worst = max(worst, abs(rule_gradient(ctx, rule).value - gradient_oracle(*dense_parts(ctx))))
    checks[f"max deviation {worst:.1e} <= 1e-8"] = worst <= 1e-8
    verdict(10, "polynomial synthesis bound", checks)


# 11 --------------------------------------------------------------------------

_TRIANGLE = {"runs": 0, "worst": 0.0, "pairs": None, "failures": []}


@st.composite
def triangle_contexts(draw):
    n = draw(st.integers(1, 4))
    dim = 1 << n
    L = draw(st.integers(2, min(5, dim)))
    lams = sorted(draw(st.lists(st.integers(-12, 12), min_size=L, max_size=L, unique=True)))
    lams = [x / 4 for x in lams]
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    eigs = [lams[j % L] for j in range(dim)]
    rng.shuffle(eigs)
    u = random_unitary(dim, rng)
    g = u @ np.diag(eigs) @ u.conj().T
    return random_context(g, rng, 1, 1), lams


@settings(max_examples=50, deadline=None, derandomize=True, suppress_health_check=list(HealthCheck))
@given(triangle_contexts())
def _triangle_case(case):
    ctx, lams = case
    values = {"exact": exact_gradient(ctx), "fd": finite_difference_gradient(ctx, 1e-5)}
    methods = ["poly", "projector", "csa", "lcu"]
    if classify_spectrum(eigendecompose(ctx.G)).kind != "general":
        methods.append("psr")
    for m in methods:
        values[m] = gradient(ctx, m, seed=0).value
    names = sorted(values)
    spread = max(abs(values[a] - values[b]) for a in names for b in names)
    _TRIANGLE["runs"] += 1
    _TRIANGLE["worst"] = max(_TRIANGLE["worst"], spread)
    if spread > 1e-6:
        _TRIANGLE["failures"].append((lams, values))


def test_criterion_11_oracle_triangle():
    _triangle_case()
    checks = {
        f"{_TRIANGLE['runs']} contexts run": _TRIANGLE["runs"] >= 50,
        f"max pairwise spread {_TRIANGLE['worst']:.1e} <= 1e-6": _TRIANGLE["worst"] <= 1e-6,
    }
    verdict(11, "exact / finite difference / rules agree", checks)


# 12 --------------------------------------------------------------------------


def test_criterion_12_vqe():
    a = run_vqe(2, seed=0, method="exact", iterations=500)
    b = run_vqe(2, seed=0, method="csa", iterations=500)
    n = min(len(a.energies), len(b.energies))
    diff = float(np.max(np.abs(np.array(a.energies[:n]) - np.array(b.energies[:n]))))
    checks = {
        f"exact gap {a.final_gap:.1e} < 1e-6 in {len(a.energies) - 1} iterations": a.converged,
        f"csa gap {b.final_gap:.1e} < 1e-6 in {len(b.energies) - 1} iterations": b.converged,
        "same trace length": len(a.energies) == len(b.energies),
        f"trace difference {diff:.1e} <= 1e-8": diff <= 1e-8,
    }
    verdict(12, "VQE demo with exact and CSA gradients", checks)
