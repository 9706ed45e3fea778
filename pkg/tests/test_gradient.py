import math

import numpy as np
import pytest
from conftest import dense_parts, random_context
from oracles import gradient_oracle, kron_pauli, with_spectrum

from shiftrule.decompose import csa_commutative, projector_decomposition
from shiftrule.errors import InputError, NumericalError
from shiftrule.gradient import (
    METHODS,
    benchmark_counts,
    decomposition_gradient,
    exact_gradient,
    finite_difference_gradient,
    gradient,
    involutory_pair,
    lcu_gradient,
    rule_gradient,
)
from shiftrule.operators import PauliSum, fsim_phase_part, fsim_swap_part, hermitize, build_singlet, matchgate, transmon
from shiftrule.operators.library import three_qubit_example
from shiftrule.psr_poly import synthesize_shift_rule
from shiftrule.simulate import GradientContext


def cos_context(tau):
    return GradientContext.make(PauliSum.from_terms(1, [(1.0, "Z0")]), PauliSum.from_terms(1, [(1.0, "X0")]), tau)


@pytest.mark.parametrize("tau", [0.0, 0.3, -1.2, 2.0])
def test_cos_example_exact(tau):
    ctx = cos_context(tau)
    assert ctx.energy() == pytest.approx(math.cos(2 * tau), abs=1e-13)
    assert exact_gradient(ctx) == pytest.approx(-2 * math.sin(2 * tau), abs=1e-13)


@pytest.mark.parametrize("tau", [0.3, -1.2])
def test_cos_example_fd(tau):
    ctx = cos_context(tau)
    want = -2 * math.sin(2 * tau)
    plain = abs(finite_difference_gradient(ctx, 1e-3) - want)
    rich = abs(finite_difference_gradient(ctx, 1e-3, richardson=True) - want)
    assert plain < 1e-5
    assert rich < plain / 100
    assert finite_difference_gradient(ctx) == pytest.approx(want, abs=1e-8)


def test_fd_rejects_bad_step():
    with pytest.raises(InputError):
        finite_difference_gradient(cos_context(0.1), -1.0)


@pytest.mark.parametrize("method", ["psr", "poly", "projector", "csa", "lcu", "ncsa"])
def test_cos_example_methods(method):
    ctx = cos_context(0.4)
    rep = gradient(ctx, method, seed=0, max_terms=1)
    assert rep.value == pytest.approx(-2 * math.sin(0.8), abs=1e-9)


def test_exact_matches_independent_oracle(rng):
    for _ in range(5):
        ctx = random_context(with_spectrum([-1, -0.2, 0.4, 1.3], rng), rng)
        assert exact_gradient(ctx) == pytest.approx(gradient_oracle(*dense_parts(ctx)), abs=1e-12)


@pytest.mark.parametrize(
    "name,G,counts",
    [
        ("transmon", transmon(1.0, 0.5), {"csa": 4, "lcu": 6, "projector": 8}),
        ("matchgate", matchgate([0.7, -0.4, 0.3, 1.1, -0.6, 0.9]), {"csa": 4, "lcu": 12}),
        ("fsim_theta", fsim_swap_part(), {"poly": 4, "psr": 4, "csa": 4}),
        ("fsim_phi", fsim_phase_part(), {"poly": 2, "psr": 2}),
    ],
)
def test_method_counts_and_agreement(rng, name, G, counts):
    ctx = random_context(G, rng)
    exact = exact_gradient(ctx)
    for method, n in counts.items():
        rep = gradient(ctx, method, seed=0)
        assert rep.n_expectations == n, method
        assert rep.value == pytest.approx(exact, abs=1e-9), method


def test_singlet_lcu_more_than_ncsa(rng):
    g = hermitize(build_singlet("single", (0, 1))).op
    ctx = random_context(g, rng, 1, 1)
    exact = exact_gradient(ctx)
    lcu = gradient(ctx, "lcu")
    ncsa = gradient(ctx, "ncsa", seed=0, max_terms=2)
    assert lcu.n_expectations == 8
    assert ncsa.n_expectations == 4
    for rep in (lcu, ncsa):
        assert rep.value == pytest.approx(exact, abs=1e-8)


def test_three_qubit_ncsa(rng):
    ctx = random_context(three_qubit_example(), rng)
    rep = gradient(ctx, "ncsa", seed=0, max_terms=2)
    assert rep.n_expectations == 4
    assert rep.value == pytest.approx(exact_gradient(ctx), abs=1e-8)


def test_rule_spectrum_mismatch(rng):
    ctx = random_context(with_spectrum([-1, -1, 1, 1], rng), rng)
    with pytest.raises(InputError):
        rule_gradient(ctx, synthesize_shift_rule([-2, 2]))


def test_bad_decomposition_rejected(rng):
    ctx = random_context(with_spectrum([-1, 0, 1, 2], rng), rng)
    wrong = projector_decomposition(with_spectrum([-1, 0, 1, 2], rng))
    with pytest.raises(NumericalError):
        decomposition_gradient(ctx, wrong)


def test_count_is_distinct_circuits(rng):
    ctx = random_context(transmon(1.0, 0.5), rng)
    rep = gradient(ctx, "csa", seed=0)
    keys = {(round(t["theta"], 12), t["term"]) for t in rep.terms}
    assert rep.n_expectations == len(keys)


def test_lcu_pauli_mismatch(rng):
    ctx = random_context(transmon(1.0, 0.5), rng)
    with pytest.raises(InputError):
        lcu_gradient(ctx, PauliSum.from_terms(2, [(1.0, "Z0")]))


def test_lcu_dense_generator(rng):
    ctx = random_context(with_spectrum([-1, 0, 0.5, 2], rng), rng)
    assert lcu_gradient(ctx).value == pytest.approx(exact_gradient(ctx), abs=1e-10)


def test_benchmark_rows(rng):
    ctx = random_context(transmon(0.3, -0.8), rng)
    rows = benchmark_counts(ctx, METHODS, seed=0)
    assert [r["method"] for r in rows] == list(METHODS)
    for r in rows:
        if r.get("failure"):
            continue
        tol = 1e-6 if r["method"] == "fd" else 1e-9
        assert r["error"] < tol, r


def test_benchmark_records_failures(rng):
    ctx = random_context(transmon(0.3, -0.8), rng)
    rows = benchmark_counts(ctx, ("psr",))
    assert rows[0]["failure"] and rows[0]["value"] is None


def test_unknown_method(rng):
    with pytest.raises(InputError):
        gradient(random_context(transmon(1, 1), rng), "magic")


@pytest.mark.parametrize("theta", [math.pi / 4, 0.3, 1.1])
def test_involutory_pair(rng, theta):
    cp, cm = involutory_pair(theta)
    ctx = random_context(kron_pauli("X0 Z1", 2), rng)
    value = cp * ctx.energy(ctx.tau + theta) + cm * ctx.energy(ctx.tau - theta)
    assert value == pytest.approx(exact_gradient(ctx), abs=1e-10)


def test_involutory_pair_singular():
    with pytest.raises(InputError):
        involutory_pair(math.pi / 2)


def test_precomputed_decomposition(rng):
    g = transmon(1.0, 0.5)
    d = csa_commutative(g)
    ctx = random_context(g, rng)
    rep = gradient(ctx, "csa", decomposition=d)
    assert rep.value == pytest.approx(exact_gradient(ctx), abs=1e-10)
