"""Command-line interface: ``shiftrule {analyze,rule,decompose,grad,bench,demo-vqe}``.

Every command prints one JSON document. Exit code 0 on success, 1 for input
errors, 2 for numerical failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .decompose import csa_commutative, csa_noncommutative, projector_decomposition, singlet_On_split
from .errors import ConvergenceError, InputError, NumericalError
from .gradient import METHODS, benchmark_counts, exact_gradient, gradient
from .problem import load_hermitian, load_problem
from .psr_poly import synthesize_shift_rule
from .spectral import CLUSTER_RTOL, classify_spectrum, eigendecompose
from .vqe import run_vqe

DECOMPOSE_METHODS = ("projector", "csa", "ncsa", "closed_form")


def _default_seed() -> int:
    env = os.environ.get("PSR_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"PSR_SEED must be an integer, got {env!r}") from None


def _emit(data) -> None:
    sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")


def _generator_from(args):
    """Hermitian generator from an operator file, or from gate ``--gate-index`` of a problem."""
    from .problem import read_json

    data, _ = read_json(args.path)
    if isinstance(data, dict) and ("circuit" in data or "G" in data):
        contexts = load_problem(args.path, getattr(args, "gate_index", None)).contexts
        return contexts[0][2].G
    op, _ = load_hermitian(args.path)
    return op


def cmd_analyze(args) -> dict:
    report = eigendecompose(_generator_from(args), rtol=args.tol)
    return {
        "eigenvalues": list(report.eigenvalues),
        "multiplicities": list(report.multiplicities),
        "class": str(classify_spectrum(report)),
    }


def cmd_rule(args) -> dict:
    report = eigendecompose(_generator_from(args), rtol=args.tol)
    rule = synthesize_shift_rule(report.eigenvalues, strategy=args.strategy, max_shifts=args.max_shifts, seed=args.seed)
    return rule.to_dict()


def cmd_decompose(args) -> dict:
    if args.method == "closed_form":
        if not args.singlet:
            raise InputError("closed_form decomposition needs --singlet KIND and --indices")
        idx = [int(v) for v in args.indices.split(",")] if args.indices else []
        return singlet_On_split(args.singlet, idx).to_dict()
    if args.path is None:
        raise InputError("decompose needs an operator or problem file")
    g = _generator_from(args)
    if args.method == "projector":
        return projector_decomposition(eigendecompose(g)).to_dict()
    if args.method == "csa":
        search = args.search or "auto"
        return csa_commutative(g, search=search, seed=args.seed).to_dict()
    if args.method == "ncsa":
        return csa_noncommutative(g, args.max_terms or 2, seed=args.seed).to_dict()
    raise InputError(f"unknown decomposition method {args.method!r}")


def _grad_opts(args) -> dict:
    return {"seed": args.seed, "strategy": args.strategy, "max_shifts": args.max_shifts, "max_terms": args.max_terms}


def cmd_grad(args) -> dict:
    rows = []
    for index, label, ctx in load_problem(args.path, args.gate_index).contexts:
        rep = gradient(ctx, args.method, **_grad_opts(args))
        rep.deviation_from_exact = abs(rep.value - exact_gradient(ctx))
        row = rep.to_dict()
        row.update({"gate_index": index, "label": label})
        rows.append(row)
    return rows[0] if len(rows) == 1 else {"gates": rows}


def cmd_bench(args) -> dict:
    methods = tuple(m.strip() for m in args.methods.split(",")) if args.methods else METHODS
    for m in methods:
        if m not in METHODS:
            raise InputError(f"unknown method {m!r}; expected one of {METHODS}")
    gates = []
    for index, label, ctx in load_problem(args.path, args.gate_index).contexts:
        gates.append({"gate_index": index, "label": label, "rows": benchmark_counts(ctx, methods, **_grad_opts(args))})
    return {"gates": gates}


def cmd_demo_vqe(args) -> dict:
    result = run_vqe(args.qubits, args.seed, args.method, args.iterations, args.tol)
    out = result.to_dict()
    out.update({"method": args.method, "qubits": args.qubits, "seed": args.seed})
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shiftrule", description="Parameter-shift gradients for general generators.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, path_required=True):
        if path_required:
            sp.add_argument("path", help="operator or problem JSON file (or fixture:NAME)")
        sp.add_argument("--seed", type=int, default=None, help="random seed (default: $PSR_SEED or 0)")
        sp.add_argument("--gate-index", type=int, default=None)

    sp = sub.add_parser("analyze", help="spectrum of a generator")
    common(sp)
    sp.add_argument("--tol", type=float, default=CLUSTER_RTOL, help="relative eigenvalue clustering tolerance")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("rule", help="same-generator shift rule")
    common(sp)
    sp.add_argument("--strategy", choices=("closed_form", "grid", "random"), default="grid")
    sp.add_argument("--max-shifts", type=int, default=None)
    sp.add_argument("--tol", type=float, default=CLUSTER_RTOL)
    sp.set_defaults(func=cmd_rule)

    sp = sub.add_parser("decompose", help="decompose a generator into few-eigenvalue terms")
    sp.add_argument("path", nargs="?", default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--gate-index", type=int, default=None)
    sp.add_argument("--method", choices=DECOMPOSE_METHODS, default="csa")
    sp.add_argument("--max-terms", type=int, default=None, help="K' for ncsa")
    sp.add_argument("--search", choices=("auto", "exhaustive", "anneal"), default=None)
    sp.add_argument("--singlet", default=None, help="singlet kind for closed_form")
    sp.add_argument("--indices", default=None, help="comma-separated spatial orbitals for closed_form")
    sp.set_defaults(func=cmd_decompose)

    for name, func, helptext in (
        ("grad", cmd_grad, "gradient by one method"),
        ("bench", cmd_bench, "expectation counts and errors for several methods"),
    ):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        if name == "grad":
            sp.add_argument("--method", choices=METHODS, default="exact")
        else:
            sp.add_argument("--methods", default=None, help=f"comma-separated subset of {','.join(METHODS)}")
        sp.add_argument("--strategy", choices=("closed_form", "grid", "random"), default="grid")
        sp.add_argument("--max-shifts", type=int, default=None)
        sp.add_argument("--max-terms", type=int, default=None)
        sp.set_defaults(func=func)

    sp = sub.add_parser("demo-vqe", help="gradient-descent VQE on a random Hermitian")
    sp.add_argument("--qubits", type=int, default=2)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--method", choices=METHODS, default="exact")
    sp.add_argument("--iterations", type=int, default=500)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.set_defaults(func=cmd_demo_vqe)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", None) is None:
            args.seed = _default_seed()
        _emit(args.func(args))
    except ConvergenceError as exc:
        best = exc.result.to_dict() if exc.result is not None and hasattr(exc.result, "to_dict") else None
        sys.stderr.write(json.dumps({"error": str(exc), "best": best}) + "\n")
        return 2
    except InputError as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 1
    except NumericalError as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
