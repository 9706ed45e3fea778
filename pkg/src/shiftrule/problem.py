"""Loading operator, circuit and gradient-problem JSON files.

Operator references are inline operator objects or ``{"file": path}`` with
paths relative to the referring file. ``fixture:NAME`` paths resolve to the
shipped fixtures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .fixtures import fixture_path
from .operators.convert import hermitize
from .operators.fermion import FermionSum
from .operators.io import operator_from_dict
from .operators.pauli import PauliSum
from .simulate import Circuit, Gate, GradientContext


def resolve_path(path: str | Path, base: Path | None = None) -> Path:
    text = str(path)
    if text.startswith("fixture:"):
        return fixture_path(text[len("fixture:") :])
    p = Path(text)
    if not p.is_absolute() and base is not None:
        p = base / p
    return p


def read_json(path: str | Path, base: Path | None = None):
    p = resolve_path(path, base)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text), p.parent
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {p}: {exc}") from exc


def load_operator(ref, base: Path | None = None) -> PauliSum | FermionSum:
    if isinstance(ref, (str, Path)):
        data, base = read_json(ref, base)
        return load_operator(data, base)
    if isinstance(ref, dict) and "file" in ref:
        return load_operator(ref["file"], base)
    return operator_from_dict(ref)


def load_hermitian(ref, base: Path | None = None) -> tuple[PauliSum, bool]:
    """Operator as a Hermitian :class:`PauliSum` plus the anti-Hermitian flag."""
    h = hermitize(load_operator(ref, base))
    return h.op, h.anti_hermitian


def load_circuit(data, base: Path | None = None, n_qubits: int | None = None) -> Circuit:
    if data is None:
        if n_qubits is None:
            raise InputError("empty circuit needs n_qubits")
        return Circuit(n_qubits)
    if not isinstance(data, dict) or not isinstance(data.get("gates"), list):
        raise InputError("circuit must be an object with a 'gates' list")
    try:
        n = int(data.get("n_qubits", n_qubits))
    except (TypeError, ValueError) as exc:
        raise InputError("circuit needs n_qubits") from exc
    gates = []
    for k, g in enumerate(data["gates"]):
        if not isinstance(g, dict) or "generator" not in g:
            raise InputError(f"gate {k} needs a 'generator'")
        op, _ = load_hermitian(g["generator"], base)
        if op.n_qubits != n:
            raise InputError(f"gate {k} acts on {op.n_qubits} qubits, circuit has {n}")
        try:
            amp = float(g.get("amplitude", 0.0))
        except (TypeError, ValueError) as exc:
            raise InputError(f"gate {k} has a non-numeric amplitude") from exc
        gates.append(Gate.make(op, amp, str(g.get("label", f"g{k}"))))
    return Circuit(n, tuple(gates))


@dataclass
class Problem:
    """A list of gradient contexts; one per differentiated gate."""

    contexts: list[tuple[int, str, GradientContext]]

    def select(self, gate_index: int | None) -> list[tuple[int, str, GradientContext]]:
        if gate_index is None:
            return self.contexts
        chosen = [c for c in self.contexts if c[0] == gate_index]
        if not chosen:
            raise InputError(f"gate index {gate_index} is not differentiable in this problem")
        return chosen


def load_problem(path, gate_index: int | None = None) -> Problem:
    """Circuit form ``{"H", "circuit", "gate_index"}`` or explicit ``{"H", "G", "tau", "U1", "U2"}``."""
    data, base = read_json(path)
    if not isinstance(data, dict) or "H" not in data:
        raise InputError("problem needs an 'H' entry")
    h, _ = load_hermitian(data["H"], base)
    if "circuit" in data:
        circuit = load_circuit(data["circuit"], base)
        if circuit.n_qubits != h.n_qubits:
            raise InputError("H and circuit act on different qubit counts")
        idx = gate_index if gate_index is not None else data.get("gate_index", 0)
        indices = idx if isinstance(idx, list) else [idx]
        contexts = []
        for i in indices:
            if not isinstance(i, int) or isinstance(i, bool):
                raise InputError("gate_index must be an integer or a list of integers")
            ctx = GradientContext.from_circuit(circuit, h, i)
            contexts.append((i, circuit.gates[i].label, ctx))
        return Problem(contexts)
    if "G" not in data:
        raise InputError("problem needs either 'circuit' or 'G'")
    g, anti = load_hermitian(data["G"], base)
    n = g.n_qubits
    u1 = load_circuit(data.get("U1"), base, n)
    u2 = load_circuit(data.get("U2"), base, n)
    try:
        tau = float(data.get("tau", 0.0))
    except (TypeError, ValueError) as exc:
        raise InputError("tau must be a number") from exc
    ctx = GradientContext.make(h, g, tau, u1, u2, anti)
    return Problem([(0, "G", ctx)])
