"""JSON operator format.

Pauli: ``{"kind": "pauli", "n_qubits": N, "terms": [{"re": f, "im": f, "ops": "X0 Z3"}]}``
Fermion: ``{"kind": "fermion", "n_modes": M, "terms": [{"re": f, "im": f, "ops": "2^ 0"}]}``
"""

from __future__ import annotations

import json

from ..errors import InputError
from .fermion import FermionSum
from .pauli import PauliString, PauliSum


def operator_to_dict(op) -> dict:
    if isinstance(op, PauliSum):
        return {
            "kind": "pauli",
            "n_qubits": op.n_qubits,
            "terms": [{"re": c.real, "im": c.imag, "ops": p.label} for p, c in op],
        }
    if isinstance(op, FermionSum):
        return {
            "kind": "fermion",
            "n_modes": op.n_modes,
            "terms": [
                {"re": c.real, "im": c.imag, "ops": " ".join(f"{m}^" if d else str(m) for m, d in ops)}
                for c, ops in op.terms
            ],
        }
    raise InputError(f"cannot serialize {type(op).__name__}")


def _coeff(term: dict) -> complex:
    try:
        return complex(float(term.get("re", 0.0)), float(term.get("im", 0.0)))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad coefficient in term {term!r}") from exc


def operator_from_dict(data: dict):
    if not isinstance(data, dict):
        raise InputError("operator must be a JSON object")
    kind = data.get("kind")
    terms = data.get("terms")
    if not isinstance(terms, list):
        raise InputError("operator needs a 'terms' list")
    try:
        if kind == "pauli":
            n = int(data["n_qubits"])
            return PauliSum(n, [(PauliString.from_label(t.get("ops", ""), n), _coeff(t)) for t in terms])
        if kind == "fermion":
            n = int(data["n_modes"])
            total = FermionSum(n)
            for t in terms:
                total = total + FermionSum.from_string(n, t.get("ops", ""), _coeff(t))
            return _merge_fermion(total)
    except KeyError as exc:
        raise InputError(f"operator missing field {exc}") from exc
    except AttributeError as exc:
        raise InputError("operator terms must be JSON objects") from exc
    raise InputError(f"unknown operator kind {kind!r}")


def _merge_fermion(f: FermionSum) -> FermionSum:
    # duplicate op strings are summed, first-occurrence order kept
    acc: dict[tuple, complex] = {}
    for c, ops in f.terms:
        acc[ops] = acc.get(ops, 0) + c
    return FermionSum(f.n_modes, [(c, ops) for ops, c in acc.items()])


def dumps_operator(op) -> str:
    return json.dumps(operator_to_dict(op))


def loads_operator(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    return operator_from_dict(data)
