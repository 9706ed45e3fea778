"""Shipped JSON fixtures: operators and gradient problems.

Regenerate the files under ``shiftrule/data`` with ``python3 -m shiftrule.fixtures``.
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

from .errors import InputError
from .operators.io import operator_to_dict
from .operators.library import (
    build_singlet,
    fsim,
    fsim_phase_part,
    fsim_swap_part,
    matchgate,
    three_qubit_example,
    transmon,
)
from .operators.pauli import PauliSum

MATCHGATE_COEFFS = (0.7, -0.4, 0.3, 1.1, -0.6, 0.9)
SINGLET_FIXTURES = {
    "singlet_ia": ("single", (0, 1)),
    "singlet_iiaa": ("d_sen0", (0, 1)),
    "singlet_iiab": ("d_sen2_iiab", (0, 1, 2)),
    "singlet_ijaa": ("d_sen2_ijaa", (0, 1, 2)),
    "singlet_ijab": ("d_sen4", (0, 1, 2, 3)),
}


def _pauli(n, pairs):
    return PauliSum.from_terms(n, pairs)


def _operators() -> dict:
    ops = {
        "z0": _pauli(1, [(1.0, "Z0")]),
        "ve": _pauli(2, [(2.0, "Z0 Z1"), (1.0, "Z1")]),
        "transmon": transmon(1.0, 0.5),
        "matchgate": matchgate(MATCHGATE_COEFFS),
        "fsim": fsim(1.0, 1.0),
        "fsim_swap": fsim_swap_part(),
        "fsim_phase": fsim_phase_part(),
        "three_qubit": PauliSum.from_dense(three_qubit_example()),
    }
    for name, (kind, idx) in SINGLET_FIXTURES.items():
        ops[name] = build_singlet(kind, idx)
    return ops


def _gate(generator, amplitude, label):
    gen = generator if isinstance(generator, dict) else operator_to_dict(generator)
    return {"generator": gen, "amplitude": amplitude, "label": label}


def _problems() -> dict:
    h2 = _pauli(2, [(0.8, "Z0"), (-0.5, "X0 X1"), (0.3, "Y1"), (0.6, "Z0 Z1"), (0.25, "X0")])
    h3 = _pauli(3, [(0.9, "Z0"), (-0.4, "X1 X2"), (0.35, "Y0 Z2"), (0.5, "Z1 Z2"), (0.2, "X2")])
    y0, x1 = _pauli(2, [(1.0, "Y0")]), _pauli(2, [(1.0, "X1")])
    zz = _pauli(2, [(1.0, "Z0 Z1")])
    problems = {
        "problem_transmon": {
            "H": operator_to_dict(h2),
            "circuit": {
                "n_qubits": 2,
                "gates": [
                    _gate(y0, 0.3, "ry0"),
                    _gate(x1, -0.7, "rx1"),
                    _gate({"file": "transmon.json"}, 0.45, "transmon"),
                    _gate(zz, 0.2, "zz"),
                ],
            },
            "gate_index": 2,
        },
        "problem_matchgate": {
            "H": operator_to_dict(h2),
            "circuit": {
                "n_qubits": 2,
                "gates": [
                    _gate(y0, 0.3, "ry0"),
                    _gate(x1, -0.7, "rx1"),
                    _gate({"file": "matchgate.json"}, -0.35, "matchgate"),
                    _gate(zz, 0.2, "zz"),
                ],
            },
            "gate_index": 2,
        },
        "problem_fsim": {
            "H": operator_to_dict(h2),
            "circuit": {
                "n_qubits": 2,
                "gates": [
                    _gate(y0, 0.3, "ry0"),
                    _gate(x1, -0.7, "rx1"),
                    _gate({"file": "fsim_swap.json"}, 0.8, "fsim_theta"),
                    _gate({"file": "fsim_phase.json"}, -0.6, "fsim_phi"),
                    _gate(zz, 0.2, "zz"),
                ],
            },
            "gate_index": [2, 3],
        },
        "problem_three_qubit": {
            "H": operator_to_dict(h3),
            "circuit": {
                "n_qubits": 3,
                "gates": [
                    _gate(_pauli(3, [(1.0, "Y0")]), 0.4, "ry0"),
                    _gate(_pauli(3, [(1.0, "X1")]), -0.3, "rx1"),
                    _gate(_pauli(3, [(1.0, "Y2")]), 0.9, "ry2"),
                    _gate({"file": "three_qubit.json"}, 0.55, "g3"),
                    _gate(_pauli(3, [(1.0, "Z0 Z2")]), 0.2, "zz"),
                ],
            },
            "gate_index": 3,
        },
        "problem_singlet_ia": {
            "H": operator_to_dict(
                _pauli(4, [(0.7, "Z0"), (-0.3, "Z1 Z2"), (0.45, "X0 X1"), (0.2, "Y2 Y3"), (-0.6, "Z3")])
            ),
            "circuit": {
                "n_qubits": 4,
                "gates": [
                    _gate(_pauli(4, [(1.0, "X0")]), 0.5, "rx0"),
                    _gate(_pauli(4, [(1.0, "Y2")]), -0.4, "ry2"),
                    _gate({"file": "singlet_ia.json"}, 0.3, "t_ia"),
                    _gate(_pauli(4, [(1.0, "Z1 Z3")]), 0.25, "zz"),
                ],
            },
            "gate_index": 2,
        },
    }
    return problems


def build_fixtures() -> dict[str, dict]:
    out = {name: operator_to_dict(op) for name, op in _operators().items()}
    out.update(_problems())
    return out


def dumps(data) -> str:
    """Canonical JSON text (floats use the shortest round-trip repr)."""
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def data_dir() -> Path:
    return Path(str(resources.files("shiftrule") / "data"))


def fixture_names() -> list[str]:
    return sorted(build_fixtures())


def fixture_path(name: str) -> Path:
    path = data_dir() / f"{name}.json"
    if not path.exists():
        raise InputError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    return path


def write_fixtures(directory: Path | None = None) -> list[Path]:
    directory = directory or data_dir()
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, data in build_fixtures().items():
        path = directory / f"{name}.json"
        path.write_text(dumps(data))
        written.append(path)
    return written


if __name__ == "__main__":  # pragma: no cover
    for p in write_fixtures(Path(sys.argv[1]) if len(sys.argv) > 1 else None):
        print(p)
