"""Small VQE demo: gradient descent with a backtracking line search."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .gradient import decompose_for, gradient
from .operators.pauli import PauliSum
from .simulate import Circuit, Gate, GradientContext, expectation, matrix_key

ARMIJO = 1e-4


def random_hermitian(dim: int, rng) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def random_ansatz(n_qubits: int, rng, layers: int = 2) -> Circuit:
    """Per layer: ``Y_q`` and ``Z_q`` rotations on every qubit, then ``XX + YY + ZZ``
    couplers with random weights on neighbouring pairs."""
    gates = []
    for layer in range(layers):
        for q in range(n_qubits):
            for axis in "YZ":
                gates.append(Gate.make(PauliSum.from_terms(n_qubits, [(1.0, f"{axis}{q}")]), 0.0, f"{axis}{q}.{layer}"))
        for q in range(n_qubits - 1):
            w = rng.uniform(0.5, 1.5, size=3)
            gen = PauliSum.from_terms(
                n_qubits, [(w[0], f"X{q} X{q + 1}"), (w[1], f"Y{q} Y{q + 1}"), (w[2], f"Z{q} Z{q + 1}")]
            )
            gates.append(Gate.make(gen, 0.0, f"ent{q}.{layer}"))
    circuit = Circuit(n_qubits, tuple(gates))
    return circuit.with_amplitudes(rng.uniform(-np.pi, np.pi, size=len(gates)))


@dataclass
class VQEResult:
    energies: list[float]
    final_gap: float
    ground_energy: float
    converged: bool
    n_expectations: int
    amplitudes: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "trace": self.energies,
            "final_energy": self.energies[-1],
            "ground_energy": self.ground_energy,
            "final_gap": self.final_gap,
            "converged": self.converged,
            "iterations": len(self.energies) - 1,
            "n_expectations": self.n_expectations,
        }


def _energy(circuit: Circuit, h: np.ndarray) -> float:
    return expectation(circuit.run(), h)


def run_vqe(
    n_qubits: int = 2,
    seed: int = 0,
    method: str = "exact",
    iterations: int = 500,
    tol: float = 1e-6,
    layers: int = 2,
) -> VQEResult:
    """Minimize ``<H>`` for a random Hermitian ``H`` over a random layered ansatz."""
    if not 1 <= n_qubits <= 4:
        raise InputError("demo-vqe supports 1 to 4 qubits")
    if iterations < 0:
        raise InputError("iterations must be non-negative")
    rng = np.random.default_rng(seed)
    dim = 1 << n_qubits
    h = random_hermitian(dim, rng)
    ground = float(np.linalg.eigvalsh(h)[0])
    circuit = random_ansatz(n_qubits, rng, layers)

    decomps: dict[bytes, object] = {}
    n_exp = 0

    def grad(c: Circuit) -> np.ndarray:
        nonlocal n_exp
        out = np.empty(len(c))
        for i in range(len(c)):
            ctx = GradientContext.from_circuit(c, h, i)
            opts = {"seed": seed}
            if method in ("projector", "csa", "ncsa"):
                key = matrix_key(ctx.G)
                if key not in decomps:
                    decomps[key] = decompose_for(method, ctx.G, seed=seed)
                rep = gradient(ctx, method, decomposition=decomps[key], **opts)
            else:
                rep = gradient(ctx, method, **opts)
            n_exp += rep.n_expectations or 0
            out[i] = rep.value
        return out

    energies = [_energy(circuit, h)]
    step = 0.5
    for _ in range(iterations):
        if energies[-1] - ground < tol:
            break
        g = grad(circuit)
        gg = float(g @ g)
        if gg < 1e-30:
            break
        x = circuit.amplitudes
        step *= 2.0
        while True:
            trial = circuit.with_amplitudes(x - step * g)
            e = _energy(trial, h)
            if e <= energies[-1] - ARMIJO * step * gg or step < 1e-12:
                break
            step /= 2.0
        circuit = trial
        energies.append(e)
    gap = energies[-1] - ground
    return VQEResult(energies, gap, ground, gap < tol, n_exp, circuit.amplitudes.tolist())
