"""Dense statevector simulation of generator-exponential circuits."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InputError
from .operators.convert import as_hermitian, is_hermitian_matrix, to_dense
from .operators.pauli import MAX_DENSE_QUBITS, PauliString, PauliSum

IMAG_TOL = 1e-10

_EIG_CACHE: dict[bytes, tuple[np.ndarray, np.ndarray]] = {}
_EIG_CACHE_MAX = 512


def matrix_key(m: np.ndarray) -> bytes:
    m = np.ascontiguousarray(m, dtype=complex)
    return hashlib.sha1(m.tobytes() + repr(m.shape).encode()).digest()


def _eigh_cached(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    key = matrix_key(g)
    hit = _EIG_CACHE.get(key)
    if hit is None:
        hit = np.linalg.eigh(g)
        if len(_EIG_CACHE) >= _EIG_CACHE_MAX:
            _EIG_CACHE.pop(next(iter(_EIG_CACHE)))
        _EIG_CACHE[key] = hit
    return hit


def zero_state(n_qubits: int) -> np.ndarray:
    if not 1 <= n_qubits <= MAX_DENSE_QUBITS:
        raise InputError(f"n_qubits must be in 1..{MAX_DENSE_QUBITS}")
    psi = np.zeros(1 << n_qubits, dtype=complex)
    psi[0] = 1.0
    return psi


def apply_exponential(state: np.ndarray, generator, amplitude: float) -> np.ndarray:
    """``exp(i * amplitude * G) @ state`` via the cached eigendecomposition of ``G``."""
    g = generator if isinstance(generator, np.ndarray) else to_dense(generator)
    if g.shape[0] != state.shape[0]:
        raise InputError(f"generator dimension {g.shape[0]} does not match state dimension {state.shape[0]}")
    if amplitude == 0.0:
        return state.copy()
    w, v = _eigh_cached(g)
    return v @ (np.exp(1j * amplitude * w) * (v.conj().T @ state))


def expectation(state: np.ndarray, observable) -> float:
    h = observable if isinstance(observable, np.ndarray) else to_dense(observable)
    if h.shape[0] != state.shape[0]:
        raise InputError("observable dimension does not match state")
    if not is_hermitian_matrix(h):
        raise InputError("observable is not Hermitian")
    val = np.vdot(state, h @ state)
    if abs(val.imag) > IMAG_TOL * max(1.0, abs(val.real)):
        raise InputError(f"expectation has imaginary part {val.imag:.3g}")
    return float(val.real)


@dataclass(frozen=True)
class Gate:
    """``exp(i * amplitude * generator)``."""

    generator: np.ndarray = field(repr=False)
    amplitude: float = 0.0
    label: str = ""
    pauli: PauliSum | None = field(default=None, repr=False, compare=False)

    @classmethod
    def make(cls, generator, amplitude: float, label: str = "") -> "Gate":
        pauli = generator if isinstance(generator, PauliSum) else None
        return cls(as_hermitian(generator), float(amplitude), label, pauli)

    def with_amplitude(self, amplitude: float) -> "Gate":
        return Gate(self.generator, float(amplitude), self.label, self.pauli)

    def apply(self, state: np.ndarray) -> np.ndarray:
        return apply_exponential(state, self.generator, self.amplitude)


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        dim = 1 << self.n_qubits
        for g in self.gates:
            if g.generator.shape[0] != dim:
                raise InputError(f"gate {g.label!r} does not act on {self.n_qubits} qubits")

    @classmethod
    def from_gates(cls, n_qubits: int, gates) -> "Circuit":
        out = []
        for g in gates:
            out.append(g if isinstance(g, Gate) else Gate.make(*g))
        return cls(n_qubits, tuple(out))

    def __len__(self):
        return len(self.gates)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([g.amplitude for g in self.gates])

    def with_amplitudes(self, amps) -> "Circuit":
        amps = list(amps)
        if len(amps) != len(self.gates):
            raise InputError("amplitude count does not match gate count")
        return Circuit(self.n_qubits, tuple(g.with_amplitude(a) for g, a in zip(self.gates, amps)))

    def apply(self, state: np.ndarray) -> np.ndarray:
        for g in self.gates:
            state = g.apply(state)
        return state

    def run(self) -> np.ndarray:
        return self.apply(zero_state(self.n_qubits))

    def split(self, index: int) -> tuple["Circuit", Gate, "Circuit"]:
        """``(U1, gate, U2)`` around gate ``index``: gates before it act first."""
        if not 0 <= index < len(self.gates):
            raise InputError(f"gate index {index} out of range (0..{len(self.gates) - 1})")
        return (
            Circuit(self.n_qubits, self.gates[:index]),
            self.gates[index],
            Circuit(self.n_qubits, self.gates[index + 1 :]),
        )

    def key(self) -> bytes:
        h = hashlib.sha1()
        for g in self.gates:
            h.update(matrix_key(g.generator))
            h.update(repr(g.amplitude).encode())
        return h.digest()


@dataclass(frozen=True)
class GradientContext:
    """``E(tau) = <0| U1^dag e^{-i tau G} U2^dag H U2 e^{i tau G} U1 |0>``."""

    H: np.ndarray = field(repr=False)
    U1: Circuit
    U2: Circuit
    G: np.ndarray = field(repr=False)
    tau: float
    g_pauli: PauliSum | None = field(default=None, repr=False)
    anti_hermitian: bool = False

    def __post_init__(self):
        dim = 1 << self.U1.n_qubits
        if self.U2.n_qubits != self.U1.n_qubits:
            raise InputError("U1 and U2 act on different qubit counts")
        if self.H.shape != (dim, dim) or self.G.shape != (dim, dim):
            raise InputError("H and G must match the circuit dimension")

    @classmethod
    def make(cls, H, G, tau: float, U1: Circuit | None = None, U2: Circuit | None = None, anti_hermitian=False):
        g_pauli = G if isinstance(G, PauliSum) else None
        gm = as_hermitian(G)
        n = gm.shape[0].bit_length() - 1
        return cls(
            as_hermitian(H),
            U1 or Circuit(n),
            U2 or Circuit(n),
            gm,
            float(tau),
            g_pauli,
            anti_hermitian,
        )

    @classmethod
    def from_circuit(cls, circuit: Circuit, H, index: int) -> "GradientContext":
        u1, gate, u2 = circuit.split(index)
        return cls(as_hermitian(H), u1, u2, gate.generator, gate.amplitude, gate.pauli)

    @property
    def n_qubits(self) -> int:
        return self.U1.n_qubits

    @cached_property
    def psi1(self) -> np.ndarray:
        return self.U1.run()

    @cached_property
    def phi(self) -> np.ndarray:
        """State right after the differentiated gate."""
        return apply_exponential(self.psi1, self.G, self.tau)

    def finish(self, state: np.ndarray) -> float:
        """``<state| U2^dag H U2 |state>``."""
        return expectation(self.U2.apply(state), self.H)

    def energy(self, tau: float | None = None) -> float:
        if tau is None or tau == self.tau:
            return self.finish(self.phi)
        return self.finish(apply_exponential(self.psi1, self.G, tau))

    def key(self) -> bytes:
        h = hashlib.sha1(self.U1.key() + self.U2.key() + matrix_key(self.H) + matrix_key(self.G))
        h.update(repr(self.tau).encode())
        return h.digest()


@dataclass(frozen=True)
class CSAFrame:
    """Common frame of commuting terms: ``G = offset + V^dag diag(sum c_m z_m) V``."""

    V: np.ndarray = field(repr=False)
    offset: float
    coeffs: tuple[float, ...]
    masks: tuple[int, ...]

    def diagonal(self, dim: int, tau: float, shift_index: int | None = None, theta: float = 0.0) -> np.ndarray:
        x = np.arange(dim)
        out = np.full(dim, self.offset * tau)
        for m, (c, mask) in enumerate(zip(self.coeffs, self.masks)):
            amp = tau + (theta if m == shift_index else 0.0)
            out = out + c * amp * (1 - 2 * (np.bitwise_count(x & mask) & 1).astype(np.int64))
        return out

    def reconstruct(self) -> np.ndarray:
        dim = self.V.shape[0]
        return self.V.conj().T @ (self.diagonal(dim, 1.0)[:, None] * self.V)


def shifted_expectation(
    ctx: GradientContext,
    theta: float,
    shift_generator: np.ndarray | None = None,
    frame: CSAFrame | None = None,
    frame_index: int | None = None,
) -> float:
    """Energy with a shift.

    Without an operator this is ``E(tau + theta)``. With an operator ``O`` the
    state after the gate is ``exp(i theta O) exp(i tau G) U1 |0>``. When a
    commuting CSA ``frame`` is given and ``O`` is its term ``frame_index`` (with
    unit weight), ``exp(i (tau G + theta O))`` is applied as one diagonal
    phase in the frame.
    """
    if shift_generator is None:
        return ctx.energy(ctx.tau + theta)
    if theta == 0.0:
        return ctx.energy()
    if frame is not None and frame_index is not None:
        dim = ctx.G.shape[0]
        scale = max(1.0, float(np.linalg.norm(ctx.G)))
        if np.linalg.norm(frame.reconstruct() - ctx.G) < 1e-9 * scale:
            c = frame.coeffs[frame_index]
            diag = frame.diagonal(dim, ctx.tau, frame_index, theta / c)
            state = frame.V.conj().T @ (np.exp(1j * diag) * (frame.V @ ctx.psi1))
            return ctx.finish(state)
    return ctx.finish(apply_exponential(ctx.phi, shift_generator, theta))


def lcu_expectation(ctx: GradientContext, w, sign: int = 1, phase: complex = 1.0) -> float:
    """``<phi| U2^dag H U2 |phi>`` with ``|phi> = (1 + sign * phase * W) exp(i tau G) U1 |0>``.

    ``W`` is a :class:`PauliString` or a dense unitary.
    """
    if sign not in (1, -1):
        raise InputError("sign must be +1 or -1")
    wm = w.to_dense() if isinstance(w, PauliString) else np.asarray(w, dtype=complex)
    wm = phase * wm
    if wm.shape != ctx.G.shape:
        raise InputError("W does not match the circuit dimension")
    if np.max(np.abs(wm.conj().T @ wm - np.eye(wm.shape[0]))) > 1e-10:
        raise InputError("W is not unitary")
    phi = ctx.phi + sign * (wm @ ctx.phi)
    psi = ctx.U2.apply(phi)
    return float(np.vdot(psi, ctx.H @ psi).real)


class ExpectationCache:
    """Distinct expectation values consumed by one gradient evaluation.

    Keys identify the measured circuit: the shift amplitude and the hash of
    the shift operator. Zero shifts map to the unshifted circuit.
    """

    def __init__(self, ctx: GradientContext):
        self.ctx = ctx
        self._values: dict[tuple, float] = {}

    def __len__(self):
        return len(self._values)

    @staticmethod
    def _theta_key(theta: float) -> float:
        return 0.0 if abs(theta) < 1e-15 else float(np.round(theta, 14))

    def shifted(self, theta: float, op: np.ndarray | None = None, frame=None, frame_index=None) -> float:
        t = self._theta_key(theta)
        key = ("plain",) if t == 0.0 else ("shift", t, None if op is None else matrix_key(op))
        if key not in self._values:
            self._values[key] = shifted_expectation(self.ctx, theta, op, frame, frame_index)
        return self._values[key]

    def lcu(self, w: PauliString, sign: int, phase: complex = 1j) -> float:
        key = ("lcu", w.x_mask, w.z_mask, sign, phase)
        if key not in self._values:
            self._values[key] = lcu_expectation(self.ctx, w, sign, phase)
        return self._values[key]

    def energy_at(self, tau: float) -> float:
        return self.shifted(tau - self.ctx.tau)
