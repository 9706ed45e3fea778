"""Pauli strings in symplectic (x, z) bit-mask form and weighted sums of them.

Bit ``j`` of a mask refers to qubit ``j``. In dense matrices qubit 0 is the
leftmost Kronecker factor, i.e. the most significant bit of the basis index.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from numbers import Number

import numpy as np
from scipy.linalg import hadamard

from ..errors import InputError

MAX_DENSE_QUBITS = 12

_PHASES = (1, 1j, -1, -1j)
_TOKEN = re.compile(r"^([XYZ])(\d+)$")


def _popcount(v: int) -> int:
    return bin(v).count("1")


def _reverse_bits(v: int, n: int) -> int:
    out = 0
    for j in range(n):
        if (v >> j) & 1:
            out |= 1 << (n - 1 - j)
    return out


@dataclass(frozen=True, order=True)
class PauliString:
    """Tensor product of single-qubit Paulis, without phase.

    Qubit ``j`` carries X if only ``x_mask`` bit j is set, Z if only
    ``z_mask`` bit j is set and Y if both are set.
    """

    n_qubits: int
    x_mask: int = 0
    z_mask: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise InputError("n_qubits must be positive")
        limit = 1 << self.n_qubits
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise InputError(f"masks do not fit in {self.n_qubits} qubits")

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0)

    @classmethod
    def from_label(cls, label: str, n_qubits: int) -> "PauliString":
        """Parse ``"X0 Z3"``-style labels; the empty string is the identity."""
        x = z = 0
        seen = set()
        for tok in label.split():
            m = _TOKEN.match(tok)
            if m is None:
                raise InputError(f"bad Pauli token {tok!r}")
            letter, q = m.group(1), int(m.group(2))
            if q >= n_qubits:
                raise InputError(f"qubit {q} out of range for {n_qubits} qubits")
            if q in seen:
                raise InputError(f"qubit {q} repeated in {label!r}")
            seen.add(q)
            if letter in "XY":
                x |= 1 << q
            if letter in "ZY":
                z |= 1 << q
        return cls(n_qubits, x, z)

    @classmethod
    def z_string(cls, n_qubits: int, mask: int) -> "PauliString":
        return cls(n_qubits, 0, mask)

    @property
    def label(self) -> str:
        toks = []
        for q in range(self.n_qubits):
            xb, zb = (self.x_mask >> q) & 1, (self.z_mask >> q) & 1
            if xb and zb:
                toks.append(f"Y{q}")
            elif xb:
                toks.append(f"X{q}")
            elif zb:
                toks.append(f"Z{q}")
        return " ".join(toks)

    @property
    def weight(self) -> int:
        return _popcount(self.x_mask | self.z_mask)

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def commutes_with(self, other: "PauliString") -> bool:
        return (_popcount(self.x_mask & other.z_mask) + _popcount(self.z_mask & other.x_mask)) % 2 == 0

    def to_dense(self) -> np.ndarray:
        n = self.n_qubits
        if n > MAX_DENSE_QUBITS:
            raise InputError(f"dense conversion limited to {MAX_DENSE_QUBITS} qubits")
        dim = 1 << n
        xi = _reverse_bits(self.x_mask, n)
        zi = _reverse_bits(self.z_mask, n)
        cols = np.arange(dim)
        signs = 1 - 2 * (np.bitwise_count(cols & zi) & 1).astype(np.int64)
        out = np.zeros((dim, dim), dtype=complex)
        out[cols ^ xi, cols] = _PHASES[_popcount(self.x_mask & self.z_mask) % 4] * signs
        return out

    def __str__(self):
        return self.label or "I"


def pauli_multiply(a: PauliString, b: PauliString) -> tuple[PauliString, complex]:
    """Return ``(c, phase)`` with ``a @ b == phase * c`` as matrices."""
    if a.n_qubits != b.n_qubits:
        raise InputError("qubit-count mismatch in Pauli product")
    x, z = a.x_mask ^ b.x_mask, a.z_mask ^ b.z_mask
    e = (
        _popcount(a.x_mask & a.z_mask)
        + _popcount(b.x_mask & b.z_mask)
        + 2 * _popcount(a.z_mask & b.x_mask)
        - _popcount(x & z)
    )
    return PauliString(a.n_qubits, x, z), _PHASES[e % 4]


class PauliSum:
    """Immutable complex linear combination of :class:`PauliString`.

    Terms whose coefficient magnitude is at most ``atol`` are dropped on
    construction. Arithmetic: ``+``, ``-``, scalar ``*``, operator product ``@``.
    """

    __slots__ = ("n_qubits", "_terms")

    def __init__(self, n_qubits: int, terms=None, atol: float = 1e-14):
        if n_qubits < 1:
            raise InputError("n_qubits must be positive")
        self.n_qubits = n_qubits
        acc: dict[PauliString, complex] = {}
        for p, c in (terms.items() if isinstance(terms, dict) else (terms or ())):
            if p.n_qubits != n_qubits:
                raise InputError("term qubit count differs from sum")
            acc[p] = acc.get(p, 0) + complex(c)
        self._terms = {p: c for p, c in sorted(acc.items()) if abs(c) > atol}

    @classmethod
    def from_terms(cls, n_qubits: int, pairs) -> "PauliSum":
        """Build from ``(coefficient, label)`` pairs."""
        return cls(n_qubits, [(PauliString.from_label(lbl, n_qubits), c) for c, lbl in pairs])

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls(n_qubits, {PauliString.identity(n_qubits): coeff})

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliSum":
        return cls(n_qubits, {})

    @classmethod
    def from_dense(cls, matrix: np.ndarray, atol: float = 1e-12) -> "PauliSum":
        """Expand a ``2^n x 2^n`` matrix over Pauli strings via trace inner products."""
        matrix = np.asarray(matrix)
        dim = matrix.shape[0]
        n = dim.bit_length() - 1
        if matrix.shape != (dim, dim) or dim != 1 << n or n < 1:
            raise InputError("matrix must be square with a power-of-two dimension >= 2")
        if n > MAX_DENSE_QUBITS:
            raise InputError(f"dense conversion limited to {MAX_DENSE_QUBITS} qubits")
        terms = {}
        cols = np.arange(dim)
        had = hadamard(dim)
        rev = [_reverse_bits(v, n) for v in range(dim)]
        for x in range(dim):
            # tr(P^dag M) / dim with P[b^x, b] = phase * (-1)^(b.z): a Walsh transform per x
            walsh = had @ matrix[cols ^ rev[x], cols] / dim
            for zi in range(dim):
                z = rev[zi]
                c = np.conj(_PHASES[_popcount(x & z) % 4]) * walsh[zi]
                if abs(c) > atol:
                    terms[PauliString(n, x, z)] = c
        return cls(n, terms)

    @property
    def terms(self) -> dict[PauliString, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def coefficient(self, p: PauliString) -> complex:
        return self._terms.get(p, 0j)

    def _check(self, other: "PauliSum"):
        if not isinstance(other, PauliSum):
            return NotImplemented
        if other.n_qubits != self.n_qubits:
            raise InputError("qubit-count mismatch")
        return None

    def __add__(self, other):
        if isinstance(other, Number):
            other = PauliSum.identity(self.n_qubits, other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return PauliSum(self.n_qubits, list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return PauliSum(self.n_qubits, {p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, Number):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        return PauliSum(self.n_qubits, {p: c * scalar for p, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / scalar)

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = []
        for pa, ca in self._terms.items():
            for pb, cb in other._terms.items():
                p, phase = pauli_multiply(pa, pb)
                out.append((p, ca * cb * phase))
        return PauliSum(self.n_qubits, out)

    def __eq__(self, other):
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self._terms == other._terms

    def __hash__(self):
        return hash((self.n_qubits, tuple(self._terms.items())))

    def adjoint(self) -> "PauliSum":
        return PauliSum(self.n_qubits, {p: np.conj(c) for p, c in self._terms.items()})

    def simplify(self, atol: float = 1e-12) -> "PauliSum":
        return PauliSum(self.n_qubits, self._terms, atol=atol)

    def norm(self) -> float:
        """Largest coefficient magnitude (0 for the empty sum)."""
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def is_hermitian(self, atol: float = 1e-10) -> bool:
        return all(abs(c.imag) <= atol * max(1.0, self.norm()) for c in self._terms.values())

    def is_anti_hermitian(self, atol: float = 1e-10) -> bool:
        return all(abs(c.real) <= atol * max(1.0, self.norm()) for c in self._terms.values())

    def identity_coefficient(self) -> complex:
        return self._terms.get(PauliString.identity(self.n_qubits), 0j)

    def without_identity(self) -> "PauliSum":
        ident = PauliString.identity(self.n_qubits)
        return PauliSum(self.n_qubits, {p: c for p, c in self._terms.items() if p != ident})

    def to_dense(self) -> np.ndarray:
        if self.n_qubits > MAX_DENSE_QUBITS:
            raise InputError(f"dense conversion limited to {MAX_DENSE_QUBITS} qubits")
        dim = 1 << self.n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for p, c in self._terms.items():
            out += c * p.to_dense()
        return out

    def __repr__(self):
        if not self._terms:
            return f"PauliSum({self.n_qubits}, 0)"
        body = " + ".join(f"({c:.6g})*{p}" for p, c in self._terms.items())
        return f"PauliSum({self.n_qubits}, {body})"


def commutator(a: PauliSum, b: PauliSum) -> PauliSum:
    """``a @ b - b @ a``, computed term-wise (commuting string pairs are skipped)."""
    if a.n_qubits != b.n_qubits:
        raise InputError("qubit-count mismatch")
    out = []
    for pa, ca in a.items():
        for pb, cb in b.items():
            if pa.commutes_with(pb):
                continue
            p, phase = pauli_multiply(pa, pb)
            out.append((p, 2 * ca * cb * phase))
    return PauliSum(a.n_qubits, out)
