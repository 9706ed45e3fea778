"""Second-quantized fermionic operators and the Jordan-Wigner map."""

from __future__ import annotations

import re
from numbers import Number

import numpy as np

from ..errors import InputError
from .pauli import MAX_DENSE_QUBITS, PauliString, PauliSum

_TOKEN = re.compile(r"^(\d+)(\^?)$")


class FermionSum:
    """Sum of products of ladder operators.

    Each term is ``(coefficient, ((mode, dagger), ...))`` with operators read
    left to right. Terms are kept as written; :meth:`normal_ordered` gives the
    canonical form used for equality.
    """

    __slots__ = ("n_modes", "terms")

    def __init__(self, n_modes: int, terms=()):
        if n_modes < 1:
            raise InputError("n_modes must be positive")
        checked = []
        for coeff, ops in terms:
            ops = tuple((int(m), bool(d)) for m, d in ops)
            for m, _ in ops:
                if not 0 <= m < n_modes:
                    raise InputError(f"mode {m} out of range for {n_modes} modes")
            checked.append((complex(coeff), ops))
        self.n_modes = n_modes
        self.terms = tuple(checked)

    @classmethod
    def identity(cls, n_modes: int, coeff: complex = 1.0) -> "FermionSum":
        return cls(n_modes, [(coeff, ())])

    @classmethod
    def ladder(cls, n_modes: int, mode: int, dagger: bool) -> "FermionSum":
        return cls(n_modes, [(1.0, ((mode, dagger),))])

    @classmethod
    def number(cls, n_modes: int, mode: int) -> "FermionSum":
        return cls(n_modes, [(1.0, ((mode, True), (mode, False)))])

    @classmethod
    def from_string(cls, n_modes: int, ops: str, coeff: complex = 1.0) -> "FermionSum":
        """Parse a single term such as ``"2^ 0"`` (``^`` marks a creation operator)."""
        parsed = []
        for tok in ops.split():
            m = _TOKEN.match(tok)
            if m is None:
                raise InputError(f"bad fermion token {tok!r}")
            parsed.append((int(m.group(1)), m.group(2) == "^"))
        return cls(n_modes, [(coeff, tuple(parsed))])

    def _check(self, other):
        if not isinstance(other, FermionSum):
            return NotImplemented
        if other.n_modes != self.n_modes:
            raise InputError("mode-count mismatch")
        return None

    def __add__(self, other):
        if isinstance(other, Number):
            other = FermionSum.identity(self.n_modes, other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FermionSum(self.n_modes, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        return FermionSum(self.n_modes, [(c * scalar, ops) for c, ops in self.terms])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FermionSum(
            self.n_modes,
            [(ca * cb, oa + ob) for ca, oa in self.terms for cb, ob in other.terms],
        )

    def adjoint(self) -> "FermionSum":
        return FermionSum(
            self.n_modes,
            [(np.conj(c), tuple((m, not d) for m, d in reversed(ops))) for c, ops in self.terms],
        )

    def normal_ordered(self, atol: float = 0.0) -> dict:
        """Canonical ``{ops: coeff}`` map.

        Creation operators precede annihilation operators, each group sorted by
        descending mode; anticommutators are applied and products containing a
        repeated creation (or annihilation) operator vanish.
        """
        out: dict[tuple, complex] = {}
        stack = [(c, list(ops)) for c, ops in self.terms]
        while stack:
            coeff, ops = stack.pop()
            done = True
            for i in range(len(ops) - 1):
                left, right = ops[i], ops[i + 1]
                if _before(right, left):
                    done = False
                    swapped = ops[:i] + [right, left] + ops[i + 2:]
                    stack.append((-coeff, swapped))
                    if left[0] == right[0] and left[1] != right[1]:
                        stack.append((coeff, ops[:i] + ops[i + 2:]))
                    break
                if left == right:
                    done = False
                    break
            if done:
                key = tuple(ops)
                out[key] = out.get(key, 0) + coeff
        return {k: v for k, v in sorted(out.items()) if abs(v) > atol}

    def __eq__(self, other):
        if not isinstance(other, FermionSum):
            return NotImplemented
        return self.n_modes == other.n_modes and self.normal_ordered() == other.normal_ordered()

    __hash__ = None

    def to_dense(self) -> np.ndarray:
        """Matrix on the occupation-number basis, built without Pauli algebra.

        Mode ``p`` is the ``p``-th most significant bit of the basis index, with
        bit value 1 meaning occupied; the sign of ``a_p`` counts occupied modes
        ``q < p``.
        """
        n = self.n_modes
        if n > MAX_DENSE_QUBITS:
            raise InputError(f"dense conversion limited to {MAX_DENSE_QUBITS} modes")
        dim = 1 << n
        out = np.zeros((dim, dim), dtype=complex)
        for coeff, ops in self.terms:
            for col in range(dim):
                state, sign = col, 1
                for mode, dagger in reversed(ops):
                    bit = 1 << (n - 1 - mode)
                    occupied = bool(state & bit)
                    if occupied == dagger:
                        sign = 0
                        break
                    if bin(state >> (n - mode)).count("1") % 2:
                        sign = -sign
                    state ^= bit
                if sign:
                    out[state, col] += coeff * sign
        return out

    def __repr__(self):
        body = " + ".join(
            f"({c:.6g})[{' '.join(f'{m}^' if d else str(m) for m, d in ops)}]" for c, ops in self.terms
        )
        return f"FermionSum({self.n_modes}, {body or '0'})"


def _before(a, b) -> bool:
    """True when ladder operator ``a`` must sit left of ``b`` in canonical order."""
    if a[1] != b[1]:
        return a[1]
    return a[0] > b[0]


def _ladder_pauli(n: int, mode: int, dagger: bool) -> PauliSum:
    zs = (1 << mode) - 1
    x = PauliString(n, 1 << mode, zs)
    y = PauliString(n, 1 << mode, zs | (1 << mode))
    # a_p = Z_0 ... Z_{p-1} (X_p + iY_p)/2 sends occupied |1> to |0>
    return PauliSum(n, {x: 0.5, y: -0.5j if dagger else 0.5j})


def jordan_wigner(f: FermionSum) -> PauliSum:
    n = f.n_modes
    ladders = {}
    total = PauliSum.zero(n)
    for coeff, ops in f.terms:
        term = PauliSum.identity(n, coeff)
        for op in ops:
            if op not in ladders:
                ladders[op] = _ladder_pauli(n, *op)
            term = term @ ladders[op]
        total = total + term
    return total.simplify()
