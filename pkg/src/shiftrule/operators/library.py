"""Named generators: singlet excitation operators, 2-qubit gate generators.

Spin-orbital convention: spatial orbital ``p`` owns modes ``2p`` (alpha) and
``2p + 1`` (beta).
"""

from __future__ import annotations

import numpy as np

from ..errors import InputError
from .fermion import FermionSum
from .pauli import PauliSum

SINGLET_KINDS = ("single", "d_sen0", "d_sen2_iiab", "d_sen2_ijaa", "d_sen4")
_ARITY = {"single": 2, "d_sen0": 2, "d_sen2_iiab": 3, "d_sen2_ijaa": 3, "d_sen4": 4}
ALPHA, BETA = 0, 1


def spin_orbital(p: int, spin: int) -> int:
    return 2 * p + spin


def kappa_single(n_modes: int, p: int, r: int) -> FermionSum:
    """``a_r^ a_p - a_p^ a_r`` (excite mode p into mode r)."""
    return FermionSum(n_modes, [(1.0, ((r, True), (p, False))), (-1.0, ((p, True), (r, False)))])


def kappa_double(n_modes: int, p: int, q: int, r: int, s: int) -> FermionSum:
    """``a_r^ a_s^ a_q a_p - a_p^ a_q^ a_s a_r``: lower indices (p, q), upper (r, s)."""
    return FermionSum(
        n_modes,
        [
            (1.0, ((r, True), (s, True), (q, False), (p, False))),
            (-1.0, ((p, True), (q, True), (s, False), (r, False))),
        ],
    )


def _check_indices(kind: str, idx) -> tuple[int, ...]:
    if kind not in _ARITY:
        raise InputError(f"unknown singlet kind {kind!r}; expected one of {SINGLET_KINDS}")
    idx = tuple(int(v) for v in idx)
    if len(idx) != _ARITY[kind]:
        raise InputError(f"{kind} takes {_ARITY[kind]} spatial indices, got {len(idx)}")
    if any(v < 0 for v in idx) or len(set(idx)) != len(idx):
        raise InputError(f"{kind} requires distinct non-negative spatial indices, got {idx}")
    return idx


def _modes(kind: str, idx, n_modes: int | None) -> int:
    need = 2 * (max(idx) + 1)
    if n_modes is None:
        return need
    if n_modes < need:
        raise InputError(f"n_modes={n_modes} too small for indices {idx}")
    return n_modes


def build_singlet(kind: str, indices, n_modes: int | None = None) -> FermionSum:
    """Anti-Hermitian singlet excitation generator ``T^{0,0}``.

    ``indices`` are spatial orbitals: ``(i, a)`` for ``single`` and ``d_sen0``,
    ``(i, a, b)`` for ``d_sen2_iiab``, ``(i, j, a)`` for ``d_sen2_ijaa`` and
    ``(i, j, a, b)`` for ``d_sen4``.
    """
    idx = _check_indices(kind, indices)
    n = _modes(kind, idx, n_modes)
    A, B = ALPHA, BETA
    so = spin_orbital
    if kind == "single":
        i, a = idx
        return kappa_single(n, so(i, A), so(a, A)) + kappa_single(n, so(i, B), so(a, B))
    if kind == "d_sen0":
        i, a = idx
        return kappa_double(n, so(i, A), so(i, B), so(a, A), so(a, B))
    if kind == "d_sen2_iiab":
        i, a, b = idx
        # relative minus: the alpha/beta pair must be spin-coupled to a singlet
        return kappa_double(n, so(i, A), so(i, B), so(a, A), so(b, B)) - kappa_double(
            n, so(i, A), so(i, B), so(a, B), so(b, A)
        )
    if kind == "d_sen2_ijaa":
        i, j, a = idx
        return kappa_double(n, so(i, A), so(j, B), so(a, A), so(a, B)) - kappa_double(
            n, so(i, B), so(j, A), so(a, A), so(a, B)
        )
    i, j, a, b = idx
    total = FermionSum(n)
    for s in (A, B):
        for sb in (A, B):
            total = total + kappa_double(n, so(i, s), so(j, sb), so(a, sb), so(b, s))
    return total


def singlet_split_terms(kind: str, indices, n_modes: int | None = None) -> list[FermionSum]:
    """Anti-Hermitian pieces ``O_n`` with ``sum(O_n) == T^{0,0}``.

    ``d_sen0`` has a single nonzero eigenvalue pair and is returned unsplit.
    """
    idx = _check_indices(kind, indices)
    n = _modes(kind, idx, n_modes)
    T = build_singlet(kind, idx, n)
    A, B = ALPHA, BETA
    so = spin_orbital

    def num(p):
        return FermionSum.number(n, p)

    def sq(op):
        return op @ op

    one = FermionSum.identity(n)
    if kind == "d_sen0":
        return [T]
    if kind == "single":
        i, a = idx
        o1 = kappa_single(n, so(i, A), so(a, A)) @ sq(num(so(i, B)) - num(so(a, B))) + kappa_single(
            n, so(i, B), so(a, B)
        ) @ sq(num(so(i, A)) - num(so(a, A)))
        return [o1, T - o1]
    if kind == "d_sen2_iiab":
        i, a, b = idx
        o1 = -kappa_double(n, so(i, A), so(i, B), so(a, B), so(b, A)) @ sq(
            num(so(a, A)) - num(so(b, B))
        ) + kappa_double(n, so(i, A), so(i, B), so(a, A), so(b, B)) @ sq(num(so(a, B)) - num(so(b, A)))
        return [o1, T - o1]
    if kind == "d_sen2_ijaa":
        i, j, a = idx
        o1 = -kappa_double(n, so(i, B), so(j, A), so(a, A), so(a, B)) @ sq(
            num(so(i, A)) - num(so(j, B))
        ) + kappa_double(n, so(i, A), so(j, B), so(a, A), so(a, B)) @ sq(num(so(i, B)) - num(so(j, A)))
        return [o1, T - o1]

    i, j, a, b = idx
    o1 = FermionSum(n)
    o2 = FermionSum(n)
    o3 = FermionSum(n)
    for s in (A, B):
        for sb in (A, B):
            k = kappa_double(n, so(i, s), so(j, sb), so(a, sb), so(b, s))
            # spectators: each orbital's spin-orbital of opposite spin to the one
            # k touches (for s != sb this is the literal a_s, b_sb, i_sb, j_s)
            n_as, n_bsb = num(so(a, 1 - sb)), num(so(b, 1 - s))
            n_isb, n_js = num(so(i, 1 - s)), num(so(j, 1 - sb))
            o1 = o1 + k @ (
                n_as @ n_isb @ (one - n_js) + n_bsb @ n_js @ (one - n_isb) - n_as @ n_bsb @ sq(n_isb - n_js)
            )
            o2 = o2 + k @ (
                n_isb @ n_js @ (one - n_as) + n_as @ n_bsb @ (one - n_isb) - n_js @ n_bsb @ sq(n_isb - n_as)
            )
            o3 = o3 + k @ (sq(n_isb - n_bsb) + sq(n_js - n_as))
    o3 = o3 - 2 * (o1 + o2)
    return [o1, o2, o3, T - o1 - o2 - o3]


def spin_operators(n_spatial: int) -> tuple[FermionSum, FermionSum]:
    """``(S_z, S^2)`` over ``n_spatial`` orbitals."""
    n = 2 * n_spatial
    sz = FermionSum(n)
    splus = FermionSum(n)
    for p in range(n_spatial):
        sz = sz + 0.5 * (FermionSum.number(n, 2 * p) - FermionSum.number(n, 2 * p + 1))
        splus = splus + FermionSum(n, [(1.0, ((2 * p, True), (2 * p + 1, False)))])
    s2 = splus.adjoint() @ splus + sz @ (sz + 1.0)
    return sz, s2


def transmon(b: float, c: float) -> PauliSum:
    return PauliSum.from_terms(2, [(1.0, "X0"), (-b, "Z0 X1"), (c, "X1")])


MATCHGATE_LABELS = ("X0 X1", "Y0 Y1", "X0 Y1", "Y0 X1", "Z0", "Z1")


def matchgate(coeffs) -> PauliSum:
    coeffs = [float(v) for v in coeffs]
    if len(coeffs) != 6:
        raise InputError("matchgate takes 6 real coefficients")
    return PauliSum.from_terms(2, zip(coeffs, MATCHGATE_LABELS))


def fsim_swap_part() -> PauliSum:
    """``(XX + YY)/2``: the generator multiplying theta."""
    return PauliSum.from_terms(2, [(0.5, "X0 X1"), (0.5, "Y0 Y1")])


def fsim_phase_part() -> PauliSum:
    """``(1 - Z0)(1 - Z1)/4``: the generator multiplying phi."""
    return PauliSum.from_terms(2, [(0.25, ""), (-0.25, "Z0"), (-0.25, "Z1"), (0.25, "Z0 Z1")])


def fsim(theta: float, phi: float) -> PauliSum:
    return theta * fsim_swap_part() + phi * fsim_phase_part()


def build_named_gate(name: str, *params) -> PauliSum:
    """``transmon(b, c)``, ``matchgate(c1..c6)`` or ``fsim(theta, phi)`` generator."""
    if name == "transmon":
        return transmon(*params)
    if name == "matchgate":
        return matchgate(params[0] if len(params) == 1 else params)
    if name == "fsim":
        return fsim(*params)
    raise InputError(f"unknown gate {name!r}")


def antisymmetric_example_unitary(n_qubits: int = 3) -> np.ndarray:
    """``exp(A)`` with ``A[i, j] = 1`` below and ``-1`` above the diagonal."""
    from scipy.linalg import expm

    dim = 1 << n_qubits
    a = np.tril(np.ones((dim, dim)), -1) - np.triu(np.ones((dim, dim)), 1)
    return expm(a)


def three_qubit_example() -> np.ndarray:
    """Dense ``U^dag Z_0 U + Z_1`` on 3 qubits, with ``U`` from
    :func:`antisymmetric_example_unitary`."""
    u = antisymmetric_example_unitary(3)
    z0 = PauliSum.from_terms(3, [(1.0, "Z0")]).to_dense()
    z1 = PauliSum.from_terms(3, [(1.0, "Z1")]).to_dense()
    g = u.conj().T @ z0 @ u + z1
    return (g + g.conj().T) / 2
