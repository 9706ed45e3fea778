"""Non-commutative CSA decomposition ``G = offset + sum c_n V_n^dag Z V_n``.

Each term is a scaled traceless reflection; the unitaries are parametrized as
``V_n = expm(A_n)`` with anti-Hermitian ``A_n`` and the Frobenius residual is
minimized by nonlinear least squares with random restarts.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm
from scipy.optimize import least_squares

from ..errors import ConvergenceError, InputError
from ..operators.convert import as_hermitian
from .base import OPTIMIZED_TOL, DecompTerm, Decomposition, z_diagonal

DEFAULT_RESTARTS = 8
DEFAULT_MAX_NFEV = 2000


def _anti_hermitian(x: np.ndarray, dim: int) -> np.ndarray:
    # d^2 reals: strict upper triangle as complex pairs plus an imaginary diagonal
    iu = np.triu_indices(dim, 1)
    k = len(iu[0])
    a = np.zeros((dim, dim), dtype=complex)
    a[iu] = x[:k] + 1j * x[k : 2 * k]
    a = a - a.conj().T
    a[np.diag_indices(dim)] = 1j * x[2 * k :]
    return a


def _reflections(params: np.ndarray, k_prime: int, dim: int, z: np.ndarray):
    size = dim * dim
    cs = params[:k_prime]
    out = []
    for n in range(k_prime):
        v = expm(_anti_hermitian(params[k_prime + n * size : k_prime + (n + 1) * size], dim))
        out.append((v, v.conj().T @ (z[:, None] * v)))
    return cs, out


def _residual_vector(params, g0, k_prime, dim, z):
    cs, refl = _reflections(params, k_prime, dim, z)
    r = g0.copy()
    for c, (_, rn) in zip(cs, refl):
        r -= c * rn
    iu = np.triu_indices(dim)
    # Hermitian residual: upper triangle carries everything (off-diagonal twice)
    w = np.where(iu[0] == iu[1], 1.0, np.sqrt(2.0))
    vals = r[iu] * w
    return np.concatenate([vals.real, vals.imag[iu[0] != iu[1]]])


def csa_noncommutative(
    g,
    k_prime: int,
    seed: int | None = None,
    restarts: int = DEFAULT_RESTARTS,
    max_nfev: int = DEFAULT_MAX_NFEV,
    target_tol: float = 1e-12,
) -> Decomposition:
    """Fit ``G - offset`` by ``k_prime`` scaled reflections.

    Stops early once the residual drops below ``target_tol * ||G||_F``.
    Success means residual below ``1e-6 * ||G||_F``; otherwise
    :class:`ConvergenceError` is raised with the best decomposition attached.
    """
    if int(k_prime) < 1:
        raise InputError("k_prime must be at least 1")
    k_prime = int(k_prime)
    gm = as_hermitian(g)
    dim = gm.shape[0]
    n_qubits = dim.bit_length() - 1
    offset = float(np.trace(gm).real / dim)
    g0 = gm - offset * np.eye(dim)
    gnorm = float(np.linalg.norm(gm))
    z = z_diagonal(1 << (n_qubits - 1), dim).astype(float)
    rng = np.random.default_rng(seed)
    scale = max(float(np.linalg.norm(g0, 2)), 1e-12)

    best = None
    for _ in range(max(1, restarts)):
        x0 = np.concatenate(
            [rng.normal(scale=scale / k_prime, size=k_prime), rng.normal(scale=1.0, size=k_prime * dim * dim)]
        )
        sol = least_squares(
            _residual_vector,
            x0,
            args=(g0, k_prime, dim, z),
            method="trf",
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
            max_nfev=max_nfev,
        )
        res = float(np.linalg.norm(sol.fun))
        if best is None or res < best[0]:
            best = (res, sol.x)
        if res < target_tol * max(1.0, gnorm):
            break

    res, x = best
    cs, refl = _reflections(x, k_prime, dim, z)
    terms = []
    unitaries = []
    for c, (v, rn) in zip(cs, refl):
        sign = 1.0 if c >= 0 else -1.0
        terms.append(DecompTerm(float(abs(c)), sign * (rn + rn.conj().T) / 2, "pm"))
        unitaries.append(v)
    decomp = Decomposition(
        "csa_noncommutative", terms, n_qubits, offset=offset, unitaries=unitaries, info={"k_prime": k_prime}
    )
    decomp.residual = decomp.residual_against(gm)
    decomp.success = decomp.residual < OPTIMIZED_TOL * max(gnorm, 1e-300)
    if not decomp.success:
        raise ConvergenceError(
            f"non-commutative CSA with K'={k_prime} stopped at residual {decomp.residual:.3g}", decomp
        )
    return decomp
