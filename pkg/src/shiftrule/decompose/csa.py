"""Commutative Cartan-subalgebra decomposition ``G = V^dag (sum c_n Z_n) V``.

After diagonalization the only freedom is which basis label each eigenvalue
gets. For a fixed assignment the diagonal expands over Z-strings by a Walsh
transform, so the term count K is the number of nonzero Walsh coefficients.
"""

from __future__ import annotations

import bisect
import math
from itertools import permutations

import numpy as np
from scipy.linalg import hadamard

from ..errors import InputError
from ..operators.convert import as_hermitian
from ..operators.pauli import MAX_DENSE_QUBITS
from ..spectral import eigendecompose
from .base import EXACT_TOL, DecompTerm, Decomposition, z_diagonal

PRUNE_RTOL = 1e-9
EXHAUSTIVE_MAX_QUBITS = 3
DEFAULT_ANNEAL_STEPS = 10_000


def fwht(v: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform (Sylvester ordering)."""
    out = np.array(v, dtype=float)
    dim = len(out)
    h = 1
    while h < dim:
        out = out.reshape(-1, 2, h)
        out = np.stack([out[:, 0] + out[:, 1], out[:, 0] - out[:, 1]], axis=1)
        h *= 2
    return out.reshape(dim)


def walsh(diag: np.ndarray) -> np.ndarray:
    """Coefficients ``c_m`` with ``diag[x] = sum_m c_m (-1)^popcount(x & m)``."""
    return fwht(diag) / len(diag)


def _unique_permutations(labels: tuple[int, ...]) -> np.ndarray:
    # multiset permutations, lexicographic
    return np.array(sorted(set(permutations(labels))), dtype=np.int64)


def _score(coeffs: np.ndarray, cut: float) -> tuple[int, tuple[int, ...]]:
    nz = np.flatnonzero(np.abs(coeffs) > cut)
    return len(nz), tuple(nz.tolist())


def _exhaustive(values: np.ndarray, cluster: np.ndarray, cut: float) -> np.ndarray:
    """Best assignment: ``diag[x] = values[assign[x]]`` over cluster-deduplicated labelings."""
    dim = len(values)
    reps = np.array([np.flatnonzero(cluster == k)[0] for k in range(cluster.max() + 1)])
    perms = _unique_permutations(tuple(cluster.tolist()))
    h = hadamard(dim) / dim
    coeffs = values[reps][perms] @ h.T
    counts = (np.abs(coeffs) > cut).sum(axis=1)
    best = None
    for row in np.flatnonzero(counts == counts.min()):
        key = _score(coeffs[row], cut)
        if best is None or key < best[0]:
            best = (key, row)
    labels = perms[best[1]]
    # turn cluster labels into a permutation of eigenvector columns
    assign = np.empty(dim, dtype=np.int64)
    pools = {k: list(np.flatnonzero(cluster == k)) for k in range(cluster.max() + 1)}
    for x, k in enumerate(labels):
        assign[x] = pools[k].pop(0)
    return assign


def _rank_match(values_sorted_idx: np.ndarray, target: np.ndarray) -> np.ndarray:
    # L2-optimal assignment of sorted eigenvalues to the order of the target
    assign = np.empty(len(target), dtype=np.int64)
    assign[np.argsort(target, kind="stable")] = values_sorted_idx
    return assign


def _alternate(values: np.ndarray, k: int, cut: float, rng, restarts: int, iters: int = 100):
    """Alternating projection: keep the top-k Walsh terms, then rank-match eigenvalues."""
    dim = len(values)
    order = np.argsort(values, kind="stable")
    labels = np.arange(dim)
    # structured starts: binary counting order and Hamming-weight order
    starts = [_rank_match(order, labels), _rank_match(order, np.bitwise_count(labels) * dim + labels)]
    for r in range(restarts + len(starts)):
        assign = starts[r] if r < len(starts) else rng.permutation(dim)
        for _ in range(iters):
            c = walsh(values[assign])
            if (np.abs(c) > cut).sum() <= k:
                return assign
            keep = np.argsort(-np.abs(c), kind="stable")[:k]
            sparse = np.zeros(dim)
            sparse[keep] = c[keep]
            new = _rank_match(order, fwht(sparse))
            if np.array_equal(values[new], values[assign]):
                break
            assign = new
    return None


def _pair_off(vals: np.ndarray, d: float, tol: float) -> np.ndarray | None:
    """Split sorted ``vals`` into pairs ``(x, x - 2d)``; return the midpoints ``x - d``."""
    remaining = list(vals)
    mids = []
    while remaining:
        x = remaining.pop()
        want = x - 2 * d
        k = bisect.bisect_left(remaining, want - tol)
        if k >= len(remaining) or abs(remaining[k] - want) > tol:
            return None
        remaining.pop(k)
        mids.append(x - d)
    return np.sort(np.array(mids))


def _peel(vals: np.ndarray, levels: int, tol: float, budget: list[int]) -> list[float] | None:
    """Write sorted ``vals`` as ``offset + sum_l d_l z_l`` over ``levels`` independent signs."""
    if vals[-1] - vals[0] <= tol:
        return [0.0] * levels
    if levels == 0 or budget[0] <= 0:
        return None
    top = vals[-1]
    candidates = sorted({round((top - y) / 2, 12) for y in vals})
    for d in candidates[:8]:
        budget[0] -= 1
        mids = _pair_off(vals, d, tol)
        if mids is None:
            continue
        rest = _peel(mids, levels - 1, tol, budget)
        if rest is not None:
            return [d] + rest
    return None


def _peel_assignment(values: np.ndarray, cut: float) -> np.ndarray | None:
    dim = len(values)
    n = dim.bit_length() - 1
    ds = _peel(np.sort(values), n, cut, [10_000])
    if ds is None:
        return None
    x = np.arange(dim)
    target = np.full(dim, values.mean())
    for level, d in enumerate(ds):
        target += d * (1 - 2 * ((x >> (n - 1 - level)) & 1))
    return _rank_match(np.argsort(values, kind="stable"), target)


def _anneal(values: np.ndarray, cut: float, steps: int, seed, restarts: int = 20) -> np.ndarray:
    dim = len(values)
    rng = np.random.default_rng(seed)
    start = _peel_assignment(values, cut)
    k_peel = dim if start is None else int((np.abs(walsh(values[start])) > cut).sum())
    for k in range(1, k_peel):
        alt = _alternate(values, k, cut, rng, restarts)
        if alt is not None:
            start = alt
            break
    assign = np.arange(dim) if start is None else start.copy()
    h = hadamard(dim).astype(float) if dim <= 1024 else None
    coeffs = walsh(values[assign])
    scale = float(np.abs(values).max()) or 1.0

    def energy(c):
        # term count plus an L1 tie-breaker that rewards drifting toward sparsity
        return (np.abs(c) > cut).sum() + np.abs(c).sum() / scale

    cur = energy(coeffs)
    best, best_e = assign.copy(), cur
    t0, t1 = 1.0, 1e-3
    for step in range(steps if h is not None else 0):
        temp = t0 * (t1 / t0) ** (step / max(1, steps - 1))
        x, y = rng.choice(dim, size=2, replace=False)
        dv = values[assign[y]] - values[assign[x]]
        if dv == 0.0:
            continue
        trial = coeffs + (h[:, x] - h[:, y]) * dv / dim
        e = energy(trial)
        if e <= cur or rng.random() < math.exp((cur - e) / temp):
            assign[x], assign[y] = assign[y], assign[x]
            coeffs, cur = trial, e
            if cur < best_e:
                best, best_e = assign.copy(), cur
    return best


def csa_commutative(
    g,
    search: str = "auto",
    seed: int | None = None,
    steps: int = DEFAULT_ANNEAL_STEPS,
) -> Decomposition:
    """Decompose ``G = offset + V^dag (sum c_n Z_n) V`` with few Z-strings.

    ``search`` is ``exhaustive`` (minimal K, up to 3 qubits), ``anneal``
    (seeded heuristic) or ``auto``.
    """
    report = eigendecompose(g)
    dim = report.dim
    n = dim.bit_length() - 1
    if n > MAX_DENSE_QUBITS:
        raise InputError(f"commutative CSA limited to {MAX_DENSE_QUBITS} qubits")
    if search == "auto":
        search = "exhaustive" if n <= EXHAUSTIVE_MAX_QUBITS else "anneal"
    if search not in ("exhaustive", "anneal"):
        raise InputError(f"unknown search {search!r}")
    if search == "exhaustive" and n > EXHAUSTIVE_MAX_QUBITS:
        raise InputError(f"exhaustive search limited to {EXHAUSTIVE_MAX_QUBITS} qubits")

    cluster = np.array(report.projector_index)
    lams = np.array(report.eigenvalues)
    values = lams[cluster]
    offset = float(values.mean())
    values = values - offset
    cut = PRUNE_RTOL * max(float(np.abs(lams).max()), 1e-300)
    if search == "exhaustive":
        assign = _exhaustive(values, cluster, cut)
    else:
        assign = _anneal(values, cut, steps, seed)

    coeffs = walsh(values[assign])
    v = report.eigenbasis[:, assign].conj().T
    terms = []
    for m in np.flatnonzero(np.abs(coeffs) > cut):
        op = v.conj().T @ (z_diagonal(int(m), dim)[:, None] * v)
        terms.append(DecompTerm(float(coeffs[m]), op, "pm", int(m)))
    decomp = Decomposition(
        "csa_commutative", terms, n, offset=offset, frame=v, info={"search": search}
    )
    target = as_hermitian(g)
    decomp.residual = decomp.residual_against(target)
    if decomp.residual > EXACT_TOL * max(1.0, float(np.linalg.norm(target))):
        decomp.success = False
    return decomp
