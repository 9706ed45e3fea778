import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import random_hermitian  # noqa: E402

from shiftrule.simulate import Circuit, GradientContext  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_context(G, rng, n_before=2, n_after=2, tau=None):
    """Gradient context with random dense gates around generator ``G``."""
    gm = G.to_dense() if hasattr(G, "to_dense") else np.asarray(G)
    dim = gm.shape[0]
    n = dim.bit_length() - 1
    u1 = Circuit.from_gates(n, [(random_hermitian(dim, rng), rng.uniform(-1, 1)) for _ in range(n_before)])
    u2 = Circuit.from_gates(n, [(random_hermitian(dim, rng), rng.uniform(-1, 1)) for _ in range(n_after)])
    t = rng.uniform(-np.pi, np.pi) if tau is None else tau
    return GradientContext.make(random_hermitian(dim, rng), G, t, u1, u2)


def dense_parts(ctx):
    """``(H, G, tau, U1, U2)`` as dense matrices for the oracles."""
    from oracles import circuit_unitary

    dim = ctx.G.shape[0]
    eye = np.eye(dim, dtype=complex)
    u1 = circuit_unitary([(g.generator, g.amplitude) for g in ctx.U1.gates]) if len(ctx.U1) else eye
    u2 = circuit_unitary([(g.generator, g.amplitude) for g in ctx.U2.gates]) if len(ctx.U2) else eye
    return ctx.H, ctx.G, ctx.tau, u1, u2


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
