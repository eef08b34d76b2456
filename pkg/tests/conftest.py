"""Shared fixtures: an independent matrix-exponential oracle and graph makers."""

from __future__ import annotations

import numpy as np
import pytest
import scipy.linalg

from sedwalk.graphs import ADJACENCY, MatrixKind, WeightedGraph


@pytest.fixture(scope="session")
def oracle():
    """Dense matrix exponential U(t) = exp(i t M), independent of the package's
    spectral path."""

    def evolve(g: WeightedGraph, kind: MatrixKind, t: float) -> np.ndarray:
        m = g.matrix(kind)
        return scipy.linalg.expm(1j * t * m)

    return evolve


def _connected(g: WeightedGraph) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in g.incident(u):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


@pytest.fixture(scope="session")
def rand_graph():
    """Random simple graph factory with small integer weights (exact spectra
    stay recognizable)."""

    def make(
        rng: np.random.Generator,
        n: int,
        p: float = 0.5,
        weights: tuple[int, ...] = (1, 2, 3),
        connected: bool = False,
    ) -> WeightedGraph:
        for _ in range(200):
            edges = [
                (u, v, int(rng.choice(weights)))
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < p
            ]
            g = WeightedGraph.from_edges(n, edges)
            if not connected or _connected(g):
                return g
        raise RuntimeError("could not sample a connected graph")

    return make


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One visible pass/fail line per acceptance criterion."""
    lines: dict[str, str] = {}
    for outcome, mark in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid:
                lines[nodeid.split("::")[-1]] = mark
    if lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for name in sorted(lines):
            terminalreporter.write_line(f"  {name}: {lines[name]}")
