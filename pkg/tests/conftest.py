import numpy as np
import pytest

from skygraph.graph import GraphSnapshot, edge_key


def make_snapshot(edges, vertices=None, time=0.0):
    """Snapshot from {('A','B'): w} plus any extra isolated vertices."""
    canonical = {edge_key(a, b): w for (a, b), w in edges.items()}
    names = set(vertices or [])
    for a, b in canonical:
        names.add(a)
        names.add(b)
    return GraphSnapshot(time=time, vertices=frozenset(names), edges=canonical)


def random_snapshot(rng: np.random.Generator, n_max=8, p=0.3, time=0.0):
    n = int(rng.integers(2, n_max + 1))
    names = [f"A{k:02d}" for k in range(n)]
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges[(names[i], names[j])] = float(rng.uniform(0.05, 1.0))
    return make_snapshot(edges, vertices=names, time=time)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
