import numpy as np
import pytest

import vcne


@pytest.fixture
def path_graph():
    # 0 - 1 - 2
    return vcne.from_pairs(3, [[0, 1], [1, 2]])


@pytest.fixture
def triangle():
    return vcne.from_pairs(3, [[0, 1], [1, 2], [0, 2]])


def random_graph(rng, n, n_edges, allow_negative=False):
    """Random simple undirected graph as a Graph, for oracle tests."""
    pairs = set()
    for _ in range(n_edges * 3):
        a, b = rng.integers(0, n, 2)
        if a != b:
            pairs.add((min(int(a), int(b)), max(int(a), int(b))))
        if len(pairs) == n_edges:
            break
    pairs = np.array(sorted(pairs), dtype=np.int64).reshape(-1, 2)
    if allow_negative:
        w = rng.choice([1.0, -1.0, 2.0], size=len(pairs))
    else:
        w = np.ones(len(pairs))
    return vcne.from_pairs(n, pairs, weights=w)
