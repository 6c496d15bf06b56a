"""Per-iteration random negative graphs.

Each vertex i with degree d_i gets round(ratio * d_i) incoming edges
(j -> i) of weight -1, with j drawn uniformly from V. Draws come from a
counter-based stream keyed by (seed, iteration, vertex, slot, attempt),
so regeneration is reproducible and parallelizable over vertex ranges.
"""

from dataclasses import dataclass

import numpy as np

from . import rng
from .graph import Graph

# extra uniqueness-free attempts after max_rejections, rejecting only j == i
_FALLBACK_ATTEMPTS = 64


@dataclass
class SamplerConfig:
    negative_ratio: float = 1.0
    seed: int = 0
    exclude_true_neighbors: bool = True
    max_rejections: int = 100

    def __post_init__(self):
        if self.negative_ratio <= 0:
            raise ValueError("negative_ratio must be positive")


def sample_negative_graph(g, cfg, iteration):
    """Draw this iteration's random graph; weight -1 edges directed j -> i."""
    n = g.num_vertices
    if n < 2:
        raise ValueError("need at least 2 vertices to sample negatives")
    counts = np.rint(cfg.negative_ratio * g.degrees).astype(np.int64)
    total = int(counts.sum())
    if total == 0:
        z = np.zeros(0, dtype=np.int64)
        return Graph(n, z, z, np.zeros(0))
    target = np.repeat(np.arange(n, dtype=np.int64), counts)
    slot = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)

    if cfg.exclude_true_neighbors:
        g.adjacency  # force CSR build once, outside the rejection loop

    source = np.full(total, -1, dtype=np.int64)
    pending = np.arange(total)
    attempt = 0
    while len(pending) and attempt < cfg.max_rejections:
        cand = rng.randint(n, rng.TAG_NEGATIVE, cfg.seed, iteration, target[pending], slot[pending], attempt)
        ok = cand != target[pending]
        if cfg.exclude_true_neighbors:
            ok &= ~g.contains_pairs(target[pending], cand)
        source[pending[ok]] = cand[ok]
        pending = pending[~ok]
        attempt += 1
    # rejection budget exhausted: accept any j != i
    while len(pending) and attempt < cfg.max_rejections + _FALLBACK_ATTEMPTS:
        cand = rng.randint(n, rng.TAG_NEGATIVE, cfg.seed, iteration, target[pending], slot[pending], attempt)
        ok = cand != target[pending]
        source[pending[ok]] = cand[ok]
        pending = pending[~ok]
        attempt += 1
    if len(pending):
        raise RuntimeError("negative sampler failed to find a non-self target")
    return Graph(n, source, target, np.full(total, -1.0))
