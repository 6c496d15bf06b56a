"""Stochastic block model generator for controlled synthetic graphs."""

import numpy as np

from .graph import from_pairs


def sbm_graph(block_sizes, p_in, p_out, seed=0):
    """Sample an undirected SBM; returns (Graph, block labels)."""
    block_sizes = list(block_sizes)
    n = sum(block_sizes)
    labels = np.repeat(np.arange(len(block_sizes)), block_sizes)
    gen = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    p = np.where(labels[iu] == labels[ju], p_in, p_out)
    keep = gen.random(len(p)) < p
    pairs = np.stack([iu[keep], ju[keep]], axis=1)
    return from_pairs(n, pairs), labels
