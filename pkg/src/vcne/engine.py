"""Bulk-synchronous superstep execution over partitioned edges.

One superstep = send over every directed triplet, merge per target with a
fixed deterministic fold order, then apply per updated vertex. Messages
are folded into per-partition accumulators immediately, so peak per-vertex
intermediate state is one vector per partition touching that vertex,
never one per neighbor.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np


class NonFiniteMessageError(RuntimeError):
    def __init__(self, src, dst):
        super().__init__(f"non-finite message on edge ({src} -> {dst})")
        self.edge = (int(src), int(dst))


@dataclass
class AccumulatorStats:
    """Instrumentation: accumulator slots allocated per target vertex.

    One slot = one (partition, target) entry; the engine's memory bound is
    slots[v] <= number of partitions, independent of degree."""

    slots_per_vertex: np.ndarray = None

    @property
    def peak_slots(self):
        return int(self.slots_per_vertex.max()) if len(self.slots_per_vertex) else 0


@dataclass
class PartialAccumulator:
    """Per-partition running sums: compact target list plus one vector each."""

    targets: np.ndarray
    values: np.ndarray
    counts: np.ndarray


def _accumulate_block(g, block, state, send, merge):
    """Fold one edge block into a compact per-target accumulator."""
    src = g.src[block]
    dst = g.dst[block]
    w = g.weight[block]
    msgs = send(w, state[src], state[dst])
    msgs = np.atleast_2d(np.asarray(msgs, dtype=np.float64))
    if msgs.shape[0] != len(block):
        raise ValueError("send must return one message per triplet")
    bad = ~np.isfinite(msgs).all(axis=1)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NonFiniteMessageError(src[i], dst[i])
    targets, inv = np.unique(dst, return_inverse=True)
    if merge is None:
        values = np.zeros((len(targets), msgs.shape[1]))
        np.add.at(values, inv, msgs)
    else:
        # generic combiner: fold per target in edge order
        acc = {}
        for t, m in zip(inv, msgs):
            acc[t] = merge(acc[t], m) if t in acc else m
        values = np.stack([acc[t] for t in range(len(targets))])
    counts = np.bincount(inv, minlength=len(targets))
    return PartialAccumulator(targets, values, counts)


def reduce_deterministic(partials, num_vertices, dim, merge=None):
    """Fold per-partition partials in ascending partition-index order.

    Returns (merged, received) where merged[v] is the final combined
    message for v and received[v] the number of contributing messages."""
    merged = np.zeros((num_vertices, dim))
    received = np.zeros(num_vertices, dtype=np.int64)
    for part in partials:
        if merge is None:
            merged[part.targets] += part.values
        else:
            for t, v in zip(part.targets, part.values):
                merged[t] = merge(merged[t], v) if received[t] else v
        received[part.targets] += part.counts
    return merged, received


def aggregate_messages(g, state, send, merge=None, threads=1, stats=None):
    """Run the send+merge phases of one superstep.

    `send(w, u_src, u_dst) -> (n, k)` is invoked once per edge block with
    the triplets of that block; all sends read the pre-step state."""
    state = np.asarray(state, dtype=np.float64)
    blocks = [b for b in g.blocks if len(b)]
    if not blocks:
        dim = state.shape[1] if state.ndim == 2 else 1
        return np.zeros((g.num_vertices, dim)), np.zeros(g.num_vertices, dtype=np.int64)
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(
                lambda b: _accumulate_block(g, b, state, send, merge), blocks))
    else:
        partials = [_accumulate_block(g, b, state, send, merge) for b in blocks]
    if stats is not None:
        slots = np.zeros(g.num_vertices, dtype=np.int64)
        for part in partials:
            slots[part.targets] += 1
        stats.slots_per_vertex = slots
    dim = partials[0].values.shape[1]
    return reduce_deterministic(partials, g.num_vertices, dim, merge)


def superstep(g, state, send, merge=None, apply=None, threads=1, stats=None):
    """One full superstep; returns the new state table, old one untouched.

    `apply(u_rows, merged_rows) -> new_rows` runs once over the vertices
    that received at least one message; all others keep their state."""
    state = np.asarray(state, dtype=np.float64)
    merged, received = aggregate_messages(g, state, send, merge, threads, stats)
    new_state = state.copy()
    touched = np.flatnonzero(received)
    if apply is not None and len(touched):
        new_state[touched] = apply(state[touched], merged[touched])
    return new_state
