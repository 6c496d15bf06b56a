"""Weighted directed edge-set graphs with hash partitioning.

Undirected graphs are stored as two directed edges per input pair, since
message passing runs per directed triplet. Degrees and adjacency are
computed over the undirected view (unique unordered endpoint pairs).
"""

from dataclasses import dataclass, field

import numpy as np

from .rng import hash_words

STRATEGIES = ("hash-src", "hash-edge")


class GraphFormatError(ValueError):
    """Malformed or invalid edge-list input."""


@dataclass
class RemapTable:
    """Bijection between external vertex ids and dense ids in [0, |V|)."""

    to_external: np.ndarray  # dense id -> external id

    def __post_init__(self):
        self.to_external = np.asarray(self.to_external, dtype=np.int64)
        self._to_dense = {int(e): i for i, e in enumerate(self.to_external)}
        if len(self._to_dense) != len(self.to_external):
            raise ValueError("external ids are not unique")

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n, dtype=np.int64))

    def dense(self, external_id):
        return self._to_dense[int(external_id)]

    def external(self, dense_id):
        return int(self.to_external[dense_id])

    def __len__(self):
        return len(self.to_external)

    def save(self, path):
        with open(path, "w") as f:
            for dense_id, ext in enumerate(self.to_external):
                f.write(f"{ext} {dense_id}\n")

    @classmethod
    def load(cls, path):
        ext = []
        with open(path) as f:
            for line in f:
                a, b = line.split()
                ext.append((int(b), int(a)))
        ext.sort()
        return cls(np.array([e for _, e in ext], dtype=np.int64))


@dataclass
class Graph:
    """Immutable after construction; safe for concurrent readers."""

    num_vertices: int
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray
    num_partitions: int = 1
    strategy: str = "hash-src"
    remap: RemapTable = None
    num_self_loops_skipped: int = 0
    _blocks: list = field(default=None, repr=False)
    _degrees: np.ndarray = field(default=None, repr=False)
    _adj: tuple = field(default=None, repr=False)

    def __post_init__(self):
        self.src = np.asarray(self.src, dtype=np.int64)
        self.dst = np.asarray(self.dst, dtype=np.int64)
        self.weight = np.asarray(self.weight, dtype=np.float64)
        if len(self.src) and (self.src.max() >= self.num_vertices or self.dst.max() >= self.num_vertices):
            raise GraphFormatError("edge endpoint out of range")
        if np.any(self.weight == 0.0):
            raise GraphFormatError("zero edge weight")
        if np.any(self.src == self.dst):
            raise GraphFormatError("self-loop in edge arrays")
        if self.remap is None:
            self.remap = RemapTable.identity(self.num_vertices)
        if self._blocks is None:
            self._blocks = _assign_blocks(self.src, self.dst, self.num_partitions, self.strategy)

    @property
    def num_edges(self):
        """Number of directed edges."""
        return len(self.src)

    @property
    def blocks(self):
        """Edge-index arrays, one per partition; disjoint cover of all edges."""
        return self._blocks

    def _undirected_keys(self):
        lo = np.minimum(self.src, self.dst)
        hi = np.maximum(self.src, self.dst)
        return np.unique(lo * np.int64(self.num_vertices) + hi)

    @property
    def degrees(self):
        """Per-vertex degree over the undirected view."""
        if self._degrees is None:
            keys = self._undirected_keys()
            ends = np.concatenate([keys // self.num_vertices, keys % self.num_vertices])
            self._degrees = np.bincount(ends, minlength=self.num_vertices)
        return self._degrees

    @property
    def num_undirected_edges(self):
        return len(self._undirected_keys())

    def degree(self, i):
        if not 0 <= i < self.num_vertices:
            raise IndexError(f"vertex id {i} out of range [0, {self.num_vertices})")
        return int(self.degrees[i])

    def _build_adjacency(self):
        keys = self._undirected_keys()
        lo, hi = keys // self.num_vertices, keys % self.num_vertices
        heads = np.concatenate([lo, hi])
        tails = np.concatenate([hi, lo])
        order = np.lexsort((tails, heads))
        heads, tails = heads[order], tails[order]
        indptr = np.zeros(self.num_vertices + 1, dtype=np.int64)
        np.cumsum(np.bincount(heads, minlength=self.num_vertices), out=indptr[1:])
        # sorted (head, tail) pairs encoded for O(log) membership tests
        pair_keys = heads * np.int64(self.num_vertices) + tails
        self._adj = (indptr, tails, pair_keys)

    @property
    def adjacency(self):
        """(indptr, neighbors) CSR over the undirected view, neighbors sorted."""
        if self._adj is None:
            self._build_adjacency()
        return self._adj[0], self._adj[1]

    def neighbors(self, i):
        indptr, nbrs = self.adjacency
        return nbrs[indptr[i]:indptr[i + 1]]

    def has_undirected_edge(self, u, v):
        if self._adj is None:
            self._build_adjacency()
        keys = self._adj[2]
        q = np.int64(u) * np.int64(self.num_vertices) + np.int64(v)
        pos = np.searchsorted(keys, q)
        return pos < len(keys) and keys[pos] == q

    def contains_pairs(self, heads, tails):
        """Vectorized undirected-edge membership test."""
        if self._adj is None:
            self._build_adjacency()
        keys = self._adj[2]
        q = np.asarray(heads, dtype=np.int64) * np.int64(self.num_vertices) + np.asarray(tails, dtype=np.int64)
        pos = np.searchsorted(keys, q)
        pos = np.minimum(pos, len(keys) - 1) if len(keys) else pos
        if len(keys) == 0:
            return np.zeros(len(q), dtype=bool)
        return keys[pos] == q


def _assign_blocks(src, dst, p, strategy):
    if p < 1:
        raise ValueError("partition count must be >= 1")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown partition strategy {strategy!r}")
    if p == 1:
        return [np.arange(len(src), dtype=np.int64)]
    if strategy == "hash-src":
        h = hash_words(src)
    else:
        h = hash_words(src, dst)
    block_id = (h % np.uint64(p)).astype(np.int64)
    return [np.flatnonzero(block_id == b) for b in range(p)]


def partition_edges(g, p, strategy="hash-src"):
    """Re-partition a graph's edges; pure function of ids and p."""
    return Graph(
        num_vertices=g.num_vertices,
        src=g.src,
        dst=g.dst,
        weight=g.weight,
        num_partitions=p,
        strategy=strategy,
        remap=g.remap,
        num_self_loops_skipped=g.num_self_loops_skipped,
        _degrees=g._degrees,
        _adj=g._adj,
    )


def union(g, h):
    """Edge-multiset union; duplicates kept, partitioning recomputed."""
    if g.num_vertices != h.num_vertices:
        raise ValueError(f"vertex-count mismatch: {g.num_vertices} != {h.num_vertices}")
    return Graph(
        num_vertices=g.num_vertices,
        src=np.concatenate([g.src, h.src]),
        dst=np.concatenate([g.dst, h.dst]),
        weight=np.concatenate([g.weight, h.weight]),
        num_partitions=g.num_partitions,
        strategy=g.strategy,
        remap=g.remap,
    )


def empty_graph(num_vertices):
    z = np.zeros(0, dtype=np.int64)
    return Graph(num_vertices, z, z, np.zeros(0))


def from_pairs(num_vertices, pairs, weights=None, undirected=True, partitions=1, strategy="hash-src"):
    """Build a graph from an (n, 2) array of endpoint pairs."""
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if weights is None:
        weights = np.ones(len(pairs))
    weights = np.asarray(weights, dtype=np.float64)
    if undirected:
        src = np.concatenate([pairs[:, 0], pairs[:, 1]])
        dst = np.concatenate([pairs[:, 1], pairs[:, 0]])
        weights = np.concatenate([weights, weights])
    else:
        src, dst = pairs[:, 0], pairs[:, 1]
    return Graph(num_vertices, src, dst, weights, num_partitions=partitions, strategy=strategy)


def load_edge_list(path, undirected=True):
    """Parse a whitespace-separated `src dst [weight]` file.

    External ids are densified in first-seen order; duplicate edges keep
    the last weight seen; self-loops are skipped and counted.
    """
    remap = {}
    ext_order = []
    edges = {}  # dedup key -> (insertion order, src, dst, weight)
    skipped = 0
    order = 0
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise GraphFormatError(f"{path}:{lineno}: expected `src dst [weight]`, got {line!r}")
            try:
                ext_s, ext_d = int(parts[0]), int(parts[1])
                w = float(parts[2]) if len(parts) == 3 else 1.0
            except ValueError as exc:
                raise GraphFormatError(f"{path}:{lineno}: {exc}") from None
            if w == 0.0:
                raise GraphFormatError(f"{path}:{lineno}: zero edge weight")
            for ext in (ext_s, ext_d):
                if ext not in remap:
                    remap[ext] = len(remap)
                    ext_order.append(ext)
            s, d = remap[ext_s], remap[ext_d]
            if s == d:
                skipped += 1
                continue
            key = (min(s, d), max(s, d)) if undirected else (s, d)
            if key in edges:
                prev = edges[key]
                edges[key] = (prev[0], s, d, w)
            else:
                edges[key] = (order, s, d, w)
                order += 1
    entries = sorted(edges.values())
    src = np.array([e[1] for e in entries], dtype=np.int64)
    dst = np.array([e[2] for e in entries], dtype=np.int64)
    w = np.array([e[3] for e in entries], dtype=np.float64)
    n = len(remap)
    if undirected:
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
        w = np.concatenate([w, w])
    g = Graph(n, src, dst, w, remap=RemapTable(np.array(ext_order, dtype=np.int64)),
              num_self_loops_skipped=skipped)
    return g


def save_edge_list(g, path, undirected=True):
    """Write one line per (undirected pair | directed edge), external ids."""
    ext = g.remap.to_external
    with open(path, "w") as f:
        if undirected:
            seen = set()
            for s, d, w in zip(g.src, g.dst, g.weight):
                key = (min(s, d), max(s, d))
                if key in seen:
                    continue
                seen.add(key)
                f.write(f"{ext[s]} {ext[d]} {w:g}\n")
        else:
            for s, d, w in zip(g.src, g.dst, g.weight):
                f.write(f"{ext[s]} {ext[d]} {w:g}\n")
