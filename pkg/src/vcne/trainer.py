"""Embedding learning loop: augment, propagate gradients, ascend, renormalize.

Each iteration samples a fresh random negative graph, unions it with the
original graph, runs one gradient superstep (message = w * u_source,
merge = vector sum, apply = gradient ascent + unit-norm projection), and
records the objective on that iteration's augmented graph. Objective
values are not comparable across iterations because the negatives are
resampled every time.
"""

import struct
import time
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .engine import aggregate_messages, superstep
from .graph import partition_edges, union
from .sampling import SamplerConfig, sample_negative_graph

_BINARY_MAGIC = b"VCNE"
_NORM_EPS = 1e-12
_SIGMOID_CLAMP = 30.0

MODES = ("vcne", "line1")


@dataclass
class TrainConfig:
    dim: int = 100
    learning_rate: float = 0.1
    iterations: int = 10
    negative_ratio: float = 1.0
    seed: int = 0
    partitions: int = 1
    threads: int = 1
    mode: str = "vcne"
    track_objective: bool = True  # benchmarks skip it to time the pure loop

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class IterationRecord:
    iteration: int
    objective: float
    t_sample_ms: float
    t_union_ms: float
    t_step_ms: float
    t_norm_ms: float

    def line(self):
        return (f"{self.iteration}\t{self.objective:.6g}\t{self.t_sample_ms:.3f}"
                f"\t{self.t_union_ms:.3f}\t{self.t_step_ms:.3f}\t{self.t_norm_ms:.3f}")


@dataclass
class TrainReport:
    records: list = field(default_factory=list)

    def save(self, path):
        with open(path, "w") as f:
            f.write("iter\tobjective\tt_sample_ms\tt_union_ms\tt_step_ms\tt_norm_ms\n")
            for r in self.records:
                f.write(r.line() + "\n")


class TrainingDivergedError(RuntimeError):
    def __init__(self, iteration):
        super().__init__(f"non-finite embedding after iteration {iteration}")
        self.iteration = iteration


def init_embeddings(num_vertices, cfg):
    """Uniform in [-0.5/d, 0.5/d] per component, keyed by (seed, row), then
    row-normalized."""
    d = cfg.dim
    rows = np.arange(num_vertices, dtype=np.int64)[:, None]
    cols = np.arange(d, dtype=np.int64)[None, :]
    u = (rng.uniform01(rng.TAG_INIT, cfg.seed, rows, cols) - 0.5) / d
    return _normalize_rows(u)


def _normalize_rows(u):
    norms = np.linalg.norm(u, axis=1, keepdims=True)
    norms[norms < _NORM_EPS] = 1.0
    return u / norms


def edge_gradient(w, u_source):
    """Per-edge gradient message: w * u_source."""
    w = np.asarray(w, dtype=np.float64)
    u_source = np.asarray(u_source, dtype=np.float64)
    if w.ndim == 0:
        return w * u_source
    return w[:, None] * u_source


def _sigmoid_gradient(w, u_src, u_dst):
    # first-order-proximity message: w * sigmoid(-u_dst . u_src) * u_src
    z = np.clip(-np.einsum("ij,ij->i", u_dst, u_src), -_SIGMOID_CLAMP, _SIGMOID_CLAMP)
    return (np.asarray(w) / (1.0 + np.exp(-z)))[:, None] * u_src


def vertex_update(u, m, learning_rate):
    """Gradient-ascent step projected back to the unit sphere; rows whose
    update cancels to (near) zero keep their previous value."""
    u = np.atleast_2d(np.asarray(u, dtype=np.float64))
    m = np.atleast_2d(np.asarray(m, dtype=np.float64))
    stepped = u + learning_rate * m
    norms = np.linalg.norm(stepped, axis=1, keepdims=True)
    degenerate = norms[:, 0] < _NORM_EPS
    out = stepped / np.where(norms < _NORM_EPS, 1.0, norms)
    out[degenerate] = u[degenerate]
    return out


def objective(g_augmented, embeddings, threads=1):
    """Sum over directed edges (j -> i) of w_ij * (u_i . u_j), computed with
    the superstep machinery (scalar messages, sum combiner)."""
    send = lambda w, us, ud: (w * np.einsum("ij,ij->i", ud, us))[:, None]
    merged, _ = aggregate_messages(g_augmented, embeddings, send, threads=threads)
    return float(merged.sum())


def _line1_objective(g_augmented, embeddings, threads=1):
    # positive-edge weighted log-sigmoid term only
    def send(w, us, ud):
        z = np.clip(np.einsum("ij,ij->i", ud, us), -_SIGMOID_CLAMP, _SIGMOID_CLAMP)
        vals = np.where(w > 0, w * -np.log1p(np.exp(-z)), 0.0)
        return vals[:, None]
    merged, _ = aggregate_messages(g_augmented, embeddings, send, threads=threads)
    return float(merged.sum())


def train(g, cfg):
    """Run cfg.iterations supersteps over fresh augmented graphs.

    Deterministic given (cfg.seed, cfg.partitions); thread count does not
    change the result."""
    if g.num_vertices == 0:
        raise ValueError("empty graph")
    emb = init_embeddings(g.num_vertices, cfg)
    report = TrainReport()
    g_part = partition_edges(g, cfg.partitions, g.strategy)
    sampler_cfg = SamplerConfig(negative_ratio=cfg.negative_ratio, seed=cfg.seed)
    if cfg.mode == "vcne":
        send = lambda w, us, ud: edge_gradient(w, us)
        obj_fn = objective
    else:
        send = _sigmoid_gradient
        obj_fn = _line1_objective
    lr = cfg.learning_rate
    for it in range(cfg.iterations):
        t0 = time.perf_counter()
        neg = sample_negative_graph(g_part, sampler_cfg, it)
        t1 = time.perf_counter()
        aug = union(g_part, neg)
        t2 = time.perf_counter()
        stepped = superstep(aug, emb, send,
                            apply=lambda u, m: u + lr * m, threads=cfg.threads)
        t3 = time.perf_counter()
        emb = _project_step(emb, stepped)
        t4 = time.perf_counter()
        if not np.isfinite(emb).all():
            raise TrainingDivergedError(it)
        report.records.append(IterationRecord(
            iteration=it,
            objective=obj_fn(aug, emb, threads=cfg.threads) if cfg.track_objective else float("nan"),
            t_sample_ms=(t1 - t0) * 1e3,
            t_union_ms=(t2 - t1) * 1e3,
            t_step_ms=(t3 - t2) * 1e3,
            t_norm_ms=(t4 - t3) * 1e3,
        ))
    return emb, report


def _project_step(prev, stepped):
    """Normalize updated rows; degenerate cancellations revert to prev."""
    norms = np.linalg.norm(stepped, axis=1, keepdims=True)
    degenerate = norms[:, 0] < _NORM_EPS
    out = stepped / np.where(norms < _NORM_EPS, 1.0, norms)
    out[degenerate] = prev[degenerate]
    return out


def save_embeddings_text(embeddings, remap, path):
    """One line per vertex `external_id v1 ... vd`, ascending external id."""
    order = np.argsort(remap.to_external)
    with open(path, "w") as f:
        for dense_id in order:
            comps = " ".join(f"{x:.8f}" for x in embeddings[dense_id])
            f.write(f"{remap.to_external[dense_id]} {comps}\n")


def load_embeddings_text(path):
    """Returns (embeddings, external_ids) in file order."""
    ids, rows = [], []
    with open(path) as f:
        for line in f:
            parts = line.split()
            if not parts:
                continue
            ids.append(int(parts[0]))
            rows.append([float(x) for x in parts[1:]])
    if not ids:
        return np.zeros((0, 0)), np.zeros(0, dtype=np.int64)
    return np.array(rows), np.array(ids, dtype=np.int64)


def save_embeddings_binary(embeddings, remap, path):
    """Header: magic, |V|, d (little-endian u64), then float32 rows in
    ascending external-id order."""
    order = np.argsort(remap.to_external)
    with open(path, "wb") as f:
        f.write(_BINARY_MAGIC)
        f.write(struct.pack("<QQ", embeddings.shape[0], embeddings.shape[1]))
        f.write(np.asarray(embeddings[order], dtype="<f4").tobytes())


def load_embeddings_binary(path):
    with open(path, "rb") as f:
        magic = f.read(4)
        if magic != _BINARY_MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        n, d = struct.unpack("<QQ", f.read(16))
        data = np.frombuffer(f.read(), dtype="<f4")
    if len(data) != n * d:
        raise ValueError(f"{path}: truncated embedding file")
    return data.reshape(n, d).astype(np.float64)
