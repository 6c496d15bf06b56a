"""Link-prediction and vertex-classification evaluation protocols.

Link datasets hold out a fraction of true edges per split (train,
validation, test) as positives, matched 1:1 with sampled non-edges, and
leave a core graph for embedding training. The Jaccard baseline and the
embedding classifiers are scored with precision/recall/F1; classifier
thresholds default to 0.5, the Jaccard threshold is tuned on validation.
"""

import math
from dataclasses import dataclass

import numpy as np

from .classifiers import micro_f1, train_classifier
from .graph import from_pairs

SPLITS = ("train", "validation", "test")
FEATURE_MODES = ("hadamard", "concat", "dot")

# below this size, exhausted rejection sampling falls back to enumerating
# every non-edge explicitly
_ENUMERATE_LIMIT = 1000


@dataclass
class Metrics:
    precision: float
    recall: float
    f1: float
    threshold: float

    def line(self):
        return f"{self.precision:.4f}\t{self.recall:.4f}\t{self.f1:.4f}\t{self.threshold:.6g}"


@dataclass
class LinkDataset:
    core_graph: "Graph"
    splits: dict  # name -> (pairs (n, 2) int array, labels (n,) 0/1 array)


def confusion_metrics(labels, predicted, threshold=0.5):
    labels = np.asarray(labels).astype(bool)
    predicted = np.asarray(predicted).astype(bool)
    tp = int(np.sum(labels & predicted))
    fp = int(np.sum(~labels & predicted))
    fn = int(np.sum(labels & ~predicted))
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return Metrics(precision, recall, f1, threshold)


def make_link_dataset(g, holdout_fraction, seed):
    """Remove 3 disjoint positive sets (one per split) of size
    round(fraction * |E_undirected|) and pair each with uniform non-edges."""
    if not 0 < holdout_fraction < 1:
        raise ValueError("holdout fraction must be in (0, 1)")
    keys = g._undirected_keys()
    n_und = len(keys)
    n_pos = int(round(holdout_fraction * n_und))
    if n_pos < 1 or 3 * n_pos >= n_und:
        minimum = math.ceil(1.0 / holdout_fraction)
        raise ValueError(
            f"graph too small for holdout {holdout_fraction}: needs at least "
            f"{minimum} undirected edges with room for 3 disjoint splits, has {n_und}")
    gen = np.random.default_rng(seed)
    perm = gen.permutation(n_und)
    pos_sets = [keys[np.sort(perm[k * n_pos:(k + 1) * n_pos])] for k in range(3)]
    core_keys = keys[np.sort(perm[3 * n_pos:])]
    n = g.num_vertices
    core_pairs = np.stack([core_keys // n, core_keys % n], axis=1)
    pair_weight = {int(min(s, d)) * n + int(max(s, d)): w
                   for s, d, w in zip(g.src, g.dst, g.weight)}
    core_weights = np.array([pair_weight[int(k)] for k in core_keys])
    core = from_pairs(n, core_pairs, weights=core_weights, undirected=True,
                      partitions=g.num_partitions, strategy=g.strategy)
    negatives = _sample_non_edges(g, 3 * n_pos, gen)
    splits = {}
    for k, name in enumerate(SPLITS):
        pos = np.stack([pos_sets[k] // n, pos_sets[k] % n], axis=1)
        neg = negatives[k * n_pos:(k + 1) * n_pos]
        pairs = np.concatenate([pos, neg])
        labels = np.concatenate([np.ones(n_pos, dtype=np.int64),
                                 np.zeros(n_pos, dtype=np.int64)])
        splits[name] = (pairs, labels)
    return LinkDataset(core_graph=core, splits=splits)


def _sample_non_edges(g, count, gen):
    n = g.num_vertices
    seen = set()
    out = []
    attempts = 0
    while len(out) < count and attempts < 200:
        cand = gen.integers(0, n, size=(4 * count, 2))
        lo = np.minimum(cand[:, 0], cand[:, 1])
        hi = np.maximum(cand[:, 0], cand[:, 1])
        ok = (lo != hi) & ~g.contains_pairs(lo, hi)
        for a, b in zip(lo[ok], hi[ok]):
            key = (int(a), int(b))
            if key not in seen:
                seen.add(key)
                out.append(key)
                if len(out) == count:
                    break
        attempts += 1
    if len(out) < count:
        if n >= _ENUMERATE_LIMIT:
            raise ValueError("could not sample enough non-edges")
        iu, ju = np.triu_indices(n, k=1)
        mask = ~g.contains_pairs(iu, ju)
        pool = [(int(a), int(b)) for a, b in zip(iu[mask], ju[mask]) if (int(a), int(b)) not in seen]
        if len(pool) < count - len(out):
            raise ValueError("graph has too few non-edges for the requested holdout")
        idx = gen.choice(len(pool), size=count - len(out), replace=False)
        out.extend(pool[i] for i in idx)
    return np.array(out, dtype=np.int64)


def jaccard_score(g, u, v):
    """|N(u) ∩ N(v)| / |N(u) ∪ N(v)| over undirected adjacency; 0 when the
    union is empty."""
    nu = g.neighbors(u)
    nv = g.neighbors(v)
    inter = len(np.intersect1d(nu, nv, assume_unique=True))
    union_size = len(nu) + len(nv) - inter
    return inter / union_size if union_size else 0.0


def jaccard_scores(g, pairs):
    return np.array([jaccard_score(g, a, b) for a, b in pairs])


def tune_threshold(scores, labels):
    """Scan distinct scores as thresholds (predict score >= t); return the
    one maximizing F1, lowest threshold on ties."""
    best_t, best_f1 = None, -1.0
    for t in np.unique(scores):
        m = confusion_metrics(labels, scores >= t, t)
        if m.f1 > best_f1:
            best_t, best_f1 = t, m.f1
    return float(best_t)


def jaccard_predict(g, ds):
    """Threshold tuned on the validation split, metrics reported on test."""
    val_pairs, val_labels = ds.splits["validation"]
    t = tune_threshold(jaccard_scores(g, val_pairs), val_labels)
    test_pairs, test_labels = ds.splits["test"]
    scores = jaccard_scores(g, test_pairs)
    return confusion_metrics(test_labels, scores >= t, t)


def featurize_pair(embeddings, pair, mode):
    a, b = pair
    ua, ub = embeddings[a], embeddings[b]
    if mode == "hadamard":
        return ua * ub
    if mode == "concat":
        return np.concatenate([ua, ub])
    if mode == "dot":
        return np.array([ua @ ub])
    raise ValueError(f"unknown feature mode {mode!r}")


def featurize_pairs(embeddings, pairs, mode):
    ua = embeddings[pairs[:, 0]]
    ub = embeddings[pairs[:, 1]]
    if mode == "hadamard":
        return ua * ub
    if mode == "concat":
        return np.concatenate([ua, ub], axis=1)
    if mode == "dot":
        return np.einsum("ij,ij->i", ua, ub)[:, None]
    raise ValueError(f"unknown feature mode {mode!r}")


def evaluate(classifier, ds, embeddings, mode, tune_on_validation=False):
    """Metrics on the test split at threshold 0.5, or at a
    validation-tuned threshold when requested."""
    test_pairs, test_labels = ds.splits["test"]
    if len(test_pairs) == 0:
        raise ValueError("empty test split")
    threshold = 0.5
    if tune_on_validation:
        val_pairs, val_labels = ds.splits["validation"]
        val_scores = classifier.predict_proba(featurize_pairs(embeddings, val_pairs, mode))
        threshold = tune_threshold(val_scores, val_labels)
    scores = classifier.predict_proba(featurize_pairs(embeddings, test_pairs, mode))
    return confusion_metrics(test_labels, scores >= threshold, threshold)


def evaluate_link_prediction(ds, embeddings, spec, mode="hadamard", tune_on_validation=False):
    """Train on the train split (model selection on validation for MLPs)
    and report test metrics."""
    train_pairs, train_labels = ds.splits["train"]
    val_pairs, val_labels = ds.splits["validation"]
    clf = train_classifier(
        featurize_pairs(embeddings, train_pairs, mode), train_labels, spec,
        featurize_pairs(embeddings, val_pairs, mode), val_labels)
    return evaluate(clf, ds, embeddings, mode, tune_on_validation)


def classify_vertices(embeddings, features, labels, splits, spec):
    """Train on [features ; embedding] plus a features-only baseline.

    splits maps each split name to a vertex-id array; labels may be (n,)
    class indicators or (n, L) multi-label 0/1. Returns micro-averaged
    (baseline Metrics, combined Metrics) at per-label threshold 0.5."""
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels)
    if len(features) != len(labels):
        raise ValueError(
            f"feature/label row mismatch: {len(features)} features vs {len(labels)} labels")
    if embeddings.size and len(embeddings) != len(features):
        raise ValueError(
            f"embedding/feature row mismatch at vertex {min(len(embeddings), len(features))}")
    if labels.ndim == 1:
        classes = np.unique(labels)
        labels = (labels[:, None] == classes[None, :]).astype(np.int64)
    combined = np.concatenate([features, embeddings], axis=1) if embeddings.size else features
    tr, te = splits["train"], splits["test"]
    val = splits.get("validation", tr)
    results = []
    for X in (features, combined):
        clf = train_classifier(X[tr], labels[tr], spec, X[val], labels[val])
        pred = np.atleast_2d(clf.predict_proba(X[te])) >= 0.5
        pred = pred.reshape(len(te), -1)
        results.append(confusion_metrics(labels[te].ravel(), pred.ravel()))
    return results[0], results[1]


def save_split(pairs, labels, remap, path):
    ext = remap.to_external
    with open(path, "w") as f:
        for (a, b), lab in zip(pairs, labels):
            f.write(f"{ext[a]} {ext[b]} {lab}\n")


def load_split(path):
    pairs, labels = [], []
    with open(path) as f:
        for line in f:
            parts = line.split()
            if not parts:
                continue
            pairs.append((int(parts[0]), int(parts[1])))
            labels.append(int(parts[2]))
    return np.array(pairs, dtype=np.int64).reshape(-1, 2), np.array(labels, dtype=np.int64)
