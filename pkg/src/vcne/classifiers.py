"""From-scratch classifiers used by the evaluation harness.

Both take raw feature matrices and 0/1 label arrays (binary: shape (n,),
multi-label one-vs-rest: shape (n, L)) and expose predict_proba.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class ClassifierSpec:
    kind: str = "logreg"
    hidden_units: int = 500
    epochs: int = 300
    learning_rate: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("logreg", "mlp"):
            raise ValueError(f"unknown classifier kind {self.kind!r}")
        if self.kind == "mlp" and self.hidden_units < 1:
            raise ValueError("hidden_units must be >= 1")


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -30, 30)))


def _check_labels(y):
    y = np.asarray(y, dtype=np.float64)
    flat = y if y.ndim == 1 else y.ravel()
    if np.all(flat == flat.flat[0]) and (y.ndim == 1 or y.shape[1] == 1):
        raise ValueError("training labels contain a single class")
    return y


class LogisticRegression:
    """Full-batch gradient descent; stops when the loss change < 1e-8."""

    def __init__(self, spec):
        self.spec = spec
        self.w = None
        self.b = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = _check_labels(y)
        if y.ndim == 1:
            y = y[:, None]
        n, d = X.shape
        n_out = y.shape[1]
        self.w = np.zeros((d, n_out))
        self.b = np.zeros(n_out)
        prev_loss = np.inf
        lr = self.spec.learning_rate
        for _ in range(self.spec.epochs):
            p = _sigmoid(X @ self.w + self.b)
            loss = -np.mean(y * np.log(p + 1e-12) + (1 - y) * np.log(1 - p + 1e-12))
            if abs(prev_loss - loss) < 1e-8:
                break
            prev_loss = loss
            err = p - y
            self.w -= lr * (X.T @ err) / n
            self.b -= lr * err.mean(axis=0)
        return self

    def predict_proba(self, X):
        p = _sigmoid(np.asarray(X) @ self.w + self.b)
        return p[:, 0] if p.shape[1] == 1 else p


class MLP:
    """One hidden ReLU layer + sigmoid output, full-batch GD with momentum.

    When validation data is given to fit(), the epoch with the best
    validation micro-F1 is kept."""

    def __init__(self, spec):
        self.spec = spec
        self.params = None

    def _init_params(self, d_in, d_out):
        gen = np.random.default_rng(self.spec.seed)
        h = self.spec.hidden_units
        return {
            "W1": gen.normal(0, np.sqrt(2.0 / d_in), size=(d_in, h)),
            "b1": np.zeros(h),
            "W2": gen.normal(0, np.sqrt(1.0 / h), size=(h, d_out)),
            "b2": np.zeros(d_out),
        }

    def _forward(self, X, params):
        hidden = np.maximum(X @ params["W1"] + params["b1"], 0.0)
        return hidden, _sigmoid(hidden @ params["W2"] + params["b2"])

    def fit(self, X, y, X_val=None, y_val=None):
        X = np.asarray(X, dtype=np.float64)
        y = _check_labels(y)
        if y.ndim == 1:
            y = y[:, None]
        n = len(X)
        params = self._init_params(X.shape[1], y.shape[1])
        velocity = {k: np.zeros_like(v) for k, v in params.items()}
        lr, mom = self.spec.learning_rate, 0.9
        best_f1, best_params = -1.0, None
        for _ in range(self.spec.epochs):
            hidden, p = self._forward(X, params)
            err = (p - y) / n
            grads = {
                "W2": hidden.T @ err,
                "b2": err.sum(axis=0),
            }
            back = (err @ params["W2"].T) * (hidden > 0)
            grads["W1"] = X.T @ back
            grads["b1"] = back.sum(axis=0)
            for k in params:
                velocity[k] = mom * velocity[k] - lr * grads[k]
                params[k] += velocity[k]
            if X_val is not None:
                f1 = micro_f1(y_val, self._forward(X_val, params)[1] >= 0.5)
                if f1 > best_f1:
                    best_f1 = f1
                    best_params = {k: v.copy() for k, v in params.items()}
        self.params = best_params if best_params is not None else params
        return self

    def predict_proba(self, X):
        p = self._forward(np.asarray(X, dtype=np.float64), self.params)[1]
        return p[:, 0] if p.shape[1] == 1 else p


def micro_f1(y_true, y_pred):
    """Pooled-decision F1; works for binary and multi-label 0/1 arrays."""
    y_true = np.asarray(y_true).astype(bool).ravel()
    y_pred = np.asarray(y_pred).astype(bool).ravel()
    tp = np.sum(y_true & y_pred)
    fp = np.sum(~y_true & y_pred)
    fn = np.sum(y_true & ~y_pred)
    if tp + fp == 0 or tp + fn == 0 or tp == 0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2 * precision * recall / (precision + recall)


def train_classifier(X, y, spec, X_val=None, y_val=None):
    """Train the classifier named by the spec on (X, y)."""
    if spec.kind == "logreg":
        return LogisticRegression(spec).fit(X, y)
    return MLP(spec).fit(X, y, X_val, y_val)
