import numpy as np
import pytest

from vcne.classifiers import (ClassifierSpec, LogisticRegression, MLP, micro_f1,
                              train_classifier)


class TestLogisticRegression:
    def test_separable_1d(self):
        X = np.linspace(-2, 2, 40)[:, None]
        y = (X[:, 0] > 0).astype(int)
        clf = train_classifier(X, y, ClassifierSpec(epochs=2000, learning_rate=1.0))
        assert np.mean((clf.predict_proba(X) >= 0.5) == y) == 1.0

    def test_zero_bias_gradient_at_symmetric_start(self):
        # balanced labels, centered features: the first bias step is zero
        X = np.array([[1.0], [-1.0], [2.0], [-2.0]])
        y = np.array([1, 0, 1, 0])
        clf = LogisticRegression(ClassifierSpec(epochs=1, learning_rate=1.0)).fit(X, y)
        assert clf.b[0] == pytest.approx(0.0)

    def test_single_class_rejected(self):
        with pytest.raises(ValueError, match="single class"):
            train_classifier(np.zeros((4, 2)), np.ones(4), ClassifierSpec())

    def test_xor_is_not_linearly_separable(self):
        X = np.array([[0, 0], [0, 1], [1, 0], [1, 1]], dtype=float)
        y = np.array([0, 1, 1, 0])
        clf = train_classifier(X, y, ClassifierSpec(epochs=3000, learning_rate=1.0))
        assert np.mean((clf.predict_proba(X) >= 0.5) == y) <= 0.75

    def test_multi_output(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(60, 3))
        y = np.stack([(X[:, 0] > 0), (X[:, 1] > 0)], axis=1).astype(int)
        clf = train_classifier(X, y, ClassifierSpec(epochs=2000, learning_rate=1.0))
        pred = clf.predict_proba(X) >= 0.5
        assert micro_f1(y, pred) > 0.9


class TestMLP:
    def test_xor_solved(self):
        X = np.array([[0, 0], [0, 1], [1, 0], [1, 1]], dtype=float)
        y = np.array([0, 1, 1, 0])
        spec = ClassifierSpec(kind="mlp", hidden_units=8, epochs=2000,
                              learning_rate=0.5, seed=0)
        clf = train_classifier(X, y, spec)
        assert np.mean((clf.predict_proba(X) >= 0.5) == y) == 1.0

    def test_validation_selection_keeps_best_epoch(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(100, 4))
        y = (X[:, 0] + 0.2 * rng.normal(size=100) > 0).astype(int)
        spec = ClassifierSpec(kind="mlp", hidden_units=16, epochs=200,
                              learning_rate=0.3, seed=1)
        clf = MLP(spec).fit(X[:70], y[:70], X[70:], y[70:])
        assert micro_f1(y[70:], clf.predict_proba(X[70:]) >= 0.5) > 0.7

    def test_seeded_init_deterministic(self):
        rng = np.random.default_rng(2)
        X = rng.normal(size=(30, 3))
        y = (X[:, 0] > 0).astype(int)
        spec = ClassifierSpec(kind="mlp", hidden_units=4, epochs=50,
                              learning_rate=0.3, seed=7)
        a = train_classifier(X, y, spec).predict_proba(X)
        b = train_classifier(X, y, spec).predict_proba(X)
        assert np.array_equal(a, b)

    def test_invalid_hidden_units(self):
        with pytest.raises(ValueError, match="hidden_units"):
            ClassifierSpec(kind="mlp", hidden_units=0)


class TestMicroF1:
    def test_pooled_counts(self):
        y = np.array([[1, 0], [1, 1], [0, 0]])
        pred = np.array([[1, 0], [0, 1], [0, 1]])  # tp=2 fp=1 fn=1
        assert micro_f1(y, pred) == pytest.approx(2 / 3)

    def test_no_positives(self):
        assert micro_f1([0, 0], [0, 0]) == 0.0
