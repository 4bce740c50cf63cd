"""Gradient-boosted regression trees for binary logistic loss."""

import numpy as np
from scipy.special import expit

from .trees import Binner, Tree, grow_tree


def logistic_loss(y, raw):
    """Summed binary log-loss of raw scores ``raw`` against 0/1 labels."""
    return float(np.sum(np.logaddexp(0.0, raw) - y * raw))


class GradientBoosting:
    """Stagewise additive trees on the logistic-loss gradient.

    Each stage fits a regression tree to the residuals ``y - p`` and sets
    every leaf to one shrunk Newton step ``lr * sum(r) / sum(p (1 - p))``.
    If a step would raise the loss of its leaf, it is halved until it does
    not, so the training loss never increases from stage to stage.
    """

    kind = "gbrt"

    def __init__(self, n_estimators=200, learning_rate=0.1, max_depth=3,
                 min_samples_leaf=1, max_bins=255, seed=0):
        self.n_estimators = n_estimators
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_bins = max_bins
        self.seed = seed

    def get_params(self):
        return {k: getattr(self, k) for k in ("n_estimators", "learning_rate", "max_depth",
                                              "min_samples_leaf", "max_bins", "seed")}

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        n = len(y)
        p0 = np.clip(y.mean(), 1e-12, 1 - 1e-12)
        self.init_ = float(np.log(p0 / (1 - p0)))
        self.binner_ = Binner(self.max_bins).fit(X)
        codes = self.binner_.transform(X)
        w = np.ones(n)
        raw = np.full(n, self.init_)
        self.trees_ = []
        self.train_loss_ = [logistic_loss(y, raw)]
        imp = np.zeros(X.shape[1])
        for _ in range(self.n_estimators):
            p = expit(raw)
            resid = y - p
            tree, leaf_of, gains = grow_tree(codes, resid, w, self.binner_,
                                             self.max_depth, self.min_samples_leaf)
            imp += gains
            hess = p * (1 - p)
            n_nodes = tree.node_count
            num = np.bincount(leaf_of, weights=resid, minlength=n_nodes)
            den = np.bincount(leaf_of, weights=hess, minlength=n_nodes)
            step = np.where(den > 1e-300, num / np.where(den > 1e-300, den, 1.0), 0.0)
            step *= self.learning_rate
            base = np.logaddexp(0.0, raw) - y * raw
            loss0 = np.bincount(leaf_of, weights=base, minlength=n_nodes)
            for _halving in range(60):
                trial = raw + step[leaf_of]
                loss1 = np.bincount(leaf_of, weights=np.logaddexp(0.0, trial) - y * trial,
                                    minlength=n_nodes)
                worse = loss1 > loss0
                if not worse.any():
                    break
                step[worse] /= 2.0
            else:
                step[worse] = 0.0
            tree.value = step
            raw = raw + step[leaf_of]
            self.trees_.append(tree)
            self.train_loss_.append(logistic_loss(y, raw))
        self.feature_importances_ = imp / imp.sum() if imp.sum() > 0 else imp
        return self

    def decision_function(self, X):
        X = np.asarray(X, dtype=float)
        raw = np.full(len(X), self.init_)
        for tree in self.trees_:
            raw += tree.predict(X)
        return raw

    def predict_proba(self, X):
        return expit(self.decision_function(X))

    def to_dict(self):
        return {"params": self.get_params(), "init": self.init_,
                "trees": [t.to_dict() for t in self.trees_],
                "feature_importances": self.feature_importances_.tolist()}

    @classmethod
    def from_dict(cls, d):
        m = cls(**d["params"])
        m.init_ = d["init"]
        m.trees_ = [Tree.from_dict(t) for t in d["trees"]]
        m.feature_importances_ = np.asarray(d["feature_importances"], dtype=float)
        return m
