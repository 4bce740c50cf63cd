"""Random forest of histogram trees on bootstrap resamples."""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .trees import Binner, Tree, grow_tree


class RandomForest:
    """Bagged classification trees with per-node feature subsampling.

    The probability of class 1 is the mean, over trees, of the positive
    frequency in the leaf reached. Every tree ``t`` draws its bootstrap and
    feature masks from ``default_rng([seed, t])``, so the fitted forest does
    not depend on ``n_jobs``.
    """

    kind = "random_forest"

    def __init__(self, n_estimators=400, max_depth=None, min_samples_leaf=5,
                 max_features=4, max_bins=255, n_jobs=1, seed=0):
        self.n_estimators = n_estimators
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.max_bins = max_bins
        self.n_jobs = n_jobs
        self.seed = seed

    def get_params(self):
        return {k: getattr(self, k) for k in ("n_estimators", "max_depth", "min_samples_leaf",
                                              "max_features", "max_bins", "seed")}

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        n = len(y)
        self.binner_ = Binner(self.max_bins).fit(X)
        codes = self.binner_.transform(X)

        def one(t):
            rng = np.random.default_rng([self.seed, t])
            w = np.bincount(rng.integers(0, n, n), minlength=n).astype(float)
            tree, _, imp = grow_tree(codes, y, w, self.binner_, self.max_depth,
                                     self.min_samples_leaf, self.max_features, rng)
            return tree, imp

        if self.n_jobs > 1:
            with ThreadPoolExecutor(self.n_jobs) as pool:
                results = list(pool.map(one, range(self.n_estimators)))
        else:
            results = [one(t) for t in range(self.n_estimators)]
        self.trees_ = [r[0] for r in results]
        imp = np.zeros(X.shape[1])
        for _, v in results:
            total = v.sum()
            if total > 0:
                imp += v / total
        self.feature_importances_ = imp / imp.sum() if imp.sum() > 0 else imp
        return self

    def predict_proba(self, X):
        X = np.asarray(X, dtype=float)
        p = np.zeros(len(X))
        for tree in self.trees_:
            p += tree.predict(X)
        return np.clip(p / len(self.trees_), 0.0, 1.0)

    def to_dict(self):
        return {"params": self.get_params(), "trees": [t.to_dict() for t in self.trees_],
                "feature_importances": self.feature_importances_.tolist()}

    @classmethod
    def from_dict(cls, d):
        m = cls(**d["params"])
        m.trees_ = [Tree.from_dict(t) for t in d["trees"]]
        m.feature_importances_ = np.asarray(d["feature_importances"], dtype=float)
        return m
