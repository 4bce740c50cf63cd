"""Histogram-based binary decision trees.

Features are quantized once into at most ``max_bins`` ordered bins; split
search then works on per-node bin histograms, and a whole tree level is
grown with a handful of array operations instead of one Python call per
node.

The split criterion is the weighted squared-error reduction

    gain = S_L^2 / W_L + S_R^2 / W_R - S^2 / W

with ``W`` the weight and ``S`` the weighted target sum of a node. For 0/1
targets this is half the decrease in weighted Gini impurity, so the same
code grows classification trees (leaf value = positive fraction) and
regression trees on gradient residuals.

Ties go to the lowest feature index, then to the lowest threshold.
"""

import numpy as np


class Binner:
    """Map each feature onto ordered integer bins.

    ``code <= b`` holds exactly when ``x <= edges[f][b]``, so a split found
    on codes can be applied to raw values.
    """

    def __init__(self, max_bins=255):
        if not 2 <= max_bins <= 65535:
            raise ValueError("max_bins must be in [2, 65535]")
        self.max_bins = max_bins

    def fit(self, X):
        X = np.asarray(X, dtype=float)
        self.edges_ = []
        for f in range(X.shape[1]):
            u = np.unique(X[:, f])
            if len(u) <= self.max_bins:
                edges = (u[:-1] + u[1:]) / 2.0
            else:
                qs = np.quantile(X[:, f], np.linspace(0, 1, self.max_bins + 1)[1:-1])
                pos = np.unique(np.searchsorted(u, qs, side="right"))
                pos = pos[(pos > 0) & (pos < len(u))]
                edges = (u[pos - 1] + u[pos]) / 2.0
            self.edges_.append(edges)
        self.n_bins_ = np.array([len(e) + 1 for e in self.edges_])
        return self

    def transform(self, X):
        X = np.asarray(X, dtype=float)
        codes = np.empty(X.shape, dtype=np.uint16)
        for f, edges in enumerate(self.edges_):
            codes[:, f] = np.searchsorted(edges, X[:, f], side="left")
        return codes

    def to_dict(self):
        return {"max_bins": self.max_bins, "edges": [e.tolist() for e in self.edges_]}

    @classmethod
    def from_dict(cls, d):
        b = cls(d["max_bins"])
        b.edges_ = [np.asarray(e, dtype=float) for e in d["edges"]]
        b.n_bins_ = np.array([len(e) + 1 for e in b.edges_])
        return b


class Tree:
    """Fitted tree in flat-array form. Leaves have ``feature == -1``."""

    __slots__ = ("feature", "threshold", "left", "right", "value", "weight")

    def __init__(self, feature, threshold, left, right, value, weight):
        self.feature = np.asarray(feature, dtype=np.int64)
        self.threshold = np.asarray(threshold, dtype=float)
        self.left = np.asarray(left, dtype=np.int64)
        self.right = np.asarray(right, dtype=np.int64)
        self.value = np.asarray(value, dtype=float)
        self.weight = np.asarray(weight, dtype=float)

    @property
    def node_count(self):
        return len(self.feature)

    def apply(self, X):
        """Leaf index reached by every row of raw feature matrix ``X``."""
        X = np.asarray(X, dtype=float)
        node = np.zeros(len(X), dtype=np.int64)
        internal = self.feature[node] >= 0
        while internal.any():
            idx = np.flatnonzero(internal)
            nd = node[idx]
            go_left = X[idx, self.feature[nd]] <= self.threshold[nd]
            node[idx] = np.where(go_left, self.left[nd], self.right[nd])
            internal[idx] = self.feature[node[idx]] >= 0
        return node

    def predict(self, X):
        return self.value[self.apply(X)]

    def to_dict(self):
        return {k: getattr(self, k).tolist() for k in self.__slots__}

    @classmethod
    def from_dict(cls, d):
        return cls(*(d[k] for k in cls.__slots__))


def grow_tree(codes, y, w, binner, max_depth=None, min_samples_leaf=1,
              max_features=None, rng=None, min_gain=1e-12):
    """Grow one tree on binned data.

    Parameters
    ----------
    codes : ndarray of shape (n, F), integer bin codes from ``binner``.
    y : ndarray of shape (n,)
        Targets (0/1 labels or residuals).
    w : ndarray of shape (n,)
        Non-negative sample weights; zero-weight rows are ignored. Bootstrap
        multiplicities count as samples for ``min_samples_leaf``.
    max_features : int, optional
        Number of features drawn at random for every node.
    min_gain : float
        A node is split only if its gain exceeds ``min_gain * W``.

    Returns
    -------
    tree : Tree
    leaf_of : ndarray of shape (n,)
        Leaf index of every training row (-1 for zero-weight rows).
    importances : ndarray of shape (F,)
        Total split gain per feature.
    """
    n, F = codes.shape
    y = np.asarray(y, dtype=float)
    w = np.asarray(w, dtype=float)
    if max_depth is None:
        max_depth = np.iinfo(np.int64).max
    if max_features is not None and max_features >= F:
        max_features = None
    if max_features is not None and rng is None:
        raise ValueError("feature subsampling needs an rng")
    n_bins = binner.n_bins_
    edges = binner.edges_

    feature, threshold, left, right, value, weight = [-1], [0.0], [-1], [-1], [0.0], [0.0]
    importances = np.zeros(F)

    idx = np.flatnonzero(w > 0)
    sample_node = np.full(n, -1, dtype=np.int64)
    sample_node[idx] = 0
    frontier = np.array([0])
    wy = w * y
    depth = 0
    while len(frontier):
        # local position of each live sample within the frontier
        pos = np.full(len(feature), -1, dtype=np.int64)
        pos[frontier] = np.arange(len(frontier))
        loc = pos[sample_node[idx]]
        K = len(frontier)
        Wk = np.bincount(loc, weights=w[idx], minlength=K)
        Sk = np.bincount(loc, weights=wy[idx], minlength=K)
        for k, node in enumerate(frontier):
            value[node] = Sk[k] / Wk[k] if Wk[k] > 0 else 0.0
            weight[node] = Wk[k]
        if depth >= max_depth:
            break
        parent_score = np.where(Wk > 0, Sk ** 2 / np.where(Wk > 0, Wk, 1.0), 0.0)
        can_split = Wk >= 2 * min_samples_leaf
        if not can_split.any():
            break

        if max_features is not None:
            draws = rng.random((K, F)).argsort(axis=1)[:, :max_features]
            allowed = np.zeros((K, F), dtype=bool)
            np.put_along_axis(allowed, draws, True, axis=1)
        else:
            allowed = None

        best_gain = np.full(K, -np.inf)
        best_feat = np.full(K, -1, dtype=np.int64)
        best_bin = np.zeros(K, dtype=np.int64)
        for f in range(F):
            B = int(n_bins[f])
            if B < 2:
                continue
            nodes_f = can_split if allowed is None else can_split & allowed[:, f]
            if not nodes_f.any():
                continue
            # compact numbering of the nodes that consider feature f
            kf = np.flatnonzero(nodes_f)
            compact = np.cumsum(nodes_f) - 1
            sel = nodes_f[loc]
            s_idx, s_loc = idx[sel], compact[loc[sel]]
            Kf = len(kf)
            flat = s_loc * B + codes[s_idx, f]
            hw = np.bincount(flat, weights=w[s_idx], minlength=Kf * B).reshape(Kf, B)
            hs = np.bincount(flat, weights=wy[s_idx], minlength=Kf * B).reshape(Kf, B)
            WL = np.cumsum(hw[:, :-1], axis=1)
            SL = np.cumsum(hs[:, :-1], axis=1)
            WR = Wk[kf, None] - WL
            SR = Sk[kf, None] - SL
            ok = (WL >= min_samples_leaf) & (WR >= min_samples_leaf) & (WL > 0) & (WR > 0)
            with np.errstate(divide="ignore", invalid="ignore"):
                gain = SL ** 2 / WL + SR ** 2 / WR - parent_score[kf, None]
            gain = np.where(ok, gain, -np.inf)
            b = np.argmax(gain, axis=1)
            g = gain[np.arange(Kf), b]
            better = g > best_gain[kf]
            best_gain[kf[better]] = g[better]
            best_feat[kf[better]] = f
            best_bin[kf[better]] = b[better]

        split = can_split & (best_feat >= 0) & (best_gain > min_gain * np.maximum(Wk, 1.0))
        if not split.any():
            break
        new_frontier = []
        child_of = np.full((K, 2), -1, dtype=np.int64)
        for k in np.flatnonzero(split):
            node = frontier[k]
            f, b = int(best_feat[k]), int(best_bin[k])
            feature[node] = f
            threshold[node] = float(edges[f][b])
            importances[f] += best_gain[k]
            for side in (0, 1):
                child = len(feature)
                feature.append(-1)
                threshold.append(0.0)
                left.append(-1)
                right.append(-1)
                value.append(0.0)
                weight.append(0.0)
                child_of[k, side] = child
                new_frontier.append(child)
            left[node], right[node] = child_of[k]

        moving = split[loc]
        m_idx, m_loc = idx[moving], loc[moving]
        go_right = codes[m_idx, best_feat[m_loc]] > best_bin[m_loc]
        sample_node[m_idx] = child_of[m_loc, go_right.astype(np.int64)]
        idx = m_idx
        frontier = np.array(new_frontier, dtype=np.int64)
        depth += 1

    tree = Tree(feature, threshold, left, right, value, weight)
    return tree, sample_node, importances
