"""Agglomerative clustering of one block.

Merges follow the scipy convention: leaves are clusters ``0..n-1`` and the
``k``-th merge creates cluster ``n + k``. Among equally close cluster pairs
the lexicographically lowest ``(smaller id, larger id)`` merges first.

For average linkage the matrix holds *sums* of leaf distances between
clusters and distances are ``sum / (|A| |B|)``. Equal averages therefore
compare equal whenever the sums are exact (e.g. dyadic inputs), regardless
of merge history.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.spatial.distance import squareform


class LinkageCriterion(str, Enum):
    SINGLE = "single"
    COMPLETE = "complete"
    AVERAGE = "average"


@dataclass(frozen=True)
class Dendrogram:
    """Merge tree of a block.

    ``merges`` has one row ``(left, right, height, size)`` per merge with
    ``left < right``; ``signature_ids[i]`` is leaf ``i``.
    """

    signature_ids: tuple
    merges: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.merges, dtype=float).reshape(-1, 4)
        object.__setattr__(self, "merges", m)
        object.__setattr__(self, "signature_ids", tuple(self.signature_ids))

    def __len__(self):
        return len(self.signature_ids)

    @property
    def heights(self):
        return self.merges[:, 2]

    @property
    def max_height(self):
        return float(self.merges[-1, 2]) if len(self.merges) else 0.0


def _as_square(distance, ids):
    n = len(ids)
    if callable(distance):
        D = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = distance(ids[i], ids[j])
        return D
    D = np.asarray(distance, dtype=float)
    if D.ndim == 1:
        if len(D) != n * (n - 1) // 2:
            raise ValueError(f"condensed distances of length {len(D)} do not fit {n} leaves")
        return squareform(D, checks=False) if n > 1 else np.zeros((n, n))
    if D.shape != (n, n):
        raise ValueError(f"distance matrix of shape {D.shape} does not fit {n} leaves")
    return D.astype(float, copy=True)


def linkage_merges(D, criterion):
    """Merge rows ``(left, right, height, size)`` for square distances ``D``."""
    criterion = LinkageCriterion(criterion)
    n = len(D)
    if n < 2:
        return np.zeros((0, 4))
    M = np.array(D, dtype=float)
    np.fill_diagonal(M, np.inf)
    average = criterion is LinkageCriterion.AVERAGE
    size = np.ones(n)
    ids = np.arange(n)
    active = np.ones(n, dtype=bool)

    def row(r):
        vals = M[r] / (size[r] * size) if average else M[r].copy()
        vals[~active] = np.inf
        vals[r] = np.inf
        return vals

    def best_partner(vals):
        m = vals.min()
        cands = np.flatnonzero(vals == m)
        return m, cands[np.argmin(ids[cands])]

    row_min = np.empty(n)
    partner = np.empty(n, dtype=np.int64)
    for r in range(n):
        row_min[r], partner[r] = best_partner(row(r))

    merges = np.zeros((n - 1, 4))
    last = -np.inf
    for k in range(n - 1):
        live = np.flatnonzero(active)
        m = row_min[live].min()
        rows = live[row_min[live] == m]
        lo = np.minimum(ids[rows], ids[partner[rows]])
        hi = np.maximum(ids[rows], ids[partner[rows]])
        pick = np.lexsort((hi, lo))[0]
        a = rows[pick]
        b = partner[a]
        if ids[a] > ids[b]:
            a, b = b, a
        height = max(m, last)
        last = height
        merges[k] = (ids[a], ids[b], height, size[a] + size[b])

        # the new cluster takes slot a; slot b retires
        if criterion is LinkageCriterion.SINGLE:
            new = np.minimum(M[a], M[b])
        elif criterion is LinkageCriterion.COMPLETE:
            new = np.maximum(M[a], M[b])
        else:
            new = M[a] + M[b]
        active[b] = False
        M[a], M[:, a] = new, new
        M[a, a] = np.inf
        M[b], M[:, b] = np.inf, np.inf
        size[a] += size[b]
        ids[a] = n + k

        live = np.flatnonzero(active)
        stale = live[(partner[live] == a) | (partner[live] == b)]
        # remaining rows only need to look at the new column
        fresh = np.setdiff1d(live, stale, assume_unique=True)
        fresh = fresh[fresh != a]
        if len(fresh):
            col = M[fresh, a] / (size[fresh] * size[a]) if average else M[fresh, a]
            closer = col < row_min[fresh]
            row_min[fresh[closer]] = col[closer]
            partner[fresh[closer]] = a
        for r in np.union1d(stale, [a]).astype(np.int64):
            if active[r] and active.sum() > 1:
                row_min[r], partner[r] = best_partner(row(r))
    return merges


def build_dendrogram(block_signatures, distance, criterion="average"):
    """Cluster ``block_signatures`` under ``distance``.

    ``distance`` is a condensed vector, a square matrix, or a callable on
    two signature ids.
    """
    ids = tuple(block_signatures)
    D = _as_square(distance, ids)
    return Dendrogram(ids, linkage_merges(D, criterion))


def cut_labels(dendrogram, threshold):
    """Cluster index of every leaf after applying all merges with
    ``height <= threshold``; clusters numbered by first leaf."""
    n = len(dendrogram)
    parent = np.arange(2 * n - 1) if n else np.zeros(0, dtype=np.int64)
    for k, (a, b, h, _) in enumerate(dendrogram.merges):
        if h > threshold:
            break
        parent[int(a)] = parent[int(b)] = n + k
    root = parent.copy()
    # parents always have larger ids, so one backwards sweep resolves roots
    for node in range(len(root) - 1, -1, -1):
        root[node] = root[root[node]]
    _, labels = np.unique(root[:n], return_inverse=True)
    first = {}
    out = np.empty(n, dtype=np.int64)
    for i, lab in enumerate(labels):
        out[i] = first.setdefault(lab, len(first))
    return out


def cut_dendrogram(dendrogram, threshold):
    """``signature_id -> cluster index`` for the flat clustering at ``threshold``."""
    return dict(zip(dendrogram.signature_ids, cut_labels(dendrogram, threshold).tolist()))
