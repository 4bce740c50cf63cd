"""B3 and pairwise precision, recall and F-measure.

Both metrics only depend on the contingency table ``n[c, a]`` (signatures
in predicted cluster ``c`` and true cluster ``a``):

    B3 P = sum n^2 / |c| / N        B3 R = sum n^2 / |a| / N
    pairs: TP = sum C(n, 2), predicted = sum_c C(|c|, 2), true = sum_a C(|a|, 2)
"""

from dataclasses import dataclass

import numpy as np

from ..core import MissingIdError


@dataclass(frozen=True)
class Scores:
    precision: float
    recall: float
    f_measure: float

    def __iter__(self):
        return iter((self.precision, self.recall, self.f_measure))


def f_measure(p, r):
    """Harmonic mean of precision and recall; 0 when both are 0."""
    return 0.0 if p + r == 0 else 2.0 * p * r / (p + r)


def pairwise_ratio(tp, denominator, other):
    """``tp / denominator``, or 1 when both pair sets are empty and 0 when
    only the denominator set is."""
    if denominator == 0:
        return 1.0 if other == 0 else 0.0
    return tp / denominator


def _encode(labels):
    index = {}
    return np.array([index.setdefault(lab, len(index)) for lab in labels], dtype=np.int64)


def contingency(truth, predicted, ids=None):
    """Non-zero cells of the contingency table.

    Returns ``(n, pred_size, true_size)``: per cell, its count and the sizes
    of its predicted and true clusters (all restricted to ``ids``).
    """
    ids = list(truth if ids is None else ids)
    for name, clustering in (("truth", truth), ("predicted", predicted)):
        missing = [sid for sid in ids if sid not in clustering]
        if missing:
            raise MissingIdError(f"{len(missing)} ids are not assigned by {name}, "
                                 f"e.g. {missing[0]!r}")
    if not ids:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z
    t = _encode(truth[sid] for sid in ids)
    p = _encode(predicted[sid] for sid in ids)
    cells, n = np.unique(np.stack([p, t], axis=1), axis=0, return_counts=True)
    pred_size = np.bincount(p)[cells[:, 0]]
    true_size = np.bincount(t)[cells[:, 1]]
    return n, pred_size, true_size


def b3_scores(truth, predicted, ids=None):
    """B3 scores over ``ids`` (default: every id of ``truth``).

    Examples
    --------
    >>> s = b3_scores({"s1": "A", "s2": "A", "s3": "B"}, {"s1": 0, "s2": 0, "s3": 0})
    >>> round(s.precision, 4), s.recall
    (0.5556, 1.0)
    """
    n, pred_size, true_size = contingency(truth, predicted, ids)
    total = n.sum()
    if total == 0:
        return Scores(1.0, 1.0, 1.0)
    p = float(np.sum(n * n / pred_size) / total)
    r = float(np.sum(n * n / true_size) / total)
    p, r = min(p, 1.0), min(r, 1.0)
    return Scores(p, r, f_measure(p, r))


def _pairs(x):
    return int(np.sum(x * (x - 1) // 2))


def pairwise_scores(truth, predicted, ids=None):
    """Pairwise scores over ``ids`` (default: every id of ``truth``)."""
    ids = list(truth if ids is None else ids)
    n, _, _ = contingency(truth, predicted, ids)
    tp = _pairs(n)
    pred_pairs = _pairs(np.bincount(_encode(predicted[sid] for sid in ids)))
    true_pairs = _pairs(np.bincount(_encode(truth[sid] for sid in ids)))
    p = pairwise_ratio(tp, pred_pairs, true_pairs)
    r = pairwise_ratio(tp, true_pairs, pred_pairs)
    return Scores(p, r, f_measure(p, r))


def blocking_max_recall(truth, assignment):
    """Best B3 and pairwise recall reachable by clustering within blocks.

    The oracle clustering splits every true cluster along block boundaries.
    """
    missing = [sid for sid in truth if sid not in assignment]
    if missing:
        raise MissingIdError(f"{len(missing)} claimed ids have no block, e.g. {missing[0]!r}")
    oracle = {sid: (truth[sid], assignment[sid]) for sid in truth}
    return b3_scores(truth, oracle).recall, pairwise_scores(truth, oracle).recall
