"""Cut-off selection by scanning merge heights.

Applying merges in height order and updating the score after each distinct
height evaluates every candidate threshold in a single pass. Per predicted
cluster we keep the number of claimed signatures of each author, which is
all B3 and pairwise scores need:

    B3 precision * |S| = sum_c sum_a n_ca^2 / n_c
    B3 recall    * |S| = sum_c sum_a n_ca^2 / n_a
    true positive pairs = sum_c sum_a n_ca (n_ca - 1) / 2
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..evaluation.metrics import f_measure, pairwise_ratio

OBJECTIVES = ("b3f", "pairwisef")

# scores within this distance of the best count as ties
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ThresholdCurve:
    """Objective value at every candidate threshold, in increasing order."""

    thresholds: np.ndarray
    b3: np.ndarray  # (k, 3): precision, recall, F
    pairwise: np.ndarray  # (k, 3)

    def objective(self, name):
        if name == "b3f":
            return self.b3[:, 2]
        if name == "pairwisef":
            return self.pairwise[:, 2]
        raise ValueError(f"unknown objective {name!r}; expected one of {OBJECTIVES}")

    def best(self, name, prefer=None):
        """Threshold maximizing the objective, and its value.

        Ties go to the smallest threshold, or, when ``prefer`` is given, to
        the tied threshold closest to it. Candidate ``t_k`` stands for the
        whole interval ``[t_k, t_k+1)``, so ``prefer`` itself is returned
        when it falls in a tied interval.
        """
        values = self.objective(name)
        tied = np.flatnonzero(values >= values.max() - TIE_TOLERANCE)
        if prefer is None:
            k = int(tied[0])
            return float(self.thresholds[k]), float(values[k])
        upper = np.append(self.thresholds[1:], np.inf)
        inside = tied[(self.thresholds[tied] <= prefer) & (prefer < upper[tied])]
        if len(inside):
            return float(prefer), float(values[inside[0]])
        k = int(tied[np.argmin(np.abs(self.thresholds[tied] - prefer))])
        return float(self.thresholds[k]), float(values[k])


class _Scanner:
    def __init__(self, dendrograms, claims):
        self.offsets = []
        authors = []
        total = 0
        for d in dendrograms:
            self.offsets.append(total)
            authors.extend(claims.get(sid) for sid in d.signature_ids)
            total += len(d)
        self.parent = np.arange(total)
        self.counts = [Counter({a: 1}) if a is not None else Counter() for a in authors]
        claimed = [a for a in authors if a is not None]
        self.n_claimed = len(claimed)
        self.author_size = Counter(claimed)
        self.true_pairs = sum(v * (v - 1) // 2 for v in self.author_size.values())
        # running sums start from all-singletons
        self.p_sum = float(self.n_claimed)
        self.r_sum = sum(1.0 / self.author_size[a] for a in claimed)
        self.tp = 0
        self.pred_pairs = 0

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def _terms(self, c):
        n = sum(c.values())
        if n == 0:
            return 0.0, 0.0, 0, 0
        sq = sum(v * v for v in c.values())
        return (sq / n, sum(v * v / self.author_size[a] for a, v in c.items()),
                sum(v * (v - 1) // 2 for v in c.values()), n * (n - 1) // 2)

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        cx, cy = self.counts[rx], self.counts[ry]
        if len(cx) < len(cy):
            rx, ry, cx, cy = ry, rx, cy, cx
        before = [self._terms(cx), self._terms(cy)]
        for a, v in cy.items():
            cx[a] += v
        self.counts[ry] = Counter()
        self.parent[ry] = rx
        after = self._terms(cx)
        self.p_sum += after[0] - before[0][0] - before[1][0]
        self.r_sum += after[1] - before[0][1] - before[1][1]
        self.tp += after[2] - before[0][2] - before[1][2]
        self.pred_pairs += after[3] - before[0][3] - before[1][3]

    def scores(self):
        if self.n_claimed == 0:
            b3 = (1.0, 1.0, 1.0)
        else:
            p = min(1.0, self.p_sum / self.n_claimed)
            r = min(1.0, self.r_sum / self.n_claimed)
            b3 = (p, r, f_measure(p, r))
        p = pairwise_ratio(self.tp, self.pred_pairs, self.true_pairs)
        r = pairwise_ratio(self.tp, self.true_pairs, self.pred_pairs)
        return b3, (p, r, f_measure(p, r))


def threshold_curve(dendrograms, claims):
    """Scores on the claimed signatures at every merge height of
    ``dendrograms`` plus one value above the highest merge."""
    dendrograms = list(dendrograms)
    scanner = _Scanner(dendrograms, claims)
    events = []
    for d, off in zip(dendrograms, scanner.offsets):
        n = len(d)
        if n < 2:
            continue
        # map internal node ids onto a representative leaf
        rep = np.empty(2 * n - 1, dtype=np.int64)
        rep[:n] = np.arange(n)
        for k, (a, b, h, _) in enumerate(d.merges):
            rep[n + k] = rep[int(a)]
            events.append((h, off + rep[int(a)], off + rep[int(b)]))
    events.sort(key=lambda e: e[0])
    thresholds, b3, pw = [], [], []
    k = 0
    while k < len(events):
        h = events[k][0]
        while k < len(events) and events[k][0] == h:
            scanner.union(events[k][1], events[k][2])
            k += 1
        s = scanner.scores()
        thresholds.append(h)
        b3.append(s[0])
        pw.append(s[1])
    top = max((d.max_height for d in dendrograms), default=0.0) + 1.0
    s = scanner.scores()
    thresholds.append(top)
    b3.append(s[0])
    pw.append(s[1])
    return ThresholdCurve(np.array(thresholds), np.array(b3), np.array(pw))


def _claimed_in(dendrograms, claims):
    return sum(1 for d in dendrograms for sid in d.signature_ids if sid in claims)


def fit_global_threshold(dendrograms, train_claims, objective="b3f"):
    """One threshold for all blocks, maximizing the objective on the claimed
    signatures (ties go to the smallest threshold)."""
    dendrograms = list(dendrograms.values() if isinstance(dendrograms, dict) else dendrograms)
    if not train_claims or _claimed_in(dendrograms, train_claims) == 0:
        raise ValueError("no claimed signatures to fit a threshold on")
    return threshold_curve(dendrograms, train_claims).best(objective)[0]


def fit_block_thresholds(dendrograms, train_claims, objective="b3f", global_threshold=None):
    """Per-block thresholds.

    A block without claimed signatures is clustered entirely (threshold
    above its highest merge). A block with a single claimed signature uses
    ``global_threshold`` when given and is clustered entirely otherwise.
    When several thresholds tie on a block's claims, the one closest to
    ``global_threshold`` wins (the smallest if there is none).
    """
    out = {}
    for key, d in dendrograms.items():
        n_claimed = _claimed_in([d], train_claims or {})
        if n_claimed == 0 or (n_claimed == 1 and global_threshold is None):
            out[key] = d.max_height + 1.0
        elif n_claimed == 1:
            out[key] = float(global_threshold)
        else:
            out[key] = threshold_curve([d], train_claims).best(objective, global_threshold)[0]
    return out
