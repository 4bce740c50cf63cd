"""Block-wise clustering of a whole dataset."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..blocking import group_by_block
from .dendrogram import Dendrogram, LinkageCriterion, build_dendrogram, cut_labels
from .thresholds import fit_block_thresholds, fit_global_threshold, threshold_curve

# blocks with more pairs than this get their profiles in chunks
PAIR_CHUNK = 250_000


class CutStrategy(str, Enum):
    NO_CUT = "no_cut"
    GLOBAL_CUT = "global_cut"
    BLOCK_CUT = "block_cut"


CUT_ALIASES = {"none": "no_cut", "global": "global_cut", "block": "block_cut"}


@dataclass
class DisambiguationResult:
    clustering: dict
    dendrograms: dict = field(default_factory=dict)
    thresholds: dict = field(default_factory=dict)
    global_threshold: float | None = None

    def curve(self, claims):
        """Objective curve over global thresholds (for plotting)."""
        return threshold_curve(self.dendrograms.values(), claims)


def block_distances(table, rows, model):
    """Condensed ``P(distinct)`` over all pairs of ``rows`` of an encoded table."""
    n = len(rows)
    n_pairs = n * (n - 1) // 2
    if n_pairs == 0:
        return np.zeros(0)
    if n_pairs <= PAIR_CHUNK:
        return model.predict_distance(table.block_profiles(rows))
    rows = np.asarray(rows)
    a, b = np.triu_indices(n, k=1)
    out = np.empty(n_pairs)
    for start in range(0, n_pairs, PAIR_CHUNK):
        sl = slice(start, start + PAIR_CHUNK)
        out[sl] = model.predict_distance(table.pair_profiles(rows[a[sl]], rows[b[sl]]))
    return out


def build_block_dendrograms(dataset, blocks, model, criterion="average", n_jobs=1,
                            table=None):
    """Dendrogram of every ``(key, ids)`` block, keyed by block key."""
    criterion = LinkageCriterion(criterion)
    if table is None:
        ids = [sid for _, members in blocks for sid in members]
        table = model.extractor.encode(dataset, model.ethnicity, ids)

    def one(block):
        key, members = block
        rows = [table.row[sid] for sid in members]
        return key, build_dendrogram(members, block_distances(table, rows, model), criterion)

    if n_jobs > 1:
        with ThreadPoolExecutor(n_jobs) as pool:
            return dict(pool.map(one, blocks))
    return dict(map(one, blocks))


def select_blocks(assignment, block_keys=None):
    groups = group_by_block(assignment)
    if block_keys is None:
        return groups
    wanted = set(block_keys)
    unknown = wanted - {key for key, _ in groups}
    if unknown:
        raise KeyError(f"unknown block {sorted(unknown)[0]!r}")
    return [(key, ids) for key, ids in groups if key in wanted]


def cluster_dendrograms(dendrograms, strategy, train_claims=None, objective="b3f"):
    """Cut prebuilt dendrograms; returns a :class:`DisambiguationResult`."""
    strategy = CutStrategy(CUT_ALIASES.get(strategy, strategy))
    claims = dict(train_claims or {})
    if strategy is CutStrategy.NO_CUT:
        thresholds = {key: d.max_height + 1.0 for key, d in dendrograms.items()}
        global_threshold = None
    elif strategy is CutStrategy.GLOBAL_CUT:
        global_threshold = fit_global_threshold(dendrograms, claims, objective)
        thresholds = {key: global_threshold for key in dendrograms}
    else:
        has_claims = any(sid in claims for d in dendrograms.values() for sid in d.signature_ids)
        global_threshold = (fit_global_threshold(dendrograms, claims, objective)
                            if has_claims else None)
        thresholds = fit_block_thresholds(dendrograms, claims, objective, global_threshold)
    clustering = {}
    for key in sorted(dendrograms):
        d = dendrograms[key]
        for sid, lab in zip(d.signature_ids, cut_labels(d, thresholds[key]).tolist()):
            clustering[sid] = f"{key}#{lab}"
    return DisambiguationResult(clustering, dendrograms, thresholds, global_threshold)


def disambiguate(dataset, assignment, model, criterion="average", strategy="block_cut",
                 train_claims=None, objective="b3f", n_jobs=1, block_keys=None,
                 return_result=False):
    """Predict an author label for every signature of the selected blocks.

    Labels look like ``"block_key#k"``. ``no_cut`` merges each block into a
    single cluster without evaluating the model.
    """
    strategy = CutStrategy(CUT_ALIASES.get(strategy, strategy))
    blocks = select_blocks(assignment, block_keys)
    if strategy is CutStrategy.NO_CUT:
        dendrograms = {key: Dendrogram(ids, _chain(len(ids))) for key, ids in blocks}
    else:
        dendrograms = build_block_dendrograms(dataset, blocks, model, criterion, n_jobs)
    result = cluster_dendrograms(dendrograms, strategy, train_claims, objective)
    return result if return_result else result.clustering


def _chain(n):
    """A zero-height merge sequence joining ``n`` leaves."""
    merges = np.zeros((max(n - 1, 0), 4))
    for k in range(n - 1):
        prev = n + k - 1 if k else 0
        merges[k] = (min(prev, k + 1), max(prev, k + 1), 0.0, k + 2)
    return merges
