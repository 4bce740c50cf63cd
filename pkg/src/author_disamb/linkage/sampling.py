"""Training pairs drawn from claimed signatures.

A pair is *positive* (label 0) when both signatures are claimed by the same
author and *negative* (label 1) otherwise. It is *hard* when the names
disagree with the labels: same author under different normalized names, or
different authors under the same normalized name. Everything else is
*easy*.

Blocked strategies never enumerate all pairs of the claimed set. Stratum
sizes are computed per block from author/name cell counts, global pair
indices are drawn without replacement, and only the blocks that received a
draw are enumerated.
"""

import warnings
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..core import MissingIdError
from ..textnorm import DEFAULT_AFFIXES, normalize_name

SAME, DISTINCT = 0, 1
EASY, HARD = "easy", "hard"

# enumeration of the negatives of the whole claimed set is used up to this
# many pairs; above it negatives are drawn by rejection
_ENUMERATION_LIMIT = 5_000_000


class SamplingStrategy(str, Enum):
    UNIFORM_NONBLOCKED = "uniform_nonblocked"
    UNIFORM_BLOCKED = "uniform_blocked"
    BALANCED_BLOCKED = "balanced_blocked"


SAMPLING_ALIASES = {"uniform": "uniform_nonblocked", "blocked": "uniform_blocked",
                    "balanced": "balanced_blocked"}


@dataclass(frozen=True)
class TrainingPair:
    s1: str
    s2: str
    label: int
    difficulty: str

    def __post_init__(self):
        if self.s1 == self.s2:
            raise ValueError("a training pair needs two distinct signatures")
        if self.label not in (SAME, DISTINCT) or self.difficulty not in (EASY, HARD):
            raise ValueError(f"invalid pair {self!r}")


def pair_difficulty(same_author, same_name):
    return HARD if same_author != same_name else EASY


def _pairs_in_cells(codes):
    """Number of unordered pairs sharing a code."""
    counts = np.bincount(codes) if len(codes) else np.zeros(0, dtype=np.int64)
    return int((counts * (counts - 1) // 2).sum())


def _block_strata(authors, names):
    """Sizes of the strata (pos-easy, pos-hard, neg-easy, neg-hard) of a block."""
    n = len(authors)
    cells = np.unique(np.stack([authors, names], axis=1), axis=0, return_inverse=True)[1]
    same_cell = _pairs_in_cells(cells.ravel())
    same_author = _pairs_in_cells(authors)
    same_name = _pairs_in_cells(names)
    total = n * (n - 1) // 2
    pos_easy = same_cell
    pos_hard = same_author - same_cell
    neg_hard = same_name - same_cell
    neg_easy = total - same_author - neg_hard
    return np.array([pos_easy, pos_hard, neg_easy, neg_hard], dtype=np.int64)


def _classify(authors, names, i, j):
    """Stratum index (0..3) of pairs ``(i, j)``."""
    same_a = authors[i] == authors[j]
    same_n = names[i] == names[j]
    return np.where(same_a, 0, 2) + (same_a != same_n)


def _unrank_triu(k, n):
    """Map linear indices over the pairs ``i < j`` of ``n`` items (row-major)
    to ``(i, j)``."""
    k = np.asarray(k, dtype=np.int64)
    i = (n - 2 - np.floor(np.sqrt(-8.0 * k + 4.0 * n * (n - 1) - 7) / 2.0 - 0.5)).astype(np.int64)
    # guard against floating error in the square root
    start = i * n - i * (i + 1) // 2
    too_far = start > k
    i[too_far] -= 1
    start = i * n - i * (i + 1) // 2
    nxt = (i + 1) * n - (i + 1) * (i + 2) // 2
    step = nxt <= k
    i[step] += 1
    start = i * n - i * (i + 1) // 2
    j = k - start + i + 1
    return i, j


def _spread(deficit, spare):
    """Share ``deficit`` across strata in proportion to their spare capacity."""
    spare = [int(s) for s in spare]
    total = sum(spare)
    if deficit <= 0 or total == 0:
        return [0] * len(spare)
    if deficit >= total:
        return spare
    add = [deficit * s // total for s in spare]
    rest = deficit - sum(add)
    order = sorted(range(len(spare)), key=lambda k: (-(spare[k] - add[k]), k))
    for k in order[:rest]:
        add[k] += 1
    return add


def allocate_quotas(n_pairs, available, labels):
    """Per-stratum quotas.

    ``labels[k]`` is the class of stratum ``k``. The request is split evenly
    between the two classes, then evenly between the strata of a class
    (hard strata get the odd pair). A shortfall is made up first from the
    other strata of the same class, then from the other class.
    """
    available = [int(a) for a in available]
    strata = {c: [k for k, lab in enumerate(labels) if lab == c] for c in (SAME, DISTINCT)}
    class_target = {SAME: n_pairs - n_pairs // 2, DISTINCT: n_pairs // 2}
    target = [0] * len(labels)
    for c, ks in strata.items():
        t = class_target[c]
        for r, k in enumerate(ks):
            # later strata (hard) take the remainder
            target[k] = t // len(ks) + (1 if r >= len(ks) - t % len(ks) else 0)
    take = [min(t, a) for t, a in zip(target, available)]
    for c, ks in strata.items():
        deficit = sum(target[k] - take[k] for k in ks)
        add = _spread(deficit, [available[k] - take[k] for k in ks])
        for k, a in zip(ks, add):
            take[k] += a
    deficit = n_pairs - sum(take)
    for c in (SAME, DISTINCT):
        ks = strata[c]
        add = _spread(deficit, [available[k] - take[k] for k in ks])
        for k, a in zip(ks, add):
            take[k] += a
        deficit -= sum(add)
    return take


def _claimed(dataset, claims, assignment, affixes):
    ids = sorted(claims)
    missing = [sid for sid in ids if sid not in assignment or sid not in dataset.signatures]
    if missing:
        raise MissingIdError(f"claimed signature {missing[0]!r} is not in the dataset "
                             f"or the block assignment")
    author_index, name_index = {}, {}
    authors = np.array([author_index.setdefault(claims[s], len(author_index)) for s in ids],
                       dtype=np.int64)
    names = np.array([name_index.setdefault(
        normalize_name(dataset.signatures[s].author_name, affixes).lower(), len(name_index))
        for s in ids], dtype=np.int64)
    return ids, authors, names


def sample_training_pairs(dataset, claims, assignment, strategy, n_pairs, seed=0,
                          affixes=DEFAULT_AFFIXES):
    """Draw up to ``n_pairs`` labeled pairs of claimed signatures.

    Parameters
    ----------
    dataset : Dataset
    claims : dict
        Claimed ``signature_id -> author_id``.
    assignment : dict
        ``signature_id -> block_key``; blocked strategies only pair
        signatures with the same key.
    strategy : SamplingStrategy or str
    n_pairs : int
    seed : int

    Returns
    -------
    list of TrainingPair
        Stratum by stratum (positives first), ``s1 < s2``.
    """
    strategy = SamplingStrategy(SAMPLING_ALIASES.get(strategy, strategy))
    if n_pairs < 2:
        raise ValueError("n_pairs must be at least 2")
    if not claims:
        raise ValueError("no claimed signatures")
    if len(set(claims.values())) < 2:
        raise ValueError("claims contain a single author, so there are no negative pairs")
    ids, authors, names = _claimed(dataset, claims, assignment, affixes)
    rng = np.random.default_rng(seed)
    if strategy is SamplingStrategy.UNIFORM_NONBLOCKED:
        rows = _sample_nonblocked(authors, n_pairs, rng)
    else:
        rows = _sample_blocked(ids, authors, names, assignment, n_pairs, rng,
                               balanced=strategy is SamplingStrategy.BALANCED_BLOCKED)
    if len(rows) < n_pairs:
        warnings.warn(f"only {len(rows)} training pairs available, {n_pairs} requested",
                      stacklevel=2)
    out = []
    for i, j in rows:
        same_a = bool(authors[i] == authors[j])
        same_n = bool(names[i] == names[j])
        out.append(TrainingPair(ids[i], ids[j], SAME if same_a else DISTINCT,
                                pair_difficulty(same_a, same_n)))
    return out


def _sample_blocked(ids, authors, names, assignment, n_pairs, rng, balanced):
    members = defaultdict(list)
    for k, sid in enumerate(ids):
        members[assignment[sid]].append(k)
    blocks = [np.array(members[key]) for key in sorted(members) if len(members[key]) > 1]
    if not blocks:
        return []
    counts = np.array([_block_strata(authors[b], names[b]) for b in blocks])
    if not balanced:
        counts = np.stack([counts[:, 0] + counts[:, 1], counts[:, 2] + counts[:, 3]], axis=1)
        labels = (SAME, DISTINCT)
    else:
        labels = (SAME, SAME, DISTINCT, DISTINCT)
    quotas = allocate_quotas(n_pairs, counts.sum(axis=0), labels)

    wanted = defaultdict(dict)  # block -> stratum -> local offsets
    for s, q in enumerate(quotas):
        if q == 0:
            continue
        ends = np.cumsum(counts[:, s])
        picks = np.sort(rng.choice(int(ends[-1]), size=q, replace=False))
        which = np.searchsorted(ends, picks, side="right")
        starts = ends - counts[:, s]
        for b in np.unique(which):
            wanted[b][s] = picks[which == b] - starts[b]

    rows = {s: [] for s in range(len(quotas))}
    for b in sorted(wanted):
        members_b = blocks[b]
        a, c = np.triu_indices(len(members_b), k=1)
        i, j = members_b[a], members_b[c]
        stratum = _classify(authors, names, i, j)
        if not balanced:
            stratum = stratum // 2
        for s, offsets in wanted[b].items():
            sel = np.flatnonzero(stratum == s)[offsets]
            rows[s].extend(zip(i[sel].tolist(), j[sel].tolist()))
    return [pair for s in range(len(quotas)) for pair in rows[s]]


def _sample_nonblocked(authors, n_pairs, rng):
    n = len(authors)
    by_author = defaultdict(list)
    for k, a in enumerate(authors.tolist()):
        by_author[a].append(k)
    groups = [np.array(by_author[a]) for a in sorted(by_author)]
    sizes = np.array([len(g) for g in groups], dtype=np.int64)
    pos_counts = sizes * (sizes - 1) // 2
    n_pos = int(pos_counts.sum())
    n_neg = n * (n - 1) // 2 - n_pos
    q_pos, q_neg = allocate_quotas(n_pairs, [n_pos, n_neg], (SAME, DISTINCT))

    rows = []
    if q_pos:
        ends = np.cumsum(pos_counts)
        picks = np.sort(rng.choice(n_pos, size=q_pos, replace=False))
        which = np.searchsorted(ends, picks, side="right")
        local = picks - (ends - pos_counts)[which]
        for g in np.unique(which):
            sel = which == g
            a, c = _unrank_triu(local[sel], sizes[g])
            members = groups[g]
            i, j = members[a], members[c]
            rows.extend(zip(np.minimum(i, j).tolist(), np.maximum(i, j).tolist()))
    if q_neg:
        if n * (n - 1) // 2 <= _ENUMERATION_LIMIT:
            i, j = np.triu_indices(n, k=1)
            neg = np.flatnonzero(authors[i] != authors[j])
            picks = np.sort(rng.choice(len(neg), size=q_neg, replace=False))
            rows.extend(zip(i[neg[picks]].tolist(), j[neg[picks]].tolist()))
        else:
            seen = set()
            while len(seen) < q_neg:
                batch = 2 * (q_neg - len(seen)) + 16
                i = rng.integers(0, n, batch)
                j = rng.integers(0, n, batch)
                for x, y in zip(np.minimum(i, j).tolist(), np.maximum(i, j).tolist()):
                    if authors[x] != authors[y] and (x, y) not in seen:
                        seen.add((x, y))
                        if len(seen) == q_neg:
                            break
            rows.extend(sorted(seen))
    return rows
