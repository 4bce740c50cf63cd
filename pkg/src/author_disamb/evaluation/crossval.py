"""Train/test splits of the claimed signatures."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CrossvalFold:
    train_ids: frozenset
    test_ids: frozenset

    def split(self, claims):
        """``(train claims, test claims)`` as dicts."""
        return ({s: claims[s] for s in sorted(self.train_ids)},
                {s: claims[s] for s in sorted(self.test_ids)})


def crossval_folds(claims, n_folds=3, train_fraction=0.13, seed=0):
    """Independent random splits of the claimed signatures.

    Fold ``f`` draws ``floor(train_fraction * N)`` training signatures
    uniformly with ``default_rng([seed, f])``; the rest is the test set.
    Folds are separate draws, so training sets of two folds may overlap.
    """
    if not claims:
        raise ValueError("no claimed signatures")
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must be in (0, 1)")
    ids = sorted(claims)
    k = int(np.floor(train_fraction * len(ids)))
    folds = []
    for f in range(n_folds):
        rng = np.random.default_rng([seed, f])
        chosen = np.zeros(len(ids), dtype=bool)
        chosen[rng.choice(len(ids), size=k, replace=False)] = True
        folds.append(CrossvalFold(
            frozenset(s for s, c in zip(ids, chosen) if c),
            frozenset(s for s, c in zip(ids, chosen) if not c)))
    return folds
