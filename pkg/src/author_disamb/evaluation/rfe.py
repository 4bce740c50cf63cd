"""Recursive feature elimination driven by forest or GBRT importances."""

import numpy as np

from ..features import FEATURE_NAMES, N_FEATURES
from .crossval import crossval_folds


def rfe_ranking(dataset, claims, config, ethnicity_model=None, fold=0):
    """Eliminate features one at a time, least important first.

    Uses the training/test split of fold ``fold``. After each elimination
    the linkage function is retrained on the remaining features, the
    claimed blocks are re-clustered and the B3 F on test claims recorded.

    Returns
    -------
    list of (str, float)
        ``(eliminated feature name, test B3 F after its removal)``, 21
        entries for the full profile.
    """
    from ..clustering import build_dendrogram, cluster_dendrograms, select_blocks
    from ..linkage import feature_importances, train_linkage_model
    from ..pipeline import block_signatures, evaluate, prepare_training

    if config.classifier == "logistic_regression":
        raise ValueError("recursive feature elimination needs a tree-based classifier")
    folds = crossval_folds(claims, n_folds=fold + 1, seed=config.seed)
    train_claims, test_claims = folds[fold].split(claims)
    assignment = block_signatures(dataset, config)
    prep = prepare_training(dataset, assignment, train_claims, config, ethnicity_model)

    claimed_keys = sorted({assignment[s] for s in claims})
    blocks = select_blocks(assignment, claimed_keys)
    block_profiles = {key: prep.table.block_profiles([prep.table.row[s] for s in ids])
                      for key, ids in blocks}

    active = list(range(N_FEATURES))
    ranking = []
    model = train_linkage_model(prep.pairs, prep.profiles, config.classifier,
                                config.hyperparameters, config.seed, prep.extractor,
                                ethnicity_model, active)
    while len(active) > 1:
        imp = feature_importances(model)[active]
        drop = active[int(np.argmin(imp))]
        active.remove(drop)
        model = train_linkage_model(prep.pairs, prep.profiles, config.classifier,
                                    config.hyperparameters, config.seed, prep.extractor,
                                    ethnicity_model, active)
        dendrograms = {key: build_dendrogram(ids, model.predict_distance(block_profiles[key]),
                                             config.linkage)
                       for key, ids in blocks}
        result = cluster_dendrograms(dendrograms, config.cut, train_claims, config.objective)
        b3, _ = evaluate(test_claims, result.clustering)
        ranking.append((FEATURE_NAMES[drop], b3.f_measure))
    return ranking
