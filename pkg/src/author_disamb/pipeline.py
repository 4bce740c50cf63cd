"""End-to-end runs: block, sample, train, cluster, evaluate."""

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .blocking import STRATEGY_ALIASES, BlockingStrategy, assign_blocks
from .clustering import CUT_ALIASES, OBJECTIVES, CutStrategy, LinkageCriterion, disambiguate
from .evaluation import b3_scores, crossval_folds, mean_row, pairwise_scores, report_row
from .features import EthnicityModel, fit_feature_extractor
from .linkage import (CLASSIFIER_ALIASES, CLASSIFIERS, SAMPLING_ALIASES, SamplingStrategy,
                      sample_training_pairs, train_linkage_model)
from .textnorm import DEFAULT_AFFIXES, load_affixes


@dataclass
class PipelineConfig:
    """One point of the ablation grid. Defaults are the baseline setup."""

    blocking: str = "sfi"
    normalize: bool = True
    classifier: str = "gbrt"
    sampling: str = "balanced_blocked"
    n_pairs: int = 1_000_000
    linkage: str = "average"
    cut: str = "block_cut"
    objective: str = "b3f"
    hyperparameters: dict = field(default_factory=dict)
    seed: int = 0
    threads: int = 1
    blocks: tuple | None = None
    affixes: str | None = None
    ethnicity_model: str | None = None

    def __post_init__(self):
        self.blocking = BlockingStrategy(STRATEGY_ALIASES.get(self.blocking, self.blocking)).value
        self.classifier = CLASSIFIER_ALIASES.get(self.classifier, self.classifier)
        if self.classifier not in CLASSIFIERS:
            raise ValueError(f"unknown classifier {self.classifier!r}")
        self.sampling = SamplingStrategy(SAMPLING_ALIASES.get(self.sampling, self.sampling)).value
        self.linkage = LinkageCriterion(self.linkage).value
        self.cut = CutStrategy(CUT_ALIASES.get(self.cut, self.cut)).value
        if self.objective not in OBJECTIVES:
            raise ValueError(f"unknown objective {self.objective!r}")
        if self.n_pairs < 2:
            raise ValueError("n_pairs must be at least 2")
        if self.seed < 0 or self.threads < 1:
            raise ValueError("seed must be non-negative and threads positive")
        if self.blocks is not None:
            self.blocks = tuple(self.blocks)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def affix_set(self):
        return DEFAULT_AFFIXES if self.affixes is None else load_affixes(self.affixes)

    def load_ethnicity_model(self):
        return None if self.ethnicity_model is None else EthnicityModel.load(self.ethnicity_model)


def block_signatures(dataset, config):
    return assign_blocks(dataset, config.blocking, config.normalize, config.affix_set())


@dataclass
class TrainingData:
    extractor: object
    table: object
    pairs: list
    profiles: np.ndarray


def prepare_training(dataset, assignment, train_claims, config, ethnicity_model=None):
    """Fit the tf-idf vocabularies, encode every signature and build the
    profiles of sampled training pairs."""
    affixes = config.affix_set()
    # vocabularies need no labels, so they are fitted on every signature
    extractor = fit_feature_extractor(dataset, normalize=config.normalize, affixes=affixes)
    table = extractor.encode(dataset, ethnicity_model)
    pairs = sample_training_pairs(dataset, train_claims, assignment, config.sampling,
                                  config.n_pairs, config.seed, affixes)
    rows_a = [table.row[p.s1] for p in pairs]
    rows_b = [table.row[p.s2] for p in pairs]
    return TrainingData(extractor, table, pairs, table.pair_profiles(rows_a, rows_b))


@dataclass
class RunResult:
    assignment: dict
    model: object
    result: object
    pairs: list

    @property
    def clustering(self):
        return self.result.clustering


def train_model(dataset, assignment, train_claims, config, ethnicity_model=None):
    prep = prepare_training(dataset, assignment, train_claims, config, ethnicity_model)
    hyper = dict(config.hyperparameters)
    if config.classifier == "random_forest":
        hyper.setdefault("n_jobs", config.threads)
    model = train_linkage_model(prep.pairs, prep.profiles, config.classifier, hyper,
                                config.seed, prep.extractor, ethnicity_model)
    return model, prep


def run(dataset, train_claims, config, ethnicity_model=None, assignment=None):
    """Disambiguate ``dataset`` (or the configured blocks of it)."""
    if ethnicity_model is None:
        ethnicity_model = config.load_ethnicity_model()
    if assignment is None:
        assignment = block_signatures(dataset, config)
    model, prep = train_model(dataset, assignment, train_claims, config, ethnicity_model)
    blocks = config.blocks
    claims = train_claims
    if blocks is not None:
        keys = set(blocks)
        claims = {s: a for s, a in train_claims.items() if assignment[s] in keys}
    result = disambiguate(dataset, assignment, model, config.linkage, config.cut, claims,
                          config.objective, config.threads, blocks, return_result=True)
    return RunResult(assignment, model, result, prep.pairs)


def evaluate(truth, predicted, ids=None):
    """B3 and pairwise scores of ``predicted`` on ``ids`` (default: every id
    of ``truth`` that was clustered)."""
    if ids is None:
        ids = [s for s in truth if s in predicted]
    return b3_scores(truth, predicted, ids), pairwise_scores(truth, predicted, ids)


def crossval(dataset, claims, config, ethnicity_model=None, n_folds=3, train_fraction=0.13):
    """Per-fold report rows followed by their mean."""
    if ethnicity_model is None:
        ethnicity_model = config.load_ethnicity_model()
    assignment = block_signatures(dataset, config)
    rows = []
    for f, fold in enumerate(crossval_folds(claims, n_folds, train_fraction, config.seed)):
        train_claims, test_claims = fold.split(claims)
        res = run(dataset, train_claims, config, ethnicity_model, assignment)
        b3, pw = evaluate(test_claims, res.clustering)
        rows.append(report_row(f"fold{f}", b3, pw))
    rows.append(mean_row(rows))
    return rows
