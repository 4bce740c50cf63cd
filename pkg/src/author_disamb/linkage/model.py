"""The learned linkage function and its persistence."""

import json
from dataclasses import dataclass

import numpy as np

from ..features import N_FEATURES, EthnicityModel, FeatureExtractor, similarity_profile
from .forest import RandomForest
from .gbrt import GradientBoosting
from .logistic import LogisticRegression

MODEL_FORMAT = "author-disamb/linkage"
MODEL_VERSION = 1

CLASSIFIERS = {
    "random_forest": RandomForest,
    "gbrt": GradientBoosting,
    "logistic_regression": LogisticRegression,
}
CLASSIFIER_ALIASES = {"rf": "random_forest", "logreg": "logistic_regression"}


@dataclass(frozen=True)
class LinkageModel:
    """A fitted classifier plus the feature pipeline it was trained with.

    ``feature_indices`` lists the profile columns the classifier sees, which
    is all 22 unless features were eliminated.
    """

    kind: str
    estimator: object
    extractor: FeatureExtractor | None = None
    ethnicity: EthnicityModel | None = None
    feature_indices: tuple = tuple(range(N_FEATURES))

    def predict_distance(self, profiles):
        """``P(distinct)`` for every row of a ``(n, 22)`` profile matrix."""
        profiles = np.asarray(profiles, dtype=float)
        if profiles.ndim != 2 or profiles.shape[1] != N_FEATURES:
            raise ValueError(f"expected profiles of shape (n, {N_FEATURES}), "
                             f"got {profiles.shape}")
        if len(profiles) == 0:
            return np.zeros(0)
        X = profiles[:, list(self.feature_indices)]
        return np.clip(self.estimator.predict_proba(X), 0.0, 1.0)

    def to_dict(self):
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "kind": self.kind,
            "feature_indices": list(self.feature_indices),
            "estimator": self.estimator.to_dict(),
            "extractor": None if self.extractor is None else self.extractor.to_dict(),
            "ethnicity": None if self.ethnicity is None else self.ethnicity.to_dict(),
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("format") != MODEL_FORMAT or d.get("version") != MODEL_VERSION:
            raise ValueError(f"unsupported linkage model format {d.get('format')!r} "
                             f"version {d.get('version')!r}; expected {MODEL_FORMAT!r} "
                             f"version {MODEL_VERSION}")
        kind = d["kind"]
        return cls(
            kind,
            CLASSIFIERS[kind].from_dict(d["estimator"]),
            None if d["extractor"] is None else FeatureExtractor.from_dict(d["extractor"]),
            None if d["ethnicity"] is None else EthnicityModel.from_dict(d["ethnicity"]),
            tuple(d["feature_indices"]),
        )

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def make_classifier(kind, hyperparameters=None, seed=0):
    kind = CLASSIFIER_ALIASES.get(kind, kind)
    if kind not in CLASSIFIERS:
        raise ValueError(f"unknown classifier {kind!r}")
    params = dict(hyperparameters or {})
    if kind != "logistic_regression":
        params.setdefault("seed", seed)
    return CLASSIFIERS[kind](**params)


def train_linkage_model(pairs, profiles, kind="random_forest", hyperparameters=None, seed=0,
                        extractor=None, ethnicity_model=None, feature_indices=None):
    """Fit a classifier mapping similarity profiles to ``P(distinct)``.

    Parameters
    ----------
    pairs : list of TrainingPair
        Supplies the labels; row ``k`` of ``profiles`` describes ``pairs[k]``.
    profiles : ndarray of shape (len(pairs), 22)
    kind : {"random_forest", "gbrt", "logistic_regression"}
    hyperparameters : dict, optional
        Constructor arguments of the classifier, overriding its defaults.
    feature_indices : sequence of int, optional
        Profile columns to train on.
    """
    profiles = np.asarray(profiles, dtype=float)
    if profiles.ndim != 2 or profiles.shape[1] != N_FEATURES:
        raise ValueError(f"profile dimension mismatch: expected {N_FEATURES} columns, "
                         f"got shape {profiles.shape}")
    if len(profiles) != len(pairs):
        raise ValueError(f"{len(pairs)} pairs but {len(profiles)} profiles")
    y = np.array([p.label for p in pairs], dtype=float)
    if len(np.unique(y)) < 2:
        raise ValueError("training pairs contain a single class")
    if feature_indices is None:
        feature_indices = tuple(range(N_FEATURES))
    feature_indices = tuple(int(k) for k in feature_indices)
    estimator = make_classifier(kind, hyperparameters, seed)
    estimator.fit(profiles[:, list(feature_indices)], y)
    return LinkageModel(estimator.kind, estimator, extractor, ethnicity_model, feature_indices)


def link_probability(model, s1, s2, dataset):
    """``P(distinct)`` for two signatures of ``dataset``."""
    if model.extractor is None:
        raise ValueError("the model carries no feature extractor")
    profile = similarity_profile(s1, s2, dataset, model.extractor, model.ethnicity)
    return float(model.predict_distance(profile[None, :])[0])


def feature_importances(model):
    """Normalized importances over the 22 profile columns (0 for columns the
    model does not use).

    Only tree ensembles have them; for a logistic model rank features by
    ``abs(model.estimator.coef_)`` instead.
    """
    if model.kind == "logistic_regression":
        raise TypeError("feature importances are only defined for tree ensembles; "
                        "rank logistic-regression features by |coefficient|")
    out = np.zeros(N_FEATURES)
    out[list(model.feature_indices)] = model.estimator.feature_importances_
    total = out.sum()
    return out / total if total > 0 else out
