"""Name-to-ethnic-group classifier.

One linear SVM per group (one-vs-rest) on the (1, 5) character n-gram
tf-idf representation of a name. Margins are turned into probabilities with
a softmax, which keeps the argmax of the raw scores.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np

from ..textnorm import normalize_name
from .tfidf import TfidfVocabulary

ETHNIC_GROUPS = (
    "White",
    "Black",
    "American Indian or Alaska Native",
    "Chinese",
    "Japanese",
    "Other Asian or Pacific Islander",
    "Others",
)

MODEL_FORMAT = "author-disamb/ethnicity"
MODEL_VERSION = 1


@dataclass(frozen=True)
class EthnicityModel:
    vocabulary: TfidfVocabulary
    weights: np.ndarray  # (n_terms, 7)
    bias: np.ndarray  # (7,)
    groups: tuple = ETHNIC_GROUPS

    def decision_function(self, names):
        X = self.vocabulary.transform([_prepare(n) for n in names])
        return np.asarray(X @ self.weights) + self.bias

    def predict_proba(self, names):
        names = list(names)
        scores = self.decision_function(names)
        scores -= scores.max(axis=1, keepdims=True)
        p = np.exp(scores)
        p /= p.sum(axis=1, keepdims=True)
        empty = np.array([not _prepare(n).strip() for n in names], dtype=bool)
        p[empty] = 1.0 / len(self.groups)
        return p

    def predict(self, names):
        return [self.groups[k] for k in np.argmax(self.decision_function(names), axis=1)]

    def to_dict(self):
        return {"format": MODEL_FORMAT, "version": MODEL_VERSION,
                "groups": list(self.groups), "vocabulary": self.vocabulary.to_dict(),
                "weights": self.weights.tolist(), "bias": self.bias.tolist()}

    @classmethod
    def from_dict(cls, d):
        if d.get("format") != MODEL_FORMAT or d.get("version") != MODEL_VERSION:
            raise ValueError(f"unsupported ethnicity model format "
                             f"{d.get('format')!r} version {d.get('version')!r}")
        vocab = TfidfVocabulary.from_dict(d["vocabulary"])
        weights = np.asarray(d["weights"], dtype=float).reshape(len(vocab), len(d["groups"]))
        return cls(vocab, weights, np.asarray(d["bias"], dtype=float), tuple(d["groups"]))

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _prepare(name):
    return normalize_name(name).replace(",", " ").lower()


def read_names_file(path):
    """Read ``(name, group)`` rows from a delimited file with a header.

    The delimiter (comma, tab or semicolon) is sniffed.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        sample = fh.read(4096)
        fh.seek(0)
        try:
            dialect = csv.Sniffer().sniff(sample, delimiters=",\t;")
        except csv.Error:
            dialect = csv.excel
        reader = csv.DictReader(fh, dialect=dialect)
        if reader.fieldnames is None or not {"name", "group"} <= set(reader.fieldnames):
            raise ValueError(f"{path}: expected columns 'name' and 'group'")
        rows = []
        for lineno, row in enumerate(reader, 2):
            group = row["group"].strip()
            if group not in ETHNIC_GROUPS:
                raise ValueError(f"{path}:{lineno}: unknown group {group!r}")
            rows.append((row["name"], group))
    return rows


def _hinge_sgd(X, Y, alpha, n_epochs, batch_size, rng):
    """Pegasos-style mini-batch SGD on the L2-regularized hinge loss.

    ``Y`` holds +1/-1 targets, one column per class; the bias is a constant
    feature and is regularized like the weights. Returns the average of the
    iterates over the second half of training.
    """
    n, d = X.shape
    k = Y.shape[1]
    W = np.zeros((d, k))
    b = np.zeros(k)
    W_avg, b_avg, n_avg = np.zeros_like(W), np.zeros_like(b), 0
    steps_per_epoch = max(1, int(np.ceil(n / batch_size)))
    total = n_epochs * steps_per_epoch
    radius = 1.0 / np.sqrt(alpha)
    t = 0
    for _ in range(n_epochs):
        order = rng.permutation(n)
        for start in range(0, n, batch_size):
            t += 1
            idx = order[start:start + batch_size]
            Xb, Yb = X[idx], Y[idx]
            margins = Yb * (np.asarray(Xb @ W) + b)
            active = (margins < 1.0).astype(float) * Yb
            eta = 1.0 / (alpha * t)
            W *= 1.0 - eta * alpha
            b *= 1.0 - eta * alpha
            W += (eta / len(idx)) * np.asarray(Xb.T @ active)
            b += (eta / len(idx)) * active.sum(axis=0)
            norm = np.sqrt((W ** 2).sum(axis=0) + b ** 2)
            scale = np.minimum(1.0, radius / np.maximum(norm, 1e-300))
            W *= scale
            b *= scale
            if t > total // 2:
                n_avg += 1
                W_avg += (W - W_avg) / n_avg
                b_avg += (b - b_avg) / n_avg
    return W_avg, b_avg


def train_ethnicity_model(rows, alpha=1e-4, n_epochs=30, batch_size=256, seed=0):
    """Fit the one-vs-rest classifier on ``(name, group)`` rows or a names file.

    Groups missing from the data get no positive examples, so their
    classifier scores every name as negative.
    """
    if isinstance(rows, (str, bytes)) or hasattr(rows, "__fspath__"):
        rows = read_names_file(rows)
    rows = list(rows)
    if not rows:
        raise ValueError("no labeled names to train on")
    for _, group in rows:
        if group not in ETHNIC_GROUPS:
            raise ValueError(f"unknown group {group!r}")
    names = [_prepare(n) for n, _ in rows]
    vocab = TfidfVocabulary.fit(names, (1, 5))
    X = vocab.transform(names)
    labels = np.array([ETHNIC_GROUPS.index(g) for _, g in rows])
    Y = -np.ones((len(rows), len(ETHNIC_GROUPS)))
    Y[np.arange(len(rows)), labels] = 1.0
    rng = np.random.default_rng(seed)
    W, b = _hinge_sgd(X, Y, alpha, n_epochs, batch_size, rng)
    return EthnicityModel(vocab, W, b)


def ethnicity_probabilities(model, name):
    """Seven group probabilities for one name; uniform for an empty name or
    when no model is available."""
    if model is None or not _prepare(name).strip():
        return np.full(len(ETHNIC_GROUPS), 1.0 / len(ETHNIC_GROUPS))
    return model.predict_proba([name])[0]
