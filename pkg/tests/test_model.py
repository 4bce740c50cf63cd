import json

import numpy as np
import pytest

from author_disamb.core import MissingIdError
from author_disamb.features import N_FEATURES
from author_disamb.linkage import (LinkageModel, TrainingPair, feature_importances,
                                   link_probability, train_linkage_model)
from author_disamb.pipeline import PipelineConfig, block_signatures, train_model


def toy_pairs(n=40):
    pairs = [TrainingPair(f"a{k}", f"b{k}", k % 2, "easy") for k in range(n)]
    X = np.zeros((n, N_FEATURES))
    X[:, 0] = [1.0 - p.label for p in pairs]  # full-name similarity separates the classes
    return pairs, X


def test_train_errors():
    pairs, X = toy_pairs()
    with pytest.raises(ValueError, match="dimension"):
        train_linkage_model(pairs, X[:, :5])
    with pytest.raises(ValueError, match="single class"):
        train_linkage_model(pairs[::2], X[::2])
    with pytest.raises(ValueError):
        train_linkage_model(pairs, X, kind="svm")
    with pytest.raises(ValueError):
        train_linkage_model(pairs[:-1], X)


@pytest.mark.parametrize("kind", ["random_forest", "gbrt", "logistic_regression"])
def test_toy_model_separates(kind):
    pairs, X = toy_pairs()
    model = train_linkage_model(pairs, X, kind, {"n_estimators": 10} if kind != "logistic_regression" else None)
    assert model.kind == kind
    d = model.predict_distance(X)
    assert np.array_equal(d > 0.5, np.array([p.label for p in pairs]) == 1)
    with pytest.raises(ValueError):
        model.predict_distance(X[:, :3])
    assert model.predict_distance(np.zeros((0, N_FEATURES))).shape == (0,)


def test_feature_importances():
    pairs, X = toy_pairs()
    rf = train_linkage_model(pairs, X, "rf", {"n_estimators": 10})
    imp = feature_importances(rf)
    assert imp.shape == (N_FEATURES,) and imp.sum() == pytest.approx(1.0, abs=1e-9)
    assert np.argmax(imp) == 0
    sub = train_linkage_model(pairs, X, "gbrt", {"n_estimators": 5}, feature_indices=[0, 3])
    imp = feature_importances(sub)
    assert np.all(imp[[k for k in range(N_FEATURES) if k not in (0, 3)]] == 0)
    with pytest.raises(TypeError):
        feature_importances(train_linkage_model(pairs, X, "logreg"))


@pytest.fixture(scope="module")
def trained(small_corpus):
    config = PipelineConfig(n_pairs=400, sampling="uniform", hyperparameters={"n_estimators": 50})
    ds = small_corpus.dataset
    assignment = block_signatures(ds, config)
    model, prep = train_model(ds, assignment, small_corpus.claims, config)
    return model, prep


def test_link_probability(trained, small_corpus):
    model, _ = trained
    ds = small_corpus.dataset
    ids = sorted(ds.signatures)
    rng = np.random.default_rng(0)
    for a, b in rng.choice(len(ids), size=(50, 2)):
        p = link_probability(model, ids[a], ids[b], ds)
        assert 0.0 <= p <= 1.0
        assert p == link_probability(model, ids[b], ids[a], ds)
    with pytest.raises(KeyError):
        link_probability(model, ids[0], "nope", ds)


def test_held_out_same_author_pairs_look_close(trained, small_corpus):
    model, _ = trained
    truth, claims = small_corpus.truth, small_corpus.claims
    held = sorted(s for s in truth if s not in claims)
    by_author = {}
    for s in held:
        by_author.setdefault(truth[s], []).append(s)
    ds = small_corpus.dataset
    probs = [link_probability(model, ss[0], ss[1], ds) for ss in by_author.values()
             if len(ss) > 1 and ds.signatures[ss[0]].author_name == ds.signatures[ss[1]].author_name]
    assert probs and np.median(probs) < 0.5


def test_save_load_round_trip(tmp_path, trained):
    model, prep = trained
    path = tmp_path / "model.json"
    model.save(path)
    loaded = LinkageModel.load(path)
    assert np.array_equal(loaded.predict_distance(prep.profiles), model.predict_distance(prep.profiles))
    d = json.loads(path.read_text())
    d["version"] = 99
    path.write_text(json.dumps(d))
    with pytest.raises(ValueError, match="version"):
        LinkageModel.load(path)


def test_training_is_deterministic(small_corpus, trained):
    model, _ = trained
    config = PipelineConfig(n_pairs=400, sampling="uniform", hyperparameters={"n_estimators": 50})
    ds = small_corpus.dataset
    again, _ = train_model(ds, block_signatures(ds, config), small_corpus.claims, config)
    assert again.to_dict() == model.to_dict()


def test_claims_outside_dataset(small_corpus):
    config = PipelineConfig(n_pairs=100)
    ds = small_corpus.dataset
    claims = dict(small_corpus.claims, ghost="A")
    with pytest.raises(MissingIdError):
        train_model(ds, block_signatures(ds, config), claims, config)
