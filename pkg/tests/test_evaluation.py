from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from author_disamb.core import Dataset, MissingIdError, Publication, Signature
from author_disamb.evaluation import (HEADER, Scores, b3_scores, blocking_max_recall,
                                      crossval_folds, format_report, mean_row, pairwise_scores,
                                      parse_report, report_row, rfe_ranking)
from author_disamb.features import FEATURE_NAMES
from author_disamb.pipeline import PipelineConfig


def brute_b3(truth, pred, ids):
    ids = list(ids)
    p = r = Fraction(0)
    for s in ids:
        c = {x for x in ids if truth[x] == truth[s]}
        chat = {x for x in ids if pred[x] == pred[s]}
        p += Fraction(len(c & chat), len(chat))
        r += Fraction(len(c & chat), len(c))
    return p / len(ids), r / len(ids)


def brute_pairwise(truth, pred, ids):
    ids = list(ids)
    pairs = lambda lab: {(a, b) for a in ids for b in ids if a != b and lab[a] == lab[b]}
    t, h = pairs(truth), pairs(pred)
    p = Fraction(len(t & h), len(h)) if h else Fraction(1 if not t else 0)
    r = Fraction(len(t & h), len(t)) if t else Fraction(1 if not h else 0)
    return p, r


def f_of(p, r):
    return 0 if p + r == 0 else 2 * p * r / (p + r)


partitions = st.integers(1, 12).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 4), min_size=n, max_size=n),
    st.lists(st.integers(0, 4), min_size=n, max_size=n)))


def test_examples():
    truth = {"s1": "A", "s2": "A", "s3": "B"}
    one = {"s1": 0, "s2": 0, "s3": 0}
    b3 = b3_scores(truth, one)
    assert b3.precision == pytest.approx(5 / 9) and b3.recall == 1.0
    pw = pairwise_scores(truth, one)
    assert pw.precision == pytest.approx(1 / 3) and pw.recall == 1.0
    assert tuple(b3_scores(truth, truth)) == (1.0, 1.0, 1.0)
    assert tuple(pairwise_scores(truth, truth)) == (1.0, 1.0, 1.0)
    single = {f"s{k}": "A" for k in range(5)}
    singletons = {f"s{k}": k for k in range(5)}
    assert tuple(b3_scores(single, singletons))[:2] == (1.0, 0.2)
    assert tuple(pairwise_scores(singletons, singletons)) == (1.0, 1.0, 1.0)
    assert tuple(pairwise_scores(single, singletons)) == (0.0, 0.0, 0.0)


def test_missing_ids():
    with pytest.raises(MissingIdError):
        b3_scores({"a": 1, "b": 1}, {"a": 1})
    with pytest.raises(MissingIdError):
        pairwise_scores({"a": 1}, {"a": 1}, ["a", "z"])


def test_restriction_to_ids():
    truth = {"a": 1, "b": 1, "c": 2, "d": 2}
    pred = {"a": 0, "b": 1, "c": 1, "d": 5, "extra": 0}
    ids = ["a", "c", "d"]
    assert tuple(b3_scores(truth, pred, ids)) == pytest.approx(
        tuple(map(float, (*brute_b3(truth, pred, ids), f_of(*brute_b3(truth, pred, ids))))))


@given(partitions)
def test_oracle_equivalence(parts):
    t, p = parts
    ids = [f"s{k}" for k in range(len(t))]
    truth, pred = dict(zip(ids, t)), dict(zip(ids, p))
    for fast, slow in ((b3_scores, brute_b3), (pairwise_scores, brute_pairwise)):
        got = fast(truth, pred, ids)
        bp, br = slow(truth, pred, ids)
        assert got.precision == pytest.approx(float(bp), abs=1e-12)
        assert got.recall == pytest.approx(float(br), abs=1e-12)
        assert got.f_measure == pytest.approx(float(f_of(bp, br)), abs=1e-12)
        assert all(0 <= v <= 1 for v in got)


@given(partitions, st.permutations(range(5)), st.permutations(range(5)))
def test_relabeling_invariance(parts, perm_t, perm_p):
    t, p = parts
    ids = [f"s{k}" for k in range(len(t))]
    truth, pred = dict(zip(ids, t)), dict(zip(ids, p))
    truth2 = {s: f"x{perm_t[v]}" for s, v in truth.items()}
    pred2 = {s: (perm_p[v], "y") for s, v in pred.items()}
    for score in (b3_scores, pairwise_scores):
        assert tuple(score(truth, pred)) == tuple(score(truth2, pred2))


@given(partitions)
def test_refinement_has_perfect_precision(parts):
    t, p = parts
    ids = [f"s{k}" for k in range(len(t))]
    truth = dict(zip(ids, t))
    finer = {s: (truth[s], p[k]) for k, s in enumerate(ids)}
    assert b3_scores(truth, finer).precision == 1.0
    finer_pairs = len(set(finer.values())) < len(ids)
    assert pairwise_scores(truth, finer).precision == (1.0 if finer_pairs or len(set(t)) == len(t) else 0.0)
    assert b3_scores(finer, truth).recall == 1.0


@given(partitions)
def test_max_recall_matches_oracle_clustering(parts):
    t, blocks = parts
    ids = [f"s{k}" for k in range(len(t))]
    truth, assignment = dict(zip(ids, t)), dict(zip(ids, blocks))
    r_b3, r_pw = blocking_max_recall(truth, assignment)
    oracle = {s: (truth[s], assignment[s]) for s in ids}
    assert r_b3 == b3_scores(truth, oracle).recall
    assert r_pw == pairwise_scores(truth, oracle).recall
    # clustering each whole block reaches the same recall
    merged = {s: assignment[s] for s in ids}
    assert b3_scores(truth, merged).recall == pytest.approx(r_b3)


def test_max_recall_examples():
    truth = {"a": 1, "b": 1, "c": 2}
    assert blocking_max_recall(truth, {"a": "x", "b": "x", "c": "y"}) == (1.0, 1.0)
    r_b3, r_pw = blocking_max_recall(truth, {"a": "x", "b": "y", "c": "y"})
    assert r_b3 == pytest.approx(2 / 3) and r_pw == 0.0
    with pytest.raises(MissingIdError):
        blocking_max_recall(truth, {"a": "x"})


def test_crossval_folds():
    claims = {f"s{k:03d}": k % 7 for k in range(100)}
    folds = crossval_folds(claims, seed=5)
    assert len(folds) == 3
    for fold in folds:
        assert len(fold.train_ids) == 13 and len(fold.test_ids) == 87
        assert not fold.train_ids & fold.test_ids
        assert fold.train_ids | fold.test_ids == set(claims)
        train, test = fold.split(claims)
        assert set(train) == fold.train_ids and set(test) == fold.test_ids
    assert folds == crossval_folds(claims, seed=5)
    assert folds[0] != folds[1]
    assert crossval_folds(claims, seed=6) != folds
    with pytest.raises(ValueError):
        crossval_folds({})
    with pytest.raises(ValueError):
        crossval_folds(claims, train_fraction=1.5)


def test_report_round_trip():
    rows = [report_row("fold0", Scores(1.0, 0.5, 2 / 3), Scores(0.25, 1.0, 0.4)),
            report_row("fold1", Scores(0.5, 0.5, 0.5), Scores(0.75, 0.0, 0.0))]
    rows.append(mean_row(rows))
    text = format_report(rows)
    assert text.splitlines()[0].split("\t") == list(HEADER)
    parsed = parse_report(text)
    assert [r[0] for r in parsed] == ["fold0", "fold1", "mean"]
    assert parsed[2][1:] == pytest.approx((0.75, 0.5, 0.583333, 0.5, 0.5, 0.2), abs=1e-6)
    with pytest.raises(ValueError):
        parse_report("nonsense\n")


def single_signal_dataset(n_authors=10, per_author=10, seed=0):
    """One block where only the affiliation tells the authors apart."""
    rng = np.random.default_rng(seed)
    places = ["alpha lab", "omega center", "delta institute", "kappa college", "sigma works",
              "theta school", "gamma faculty", "lambda office", "zeta academy", "rho hall"]
    sigs, pubs, truth = [], [], {}
    for a in range(n_authors):
        for k in range(per_author):
            sid, pid = f"s{a:02d}{k:02d}", f"p{a:02d}{k:02d}"
            sigs.append(Signature(sid, pid, "Doe, J.", places[a]))
            words = " ".join(rng.choice(["gauge", "boson", "lattice", "quark", "string"], 3))
            pubs.append(Publication(pid, title=words, journal="Phys. Rev.", year=2000))
            truth[sid] = f"A{a}"
    return Dataset.from_records(sigs, pubs), truth


@pytest.mark.filterwarnings("ignore:field", "ignore:only")
def test_rfe_keeps_the_only_informative_feature():
    ds, truth = single_signal_dataset()
    config = PipelineConfig(classifier="rf", n_pairs=300,
                            hyperparameters={"n_estimators": 20, "min_samples_leaf": 1})
    ranking = rfe_ranking(ds, truth, config)
    assert len(ranking) == 21
    eliminated = [name for name, _ in ranking]
    assert len(set(eliminated)) == 21
    survivor = set(FEATURE_NAMES) - set(eliminated)
    assert survivor == {"Affiliation"}
    assert all(0.0 <= f <= 1.0 for _, f in ranking)
    assert ranking[-1][1] > 0.9
    with pytest.raises(ValueError):
        rfe_ranking(ds, truth, config.replace(classifier="logistic_regression"))
