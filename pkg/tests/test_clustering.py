import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial.distance import squareform

from author_disamb.blocking import assign_blocks
from author_disamb.clustering import (Dendrogram, build_dendrogram, cluster_dendrograms,
                                      cut_dendrogram, disambiguate, fit_block_thresholds,
                                      fit_global_threshold, linkage_merges, threshold_curve)
from author_disamb.clustering.dendrogram import cut_labels
from author_disamb.core import Dataset, Publication, Signature
from author_disamb.evaluation import b3_scores, pairwise_scores
from author_disamb.features import fit_feature_extractor

CRITERIA = ["single", "complete", "average"]
THREE = np.array([[0, 0.1, 0.9], [0.1, 0, 0.8], [0.9, 0.8, 0]])


def naive_merges(D, criterion):
    """Brute-force agglomeration: recompute every cluster distance from the
    leaf distances at each step; ties go to the lowest (id, id) pair."""
    n = len(D)
    clusters = {i: [i] for i in range(n)}
    merges = []
    for k in range(n - 1):
        best = None
        for a, b in itertools.combinations(sorted(clusters), 2):
            block = D[np.ix_(clusters[a], clusters[b])]
            if criterion == "single":
                d = block.min()
            elif criterion == "complete":
                d = block.max()
            else:
                d = block.sum() / block.size
            if best is None or d < best[0]:
                best = (d, a, b)
        d, a, b = best
        clusters[n + k] = clusters.pop(a) + clusters.pop(b)
        merges.append((a, b, d, len(clusters[n + k])))
    return np.array(merges).reshape(-1, 4)


def random_matrix(rng, n, dyadic):
    if dyadic:
        v = rng.integers(0, 9, n * (n - 1) // 2) / 8.0
    else:
        v = rng.random(n * (n - 1) // 2)
    return squareform(v)


@pytest.mark.parametrize("criterion, second", [("average", 0.85), ("single", 0.8),
                                               ("complete", 0.9)])
def test_three_points(criterion, second):
    d = build_dendrogram(["s1", "s2", "s3"], THREE, criterion)
    assert d.merges[0].tolist() == [0, 1, 0.1, 2]
    assert d.merges[1, :2].tolist() == [2, 3] and d.merges[1, 3] == 3
    assert d.merges[1, 2] == pytest.approx(second)


def test_inputs_and_degenerate_sizes():
    d = build_dendrogram(["a"], np.zeros(0))
    assert len(d.merges) == 0 and cut_dendrogram(d, 0.0) == {"a": 0}
    assert build_dendrogram([], np.zeros(0)).merges.shape == (0, 4)
    cond = squareform(THREE)
    ref = build_dendrogram(["x", "y", "z"], THREE).merges
    assert np.array_equal(build_dendrogram(["x", "y", "z"], cond).merges, ref)
    lookup = {("x", "y"): 0.1, ("x", "z"): 0.9, ("y", "z"): 0.8}
    assert np.array_equal(build_dendrogram(["x", "y", "z"], lambda a, b: lookup[a, b]).merges, ref)
    with pytest.raises(ValueError):
        build_dendrogram(["x", "y"], cond)


def test_cuts():
    d = build_dendrogram(["s1", "s2", "s3"], THREE, "average")
    assert cut_dendrogram(d, 0.5) == {"s1": 0, "s2": 0, "s3": 1}
    assert cut_dendrogram(d, 1.0) == {"s1": 0, "s2": 0, "s3": 0}
    assert cut_dendrogram(d, 0.0) == {"s1": 0, "s2": 1, "s3": 2}
    assert cut_dendrogram(d, 0.1) == {"s1": 0, "s2": 0, "s3": 1}  # heights <= threshold merge


def test_oracle_equivalence_with_ties():
    rng = np.random.default_rng(0)
    for trial in range(150):
        n = int(rng.integers(2, 11))
        D = random_matrix(rng, n, dyadic=trial % 2 == 0)
        for criterion in CRITERIA:
            got = linkage_merges(D, criterion)
            want = naive_merges(D, criterion)
            assert np.array_equal(got[:, [0, 1, 3]], want[:, [0, 1, 3]]), (trial, criterion)
            assert np.allclose(got[:, 2], want[:, 2], rtol=0, atol=1e-12)


def test_heights_match_scipy():
    hierarchy = pytest.importorskip("scipy.cluster.hierarchy")
    rng = np.random.default_rng(1)
    for _ in range(30):
        D = random_matrix(rng, int(rng.integers(2, 30)), dyadic=False)
        for criterion in CRITERIA:
            ref = hierarchy.linkage(squareform(D), criterion)
            got = linkage_merges(D, criterion)
            assert np.allclose(got[:, 2], ref[:, 2], atol=1e-12)
            assert np.array_equal(got[:, 3], ref[:, 3])


matrices = st.integers(1, 12).flatmap(lambda n: st.lists(
    st.floats(0, 1), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
    lambda v, n=n: (n, np.array(v, dtype=float))))


@given(matrices, st.sampled_from(CRITERIA))
def test_dendrogram_invariants(m, criterion):
    n, v = m
    d = build_dendrogram([f"s{k}" for k in range(n)], v, criterion)
    h = d.heights
    assert len(d.merges) == max(n - 1, 0)
    assert np.all(np.diff(h) >= 0)
    if n > 1:
        assert d.merges[-1, 3] == n
        assert np.all(d.merges[:, 0] < d.merges[:, 1])
    counts = [len(set(cut_labels(d, t))) for t in np.concatenate([[-1.0], h, [2.0]])]
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    assert counts[0] == n and counts[-1] == min(n, 1)


def truth_dendrogram(labels, criterion="average", prefix="s"):
    ids = [f"{prefix}{k}" for k in range(len(labels))]
    lab = np.asarray(labels)
    D = (lab[:, None] != lab[None, :]).astype(float)
    return build_dendrogram(ids, D, criterion), dict(zip(ids, labels))


def test_global_threshold_perfect_distances():
    d1, t1 = truth_dendrogram(["A", "A", "B", "B", "C"], prefix="x")
    d2, t2 = truth_dendrogram(["D", "E", "E"], prefix="y")
    truth = {**t1, **t2}
    claims = {k: v for k, v in truth.items() if k in ("x0", "x1", "x2", "y1", "y2")}
    t = fit_global_threshold([d1, d2], claims)
    result = cluster_dendrograms({"x": d1, "y": d2}, "global_cut", claims)
    assert result.global_threshold == t
    assert b3_scores(truth, result.clustering).f_measure == 1.0
    with pytest.raises(ValueError):
        fit_global_threshold([d1], {})
    with pytest.raises(ValueError):
        fit_global_threshold([d1], {"zzz": "A"})


def test_single_cluster_block_merges_everything():
    d, truth = truth_dendrogram(["A"] * 4)
    t = fit_global_threshold([d], truth)
    assert t >= d.max_height
    assert len(set(cut_dendrogram(d, t).values())) == 1
    curve = threshold_curve([d], truth)
    assert curve.thresholds[-1] > d.max_height
    assert curve.objective("b3f")[-1] == 1.0


def test_block_thresholds():
    d1, t1 = truth_dendrogram(["A", "A", "B"], prefix="x")
    d2, _ = truth_dendrogram(["C", "D"], prefix="y")
    d3, _ = truth_dendrogram(["E", "F", "F"], prefix="z")
    claims = {"x0": "A", "x1": "A", "x2": "B", "z0": "E"}
    th = fit_block_thresholds({"x": d1, "y": d2, "z": d3}, claims)
    assert cut_dendrogram(d1, th["x"]) == {"x0": 0, "x1": 0, "x2": 1}
    assert len(set(cut_dendrogram(d2, th["y"]).values())) == 1  # no claims: cluster all
    assert len(set(cut_dendrogram(d3, th["z"]).values())) == 1  # one claim, no fallback given
    th = fit_block_thresholds({"z": d3}, claims, global_threshold=0.5)
    assert th["z"] == 0.5
    with pytest.raises(ValueError):
        threshold_curve([d1], claims).objective("accuracy")


def test_tied_block_thresholds_prefer_global():
    d, truth = truth_dendrogram(["A", "A", "B", "B"])
    claims = {"s0": "A", "s2": "B"}  # every threshold below 1 scores F = 1
    curve = threshold_curve([d], claims)
    assert curve.best("b3f")[0] == 0.0
    assert curve.best("b3f", prefer=0.4) == (0.4, 1.0)
    assert fit_block_thresholds({"b": d}, claims, global_threshold=0.4)["b"] == 0.4


def test_curve_matches_direct_scoring():
    rng = np.random.default_rng(2)
    dendrograms, claims = [], {}
    for b in range(3):
        n = int(rng.integers(2, 9))
        ids = [f"b{b}s{k}" for k in range(n)]
        dendrograms.append(build_dendrogram(ids, random_matrix(rng, n, dyadic=True)))
        for sid in ids:
            if rng.random() < 0.7:
                claims[sid] = f"a{rng.integers(4)}"
    curve = threshold_curve(dendrograms, claims)
    for t, b3, pw in zip(curve.thresholds, curve.b3, curve.pairwise):
        pred = {}
        for b, d in enumerate(dendrograms):
            pred.update({sid: (b, lab) for sid, lab in cut_dendrogram(d, t).items()})
        assert np.allclose(b3, tuple(b3_scores(claims, pred)), atol=1e-12)
        assert np.allclose(pw, tuple(pairwise_scores(claims, pred)), atol=1e-12)


class PerfectModel:
    """Distance 0 exactly when affiliations are identical."""

    kind = "stub"
    ethnicity = None

    def __init__(self, extractor):
        self.extractor = extractor

    def predict_distance(self, profiles):
        return np.where(profiles[:, 5] > 1 - 1e-9, 0.0, 1.0)


def perfect_dataset():
    people = [("Doe, John", "A"), ("Doe, J.", "A"), ("Doe, John", "B"), ("Doe, J", "C"),
              ("Roe, Ann", "D"), ("Roe, A.", "D"), ("Roe, Ann", "E")]
    sigs = [Signature(f"s{k}", f"p{k}", name, f"lab{author} institute")
            for k, (name, author) in enumerate(people)]
    pubs = [Publication(f"p{k}", title="t") for k in range(len(people))]
    truth = {f"s{k}": author for k, (_, author) in enumerate(people)}
    return Dataset.from_records(sigs, pubs), truth


@pytest.mark.filterwarnings("ignore:field")
@pytest.mark.parametrize("strategy", ["block_cut", "global_cut"])
def test_perfect_distances_recover_truth(strategy):
    ds, truth = perfect_dataset()
    assignment = assign_blocks(ds, "sfi")
    model = PerfectModel(fit_feature_extractor(ds))
    claims = {s: truth[s] for s in ("s0", "s2", "s4", "s6")}
    pred = disambiguate(ds, assignment, model, strategy=strategy, train_claims=claims)
    assert b3_scores(truth, pred).f_measure == 1.0
    for a, b in itertools.combinations(pred, 2):
        if assignment[a] != assignment[b]:
            assert pred[a] != pred[b]


def test_no_cut_one_cluster_per_block(dataset_of):
    ds = dataset_of(["Doe, J", "Doe, John", "Doe, J.", "Roe, A", "Roe, Ann"])
    assignment = assign_blocks(ds, "sfi")
    pred = disambiguate(ds, assignment, model=None, strategy="no_cut")
    assert len(set(pred.values())) == 2
    assert pred["s0"] == pred["s2"] != pred["s3"] == pred["s4"]
    only = disambiguate(ds, assignment, None, strategy="none", block_keys=[assignment["s3"]])
    assert set(only) == {"s3", "s4"}
    with pytest.raises(KeyError):
        disambiguate(ds, assignment, None, strategy="none", block_keys=["nope"])


def test_global_cut_at_least_no_cut_on_training_claims():
    rng = np.random.default_rng(4)
    dendrograms, claims = {}, {}
    for b in range(4):
        n = int(rng.integers(2, 10))
        ids = [f"b{b}s{k}" for k in range(n)]
        dendrograms[f"b{b}"] = build_dendrogram(ids, random_matrix(rng, n, dyadic=False))
        claims.update({sid: f"a{rng.integers(3)}" for sid in ids if rng.random() < 0.6})
    for objective, score in (("b3f", b3_scores), ("pairwisef", pairwise_scores)):
        f = {}
        for strategy in ("no_cut", "global_cut", "block_cut"):
            pred = cluster_dendrograms(dendrograms, strategy, claims, objective).clustering
            f[strategy] = score(claims, pred).f_measure
        assert f["global_cut"] >= f["no_cut"] - 1e-12


def test_chain_dendrogram_is_valid():
    from author_disamb.clustering.disambiguate import _chain

    d = Dendrogram([f"s{k}" for k in range(5)], _chain(5))
    assert d.merges[:, 3].tolist() == [2, 3, 4, 5]
    assert set(cut_labels(d, 0.0).tolist()) == {0}
