"""Cross-validated scores for the baseline and one-axis-at-a-time variants.

    python3 scripts/ablation.py SIGNATURES PUBLICATIONS CLAIMS [--ethnicity-model FILE]
        [--rows baseline,nysiis,...] [--folds 3] [--threads N]

Prints one report row (mean over folds) per configuration.
"""

import argparse
import logging
import time

from author_disamb.core import load_claims, load_dataset
from author_disamb.evaluation import format_report
from author_disamb.features import EthnicityModel
from author_disamb.pipeline import PipelineConfig, crossval

VARIANTS = {
    "baseline": {},
    "blocking=sfi": {"blocking": "sfi"},
    "blocking=double_metaphone": {"blocking": "double_metaphone"},
    "blocking=nysiis": {"blocking": "nysiis"},
    "blocking=soundex": {"blocking": "soundex"},
    "no_normalization": {"normalize": False},
    "classifier=random_forest": {"classifier": "random_forest"},
    "classifier=logistic_regression": {"classifier": "logistic_regression"},
    "pairs=uniform_nonblocked": {"sampling": "uniform_nonblocked"},
    "pairs=uniform_blocked": {"sampling": "uniform_blocked"},
    "linkage=single": {"linkage": "single"},
    "linkage=complete": {"linkage": "complete"},
    "cut=no_cut": {"cut": "no_cut"},
    "cut=global_cut": {"cut": "global_cut"},
    "combined_best": {"blocking": "nysiis", "classifier": "random_forest"},
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("signatures")
    ap.add_argument("publications")
    ap.add_argument("claims")
    ap.add_argument("--ethnicity-model")
    ap.add_argument("--rows", default=",".join(VARIANTS),
                    help="comma-separated subset of: " + ", ".join(VARIANTS))
    ap.add_argument("--folds", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    dataset = load_dataset(args.signatures, args.publications)
    claims = load_claims(args.claims)
    eth = EthnicityModel.load(args.ethnicity_model) if args.ethnicity_model else None
    base = PipelineConfig(threads=args.threads, seed=args.seed)
    rows = []
    for name in args.rows.split(","):
        start = time.perf_counter()
        fold_rows = crossval(dataset, claims, base.replace(**VARIANTS[name]), eth, args.folds)
        rows.append((name, *fold_rows[-1][1:]))
        logging.info("%s: B3 F %.4f (%.0fs)", name, rows[-1][3], time.perf_counter() - start)
    print(format_report(rows), end="")


if __name__ == "__main__":
    main()
