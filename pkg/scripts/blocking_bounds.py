"""Maximum recall and block counts of every blocking strategy.

    python3 scripts/blocking_bounds.py SIGNATURES PUBLICATIONS CLAIMS [--no-normalize]

No training is involved: each claimed author cluster is split along block
boundaries and the recall of that oracle clustering is reported.
"""

import argparse
import time

from author_disamb.blocking import BlockingStrategy, assign_blocks
from author_disamb.core import load_claims, load_dataset
from author_disamb.evaluation import blocking_max_recall


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("signatures")
    ap.add_argument("publications")
    ap.add_argument("claims")
    ap.add_argument("--no-normalize", action="store_true")
    args = ap.parse_args()
    dataset = load_dataset(args.signatures, args.publications)
    claims = load_claims(args.claims)
    print("blocking\tb3_recall\tpairwise_recall\tblocks\tseconds")
    for strategy in BlockingStrategy:
        start = time.perf_counter()
        assignment = assign_blocks(dataset, strategy, not args.no_normalize)
        r_b3, r_pw = blocking_max_recall(claims, assignment)
        n_blocks = len(set(assignment.values()))
        print(f"{strategy.value}\t{r_b3:.4f}\t{r_pw:.4f}\t{n_blocks}\t"
              f"{time.perf_counter() - start:.1f}")


if __name__ == "__main__":
    main()
