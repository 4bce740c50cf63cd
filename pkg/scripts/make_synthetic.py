"""Write a synthetic corpus to disk.

    python3 scripts/make_synthetic.py OUTDIR [--authors 200] [--seed 0]

Creates signatures.jsonl, publications.jsonl, claims.jsonl (the claimed
20%), truth.jsonl (every signature) and names.tsv (ethnicity training list).
"""

import argparse
from pathlib import Path

from author_disamb.core import save_claims, save_dataset
from author_disamb.synthetic import make_corpus, write_names_file


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--authors", type=int, default=200)
    ap.add_argument("--min-signatures", type=int, default=2)
    ap.add_argument("--max-signatures", type=int, default=30)
    ap.add_argument("--claimed", type=float, default=0.2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    corpus = make_corpus(args.authors, args.min_signatures, args.max_signatures, args.claimed,
                         seed=args.seed)
    out = args.outdir
    out.mkdir(parents=True, exist_ok=True)
    save_dataset(corpus.dataset, out / "signatures.jsonl", out / "publications.jsonl")
    save_claims(corpus.claims, out / "claims.jsonl")
    save_claims(corpus.truth, out / "truth.jsonl")
    write_names_file(corpus.names, out / "names.tsv")
    print(f"{len(corpus.dataset)} signatures of {len(corpus.authors)} authors, "
          f"{len(corpus.claims)} claimed -> {out}")


if __name__ == "__main__":
    main()
