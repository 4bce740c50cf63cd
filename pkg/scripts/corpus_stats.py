"""Size statistics of a corpus.

    python3 scripts/corpus_stats.py SIGNATURES PUBLICATIONS [CLAIMS]

Unique author names are counted twice, on raw strings and after name
normalization, since either convention may be the one quoted elsewhere.
"""

import argparse

from author_disamb.core import load_claims, load_dataset
from author_disamb.textnorm import normalize_name


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("signatures")
    ap.add_argument("publications")
    ap.add_argument("claims", nargs="?")
    args = ap.parse_args()
    dataset = load_dataset(args.signatures, args.publications)
    print(f"signatures\t{len(dataset.signatures)}")
    print(f"publications\t{len(dataset.publications)}")
    sigs = dataset.signatures
    if args.claims:
        claims = load_claims(args.claims)
        print(f"claimed signatures\t{len(claims)}")
        print(f"distinct authors\t{len(set(claims.values()))}")
        sigs = {s: sigs[s] for s in claims if s in sigs}
    names = [s.author_name for s in sigs.values()]
    print(f"unique names (raw)\t{len(set(names))}")
    print(f"unique names (normalized)\t{len({normalize_name(n) for n in names})}")


if __name__ == "__main__":
    main()
