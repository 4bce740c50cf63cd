"""Partition signatures into blocks.

Two families of strategies are supported. ``sfi`` keys a signature by its
full surname and first given-name initial. The phonetic strategies key it
by the phonetic code of one surname token, chosen in two phases:

1. signatures with a single surname are keyed by that surname;
2. a signature with several surnames goes to the block of its *last*
   surname if its *first* surname already shows up as the last given name
   of a phase-1 signature in that block (``"Martinez Torres, A."`` next to
   ``"Torres, A. Martinez"``), and to the block of its first surname
   otherwise (``"Smith-Jones, A."`` next to ``"Smith, A."``).

Every block is finally split by first given-name initial.
"""

import logging
import warnings
from collections import defaultdict
from enum import Enum

from .textnorm import (DEFAULT_AFFIXES, PhoneticAlgorithm, normalize_name,
                       parse_name, phonetize)

logger = logging.getLogger(__name__)


class BlockingStrategy(str, Enum):
    SFI = "sfi"
    SOUNDEX = "soundex"
    NYSIIS = "nysiis"
    DOUBLE_METAPHONE = "double_metaphone"

    @property
    def phonetic_algorithm(self):
        if self is BlockingStrategy.SFI:
            return None
        return PhoneticAlgorithm(self.value)


# CLI spelling
STRATEGY_ALIASES = {"sfi": "sfi", "soundex": "soundex", "nysiis": "nysiis",
                    "dmetaphone": "double_metaphone",
                    "double_metaphone": "double_metaphone"}


def _surname_code(token, algorithm):
    try:
        return phonetize(token, algorithm)
    except ValueError:
        # nothing encodable (e.g. non-Latin script without normalization)
        return token.upper()


def _names(dataset, normalize, affixes):
    out = {}
    for sid, sig in dataset.signatures.items():
        name = normalize_name(sig.author_name, affixes) if normalize else sig.author_name
        try:
            out[sid] = parse_name(name)
        except ValueError:
            out[sid] = None
    return out


def assign_blocks(dataset, strategy, normalize=True, affixes=DEFAULT_AFFIXES):
    """Map every signature id to a block key.

    Signatures whose name cannot be parsed get a singleton block and are
    reported with a ``UserWarning``.

    Examples
    --------
    SFI keys look like ``"doe|j"``; phonetic keys like ``"TAR|a"``.
    """
    strategy = BlockingStrategy(STRATEGY_ALIASES.get(strategy, strategy))
    parsed = _names(dataset, normalize, affixes)
    unparsed = sorted(sid for sid, p in parsed.items() if p is None)
    if unparsed:
        warnings.warn(f"{len(unparsed)} unparseable author names, e.g. "
                      f"{unparsed[0]!r}; each placed in its own block", stacklevel=2)

    assignment = {}
    if strategy is BlockingStrategy.SFI:
        for sid, p in parsed.items():
            if p is None:
                assignment[sid] = f"!unparsed|{sid}"
            else:
                assignment[sid] = " ".join(p.surnames).lower() + "|" + p.first_initial
        return assignment

    algorithm = strategy.phonetic_algorithm
    code = {}

    def encode(token):
        if token not in code:
            code[token] = _surname_code(token, algorithm)
        return code[token]

    # phase 1
    last_given = defaultdict(set)
    surname_block = {}
    for sid, p in parsed.items():
        if p is not None and len(p.surnames) == 1:
            key = encode(p.surnames[0])
            surname_block[sid] = key
            if p.given_names:
                last_given[key].add(p.given_names[-1].lower())

    # phase 2 only reads phase-1 state, so its order does not matter
    for sid, p in parsed.items():
        if p is not None and len(p.surnames) > 1:
            first, last = p.surnames[0], p.surnames[-1]
            last_key = encode(last)
            if first.lower() in last_given.get(last_key, ()):
                surname_block[sid] = last_key
            else:
                surname_block[sid] = encode(first)

    for sid, p in parsed.items():
        if p is None:
            assignment[sid] = f"!unparsed|{sid}"
        else:
            assignment[sid] = surname_block[sid] + "|" + p.first_initial
    return assignment


def group_by_block(assignment):
    """Return ``[(block_key, [signature ids])]`` sorted by key, ids sorted."""
    groups = defaultdict(list)
    for sid, key in assignment.items():
        groups[key].append(sid)
    return [(key, sorted(groups[key])) for key in sorted(groups)]


def write_blocks(assignment, path):
    with open(path, "w", encoding="utf-8") as fh:
        for sid in sorted(assignment):
            fh.write(f"{sid}\t{assignment[sid]}\n")


def read_blocks(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                sid, key = line.rstrip("\n").split("\t", 1)
                out[sid] = key
    return out
