"""Author-name normalization and parsing."""

import re
import unicodedata
from dataclasses import dataclass, field

DEFAULT_AFFIXES = frozenset({
    "van", "der", "von", "de", "di", "da", "del", "della", "la", "le", "den",
    "ter", "ten", "af", "av", "zu", "dos", "das", "do", "el", "al", "bin", "ibn",
})

# letters that survive compatibility decomposition unchanged
_TRANSLITERATION = str.maketrans({
    "ł": "l", "Ł": "L", "ø": "o", "Ø": "O", "đ": "d", "Đ": "D",
    "ß": "ss", "æ": "ae", "Æ": "AE", "þ": "th", "Þ": "Th", "ı": "i",
    "œ": "oe", "Œ": "OE", "ð": "d", "Ð": "D", "ħ": "h", "Ħ": "H",
})

_WHITESPACE = re.compile(r"\s+")
_SURNAME_SPLIT = re.compile(r"[\s\-]+")
_GIVEN_SPLIT = re.compile(r"[\s.]+")


def load_affixes(path):
    """Read an affix list, one affix per line; blank lines and ``#`` comments
    are skipped."""
    with open(path, encoding="utf-8") as fh:
        affixes = {line.split("#", 1)[0].strip().lower() for line in fh}
    affixes.discard("")
    return frozenset(affixes)


def strip_accents(text):
    """Transliterate accented Latin letters to plain ASCII where possible."""
    text = text.translate(_TRANSLITERATION)
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(c for c in decomposed if not unicodedata.combining(c))


def _drop_affixes(tokens, affixes, keep_last):
    """Remove affix tokens; never removes the whole surname."""
    kept = [t for t in tokens if t.lower().strip(".") not in affixes]
    if not kept:
        return tokens[-1:] if keep_last else tokens
    return kept


def normalize_name(name, affixes=DEFAULT_AFFIXES):
    """Strip accents and surname affixes, collapse whitespace.

    ``"van der Waals, J. D."`` becomes ``"Waals, J. D."`` and
    ``"Jabłoński, Ł"`` becomes ``"Jablonski, L"``. The comma structure is
    kept, so the result can still be split into surname and given names.
    """
    text = _WHITESPACE.sub(" ", strip_accents(name)).strip()
    if not text:
        return ""
    if "," in text:
        surname, rest = text.split(",", 1)
        tokens = surname.split()
        if tokens:
            surname = " ".join(_drop_affixes(tokens, affixes, keep_last=True))
        return (surname + "," + rest).strip()
    tokens = text.split(" ")
    if len(tokens) == 1:
        return text
    # "Johannes van der Waals": affixes sit right before the final surname
    *given, last = tokens
    while given and given[-1].lower().strip(".") in affixes:
        given.pop()
    return " ".join(given + [last])


@dataclass(frozen=True)
class ParsedName:
    surnames: tuple
    given_names: tuple
    raw: str = field(default="", compare=False)

    @property
    def first_initial(self):
        return self.given_names[0][0].lower() if self.given_names else ""

    @property
    def full(self):
        return " ".join(self.given_names + self.surnames)


def parse_name(name):
    """Split a (normalized) name into surname and given-name tokens.

    Text before the first comma holds the surnames, split on whitespace and
    hyphens; text after it holds the given names, split on whitespace and
    dots so that initials become single letters. Without a comma the last
    token is the surname.
    """
    text = name.strip()
    if "," in text:
        surname_part, given_part = text.split(",", 1)
        given_part = given_part.replace(",", " ")
    else:
        parts = text.split()
        surname_part = parts[-1] if parts else ""
        given_part = " ".join(parts[:-1])
    surnames = tuple(t for t in _SURNAME_SPLIT.split(surname_part) if t.strip(".'"))
    given = tuple(t for t in _GIVEN_SPLIT.split(given_part) if t.strip("-'"))
    if not surnames:
        raise ValueError(f"cannot parse author name {name!r}")
    return ParsedName(surnames, given, raw=name)
