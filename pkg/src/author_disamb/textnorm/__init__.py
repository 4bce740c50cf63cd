from .normalize import (DEFAULT_AFFIXES, ParsedName, load_affixes,
                        normalize_name, parse_name, strip_accents)
from .phonetic import (PhoneticAlgorithm, double_metaphone, nysiis,
                       phonetize, soundex)

__all__ = [
    "DEFAULT_AFFIXES", "ParsedName", "PhoneticAlgorithm", "double_metaphone",
    "load_affixes", "normalize_name", "nysiis", "parse_name", "phonetize",
    "soundex", "strip_accents",
]
