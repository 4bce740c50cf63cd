"""Phonetic encoders used to build blocking keys.

Three classic algorithms are provided:

* American Soundex (census rules, ``H`` and ``W`` transparent),
* NYSIIS in its original form (no truncation by default),
* Double Metaphone (primary and alternate codes).

All functions are pure and operate on ASCII letters; any other character is
ignored.
"""

from enum import Enum


class PhoneticAlgorithm(str, Enum):
    SOUNDEX = "soundex"
    NYSIIS = "nysiis"
    DOUBLE_METAPHONE = "double_metaphone"


_SOUNDEX_CODES = {}
for _letters, _digit in (("BFPV", "1"), ("CGJKQSXZ", "2"), ("DT", "3"),
                         ("L", "4"), ("MN", "5"), ("R", "6")):
    for _c in _letters:
        _SOUNDEX_CODES[_c] = _digit
del _letters, _digit, _c


def _letters_only(token):
    return "".join(c for c in token.upper() if "A" <= c <= "Z")


def soundex(token):
    """American Soundex code, e.g. ``soundex("Robert") == "R163"``."""
    s = _letters_only(token)
    if not s:
        return ""
    code = [s[0]]
    last = _SOUNDEX_CODES.get(s[0], "")
    for c in s[1:]:
        digit = _SOUNDEX_CODES.get(c)
        if digit is None:
            # vowels separate equal codes, H and W do not
            if c not in "HW":
                last = ""
            continue
        if digit != last:
            code.append(digit)
            if len(code) == 4:
                break
        last = digit
    return "".join(code).ljust(4, "0")


_VOWELS = "AEIOU"


def nysiis(token, max_length=None):
    """Original NYSIIS key.

    Parameters
    ----------
    token : str
        Name to encode; non-letters are dropped.
    max_length : int, optional
        Truncate the key to this many characters. The historical six
        character limit is not applied unless requested.
    """
    s = _letters_only(token)
    if not s:
        return ""

    if s.startswith("MAC"):
        s = "MCC" + s[3:]
    elif s.startswith("KN"):
        s = s[1:]
    elif s.startswith("K"):
        s = "C" + s[1:]
    elif s.startswith(("PH", "PF")):
        s = "FF" + s[2:]
    elif s.startswith("SCH"):
        s = "SSS" + s[3:]

    if s.endswith(("EE", "IE")):
        s = s[:-2] + "Y"
    elif s.endswith(("DT", "RT", "RD", "NT", "ND")):
        s = s[:-2] + "D"

    # context is always read from the prefix/suffix-rewritten name, not from
    # the partially translated key
    key = s[0]
    n = len(s)
    i = 1
    while i < n:
        ch = s[i]
        prev = s[i - 1]
        nxt = s[i + 1] if i + 1 < n else ""
        if ch == "E" and nxt == "V":
            ch = "AF"
            i += 1
        elif ch in _VOWELS:
            ch = "A"
        elif ch == "Q":
            ch = "G"
        elif ch == "Z":
            ch = "S"
        elif ch == "M":
            ch = "N"
        elif ch == "K":
            ch = "N" if nxt == "N" else "C"
        elif ch == "S" and s[i + 1:i + 3] == "CH":
            ch = "SS"
            i += 2
        elif ch == "P" and nxt == "H":
            ch = "F"
            i += 1
        elif ch == "H" and (prev not in _VOWELS or not nxt or nxt not in _VOWELS):
            ch = "A" if prev in _VOWELS else prev
        elif ch == "W" and prev in _VOWELS:
            ch = prev
        if ch[-1] != key[-1]:
            key += ch
        i += 1

    if len(key) > 1 and key.endswith("S"):
        key = key[:-1]
    if key.endswith("AY"):
        key = key[:-2] + "Y"
    if len(key) > 1 and key.endswith("A"):
        key = key[:-1]
    if max_length is not None:
        key = key[:max_length]
    return key


# --------------------------------------------------------------------------
# Double Metaphone
# --------------------------------------------------------------------------

class _DM:
    __slots__ = ("w", "length", "last", "slavo", "primary", "secondary")

    def __init__(self, word):
        # lookahead past the end reads blanks, so rules testing for " " also
        # fire at the end of the word
        self.w = word + "     "
        self.length = len(word)
        self.last = self.length - 1
        self.slavo = ("W" in word or "K" in word or "CZ" in word
                      or "WITZ" in word)
        self.primary = []
        self.secondary = []

    def at(self, i):
        if 0 <= i < len(self.w):
            return self.w[i]
        return ""

    def string_at(self, start, length, *options):
        if start < 0:
            return False
        return self.w[start:start + length] in options

    def is_vowel(self, i):
        return 0 <= i < self.length and self.w[i] in "AEIOUY"

    def add(self, main, alt=None):
        self.primary.append(main)
        self.secondary.append(main if alt is None else alt)

    def germanic(self):
        return self.string_at(0, 4, "VAN ", "VON ") or self.string_at(0, 3, "SCH")


def _dm_c(d, cur):
    w_at, s_at = d.at, d.string_at
    if (cur > 1 and not d.is_vowel(cur - 2) and s_at(cur - 1, 3, "ACH")
            and w_at(cur + 2) != "I"
            and (w_at(cur + 2) != "E" or s_at(cur - 2, 6, "BACHER", "MACHER"))):
        d.add("K")
        return cur + 2
    if cur == 0 and s_at(cur, 6, "CAESAR"):
        d.add("S")
        return cur + 2
    if s_at(cur, 4, "CHIA"):
        d.add("K")
        return cur + 2
    if s_at(cur, 2, "CH"):
        if cur > 0 and s_at(cur, 4, "CHAE"):
            d.add("K", "X")
            return cur + 2
        if (cur == 0
                and (s_at(cur + 1, 5, "HARAC", "HARIS")
                     or s_at(cur + 1, 3, "HOR", "HYM", "HIA", "HEM"))
                and not s_at(0, 5, "CHORE")):
            d.add("K")
            return cur + 2
        if (d.germanic()
                or s_at(cur - 2, 6, "ORCHES", "ARCHIT", "ORCHID")
                or s_at(cur + 2, 1, "T", "S")
                or ((s_at(cur - 1, 1, "A", "O", "U", "E") or cur == 0)
                    and s_at(cur + 2, 1, "L", "R", "N", "M", "B", "H", "F",
                             "V", "W", " "))):
            d.add("K")
        elif cur > 0:
            if s_at(0, 2, "MC"):
                d.add("K")
            else:
                d.add("X", "K")
        else:
            d.add("X")
        return cur + 2
    if s_at(cur, 2, "CZ") and not s_at(cur - 2, 4, "WICZ"):
        d.add("S", "X")
        return cur + 2
    if s_at(cur + 1, 3, "CIA"):
        d.add("X")
        return cur + 3
    if s_at(cur, 2, "CC") and not (cur == 1 and w_at(0) == "M"):
        if s_at(cur + 2, 1, "I", "E", "H") and not s_at(cur + 2, 2, "HU"):
            if (cur == 1 and w_at(cur - 1) == "A") or s_at(cur - 1, 5, "UCCEE", "UCCES"):
                d.add("KS")
            else:
                d.add("X")
            return cur + 3
        d.add("K")
        return cur + 2
    if s_at(cur, 2, "CK", "CG", "CQ"):
        d.add("K")
        return cur + 2
    if s_at(cur, 2, "CI", "CE", "CY"):
        if s_at(cur, 3, "CIO", "CIE", "CIA"):
            d.add("S", "X")
        else:
            d.add("S")
        return cur + 2
    d.add("K")
    if s_at(cur + 1, 2, " C", " Q", " G"):
        return cur + 3
    if s_at(cur + 1, 1, "C", "K", "Q") and not s_at(cur + 1, 2, "CE", "CI"):
        return cur + 2
    return cur + 1


def _dm_g(d, cur):
    w_at, s_at = d.at, d.string_at
    if w_at(cur + 1) == "H":
        if cur > 0 and not d.is_vowel(cur - 1):
            d.add("K")
            return cur + 2
        if cur == 0:
            d.add("J" if w_at(cur + 2) == "I" else "K")
            return cur + 2
        if ((cur > 1 and s_at(cur - 2, 1, "B", "H", "D"))
                or (cur > 2 and s_at(cur - 3, 1, "B", "H", "D"))
                or (cur > 3 and s_at(cur - 4, 1, "B", "H"))):
            return cur + 2
        if cur > 2 and w_at(cur - 1) == "U" and s_at(cur - 3, 1, "C", "G", "L", "R", "T"):
            d.add("F")
        elif cur > 0 and w_at(cur - 1) != "I":
            d.add("K")
        return cur + 2
    if w_at(cur + 1) == "N":
        if cur == 1 and d.is_vowel(0) and not d.slavo:
            d.add("KN", "N")
        elif not s_at(cur + 2, 2, "EY") and w_at(cur + 1) != "Y" and not d.slavo:
            d.add("N", "KN")
        else:
            d.add("KN")
        return cur + 2
    if s_at(cur + 1, 2, "LI") and not d.slavo:
        d.add("KL", "L")
        return cur + 2
    if cur == 0 and (w_at(cur + 1) == "Y"
                     or s_at(cur + 1, 2, "ES", "EP", "EB", "EL", "EY", "IB",
                             "IL", "IN", "IE", "EI", "ER")):
        d.add("K", "J")
        return cur + 2
    if ((s_at(cur + 1, 2, "ER") or w_at(cur + 1) == "Y")
            and not s_at(0, 6, "DANGER", "RANGER", "MANGER")
            and not s_at(cur - 1, 1, "E", "I")
            and not s_at(cur - 1, 3, "RGY", "OGY")):
        d.add("K", "J")
        return cur + 2
    if s_at(cur + 1, 1, "E", "I", "Y") or s_at(cur - 1, 4, "AGGI", "OGGI"):
        if d.germanic() or s_at(cur + 1, 2, "ET"):
            d.add("K")
        elif s_at(cur + 1, 4, "IER "):
            d.add("J")
        else:
            d.add("J", "K")
        return cur + 2
    d.add("K")
    return cur + 2 if w_at(cur + 1) == "G" else cur + 1


def _dm_j(d, cur):
    w_at, s_at = d.at, d.string_at
    if s_at(cur, 4, "JOSE") or s_at(0, 4, "SAN "):
        if (cur == 0 and w_at(cur + 4) == " ") or s_at(0, 4, "SAN "):
            d.add("H")
        else:
            d.add("J", "H")
        return cur + 1
    if cur == 0 and not s_at(cur, 4, "JOSE"):
        d.add("J", "A")
    elif (d.is_vowel(cur - 1) and not d.slavo
          and w_at(cur + 1) in ("A", "O")):
        d.add("J", "H")
    elif cur == d.last:
        d.add("J", "")
    elif (not s_at(cur + 1, 1, "L", "T", "K", "S", "N", "M", "B", "Z")
          and not s_at(cur - 1, 1, "S", "K", "L")):
        d.add("J")
    return cur + 2 if w_at(cur + 1) == "J" else cur + 1


def _dm_l(d, cur):
    s_at = d.string_at
    if d.at(cur + 1) == "L":
        if ((cur == d.length - 3 and s_at(cur - 1, 4, "ILLO", "ILLA", "ALLE"))
                or ((s_at(d.last - 1, 2, "AS", "OS") or s_at(d.last, 1, "A", "O"))
                    and s_at(cur - 1, 4, "ALLE"))):
            d.add("L", "")
            return cur + 2
        d.add("L")
        return cur + 2
    d.add("L")
    return cur + 1


def _dm_s(d, cur):
    w_at, s_at = d.at, d.string_at
    if s_at(cur - 1, 3, "ISL", "YSL"):
        return cur + 1
    if cur == 0 and s_at(cur, 5, "SUGAR"):
        d.add("X", "S")
        return cur + 1
    if s_at(cur, 2, "SH"):
        if s_at(cur + 1, 4, "HEIM", "HOEK", "HOLM", "HOLZ"):
            d.add("S")
        else:
            d.add("X")
        return cur + 2
    if s_at(cur, 3, "SIO", "SIA") or s_at(cur, 4, "SIAN"):
        if not d.slavo:
            d.add("S", "X")
        else:
            d.add("S")
        return cur + 3
    if (cur == 0 and s_at(cur + 1, 1, "M", "N", "L", "W")) or s_at(cur + 1, 1, "Z"):
        d.add("S", "X")
        return cur + 2 if s_at(cur + 1, 1, "Z") else cur + 1
    if s_at(cur, 2, "SC"):
        if w_at(cur + 2) == "H":
            if s_at(cur + 3, 2, "OO", "ER", "EN", "UY", "ED", "EM"):
                if s_at(cur + 3, 2, "ER", "EN"):
                    d.add("X", "SK")
                else:
                    d.add("SK")
                return cur + 3
            if cur == 0 and not d.is_vowel(3) and w_at(3) != "W":
                d.add("X", "S")
            else:
                d.add("X")
            return cur + 3
        if s_at(cur + 2, 1, "I", "E", "Y"):
            d.add("S")
            return cur + 3
        d.add("SK")
        return cur + 3
    if cur == d.last and s_at(cur - 2, 2, "AI", "OI"):
        d.add("", "S")
    else:
        d.add("S")
    return cur + 2 if s_at(cur + 1, 1, "S", "Z") else cur + 1


def _dm_t(d, cur):
    s_at = d.string_at
    if s_at(cur, 4, "TION"):
        d.add("X")
        return cur + 3
    if s_at(cur, 3, "TIA", "TCH"):
        d.add("X")
        return cur + 3
    if s_at(cur, 2, "TH") or s_at(cur, 3, "TTH"):
        if s_at(cur + 2, 2, "OM", "AM") or d.germanic():
            d.add("T")
        else:
            d.add("0", "T")
        return cur + 2
    d.add("T")
    return cur + 2 if s_at(cur + 1, 1, "T", "D") else cur + 1


def _dm_w(d, cur):
    s_at = d.string_at
    if s_at(cur, 2, "WR"):
        d.add("R")
        return cur + 2
    if cur == 0 and (d.is_vowel(cur + 1) or s_at(cur, 2, "WH")):
        if d.is_vowel(cur + 1):
            d.add("A", "F")
        else:
            d.add("A")
    if ((cur == d.last and d.is_vowel(cur - 1))
            or s_at(cur - 1, 5, "EWSKI", "EWSKY", "OWSKI", "OWSKY")
            or s_at(0, 3, "SCH")):
        d.add("", "F")
        return cur + 1
    if s_at(cur, 4, "WICZ", "WITZ"):
        d.add("TS", "FX")
        return cur + 4
    return cur + 1


def _dm_simple(d, cur):
    """Letters that encode as themselves, collapsing a doubled letter."""
    c = d.w[cur]
    d.add({"K": "K", "N": "N", "Q": "K", "V": "F", "F": "F"}[c])
    return cur + 2 if d.at(cur + 1) == c else cur + 1


def _dm_other(d, cur):
    w_at, s_at = d.at, d.string_at
    c = d.w[cur]
    if c == "B":
        d.add("P")
        return cur + 2 if w_at(cur + 1) == "B" else cur + 1
    if c == "D":
        if s_at(cur, 2, "DG"):
            if s_at(cur + 2, 1, "I", "E", "Y"):
                d.add("J")
                return cur + 3
            d.add("TK")
            return cur + 2
        d.add("T")
        return cur + 2 if s_at(cur, 2, "DT", "DD") else cur + 1
    if c == "H":
        if (cur == 0 or d.is_vowel(cur - 1)) and d.is_vowel(cur + 1):
            d.add("H")
            return cur + 2
        return cur + 1
    if c == "M":
        d.add("M")
        if ((s_at(cur - 1, 3, "UMB") and (cur + 1 == d.last or s_at(cur + 2, 2, "ER")))
                or w_at(cur + 1) == "M"):
            return cur + 2
        return cur + 1
    if c == "P":
        if w_at(cur + 1) == "H":
            d.add("F")
            return cur + 2
        d.add("P")
        return cur + 2 if s_at(cur + 1, 1, "P", "B") else cur + 1
    if c == "R":
        if (cur == d.last and not d.slavo and s_at(cur - 2, 2, "IE")
                and not s_at(cur - 4, 2, "ME", "MA")):
            d.add("", "R")
        else:
            d.add("R")
        return cur + 2 if w_at(cur + 1) == "R" else cur + 1
    if c == "X":
        if not (cur == d.last and (s_at(cur - 3, 3, "IAU", "EAU") or s_at(cur - 2, 2, "AU", "OU"))):
            d.add("KS")
        return cur + 2 if s_at(cur + 1, 1, "C", "X") else cur + 1
    if c == "Z":
        if w_at(cur + 1) == "H":
            d.add("J")
            return cur + 2
        if s_at(cur + 1, 2, "ZO", "ZI", "ZA") or (d.slavo and cur > 0 and w_at(cur - 1) != "T"):
            d.add("S", "TS")
        else:
            d.add("S")
        return cur + 2 if w_at(cur + 1) == "Z" else cur + 1
    return cur + 1


_DM_HANDLERS = {"C": _dm_c, "G": _dm_g, "J": _dm_j, "L": _dm_l, "S": _dm_s,
                "T": _dm_t, "W": _dm_w}
for _c in "KNQVF":
    _DM_HANDLERS[_c] = _dm_simple
for _c in "BDHMPRXZ":
    _DM_HANDLERS[_c] = _dm_other
del _c


def double_metaphone(token, max_length=None):
    """Return the ``(primary, alternate)`` Double Metaphone codes.

    The alternate is the empty string when it equals the primary. Codes are
    not truncated unless ``max_length`` is given.
    """
    word = "".join(c for c in token.upper() if c == " " or "A" <= c <= "Z").strip()
    if not word:
        return "", ""
    d = _DM(word)
    cur = 0
    if d.string_at(0, 2, "GN", "KN", "PN", "WR", "PS"):
        cur += 1
    if d.at(0) == "X":
        d.add("S")
        cur += 1
    while cur < d.length:
        c = word[cur]
        if c in "AEIOUY":
            if cur == 0:
                d.add("A")
            cur += 1
        elif c == " ":
            cur += 1
        else:
            cur = _DM_HANDLERS.get(c, _dm_other)(d, cur)
    primary = "".join(d.primary)
    secondary = "".join(d.secondary)
    if max_length is not None:
        primary, secondary = primary[:max_length], secondary[:max_length]
    if secondary == primary:
        secondary = ""
    return primary, secondary


def phonetize(token, algorithm):
    """Encode a surname token with the chosen algorithm.

    For Double Metaphone only the primary code is returned; tokens whose
    primary code is empty (all silent letters, e.g. "W") fall back to their
    uppercase letters so that block keys never collapse to an empty code.
    Raises ``ValueError`` on a token with no encodable letters.
    """
    algorithm = PhoneticAlgorithm(algorithm)
    if not _letters_only(token):
        raise ValueError(f"cannot phonetize empty token {token!r}")
    if algorithm is PhoneticAlgorithm.SOUNDEX:
        return soundex(token)
    if algorithm is PhoneticAlgorithm.NYSIIS:
        return nysiis(token)
    return double_metaphone(token)[0] or _letters_only(token)
