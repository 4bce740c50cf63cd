"""Similarity profiles: the 22 pairwise features compared field by field.

Computing profiles pair by pair is slow, so signatures are first encoded
once (tf-idf rows, name tokens, years, ethnicity probabilities) into an
:class:`EncodedSignatures` table; profiles are then assembled with array
operations for arbitrary pair lists or for all pairs of a block.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..textnorm import DEFAULT_AFFIXES, normalize_name, parse_name
from .ethnicity import ETHNIC_GROUPS
from .jaro import jaro_winkler
from .tfidf import EmptyCorpusError, TfidfVocabulary, rowwise_cosine

FEATURE_NAMES = (
    "Full name",
    "Given names",
    "First given name",
    "Second given name",
    "Given name initial",
    "Affiliation",
    "Co-authors",
    "Title",
    "Journal",
    "Abstract",
    "Keywords",
    "Collaborations",
    "References",
    "Subject",
    "Year difference",
) + ETHNIC_GROUPS

N_FEATURES = len(FEATURE_NAMES)
YEAR_DIFFERENCE = FEATURE_NAMES.index("Year difference")
N_ETHNIC = len(ETHNIC_GROUPS)

CHAR_24 = (2, 4)
# field name -> (column in the profile, analyzer)
TFIDF_FIELDS = {
    "full_name": (0, CHAR_24),
    "given_names": (1, CHAR_24),
    "affiliation": (5, CHAR_24),
    "coauthors": (6, None),
    "title": (7, CHAR_24),
    "journal": (8, CHAR_24),
    "abstract": (9, None),
    "keywords": (10, None),
    "collaborations": (11, None),
    "references": (12, None),
    "subject": (13, None),
}
_PUBLICATION_FIELDS = {"title", "journal", "abstract", "keywords", "collaborations",
                       "references", "subject"}


def _coauthor_text(sig, pub):
    names = list(pub.author_names)
    pos = sig.author_position
    if pos is not None and 0 <= pos < len(names) and names[pos] == sig.author_name:
        del names[pos]
    elif sig.author_name in names:
        names.remove(sig.author_name)
    return "; ".join(names)


@dataclass
class _SignatureFields:
    name: str
    given: tuple
    texts: dict


def signature_fields(sig, pub, normalize=True, affixes=DEFAULT_AFFIXES):
    name = normalize_name(sig.author_name, affixes) if normalize else sig.author_name
    try:
        given = parse_name(name).given_names
    except ValueError:
        given = ()
    texts = {
        "full_name": name,
        "given_names": " ".join(given),
        "affiliation": sig.affiliation or "",
        "coauthors": _coauthor_text(sig, pub),
        "title": pub.title or "",
        "journal": pub.journal or "",
        "abstract": pub.abstract or "",
        "keywords": " ".join(pub.keywords),
        "collaborations": " ".join(pub.collaborations),
        "references": " ".join(pub.references),
        "subject": pub.subject or "",
    }
    return _SignatureFields(name, given, texts)


@dataclass
class FeatureExtractor:
    """One fitted tf-idf vocabulary per textual field.

    A field whose training corpus has no terms maps to ``None`` and its
    feature is always 0.
    """

    vocabularies: dict
    normalize: bool = True
    affixes: frozenset = DEFAULT_AFFIXES

    def encode(self, dataset, ethnicity_model=None, signature_ids=None):
        return EncodedSignatures.build(self, dataset, ethnicity_model, signature_ids)

    def to_dict(self):
        return {
            "normalize": self.normalize,
            "affixes": sorted(self.affixes),
            "vocabularies": {k: None if v is None else v.to_dict()
                             for k, v in self.vocabularies.items()},
        }

    @classmethod
    def from_dict(cls, d):
        vocabs = {k: None if v is None else TfidfVocabulary.from_dict(v)
                  for k, v in d["vocabularies"].items()}
        return cls(vocabs, d["normalize"], frozenset(d["affixes"]))


def fit_feature_extractor(dataset, training_signature_ids=None, normalize=True,
                          affixes=DEFAULT_AFFIXES):
    """Fit the per-field vocabularies on the given signatures.

    Publication fields are counted once per publication. Fields with no
    terms produce a warning and an always-zero feature.
    """
    if training_signature_ids is None:
        ids = list(dataset.signatures)
    else:
        wanted = set(training_signature_ids)
        unknown = wanted - set(dataset.signatures)
        if unknown:
            raise KeyError(f"unknown training signature {sorted(unknown)[0]!r}")
        ids = [sid for sid in dataset.signatures if sid in wanted]
    docs = {name: [] for name in TFIDF_FIELDS}
    seen_pubs = set()
    for sid in ids:
        sig = dataset.signatures[sid]
        pub = dataset.publications[sig.publication_id]
        fields = signature_fields(sig, pub, normalize, affixes)
        new_pub = pub.publication_id not in seen_pubs
        seen_pubs.add(pub.publication_id)
        for name, text in fields.texts.items():
            if name in _PUBLICATION_FIELDS and not new_pub:
                continue
            docs[name].append(text)
    vocabularies = {}
    for name, (_, ngram) in TFIDF_FIELDS.items():
        try:
            vocabularies[name] = TfidfVocabulary.fit(docs[name], ngram)
        except EmptyCorpusError:
            warnings.warn(f"field {name!r} is empty in the training corpus; "
                          f"its feature will always be 0", stacklevel=2)
            vocabularies[name] = None
    return FeatureExtractor(vocabularies, normalize, frozenset(affixes))


@dataclass
class EncodedSignatures:
    """Per-signature representations aligned on ``ids``."""

    ids: list
    row: dict
    matrices: dict
    first_given: np.ndarray
    second_given: np.ndarray
    initials: np.ndarray
    years: np.ndarray
    ethnicity: np.ndarray
    _jw_cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, extractor, dataset, ethnicity_model=None, signature_ids=None):
        ids = list(dataset.signatures if signature_ids is None else signature_ids)
        per_field = {name: [] for name in TFIDF_FIELDS}
        names, first, second, initials, years = [], [], [], [], []
        for sid in ids:
            sig = dataset.signatures[sid]
            pub = dataset.publications[sig.publication_id]
            f = signature_fields(sig, pub, extractor.normalize, extractor.affixes)
            for name, text in f.texts.items():
                per_field[name].append(text)
            names.append(f.name)
            given = [g.lower() for g in f.given]
            first.append(given[0] if given else "")
            second.append(given[1] if len(given) > 1 else "")
            initials.append(given[0][0] if given else "")
            years.append(np.nan if pub.year is None else float(pub.year))
        matrices = {}
        for name, docs in per_field.items():
            vocab = extractor.vocabularies.get(name)
            matrices[name] = None if vocab is None else vocab.transform(docs)
        if ethnicity_model is None:
            eth = np.full((len(ids), N_ETHNIC), 1.0 / N_ETHNIC)
        else:
            eth = ethnicity_model.predict_proba(names) if ids else np.zeros((0, N_ETHNIC))
        return cls(ids, {sid: i for i, sid in enumerate(ids)}, matrices,
                   np.array(first, dtype=object), np.array(second, dtype=object),
                   np.array(initials, dtype=object), np.array(years, dtype=float), eth)

    def __len__(self):
        return len(self.ids)

    def _jw(self, a, b):
        """Jaro-Winkler over token arrays with a per-table cache; 0 when either
        token is missing."""
        out = np.zeros(len(a))
        cache = self._jw_cache
        for k, (x, y) in enumerate(zip(a, b)):
            if not x or not y:
                continue
            key = (x, y) if x <= y else (y, x)
            v = cache.get(key)
            if v is None:
                v = cache[key] = jaro_winkler(*key)
            out[k] = v
        return out

    def _assemble(self, i, j, cosines):
        n = len(i)
        X = np.zeros((n, N_FEATURES))
        for name, (col, _) in TFIDF_FIELDS.items():
            X[:, col] = cosines(name)
        X[:, 2] = self._jw(self.first_given[i], self.first_given[j])
        X[:, 3] = self._jw(self.second_given[i], self.second_given[j])
        ia, ib = self.initials[i], self.initials[j]
        X[:, 4] = [(1.0 if a and a == b else 0.0) for a, b in zip(ia, ib)]
        ya, yb = self.years[i], self.years[j]
        diff = np.abs(ya - yb)
        X[:, YEAR_DIFFERENCE] = np.where(np.isnan(diff), 0.0, diff)
        X[:, YEAR_DIFFERENCE + 1:] = self.ethnicity[i] * self.ethnicity[j]
        return X

    def pair_profiles(self, rows_a, rows_b):
        """Profiles for row pairs ``(rows_a[k], rows_b[k])``: shape ``(n, 22)``."""
        i = np.asarray(rows_a, dtype=np.int64)
        j = np.asarray(rows_b, dtype=np.int64)
        return self._assemble(i, j, lambda name: rowwise_cosine(self.matrices[name], i, j))

    def block_profiles(self, rows):
        """Profiles for all pairs ``a < b`` of ``rows``, in condensed order
        (``(0,1), (0,2), ..., (1,2), ...``)."""
        rows = np.asarray(rows, dtype=np.int64)
        a, b = np.triu_indices(len(rows), k=1)
        i, j = rows[a], rows[b]

        def cosines(name):
            m = self.matrices[name]
            if m is None or m.shape[1] == 0:
                return np.zeros(len(a))
            sub = m[rows]
            gram = (sub @ sub.T).toarray() if sp.issparse(sub) else sub @ sub.T
            return np.clip(gram[a, b], 0.0, 1.0)

        return self._assemble(i, j, cosines)


def similarity_profile(s1, s2, dataset, extractor, ethnicity_model=None):
    """Profile of a single signature pair (ids or :class:`Signature` objects)."""
    ids = [getattr(s, "signature_id", s) for s in (s1, s2)]
    for sid in ids:
        if sid not in dataset.signatures:
            raise KeyError(f"unknown signature {sid!r}")
    table = EncodedSignatures.build(extractor, dataset, ethnicity_model, ids)
    return table.pair_profiles([0], [1])[0]
