"""TF-IDF vocabularies over words or character n-grams, and cosine similarity."""

import re
from collections import Counter
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

_WORD = re.compile(r"(?u)\b\w+\b")
_SPACES = re.compile(r"\s+")


class EmptyCorpusError(ValueError):
    """Raised when a corpus yields no terms at all."""


def analyze(text, ngram_range=None):
    """Split ``text`` into terms.

    ``ngram_range=None`` selects word tokens; ``(n, m)`` selects every
    character n-gram of length n..m of the lowercased, whitespace-collapsed
    text.
    """
    if not text:
        return []
    text = text.lower()
    if ngram_range is None:
        return _WORD.findall(text)
    text = _SPACES.sub(" ", text)
    lo, hi = ngram_range
    grams = []
    for n in range(lo, hi + 1):
        grams.extend(text[i:i + n] for i in range(len(text) - n + 1))
    return grams


@dataclass(frozen=True)
class TfidfVocabulary:
    """Fitted vocabulary with smoothed idf weights.

    ``idf(t) = ln((1 + N) / (1 + df(t))) + 1`` where ``N`` is the number of
    fitted documents. Vectors are raw term counts times idf, L2-normalized.
    """

    ngram_range: tuple | None
    terms: tuple
    idf: np.ndarray

    @classmethod
    def fit(cls, documents, ngram_range=None):
        df = Counter()
        n_docs = 0
        for doc in documents:
            n_docs += 1
            df.update(set(analyze(doc, ngram_range)))
        if not df:
            raise EmptyCorpusError("corpus contains no terms")
        terms = tuple(sorted(df))
        counts = np.array([df[t] for t in terms], dtype=float)
        idf = np.log((1.0 + n_docs) / (1.0 + counts)) + 1.0
        return cls(None if ngram_range is None else tuple(ngram_range), terms, idf)

    @property
    def index(self):
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {t: i for i, t in enumerate(self.terms)}
            object.__setattr__(self, "_index", idx)
        return idx

    def __len__(self):
        return len(self.terms)

    def transform(self, documents):
        """L2-normalized tf-idf rows as a CSR matrix; unknown terms dropped."""
        index = self.index
        indptr, indices, data = [0], [], []
        for doc in documents:
            counts = Counter(index[t] for t in analyze(doc, self.ngram_range) if t in index)
            cols = sorted(counts)
            vals = np.array([counts[c] for c in cols], dtype=float) * self.idf[cols]
            norm = np.sqrt(np.dot(vals, vals))
            if norm > 0:
                vals /= norm
            indices.extend(cols)
            data.extend(vals.tolist())
            indptr.append(len(indices))
        return sp.csr_matrix((np.asarray(data, dtype=float), np.asarray(indices, dtype=np.int64),
                              np.asarray(indptr, dtype=np.int64)),
                             shape=(len(indptr) - 1, len(self.terms)))

    def to_dict(self):
        return {"ngram_range": None if self.ngram_range is None else list(self.ngram_range),
                "terms": list(self.terms), "idf": self.idf.tolist()}

    @classmethod
    def from_dict(cls, d):
        ngram = d["ngram_range"]
        return cls(None if ngram is None else tuple(ngram), tuple(d["terms"]),
                   np.asarray(d["idf"], dtype=float))


def cosine_tfidf(a, b, vocab):
    """Cosine similarity of the tf-idf vectors of two strings; 0 if either
    has no in-vocabulary term."""
    m = vocab.transform([a, b])
    return float(np.clip(m[0].multiply(m[1]).sum(), 0.0, 1.0))


def rowwise_cosine(matrix, rows_a, rows_b):
    """Cosine between rows ``rows_a[k]`` and ``rows_b[k]`` of a row-normalized
    CSR matrix."""
    if matrix is None or matrix.shape[1] == 0 or len(rows_a) == 0:
        return np.zeros(len(rows_a))
    prod = matrix[rows_a].multiply(matrix[rows_b])
    return np.clip(np.asarray(prod.sum(axis=1)).ravel(), 0.0, 1.0)
