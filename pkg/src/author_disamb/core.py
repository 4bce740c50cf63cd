"""Signatures, publications, claims and dataset ingestion.

Records are stored as JSON lines, one record per line. Signatures and
publications map onto frozen dataclasses; a clustering (claimed or
predicted) is a plain ``dict`` from signature id to an opaque cluster label.
"""

import json
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from types import MappingProxyType


class DisambiguationError(Exception):
    """Base class; ``category`` is a short machine-readable tag."""

    category = "error"


class DataParseError(DisambiguationError):
    category = "parse-error"


class IntegrityError(DisambiguationError):
    category = "integrity-error"


class DuplicateIdError(DisambiguationError):
    category = "duplicate-id"


class MissingIdError(DisambiguationError, KeyError):
    category = "missing-id"

    def __str__(self):
        return str(self.args[0]) if self.args else ""


@dataclass(frozen=True)
class Signature:
    signature_id: str
    publication_id: str
    author_name: str
    affiliation: str | None = None
    author_position: int | None = None


@dataclass(frozen=True)
class Publication:
    publication_id: str
    title: str | None = None
    journal: str | None = None
    abstract: str | None = None
    keywords: tuple = ()
    collaborations: tuple = ()
    references: tuple = ()
    subject: str | None = None
    year: int | None = None
    author_names: tuple = ()


@dataclass(frozen=True)
class Dataset:
    """Validated signatures and publications, plus optional claims.

    ``signatures`` and ``publications`` are read-only mappings keyed by id,
    in file order.
    """

    signatures: MappingProxyType
    publications: MappingProxyType
    claims: MappingProxyType | None = None
    _by_publication: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for sig in self.signatures.values():
            if sig.publication_id not in self.publications:
                raise IntegrityError(
                    f"signature {sig.signature_id!r} references unknown "
                    f"publication {sig.publication_id!r}")
            if not sig.author_name or not sig.author_name.strip():
                raise IntegrityError(f"signature {sig.signature_id!r} has an empty author name")
        if self.claims is not None:
            for sid in self.claims:
                if sid not in self.signatures:
                    raise IntegrityError(f"claim references unknown signature {sid!r}")
        by_pub = defaultdict(list)
        for sig in self.signatures.values():
            by_pub[sig.publication_id].append(sig.signature_id)
        object.__setattr__(self, "_by_publication", dict(by_pub))

    @classmethod
    def from_records(cls, signatures, publications, claims=None):
        sigs = _index(signatures, "signature_id", "signature")
        pubs = _index(publications, "publication_id", "publication")
        if claims is not None:
            claims = MappingProxyType(dict(claims))
        return cls(MappingProxyType(sigs), MappingProxyType(pubs), claims)

    def publication_of(self, signature_id):
        return self.publications[self.signatures[signature_id].publication_id]

    def signatures_on(self, publication_id):
        return self._by_publication.get(publication_id, [])

    def with_claims(self, claims):
        return Dataset(self.signatures, self.publications,
                       None if claims is None else MappingProxyType(dict(claims)))

    def __len__(self):
        return len(self.signatures)


def _index(records, key, kind):
    out = {}
    for rec in records:
        rid = getattr(rec, key)
        if rid in out:
            raise DuplicateIdError(f"duplicate {kind} id {rid!r}")
        out[rid] = rec
    return out


# -- JSON lines --------------------------------------------------------------

_SIGNATURE_KEYS = {"signature_id", "publication_id", "author_name", "affiliation",
                   "author_position"}
_PUBLICATION_KEYS = {"publication_id", "title", "journal", "abstract", "keywords",
                     "collaborations", "references", "subject", "year", "author_names"}
_LIST_FIELDS = ("keywords", "collaborations", "references", "author_names")


def _read_jsonl(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataParseError(f"{path}:{lineno}: {exc.msg}") from None
            if not isinstance(rec, dict):
                raise DataParseError(f"{path}:{lineno}: expected an object")
            yield lineno, rec


def _optional_str(value):
    # absent and empty are the same thing downstream
    if value is None:
        return None
    value = str(value)
    return value if value.strip() else None


def _parse_signature(path, lineno, rec):
    unknown = set(rec) - _SIGNATURE_KEYS
    if unknown:
        raise DataParseError(f"{path}:{lineno}: unknown keys {sorted(unknown)}")
    try:
        position = rec.get("author_position")
        return Signature(
            signature_id=str(rec["signature_id"]),
            publication_id=str(rec["publication_id"]),
            author_name=str(rec["author_name"]),
            affiliation=_optional_str(rec.get("affiliation")),
            author_position=None if position is None else int(position),
        )
    except KeyError as exc:
        raise DataParseError(f"{path}:{lineno}: missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise DataParseError(f"{path}:{lineno}: {exc}") from None


def _parse_publication(path, lineno, rec):
    unknown = set(rec) - _PUBLICATION_KEYS
    if unknown:
        raise DataParseError(f"{path}:{lineno}: unknown keys {sorted(unknown)}")
    if "publication_id" not in rec:
        raise DataParseError(f"{path}:{lineno}: missing key 'publication_id'")
    lists = {}
    for key in _LIST_FIELDS:
        value = rec.get(key) or []
        if not isinstance(value, list):
            raise DataParseError(f"{path}:{lineno}: {key} must be a list")
        lists[key] = tuple(str(v) for v in value)
    year = rec.get("year")
    if year is not None:
        try:
            year = int(year)
        except (TypeError, ValueError):
            raise DataParseError(f"{path}:{lineno}: bad year {year!r}") from None
        if not 1800 <= year <= 2100:
            raise DataParseError(f"{path}:{lineno}: year {year} outside [1800, 2100]")
    return Publication(
        publication_id=str(rec["publication_id"]),
        title=_optional_str(rec.get("title")),
        journal=_optional_str(rec.get("journal")),
        abstract=_optional_str(rec.get("abstract")),
        subject=_optional_str(rec.get("subject")),
        year=year,
        **lists,
    )


def load_claims(path):
    claims = {}
    for lineno, rec in _read_jsonl(path):
        try:
            sid, aid = str(rec["signature_id"]), str(rec["author_id"])
        except KeyError as exc:
            raise DataParseError(f"{path}:{lineno}: missing key {exc.args[0]!r}") from None
        if sid in claims:
            raise DuplicateIdError(f"{path}:{lineno}: signature {sid!r} claimed twice")
        claims[sid] = aid
    return claims


def load_dataset(signatures_path, publications_path, claims_path=None):
    """Load and validate a dataset from JSON-lines files.

    Raises
    ------
    DataParseError
        Malformed line (the message carries ``path:line``).
    IntegrityError
        A signature points to an unknown publication, or a claim to an
        unknown signature. The dangling id is named in the message.
    DuplicateIdError
        Repeated signature, publication, or claimed signature id.
    """
    sigs = [_parse_signature(signatures_path, n, r) for n, r in _read_jsonl(signatures_path)]
    pubs = [_parse_publication(publications_path, n, r)
            for n, r in _read_jsonl(publications_path)]
    claims = load_claims(claims_path) if claims_path is not None else None
    return Dataset.from_records(sigs, pubs, claims)


def _compact(record):
    out = {}
    for key, value in asdict(record).items():
        if value is None:
            continue
        out[key] = list(value) if isinstance(value, tuple) else value
    return out


def save_dataset(dataset, signatures_path, publications_path, claims_path=None):
    with open(signatures_path, "w", encoding="utf-8") as fh:
        for sig in dataset.signatures.values():
            fh.write(json.dumps(_compact(sig), ensure_ascii=False) + "\n")
    with open(publications_path, "w", encoding="utf-8") as fh:
        for pub in dataset.publications.values():
            fh.write(json.dumps(_compact(pub), ensure_ascii=False) + "\n")
    if claims_path is not None and dataset.claims is not None:
        save_claims(dataset.claims, claims_path)


def save_claims(claims, path):
    with open(path, "w", encoding="utf-8") as fh:
        for sid, aid in claims.items():
            fh.write(json.dumps({"signature_id": sid, "author_id": aid}) + "\n")


# -- clusterings ---------------------------------------------------------------

def clusters_of(clustering):
    """Group a ``signature -> label`` mapping into ``label -> [signatures]``."""
    groups = defaultdict(list)
    for sid, label in clustering.items():
        groups[label].append(sid)
    return dict(groups)


def restrict_clustering(predicted, known_ids):
    """Intersect every predicted cluster with ``known_ids``.

    Labels are kept as they are, so two ids share a label in the result iff
    they shared one in ``predicted``. Raises ``MissingIdError`` if a known id
    has no predicted label.
    """
    known = set(known_ids)
    missing = [sid for sid in known if sid not in predicted]
    if missing:
        raise MissingIdError(f"{len(missing)} ids have no predicted cluster, "
                             f"e.g. {sorted(missing)[0]!r}")
    return {sid: label for sid, label in predicted.items() if sid in known}


def write_clustering(clustering, path):
    """One ``signature_id<TAB>label`` line per signature, sorted by id."""
    with open(path, "w", encoding="utf-8") as fh:
        for sid in sorted(clustering):
            fh.write(f"{sid}\t{clustering[sid]}\n")


def read_clustering(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DataParseError(f"{path}:{lineno}: expected 'signature_id<TAB>label'")
            if parts[0] in out:
                raise DuplicateIdError(f"{path}:{lineno}: duplicate signature id {parts[0]!r}")
            out[parts[0]] = parts[1]
    return out
