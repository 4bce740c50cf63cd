"""Synthetic bibliographic corpus with known authors.

Every author has a name drawn from one of seven name pools, a home
affiliation, a research topic, a circle of coauthors and an active period;
their signatures are sampled around that profile. Names are perturbed the
way real bylines are: initials instead of given names, dropped accents,
dropped middle names and, occasionally, a second surname. Small pools make
homonyms (distinct authors sharing surname and initial) common.
"""

from dataclasses import dataclass

import numpy as np

from .core import Dataset, Publication, Signature
from .features import ETHNIC_GROUPS
from .textnorm import strip_accents

SURNAMES = {
    "White": ["Smith", "Müller", "Schmidt", "Brown", "Dupont", "Martin", "Rossi", "Kowalski",
              "Jabłoński", "Novák", "Andersson", "Fischer", "Lefèvre", "Bianchi", "Walker",
              "Clarke", "Bergström", "Dvořák", "Weber", "Moreau"],
    "Black": ["Washington", "Jefferson", "Okafor", "Mensah", "Diallo", "Banda", "Mwangi",
              "Owusu", "Adeyemi", "Kamara", "Boateng", "Nkosi"],
    "American Indian or Alaska Native": ["Begay", "Yazzie", "Tsosie", "Benally", "Nez",
                                         "Tsinajinnie", "Harjo", "Skenandore", "Whitehorse",
                                         "Bitsui"],
    "Chinese": ["Wang", "Li", "Zhang", "Liu", "Chen", "Yang", "Huang", "Zhao", "Wu", "Zhou"],
    "Japanese": ["Sato", "Suzuki", "Takahashi", "Tanaka", "Watanabe", "Ito", "Yamamoto",
                 "Nakamura", "Kobayashi", "Matsumoto"],
    "Other Asian or Pacific Islander": ["Nguyen", "Tran", "Pham", "Kim", "Park", "Singh",
                                        "Patel", "Kumar", "Santos", "Reyes", "Choi", "Gupta"],
    "Others": ["García", "Rodríguez", "Martínez", "López", "Hernández", "González", "Pérez",
               "Sánchez", "Ramírez", "Torres", "Flores", "Jiménez"],
}

GIVEN_NAMES = {
    "White": ["John", "Michael", "Anna", "Peter", "Thomas", "Sarah", "Jürgen", "François",
              "Łukasz", "Marco", "Emma", "David", "Hélène", "Björn", "Jan", "Claire"],
    "Black": ["Kwame", "Chinedu", "Amara", "Kofi", "Ngozi", "Tunde", "Ama", "Jamal",
              "Malik", "Imani", "Kwesi", "Zola"],
    "American Indian or Alaska Native": ["Ahiga", "Nayeli", "Dyani", "Kai", "Tala", "Hania",
                                         "Sani", "Chayton", "Aponi", "Elu"],
    "Chinese": ["Wei", "Jing", "Min", "Hao", "Lei", "Xiaoming", "Yan", "Jun", "Hui", "Qiang",
                "Li", "Fang"],
    "Japanese": ["Hiroshi", "Takeshi", "Yuki", "Akira", "Kenji", "Haruka", "Sakura", "Daisuke",
                 "Naoki", "Emi", "Kaori", "Satoshi"],
    "Other Asian or Pacific Islander": ["Minh", "Anh", "Jae", "Soo", "Raj", "Priya", "Arjun",
                                        "Maria", "Jose", "Ji", "Hoang", "Deepak"],
    "Others": ["José", "María", "Juan", "Ana", "Luis", "Carmen", "Jorge", "Lucía", "Andrés",
               "Sofía", "Diego", "Elena"],
}

# share of authors per group; skewed like most bibliographic data
GROUP_WEIGHTS = (0.38, 0.08, 0.04, 0.2, 0.1, 0.1, 0.1)

TOPICS = {
    "hep-th": "string gauge duality holography supersymmetry anomaly brane conformal "
              "entanglement moduli compactification instanton",
    "hep-ph": "collider higgs neutrino quark gluon parton jet lepton flavour cross-section "
              "electroweak decay",
    "hep-ex": "detector calorimeter trigger luminosity tracking muon vertex beam "
              "reconstruction calibration upgrade dataset",
    "astro-ph": "galaxy cosmic dark matter halo redshift supernova lensing survey "
                "microwave inflation cluster",
    "nucl-th": "nucleus nuclear shell pairing fission isotope deformation hadron lattice "
               "chiral density resonance",
    "gr-qc": "gravitational wave black hole horizon spacetime curvature binary inspiral "
             "metric singularity cosmological",
    "quant-ph": "qubit quantum circuit decoherence photon cavity measurement channel error "
                "correction teleportation",
}

JOURNALS = {
    "hep-th": ["JHEP", "Nucl.Phys.B", "Phys.Rev.D", "Commun.Math.Phys."],
    "hep-ph": ["Phys.Rev.D", "Eur.Phys.J.C", "Phys.Lett.B", "JHEP"],
    "hep-ex": ["Phys.Rev.Lett.", "Eur.Phys.J.C", "JINST", "Nucl.Instrum.Meth.A"],
    "astro-ph": ["Astrophys.J.", "Mon.Not.Roy.Astron.Soc.", "Astron.Astrophys.", "JCAP"],
    "nucl-th": ["Phys.Rev.C", "Nucl.Phys.A", "Phys.Lett.B", "Eur.Phys.J.A"],
    "gr-qc": ["Class.Quant.Grav.", "Phys.Rev.D", "Gen.Rel.Grav.", "Living Rev.Rel."],
    "quant-ph": ["Phys.Rev.A", "Quantum", "New J.Phys.", "Phys.Rev.Lett."],
}

INSTITUTIONS = [
    "CERN", "DESY Hamburg", "Fermilab", "SLAC", "KEK Tsukuba", "IHEP Beijing", "TRIUMF",
    "INFN Pisa", "LAPP Annecy", "Nikhef Amsterdam", "MIT", "Caltech", "Princeton University",
    "University of Tokyo", "Peking University", "Tsinghua University", "IPMU Kashiwa",
    "Perimeter Institute", "University of Cambridge", "Imperial College London",
    "ETH Zurich", "University of Warsaw", "Charles University Prague", "TIFR Mumbai",
    "Seoul National University", "University of Sao Paulo", "UNAM Mexico", "CINVESTAV",
    "University of Cape Town", "University of Lagos", "Navajo Technical University",
    "University of Arizona", "LBNL Berkeley", "BNL Upton", "IFIC Valencia", "LIP Lisbon",
]

COLLABORATIONS = ["ATLAS", "CMS", "LHCb", "ALICE", "Belle II", "IceCube", "LIGO", "DUNE"]


@dataclass(frozen=True)
class Author:
    author_id: str
    group: str
    surname: str
    given: tuple
    second_surname: str | None
    affiliation: str
    topic: str
    vocabulary: tuple
    coauthors: tuple
    references: tuple
    collaboration: str | None
    first_year: int
    last_year: int


@dataclass(frozen=True)
class SyntheticCorpus:
    dataset: Dataset
    truth: dict
    claims: dict
    authors: tuple
    names: tuple  # (name, group) rows for training the ethnicity model


def _pick(rng, seq):
    return seq[int(rng.integers(len(seq)))]


def _make_author(rng, k, pool_people, ref_pool):
    group = ETHNIC_GROUPS[int(rng.choice(len(ETHNIC_GROUPS), p=GROUP_WEIGHTS))]
    surname = _pick(rng, SURNAMES[group])
    n_given = 1 if group in ("Chinese", "Japanese") or rng.random() < 0.5 else 2
    given = tuple(str(g) for g in rng.choice(GIVEN_NAMES[group], size=n_given, replace=False))
    second = _pick(rng, SURNAMES[group]) if group == "Others" and rng.random() < 0.3 else None
    topic = _pick(rng, sorted(TOPICS))
    words = TOPICS[topic].split()
    personal = [f"{w}{int(rng.integers(100))}" for w in rng.choice(words, size=4)]
    vocabulary = tuple(str(w) for w in rng.choice(words, size=6, replace=False)) + tuple(personal)
    coauthors = tuple(str(c) for c in rng.choice(pool_people, size=int(rng.integers(4, 10)),
                                                 replace=False))
    references = tuple(str(r) for r in rng.choice(ref_pool, size=25, replace=False))
    collab = _pick(rng, COLLABORATIONS) if topic == "hep-ex" else None
    first = int(rng.integers(1980, 2012))
    last = min(2016, first + int(rng.integers(3, 20)))
    return Author(f"A{k:04d}", group, surname, given, second, _pick(rng, INSTITUTIONS), topic,
                  vocabulary, coauthors, references, collab, first, last)


def _byline(rng, author, variant_rate):
    """One written form of the author's name."""
    surname = author.surname
    if author.second_surname is not None and rng.random() < 0.5:
        surname = f"{surname} {author.second_surname}"
    given = list(author.given)
    r = rng.random()
    if r < variant_rate:
        given = [g[0] + "." for g in given]  # initials only
    elif r < 1.5 * variant_rate and len(given) > 1:
        given = given[:1]  # middle name dropped
    elif r < 1.8 * variant_rate and len(given) > 1:
        given = [given[0], given[1][0] + "."]
    name = f"{surname}, {' '.join(given)}"
    if rng.random() < variant_rate:
        name = strip_accents(name)
    return name


def make_corpus(n_authors=200, min_signatures=2, max_signatures=30, claimed_fraction=0.2,
                variant_rate=0.2, n_names=3000, seed=0):
    """Generate a corpus.

    Parameters
    ----------
    n_authors : int
    min_signatures, max_signatures : int
        Signatures per author are drawn uniformly in this range.
    claimed_fraction : float
        Share of signatures whose author is revealed in ``claims``.
    variant_rate : float
        Rough probability of each kind of name perturbation.
    n_names : int
        Size of the labeled ``(name, group)`` list for the ethnicity model.
    """
    rng = np.random.default_rng(seed)
    pool_people = [f"{_pick(rng, SURNAMES[g])}, {_pick(rng, GIVEN_NAMES[g])[0]}."
                   for g in ETHNIC_GROUPS for _ in range(40)]
    ref_pool = [f"ref:{k}" for k in range(3000)]
    authors = [_make_author(rng, k, pool_people, ref_pool) for k in range(n_authors)]

    signatures, publications, truth = [], [], {}
    n_sig = 0
    for author in authors:
        for _ in range(int(rng.integers(min_signatures, max_signatures + 1))):
            pid = f"P{n_sig:06d}"
            sid = f"S{n_sig:06d}"
            n_sig += 1
            words = list(rng.choice(author.vocabulary, size=5, replace=False))
            words += list(rng.choice(TOPICS[_pick(rng, sorted(TOPICS))].split(), size=2))
            title = " ".join(words).capitalize()
            abstract = " ".join(rng.choice(author.vocabulary, size=15)) + " " + \
                " ".join(rng.choice(TOPICS[author.topic].split(), size=10))
            name = _byline(rng, author, variant_rate)
            n_co = int(rng.integers(1, 5))
            co = list(rng.choice(author.coauthors, size=min(n_co, len(author.coauthors)),
                                 replace=False))
            if rng.random() < 0.3:
                co.append(_pick(rng, pool_people))
            position = int(rng.integers(len(co) + 1))
            names = co[:position] + [name] + co[position:]
            refs = tuple(str(r) for r in rng.choice(author.references, size=8, replace=False))
            refs += tuple(str(r) for r in rng.choice(ref_pool, size=2))
            affiliation = author.affiliation if rng.random() < 0.85 else _pick(rng, INSTITUTIONS)
            keywords = tuple(str(w) for w in rng.choice(author.vocabulary, size=3, replace=False))
            collabs = (author.collaboration,) if author.collaboration and rng.random() < 0.7 else ()
            year = int(rng.integers(author.first_year, author.last_year + 1))
            publications.append(Publication(
                pid, title=title, journal=_pick(rng, JOURNALS[author.topic]), abstract=abstract,
                keywords=keywords, collaborations=collabs, references=refs,
                subject=author.topic, year=year, author_names=tuple(names)))
            signatures.append(Signature(sid, pid, name, affiliation, position))
            truth[sid] = author.author_id

    ids = sorted(truth)
    k = int(round(claimed_fraction * len(ids)))
    chosen = sorted(rng.choice(len(ids), size=k, replace=False).tolist())
    claims = {ids[i]: truth[ids[i]] for i in chosen}

    names = []
    for _ in range(n_names):
        g = ETHNIC_GROUPS[int(rng.integers(len(ETHNIC_GROUPS)))]
        names.append((f"{_pick(rng, SURNAMES[g])}, {_pick(rng, GIVEN_NAMES[g])}", g))
    dataset = Dataset.from_records(signatures, publications)
    return SyntheticCorpus(dataset, truth, claims, tuple(authors), tuple(names))


def write_names_file(rows, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("name\tgroup\n")
        for name, group in rows:
            fh.write(f"{name}\t{group}\n")
