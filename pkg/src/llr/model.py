"""Typed domain layer: review articles, papers, studies, statement relations,
and bibliographic metadata, with lossless mapping to and from
nanopublications.

Multi-valued RDF predicates have set semantics, so every IRI-list field
normalizes to a sorted, deduplicated tuple at construction; mapping a value
to a nanopublication and back reproduces it exactly. A paper's companion
bibliographic record lives in its own metadata nanopublication, so
ResearchPaper.metadata stays out of the paper nanopub and is only populated
when joining across a corpus.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from datetime import datetime

from . import vocab
from .nanopub import Nanopublication, assemble
from .rdf import Iri, Literal, Object, Quad, Subject, XSD_GYEAR

_DOI_URI_RE = re.compile(r"^https?://doi\.org/10\.\d{4,9}[^\s]*$")


class ModelError(ValueError):
    pass


def is_doi_uri(iri: Iri) -> bool:
    return bool(_DOI_URI_RE.match(iri.value))


def doi_iri(doi: str) -> Iri:
    """Normalize a bare DOI like ``10.1177/...`` to its https://doi.org URI."""
    if doi.startswith(("http://doi.org/", "https://doi.org/")):
        candidate = Iri(doi)
    else:
        candidate = Iri("https://doi.org/" + doi)
    if not is_doi_uri(candidate):
        raise ModelError(f"not a valid DOI: {doi!r}")
    return candidate


def _sorted_iris(iris: Iterable[Iri]) -> tuple[Iri, ...]:
    return tuple(sorted({i.value: i for i in iris}.values(), key=lambda i: i.value))


@dataclass(frozen=True)
class Author:
    name: str
    orcid: Iri | None = None


@dataclass(frozen=True)
class BibMetadata:
    doi: Iri | None = None
    title: str | None = None
    authors: tuple[Author, ...] = ()
    year: int | None = None
    venue: str | None = None

    def __post_init__(self) -> None:
        if self.doi is not None and not is_doi_uri(self.doi):
            raise ModelError(f"not a DOI URI: {self.doi.value}")
        normalized = tuple(sorted(set(self.authors), key=lambda a: (a.name, a.orcid.value if a.orcid else "")))
        object.__setattr__(self, "authors", normalized)


@dataclass(frozen=True)
class ReviewArticle:
    iri: Iri
    reviews: tuple[Iri, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "reviews", _sorted_iris(self.reviews))
        if not self.reviews:
            raise ModelError("a review article must review at least one paper")


@dataclass(frozen=True)
class ResearchPaper:
    iri: Iri
    claims: tuple[Iri, ...] = ()
    studies: tuple[Iri, ...] = ()
    metadata: BibMetadata | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "claims", _sorted_iris(self.claims))
        object.__setattr__(self, "studies", _sorted_iris(self.studies))


@dataclass(frozen=True)
class Study:
    """Location fields hold a resource Iri when the gazetteer resolved the
    name, or the raw string (emitted as a plain literal) when it did not."""

    iri: Iri
    classes: frozenset[Iri] = frozenset()
    country: Iri | str | None = None
    overall_size: int | None = None
    first_author_origin: Iri | str | None = None
    land_of_focus: Iri | str | None = None
    primary_object: str | None = None
    theoretical_approach: str | None = None
    evidence_for: tuple[Iri, ...] = ()
    counter_evidence_for: tuple[Iri, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", frozenset(self.classes) | {vocab.STUDY})
        object.__setattr__(self, "evidence_for", _sorted_iris(self.evidence_for))
        object.__setattr__(self, "counter_evidence_for", _sorted_iris(self.counter_evidence_for))
        if self.overall_size is not None and self.overall_size <= 0:
            raise ModelError(f"study group size must be positive, got {self.overall_size}")
        if not self.evidence_for and not self.counter_evidence_for:
            raise ModelError("a study must evidence or counter-evidence at least one statement")


@dataclass(frozen=True)
class StatementRelation:
    subject: Iri
    relation: Iri
    object: Iri
    derived_from: Iri

    def __post_init__(self) -> None:
        if self.relation not in vocab.RELATION_PREDICATES:
            raise ModelError(f"unknown statement relation {self.relation.value}")
        if self.subject == self.object:
            raise ModelError("a statement cannot relate to itself")


def mint_iri(kind: str, parent: Iri, discriminator: str = "1") -> Iri:
    """Mint a deterministic IRI in a nanopub's fragment namespace.

    The first entity of a kind gets the bare suffix (``#study``), later ones
    are numbered (``#study2``).
    """
    suffix = kind if discriminator in ("", "1") else f"{kind}{discriminator}"
    return Iri(f"{parent.value}#{suffix}")


def _reference_prefixes(triples: Sequence[tuple[Subject, Iri, Object]]) -> dict[str, Iri]:
    """Bind a ``nanopubRAxxxxxx:`` prefix for every referenced trusty nanopub,
    so serialized assertions read like ``cdop:study nanopubRAAySjE5:study``."""
    from .nanopub import TrustyUri

    namespaces: list[Iri] = []
    for s, p, o in triples:
        for term in (s, p, o):
            if not isinstance(term, Iri) or "#" not in term.value:
                continue
            head, _, _ = term.value.rpartition("#")
            split = TrustyUri.split(Iri(head)) if head else None
            if split is not None:
                namespaces.append(Iri(head + "#"))
    prefixes: dict[str, Iri] = {}
    for ns in sorted({n.value: n for n in namespaces}.values(), key=lambda n: n.value):
        code = TrustyUri.split(Iri(ns.value[:-1])).artifact_code
        width = 8
        label = "nanopub" + code[:width]
        while label in prefixes and prefixes[label] != ns:
            width += 1
            label = "nanopub" + code[:width]
        prefixes[label] = ns
    return prefixes


def _assemble(
    triples: Sequence[tuple[Subject, Iri, Object]],
    derived_from: Iri,
    creator: Iri,
    timestamp: datetime | str,
    base: Iri,
    aida_namespace: Iri | None = None,
) -> Nanopublication:
    extra = _reference_prefixes(triples)
    if aida_namespace is not None:
        extra["aida"] = aida_namespace
    return assemble(triples, derived_from, creator, timestamp, base, extra_prefixes=extra or None)


def review_to_nanopub(
    r: ReviewArticle,
    creator: Iri,
    timestamp: datetime | str,
    base: Iri,
) -> Nanopublication:
    triples: list[tuple[Subject, Iri, Object]] = [(r.iri, vocab.RDF_TYPE, vocab.REVIEW_ARTICLE)]
    for paper in r.reviews:
        triples.append((r.iri, vocab.REVIEWS, paper))
    return _assemble(triples, derived_from=r.iri, creator=creator, timestamp=timestamp, base=base)


def paper_to_nanopub(
    p: ResearchPaper,
    creator: Iri,
    timestamp: datetime | str,
    base: Iri,
    aida_namespace: Iri | None = None,
) -> Nanopublication:
    triples: list[tuple[Subject, Iri, Object]] = [(p.iri, vocab.RDF_TYPE, vocab.RESEARCH_PAPER)]
    for claim in p.claims:
        triples.append((p.iri, vocab.CLAIMS, claim))
    for study in p.studies:
        triples.append((p.iri, vocab.HAS_STUDY, study))
    return _assemble(triples, p.iri, creator, timestamp, base, aida_namespace)


def study_to_nanopub(
    s: Study,
    derived_from: Iri,
    creator: Iri,
    timestamp: datetime | str,
    base: Iri,
    aida_namespace: Iri | None = None,
) -> Nanopublication:
    def place(value: Iri | str) -> Object:
        return value if isinstance(value, Iri) else Literal(value)

    triples: list[tuple[Subject, Iri, Object]] = []
    for cls in sorted(s.classes, key=lambda c: c.value):
        triples.append((s.iri, vocab.RDF_TYPE, cls))
    if s.country is not None:
        triples.append((s.iri, vocab.COUNTRY, place(s.country)))
    if s.overall_size is not None:
        triples.append((s.iri, vocab.OVERALL, Literal(str(s.overall_size))))
    if s.first_author_origin is not None:
        triples.append((s.iri, vocab.FIRST_AUTHOR_ORIGIN, place(s.first_author_origin)))
    if s.land_of_focus is not None:
        triples.append((s.iri, vocab.LAND_OF_FOCUS, place(s.land_of_focus)))
    if s.primary_object is not None:
        triples.append((s.iri, vocab.PRIMARY_OBJECT, Literal(s.primary_object)))
    if s.theoretical_approach is not None:
        triples.append((s.iri, vocab.THEORETICAL_APPROACH, Literal(s.theoretical_approach)))
    for statement in s.evidence_for:
        triples.append((s.iri, vocab.PROVIDES_EVIDENCE_FOR, statement))
    for statement in s.counter_evidence_for:
        triples.append((s.iri, vocab.PROVIDES_COUNTER_EVIDENCE_FOR, statement))
    return _assemble(triples, derived_from, creator, timestamp, base, aida_namespace)


def relation_to_nanopub(
    rel: StatementRelation,
    creator: Iri,
    timestamp: datetime | str,
    base: Iri,
    aida_namespace: Iri | None = None,
) -> Nanopublication:
    # a relation nanopub's assertion is exactly one triple linking the statements
    triples = [(rel.subject, rel.relation, rel.object)]
    return _assemble(triples, rel.derived_from, creator, timestamp, base, aida_namespace)


def metadata_to_nanopub(
    m: BibMetadata,
    creator: Iri,
    timestamp: datetime | str,
    base: Iri,
) -> Nanopublication:
    if m.doi is None:
        raise ModelError("a metadata nanopub needs the paper's DOI as its subject")
    triples: list[tuple[Subject, Iri, Object]] = [(m.doi, vocab.DCT_IDENTIFIER, Literal(m.doi.value))]
    if m.title is not None:
        triples.append((m.doi, vocab.DCT_TITLE, Literal(m.title)))
    if m.year is not None:
        triples.append((m.doi, vocab.DCT_DATE, Literal(str(m.year), datatype=XSD_GYEAR)))
    if m.venue is not None:
        triples.append((m.doi, vocab.DCT_IS_PART_OF, Literal(m.venue)))
    for author in m.authors:
        if author.orcid is not None:
            triples.append((m.doi, vocab.DCT_CREATOR, author.orcid))
            triples.append((author.orcid, vocab.FOAF_NAME, Literal(author.name)))
        else:
            triples.append((m.doi, vocab.DCT_CREATOR, Literal(author.name)))
    return _assemble(triples, m.doi, creator, timestamp, base)


_KIND_MARKERS = {
    vocab.REVIEW_ARTICLE: "review",
    vocab.RESEARCH_PAPER: "paper",
    vocab.STUDY: "study",
}


def _assertion_triples(np: Nanopublication) -> tuple[Quad, ...]:
    return np.assertion()


def classify(np: Nanopublication) -> str:
    """Classify a nanopub as review / paper / study / relation.

    The rule: a fabio:ReviewArticle, fabio:ResearchPaper, or cdoc:Study type
    quad decides; otherwise a single-triple assertion whose predicate is one
    of the four HYCL relations is a relation. Anything else (including
    conflicting type quads) is unclassifiable.
    """
    kinds = set()
    for q in _assertion_triples(np):
        if q.predicate == vocab.RDF_TYPE and q.object in _KIND_MARKERS:
            kinds.add(_KIND_MARKERS[q.object])
    if len(kinds) > 1:
        raise ModelError(f"conflicting type quads in {np.uri.value}: {sorted(kinds)}")
    if kinds:
        return kinds.pop()
    triples = _assertion_triples(np)
    if len(triples) == 1 and triples[0].predicate in vocab.RELATION_PREDICATES:
        return "relation"
    raise ModelError(f"unclassifiable nanopublication: {np.uri.value}")


def _subject_of_type(np: Nanopublication, cls: Iri) -> Iri:
    for q in np.assertion():
        if q.predicate == vocab.RDF_TYPE and q.object == cls and isinstance(q.subject, Iri):
            return q.subject
    raise ModelError(f"no {cls.value} subject in {np.uri.value}")


def _objects(np: Nanopublication, subject: Subject, predicate: Iri) -> list[Object]:
    return [q.object for q in np.assertion() if q.subject == subject and q.predicate == predicate]


def _iri_objects(np: Nanopublication, subject: Subject, predicate: Iri) -> list[Iri]:
    return [o for o in _objects(np, subject, predicate) if isinstance(o, Iri)]


def _literal_object(np: Nanopublication, subject: Subject, predicate: Iri) -> str | None:
    for o in _objects(np, subject, predicate):
        if isinstance(o, Literal):
            return o.lexical
    return None


def _iri_object(np: Nanopublication, subject: Subject, predicate: Iri) -> Iri | None:
    objs = _iri_objects(np, subject, predicate)
    return objs[0] if objs else None


def _place_object(np: Nanopublication, subject: Subject, predicate: Iri) -> Iri | str | None:
    for o in _objects(np, subject, predicate):
        if isinstance(o, Iri):
            return o
        if isinstance(o, Literal):
            return o.lexical
    return None


def review_from_nanopub(np: Nanopublication) -> ReviewArticle:
    subject = _subject_of_type(np, vocab.REVIEW_ARTICLE)
    return ReviewArticle(subject, tuple(_iri_objects(np, subject, vocab.REVIEWS)))


def paper_from_nanopub(np: Nanopublication) -> ResearchPaper:
    subject = _subject_of_type(np, vocab.RESEARCH_PAPER)
    return ResearchPaper(
        subject,
        claims=tuple(_iri_objects(np, subject, vocab.CLAIMS)),
        studies=tuple(_iri_objects(np, subject, vocab.HAS_STUDY)),
    )


def study_from_nanopub(np: Nanopublication) -> Study:
    subject = _subject_of_type(np, vocab.STUDY)
    classes = frozenset(_iri_objects(np, subject, vocab.RDF_TYPE))
    size_text = _literal_object(np, subject, vocab.OVERALL)
    if size_text is not None:
        try:
            size: int | None = int(size_text)
        except ValueError:
            raise ModelError(f"study group size is not an integer: {size_text!r}") from None
    else:
        size = None
    return Study(
        subject,
        classes=classes,
        country=_place_object(np, subject, vocab.COUNTRY),
        overall_size=size,
        first_author_origin=_place_object(np, subject, vocab.FIRST_AUTHOR_ORIGIN),
        land_of_focus=_place_object(np, subject, vocab.LAND_OF_FOCUS),
        primary_object=_literal_object(np, subject, vocab.PRIMARY_OBJECT),
        theoretical_approach=_literal_object(np, subject, vocab.THEORETICAL_APPROACH),
        evidence_for=tuple(_iri_objects(np, subject, vocab.PROVIDES_EVIDENCE_FOR)),
        counter_evidence_for=tuple(_iri_objects(np, subject, vocab.PROVIDES_COUNTER_EVIDENCE_FOR)),
    )


def relation_from_nanopub(np: Nanopublication) -> StatementRelation:
    triples = np.assertion()
    if len(triples) != 1 or triples[0].predicate not in vocab.RELATION_PREDICATES:
        raise ModelError(f"not a single-triple relation nanopub: {np.uri.value}")
    quad = triples[0]
    if not isinstance(quad.subject, Iri) or not isinstance(quad.object, Iri):
        raise ModelError("relation endpoints must be statement IRIs")
    derived = None
    for q in np.provenance():
        if q.predicate == vocab.WAS_DERIVED_FROM and isinstance(q.object, Iri):
            derived = q.object
    if derived is None:
        raise ModelError(f"relation nanopub has no derivation source: {np.uri.value}")
    return StatementRelation(quad.subject, quad.predicate, quad.object, derived)


def bib_from_quads(quads: Iterable[Quad], doi: Iri) -> BibMetadata:
    """Extract the bibliographic core about ``doi`` from a pile of quads,
    ignoring anything beyond the common dct/foaf shape."""
    pile = tuple(quads)

    def objects(subject: Subject, predicate: Iri) -> list[Object]:
        return [q.object for q in pile if q.subject == subject and q.predicate == predicate]

    def literal(subject: Subject, predicate: Iri) -> str | None:
        for o in objects(subject, predicate):
            if isinstance(o, Literal):
                return o.lexical
        return None

    authors = []
    for o in objects(doi, vocab.DCT_CREATOR):
        if isinstance(o, Literal):
            authors.append(Author(o.lexical))
        elif isinstance(o, Iri):
            authors.append(Author(literal(o, vocab.FOAF_NAME) or o.value, orcid=o))
    year_text = literal(doi, vocab.DCT_DATE)
    year: int | None = None
    if year_text:
        m = re.search(r"\d{4}", year_text)
        year = int(m.group(0)) if m else None
    return BibMetadata(
        doi=doi,
        title=literal(doi, vocab.DCT_TITLE),
        authors=tuple(authors),
        year=year,
        venue=literal(doi, vocab.DCT_IS_PART_OF),
    )


def metadata_from_nanopub(np: Nanopublication) -> BibMetadata:
    subjects = {q.subject for q in np.assertion() if isinstance(q.subject, Iri) and is_doi_uri(q.subject)}
    candidates = [s for s in subjects if _objects(np, s, vocab.DCT_IDENTIFIER) or _objects(np, s, vocab.DCT_TITLE)]
    if len(candidates) != 1:
        raise ModelError(f"cannot locate the bibliographic subject in {np.uri.value}")
    return bib_from_quads(np.assertion(), candidates[0])


def from_nanopub(np: Nanopublication) -> ReviewArticle | ResearchPaper | Study | StatementRelation:
    kind = classify(np)
    if kind == "review":
        return review_from_nanopub(np)
    if kind == "paper":
        return paper_from_nanopub(np)
    if kind == "study":
        return study_from_nanopub(np)
    return relation_from_nanopub(np)
