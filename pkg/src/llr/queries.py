"""Descriptive analyses over a corpus: census, relation distribution,
statement percentages, and statement support.

Percentages are exact rationals on the 0..100 scale. Display rounding
differs by query: the census-style shares round half-up to whole percents,
the study-class share reports two decimals. The statement-level queries
(country, origin, size) use an existential denominator: a statement counts
once no matter how many studies evidence it. The class query is pair-level:
it ranges over (study, statement) evidence pairs, mirroring how the share
of survey-backed evidence is computed with a nested count.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from . import vocab
from .model import Study
from .rdf import Iri
from .store import Corpus, NanopubKind, StoreError

STUDY_FIELDS = ("country", "first_author_origin", "land_of_focus")


def whole_percent(value: Fraction) -> int:
    """Round half-up to a whole percent."""
    return int((value + Fraction(1, 2)).__floor__())


def two_decimal_percent(value: Fraction) -> float:
    """Round half-up to two decimals."""
    return float((value * 100 + Fraction(1, 2)).__floor__()) / 100


@dataclass(frozen=True)
class CensusReport:
    review: int = 0
    doi_metadata: int = 0
    paper: int = 0
    study: int = 0
    relation: int = 0
    schema: int = 0
    revision: int = 0
    indexes: int = 0  # reported separately, not part of the total

    @property
    def total(self) -> int:
        return (
            self.review
            + self.doi_metadata
            + self.paper
            + self.study
            + self.relation
            + self.schema
            + self.revision
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "review": self.review,
            "doi_metadata": self.doi_metadata,
            "paper": self.paper,
            "study": self.study,
            "relation": self.relation,
            "schema": self.schema,
            "revision": self.revision,
            "total": self.total,
            "indexes": self.indexes,
        }


def counts_by_kind(c: Corpus) -> CensusReport:
    counts = {kind: 0 for kind in NanopubKind}
    for kind in c.kinds.values():
        counts[kind] += 1
    return CensusReport(
        review=counts[NanopubKind.REVIEW],
        doi_metadata=counts[NanopubKind.DOI_METADATA],
        paper=counts[NanopubKind.PAPER],
        study=counts[NanopubKind.STUDY],
        relation=counts[NanopubKind.RELATION],
        schema=counts[NanopubKind.SCHEMA],
        revision=counts[NanopubKind.REVISION],
        indexes=counts[NanopubKind.INDEX],
    )


@dataclass(frozen=True)
class RelationShare:
    count: int
    exact: Fraction  # 0..100

    @property
    def display(self) -> int:
        return whole_percent(self.exact)


def relation_distribution(c: Corpus) -> dict[Iri, RelationShare]:
    """Share of each relation predicate over all relation nanopubs."""
    counts: dict[Iri, int] = {}
    for rel in c.relations:
        counts[rel.relation] = counts.get(rel.relation, 0) + 1
    total = sum(counts.values())
    if total == 0:
        return {}
    return {
        predicate: RelationShare(count, Fraction(count, total) * 100)
        for predicate, count in counts.items()
    }


def _evidence_pairs(c: Corpus) -> list[tuple[Study, Iri]]:
    pairs = []
    for study in c.studies.values():
        for statement in study.evidence_for:
            pairs.append((study, statement))
    return pairs


def _evidenced_statements(c: Corpus) -> dict[str, list[Study]]:
    by_statement: dict[str, list[Study]] = {}
    for study, statement in _evidence_pairs(c):
        by_statement.setdefault(statement.value, []).append(study)
    return by_statement


def pct_statements_by_study_field(
    c: Corpus,
    field: str,
    predicate: Callable[[Iri | str], bool],
) -> Fraction:
    """Share of evidenced statements having at least one evidencing study
    whose ``field`` value satisfies the predicate. Studies without the field
    never satisfy it; statements without evidencing studies are out of the
    denominator."""
    if field not in STUDY_FIELDS:
        raise StoreError(f"unknown study field {field!r}; expected one of {STUDY_FIELDS}")
    by_statement = _evidenced_statements(c)
    if not by_statement:
        return Fraction(0)
    qualifying = 0
    for studies in by_statement.values():
        for study in studies:
            value = getattr(study, field)
            if value is not None and predicate(value):
                qualifying += 1
                break
    return Fraction(qualifying, len(by_statement)) * 100


def pct_statements_large_study(c: Corpus, threshold: int) -> Fraction:
    """Share of statements backed by at least one study with a known group
    size above the threshold, among statements with any known-size
    evidencing study."""
    if threshold < 0:
        raise StoreError("threshold must be >= 0")
    by_statement = _evidenced_statements(c)
    with_known = {
        stmt: studies
        for stmt, studies in by_statement.items()
        if any(s.overall_size is not None for s in studies)
    }
    if not with_known:
        return Fraction(0)
    qualifying = sum(
        1
        for studies in with_known.values()
        if any(s.overall_size is not None and s.overall_size > threshold for s in studies)
    )
    return Fraction(qualifying, len(with_known)) * 100


def pct_statements_by_class(c: Corpus, cls: Iri) -> Fraction:
    """Share of (study, statement) evidence pairs whose study bears the
    class; pair-level, so a statement evidenced twice counts twice."""
    pairs = _evidence_pairs(c)
    if not pairs:
        return Fraction(0)
    qualifying = sum(1 for study, _ in pairs if cls in study.classes)
    return Fraction(qualifying, len(pairs)) * 100


def list_statements(c: Corpus) -> tuple[Iri, ...]:
    seen: dict[str, Iri] = {}
    for paper in c.papers.values():
        for claim in paper.claims:
            seen.setdefault(claim.value, claim)
    for study in c.studies.values():
        for statement in (*study.evidence_for, *study.counter_evidence_for):
            seen.setdefault(statement.value, statement)
    for rel in c.relations:
        seen.setdefault(rel.subject.value, rel.subject)
        seen.setdefault(rel.object.value, rel.object)
    return tuple(sorted(seen.values(), key=lambda i: i.value))


_SYMMETRIC = (vocab.HAS_RELATED_MEANING, vocab.HAS_CONFLICTING_MEANING)
_INVERSES = {
    vocab.HAS_MORE_SPECIFIC_MEANING_THAN: vocab.HAS_MORE_GENERAL_MEANING_THAN,
    vocab.HAS_MORE_GENERAL_MEANING_THAN: vocab.HAS_MORE_SPECIFIC_MEANING_THAN,
}


def neighbors(c: Corpus, statement: Iri, relation: Iri) -> tuple[Iri, ...]:
    """Statements reachable over one relation edge; symmetric relations look
    both ways, the specific/general pair is inverse-aware."""
    if relation not in vocab.RELATION_PREDICATES:
        raise StoreError(f"unknown relation {relation.value}")
    out: dict[str, Iri] = {}
    for rel in c.relations:
        if rel.relation == relation and rel.subject == statement:
            out.setdefault(rel.object.value, rel.object)
        if relation in _SYMMETRIC and rel.relation == relation and rel.object == statement:
            out.setdefault(rel.subject.value, rel.subject)
        inverse = _INVERSES.get(relation)
        if inverse is not None and rel.relation == inverse and rel.object == statement:
            out.setdefault(rel.subject.value, rel.subject)
    return tuple(sorted(out.values(), key=lambda i: i.value))


@dataclass(frozen=True)
class SupportEntry:
    statement: Iri
    supporting_papers: int
    distinct_authors: int


@dataclass(frozen=True)
class SupportReport:
    statement: Iri
    supporting_papers: int
    distinct_authors: int
    conflicting: tuple[SupportEntry, ...]


def _support_counts(c: Corpus, statement: Iri) -> tuple[int, int]:
    supporting = []
    for paper in c.papers.values():
        if statement in paper.claims:
            supporting.append(paper)
            continue
        if any(statement in study.evidence_for for study in c.studies_of_paper(paper)):
            supporting.append(paper)
    authors: set[str] = set()
    for paper in supporting:
        bib = paper.metadata or c.metadata.get(paper.iri.value)
        if bib is None:
            continue
        for author in bib.authors:
            authors.add(author.orcid.value if author.orcid else author.name)
    return len(supporting), len(authors)


def statement_support(c: Corpus, statement: Iri) -> SupportReport:
    """How strongly a statement is backed: distinct claiming/evidencing
    papers, distinct authors, and the same counts for every statement in
    conflict with it."""
    known = {i.value for i in list_statements(c)}
    if statement.value not in known:
        raise StoreError(f"unknown statement {statement.value}")
    papers, authors = _support_counts(c, statement)
    conflicting = []
    for other in neighbors(c, statement, vocab.HAS_CONFLICTING_MEANING):
        other_papers, other_authors = _support_counts(c, other)
        conflicting.append(SupportEntry(other, other_papers, other_authors))
    return SupportReport(statement, papers, authors, tuple(conflicting))
