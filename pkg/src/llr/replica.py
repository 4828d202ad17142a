"""Deterministic replica of the case-study corpus shape.

Builds the 450-nanopub family partitioned 1 review / 118 metadata / 118
papers / 163 studies / 31 relations / 19 schema definitions, with the
relation split 26 related / 3 more-specific / 2 conflicting and statement
profiles tuned so the descriptive queries land on the published figures:
63% of evidenced statements have US-focused evidence (same for first-author
origin), and 22 of the 50 statements with known study sizes exceed 1000
(44%).

Everything is derived from fixed inputs, so the trusty URIs are stable
across runs.
"""

from __future__ import annotations

from . import vocab
from .aida import aida_to_iri
from .ingest import CorpusBuild, build_schema_nanopubs
from .model import (
    Author,
    BibMetadata,
    ResearchPaper,
    ReviewArticle,
    StatementRelation,
    Study,
    doi_iri,
    metadata_to_nanopub,
    mint_iri,
    paper_to_nanopub,
    relation_to_nanopub,
    review_to_nanopub,
    study_to_nanopub,
)
from .nanopub import Nanopublication, build_index, make_trusty
from .rdf import Iri

PAPERS = 118
STUDIES = 163
STATEMENTS = 100
TWO_STUDY_PAPERS = 45  # papers 1..45 carry two studies, the rest one

US = Iri(vocab.DBPEDIA + "United_States")
GERMANY = Iri(vocab.DBPEDIA + "Germany")

CREATOR = Iri("https://w3id.org/livingreviews/agent/curator")
TIMESTAMP = "2021-11-01T00:00:00Z"
BASE = Iri("https://w3id.org/livingreviews/np/replica/")
REVIEW_DOI = "10.9999/replica-review"


def statement_text(n: int) -> str:
    return f"Replica claim {n:03d} holds in social media research."


def statement_iri(n: int) -> Iri:
    return aida_to_iri(statement_text(n))


def _study_statement(study_number: int) -> int:
    """Studies 1..100 evidence statements 1..100; 101..163 add a second
    study to statements 1..63."""
    return (study_number - 1) % STATEMENTS + 1


def _paper_studies(paper_number: int) -> list[int]:
    if paper_number <= TWO_STUDY_PAPERS:
        return [2 * paper_number - 1, 2 * paper_number]
    return [2 * TWO_STUDY_PAPERS + (paper_number - TWO_STUDY_PAPERS)]


def _study_value(study_number: int, base: Iri) -> Study:
    stmt = _study_statement(study_number)
    us_based = stmt <= 63
    place = US if us_based else GERMANY
    size: int | None = None
    if stmt <= 50:
        size = 2500 if stmt <= 22 else 500
    classes = {vocab.STUDY, vocab.EMPIRICAL_ARTICLE, vocab.QUANTATITIVE_ANALYSIS}
    if stmt % 2 == 1:
        classes.add(vocab.SURVEY)
    return Study(
        iri=mint_iri("study", base),
        classes=frozenset(classes),
        country=place,
        overall_size=size,
        first_author_origin=place,
        land_of_focus=place,
        primary_object="People",
        theoretical_approach="Uses and gratifications",
        evidence_for=(statement_iri(stmt),),
    )


def _relations() -> list[StatementRelation]:
    relations = []
    for i in range(1, 27):  # 26 related
        relations.append(
            StatementRelation(
                statement_iri(i), vocab.HAS_RELATED_MEANING, statement_iri(i + 1), doi_iri(REVIEW_DOI)
            )
        )
    for i in (30, 32, 34):  # 3 more-specific
        relations.append(
            StatementRelation(
                statement_iri(i), vocab.HAS_MORE_SPECIFIC_MEANING_THAN, statement_iri(i + 1), doi_iri(REVIEW_DOI)
            )
        )
    for i in (40, 42):  # 2 conflicting
        relations.append(
            StatementRelation(
                statement_iri(i), vocab.HAS_CONFLICTING_MEANING, statement_iri(i + 1), doi_iri(REVIEW_DOI)
            )
        )
    return relations


def build_replica(
    creator: Iri = CREATOR,
    timestamp: str = TIMESTAMP,
    base: Iri = BASE,
) -> CorpusBuild:
    nanopubs: list[Nanopublication] = []
    paper_dois = [doi_iri(f"10.9999/replica-p{i:03d}") for i in range(1, PAPERS + 1)]

    review = ReviewArticle(iri=doi_iri(REVIEW_DOI), reviews=tuple(paper_dois))
    nanopubs.append(make_trusty(review_to_nanopub(review, creator, timestamp, base)))

    for i, doi in enumerate(paper_dois, start=1):
        bib = BibMetadata(
            doi=doi,
            title=f"Replica paper {i:03d}",
            authors=(Author(f"Author {(i - 1) % 40 + 1:02d}"),),
            year=2010 + i % 10,
            venue="Replica Journal",
        )
        nanopubs.append(make_trusty(metadata_to_nanopub(bib, creator, timestamp, base)))

    study_refs: dict[int, Iri] = {}
    study_nanopubs: list[Nanopublication] = []
    for k in range(1, STUDIES + 1):
        np = make_trusty(
            study_to_nanopub(
                _study_value(k, base),
                derived_from=paper_dois[_paper_of_study(k) - 1],
                creator=creator,
                timestamp=timestamp,
                base=base,
            )
        )
        study_nanopubs.append(np)
        study_refs[k] = Iri(np.uri.value + "#study")

    for i, doi in enumerate(paper_dois, start=1):
        study_numbers = _paper_studies(i)
        claims = tuple(statement_iri(_study_statement(k)) for k in study_numbers)
        paper = ResearchPaper(
            iri=doi,
            claims=claims,
            studies=tuple(study_refs[k] for k in study_numbers),
        )
        nanopubs.append(make_trusty(paper_to_nanopub(paper, creator, timestamp, base)))
    nanopubs.extend(study_nanopubs)

    for relation in _relations():
        nanopubs.append(make_trusty(relation_to_nanopub(relation, creator, timestamp, base)))

    nanopubs.extend(build_schema_nanopubs(creator, timestamp, base))

    index = build_index([np.uri for np in nanopubs], None, creator, timestamp, base)
    return CorpusBuild(tuple(nanopubs), index)


def _paper_of_study(study_number: int) -> int:
    if study_number <= 2 * TWO_STUDY_PAPERS:
        return (study_number + 1) // 2
    return TWO_STUDY_PAPERS + (study_number - 2 * TWO_STUDY_PAPERS)
