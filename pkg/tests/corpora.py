"""Corpus builders for query tests: hand-engineered and random."""

from __future__ import annotations

import random

from llr import vocab
from llr.aida import aida_to_iri
from llr.model import (
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
from llr.nanopub import make_trusty
from llr.rdf import Iri
from llr.store import Corpus

from .generators import random_sentence

CREATOR = Iri("https://w3id.org/livingreviews/agent/curator")
TS = "2021-11-01T00:00:00Z"
BASE = Iri("https://w3id.org/livingreviews/np/test/")

US = Iri(vocab.DBPEDIA + "United_States")
DE = Iri(vocab.DBPEDIA + "Germany")


def corpus_from_values(
    papers: list[tuple[ResearchPaper, list[Study]]],
    relations: list[StatementRelation] = (),
    metadata: dict[str, BibMetadata] | None = None,
    review: ReviewArticle | None = None,
) -> Corpus:
    """Assemble trusty nanopubs for the given model values and load them.

    Studies get their IRIs minted here; the papers' study lists are filled
    with the final content-addressed references.
    """
    nanopubs = []
    if review is not None:
        nanopubs.append(make_trusty(review_to_nanopub(review, CREATOR, TS, BASE)))
    for paper, studies in papers:
        refs = []
        for study in studies:
            minted = Study(
                iri=mint_iri("study", BASE),
                classes=study.classes,
                country=study.country,
                overall_size=study.overall_size,
                first_author_origin=study.first_author_origin,
                land_of_focus=study.land_of_focus,
                primary_object=study.primary_object,
                theoretical_approach=study.theoretical_approach,
                evidence_for=study.evidence_for,
                counter_evidence_for=study.counter_evidence_for,
            )
            np = make_trusty(study_to_nanopub(minted, paper.iri, CREATOR, TS, BASE))
            nanopubs.append(np)
            refs.append(Iri(np.uri.value + "#study"))
        linked = ResearchPaper(paper.iri, paper.claims, tuple(refs))
        nanopubs.append(make_trusty(paper_to_nanopub(linked, CREATOR, TS, BASE)))
    seen_relations = set()
    for relation in relations:
        key = (relation.subject.value, relation.relation.value, relation.object.value, relation.derived_from.value)
        if key in seen_relations:
            continue
        seen_relations.add(key)
        nanopubs.append(make_trusty(relation_to_nanopub(relation, CREATOR, TS, BASE)))
    for bib in (metadata or {}).values():
        nanopubs.append(make_trusty(metadata_to_nanopub(bib, CREATOR, TS, BASE)))
    return Corpus.from_nanopubs(nanopubs)


def study_of(statements: list[Iri], survey: bool = False, place: Iri | None = None,
             size: int | None = None, counter: list[Iri] = (), obj: str | None = None) -> Study:
    classes = {vocab.STUDY, vocab.EMPIRICAL_ARTICLE, vocab.QUANTATITIVE_ANALYSIS}
    if survey:
        classes.add(vocab.SURVEY)
    return Study(
        iri=Iri("https://w3id.org/livingreviews/np/test/#study"),
        classes=frozenset(classes),
        country=place,
        overall_size=size,
        first_author_origin=place,
        land_of_focus=place,
        primary_object=obj,
        evidence_for=tuple(statements),
        counter_evidence_for=tuple(counter),
    )


def sentences(n: int, prefix: str = "Engineered claim") -> list[Iri]:
    return [aida_to_iri(f"{prefix} {i:02d} about news sharing.") for i in range(1, n + 1)]


def survey_4_of_9_corpus() -> Corpus:
    """9 evidence pairs, 4 from survey studies; 8 distinct statements, 5 of
    them with US-based evidence."""
    s = sentences(8)
    p1, p2, p3 = (doi_iri(f"10.9999/eng.{i}") for i in (1, 2, 3))
    papers = [
        (
            ResearchPaper(p1, claims=tuple(s[0:5])),
            [
                study_of(s[0:3], survey=True, place=US, size=1200),
                study_of(s[3:5], survey=False, place=US, size=800),
            ],
        ),
        (
            ResearchPaper(p2, claims=(s[5],)),
            [study_of([s[5]], survey=True, place=DE)],
        ),
        (
            ResearchPaper(p3, claims=tuple(s[5:8])),
            [study_of(s[5:8], survey=False, place=DE, size=2000)],
        ),
    ]
    relations = [
        StatementRelation(s[0], vocab.HAS_RELATED_MEANING, s[1], p1),
        StatementRelation(s[2], vocab.HAS_CONFLICTING_MEANING, s[5], p3),
    ]
    return corpus_from_values(papers, relations)


def support_corpus() -> tuple[Corpus, Iri, Iri]:
    """Claim A made by 3 papers with 5 distinct authors; conflicting claim B
    by 1 paper with 2 authors."""
    a = aida_to_iri("Claim A about news sharing holds.")
    b = aida_to_iri("Claim B about news sharing holds.")
    dois = [doi_iri(f"10.9999/sup.{i}") for i in (1, 2, 3, 4)]
    papers = [
        (ResearchPaper(dois[0], claims=(a,)), [study_of([a], place=US, size=100)]),
        (ResearchPaper(dois[1], claims=(a,)), [study_of([a], place=US, size=200)]),
        (ResearchPaper(dois[2], claims=(a,)), [study_of([a], place=DE)]),
        (ResearchPaper(dois[3], claims=(b,)), [study_of([b], place=DE, size=50)]),
    ]
    metadata = {
        dois[0].value: BibMetadata(doi=dois[0], title="P1", authors=(Author("Alice One"), Author("Bob Two")), year=2014),
        dois[1].value: BibMetadata(doi=dois[1], title="P2", authors=(Author("Carol Three"),), year=2015),
        dois[2].value: BibMetadata(doi=dois[2], title="P3", authors=(Author("Dan Four"), Author("Eve Five")), year=2016),
        dois[3].value: BibMetadata(doi=dois[3], title="P4", authors=(Author("Frank Six"), Author("Grace Seven")), year=2017),
    }
    relations = [StatementRelation(a, vocab.HAS_CONFLICTING_MEANING, b, dois[3])]
    return corpus_from_values(papers, relations, metadata), a, b


def random_corpus(rng: random.Random, max_papers: int = 8):
    """A random small corpus plus the raw model values it was built from,
    so oracles can work off the inputs rather than the loaded corpus."""
    statements = [aida_to_iri(random_sentence(rng)) for _ in range(rng.randint(2, 12))]
    papers = []
    for i in range(rng.randint(1, max_papers)):
        doi = doi_iri(f"10.9999/rnd.{rng.randint(0, 10**9)}.{i}")
        studies = []
        for j in range(rng.randint(0, 3)):
            evid = rng.sample(statements, k=rng.randint(1, min(3, len(statements))))
            counter = rng.sample(statements, k=rng.randint(0, 1))
            place = rng.choice([US, DE, None])
            studies.append(
                study_of(
                    evid,
                    survey=rng.random() < 0.5,
                    place=place,
                    size=rng.choice([None, 50, 500, 1500, 5000]),
                    counter=counter,
                    obj=f"Group {j + 1}",
                )
            )
        claims = tuple(rng.sample(statements, k=rng.randint(0, min(3, len(statements)))))
        if not studies and not claims:
            claims = (statements[0],)
        papers.append((ResearchPaper(doi, claims=claims), studies))
    relations = []
    if len(statements) >= 2:
        drawn = {}
        for _ in range(rng.randint(0, 6)):
            pair = rng.sample(statements, k=2)
            rel = StatementRelation(
                pair[0],
                rng.choice(vocab.RELATION_PREDICATES),
                pair[1],
                papers[0][0].iri,
            )
            drawn[(rel.subject.value, rel.relation.value, rel.object.value)] = rel
        relations = list(drawn.values())
    metadata = {}
    for paper, _ in papers:
        if rng.random() < 0.7:
            authors = tuple(Author(f"Author {rng.randint(1, 9)}") for _ in range(rng.randint(0, 3)))
            metadata[paper.iri.value] = BibMetadata(doi=paper.iri, title="T", authors=authors)
    corpus = corpus_from_values(papers, relations, metadata)
    return corpus, papers, relations, metadata
