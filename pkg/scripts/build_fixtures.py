#!/usr/bin/env python3
"""Regenerate the committed TriG fixtures under fixtures/.

Deterministic: fixed creator, fixed timestamps, content-addressed URIs.
Run from the repository root after changing the model or serializer, then
inspect the diff before committing.
"""

from __future__ import annotations

import pathlib
import sys

from llr import vocab
from llr.aida import aida_to_iri
from llr.model import (
    ReviewArticle,
    ResearchPaper,
    StatementRelation,
    Study,
    mint_iri,
    paper_to_nanopub,
    relation_to_nanopub,
    review_to_nanopub,
    study_to_nanopub,
)
from llr.nanopub import make_trusty, to_trig, verify_trusty
from llr.rdf import Iri

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

CREATOR = Iri("https://w3id.org/livingreviews/agent/curator")
TIMESTAMP = "2021-11-01T00:00:00Z"
NP_BASE = Iri("https://w3id.org/livingreviews/np/")

DBPEDIA = vocab.DBPEDIA

REVIEW_DOI = Iri("https://doi.org/10.1177/2056305115610141")
REVIEWED_DOIS = [
    Iri("http://doi.org/10.1016/j.chb.2011.10.002"),
    Iri("http://doi.org/10.1016/j.chb.2014.03.006"),
    Iri("http://doi.org/10.1016/j.chb.2014.08.009"),
    Iri("http://doi.org/10.1080/08824096.2013.843165"),
    Iri("http://doi.org/10.1080/1369118X.2011.554572"),
    Iri("https://doi.org/10.1177/1077699013482906"),
    Iri("https://doi.org/10.1177/1931243114546448"),
    Iri("https://doi.org/10.1177/2056305115610141"),
    Iri("https://doi.org/10.1207/s15506878jobem4903_3"),
    Iri("https://doi.org/10.1287/isre.1100.0339"),
]

HICSS_DOI = Iri("http://doi.org/10.1109/HICSS.2010.412")
CLAIM_ALTRUISM = "Altruistic motive is one of the main drivers of information sharing."
CLAIM_REPUTATION = (
    "People share news to gain reputation, to draw people's attention, "
    "and to attain status among peers or other users."
)
CLAIM_OPINION_LEADERS = (
    "People who share news in social media tend to perceive themselves as opinion leaders."
)
CLAIM_FRIENDS = "People who share news in social media tend to have more friends or followers."

SURVEY_CLASSES = frozenset(
    {vocab.STUDY, vocab.EMPIRICAL_ARTICLE, vocab.QUANTATITIVE_ANALYSIS, vocab.SURVEY}
)


def write(name: str, np) -> None:
    assert verify_trusty(np), name
    path = FIXTURES / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_trig(np), encoding="utf-8", newline="\n")
    print(f"{name}: {np.uri.value}")


def build_study_001():
    study = Study(
        iri=mint_iri("study", NP_BASE),
        classes=SURVEY_CLASSES,
        country=Iri(DBPEDIA + "United_States"),
        overall_size=417,
        first_author_origin=Iri(DBPEDIA + "United_States"),
        land_of_focus=Iri(DBPEDIA + "United_States"),
        primary_object="People",
        theoretical_approach="Uses and gratifications",
        evidence_for=(aida_to_iri(CLAIM_OPINION_LEADERS),),
    )
    np = study_to_nanopub(
        study,
        derived_from=Iri("https://doi.org/10.1177/1931243114546448"),
        creator=CREATOR,
        timestamp=TIMESTAMP,
        base=NP_BASE,
        aida_namespace=Iri("http://purl.org/aida/"),
    )
    return make_trusty(np)


def build_hicss_study(size: int, classes: frozenset, claim: str):
    study = Study(
        iri=mint_iri("study", NP_BASE),
        classes=classes,
        country=Iri(DBPEDIA + "Singapore"),
        overall_size=size,
        first_author_origin=Iri(DBPEDIA + "Singapore"),
        land_of_focus=Iri(DBPEDIA + "Singapore"),
        primary_object="People",
        theoretical_approach="Uses and gratifications",
        evidence_for=(aida_to_iri(claim),),
    )
    np = study_to_nanopub(
        study,
        derived_from=HICSS_DOI,
        creator=CREATOR,
        timestamp=TIMESTAMP,
        base=NP_BASE,
        aida_namespace=Iri("http://purl.org/aida/"),
    )
    return make_trusty(np)


def main() -> int:
    study1 = build_study_001()
    write("study-001.trig", study1)

    study2 = build_hicss_study(109, SURVEY_CLASSES, CLAIM_ALTRUISM)
    study3 = build_hicss_study(
        297,
        frozenset({vocab.STUDY, vocab.EMPIRICAL_ARTICLE, vocab.QUANTATITIVE_ANALYSIS}),
        CLAIM_REPUTATION,
    )
    write("study-002.trig", study2)
    write("study-003.trig", study3)

    paper = ResearchPaper(
        iri=HICSS_DOI,
        claims=(aida_to_iri(CLAIM_ALTRUISM), aida_to_iri(CLAIM_REPUTATION)),
        studies=(
            Iri(study2.uri.value + "#study"),
            Iri(study3.uri.value + "#study"),
        ),
    )
    write(
        "paper-001.trig",
        make_trusty(
            paper_to_nanopub(
                paper,
                creator=CREATOR,
                timestamp=TIMESTAMP,
                base=NP_BASE,
                aida_namespace=Iri("http://purl.org/aida/"),
            )
        ),
    )

    review = ReviewArticle(iri=REVIEW_DOI, reviews=tuple(REVIEWED_DOIS))
    write(
        "review-001.trig",
        make_trusty(review_to_nanopub(review, creator=CREATOR, timestamp=TIMESTAMP, base=NP_BASE)),
    )

    relation = StatementRelation(
        subject=aida_to_iri(CLAIM_OPINION_LEADERS),
        relation=vocab.HAS_RELATED_MEANING,
        object=aida_to_iri(CLAIM_FRIENDS),
        derived_from=REVIEW_DOI,
    )
    write(
        "relation-001.trig",
        make_trusty(
            relation_to_nanopub(
                relation,
                creator=CREATOR,
                timestamp=TIMESTAMP,
                base=NP_BASE,
                aida_namespace=Iri("http://purl.org/aida/"),
            )
        ),
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
