import pathlib
import random

import pytest

from llr import vocab
from llr.aida import aida_to_iri
from llr.model import (
    Author,
    BibMetadata,
    ModelError,
    ResearchPaper,
    ReviewArticle,
    StatementRelation,
    Study,
    classify,
    doi_iri,
    from_nanopub,
    metadata_from_nanopub,
    metadata_to_nanopub,
    mint_iri,
    paper_from_nanopub,
    paper_to_nanopub,
    relation_from_nanopub,
    relation_to_nanopub,
    review_from_nanopub,
    review_to_nanopub,
    study_from_nanopub,
    study_to_nanopub,
)
from llr.nanopub import from_trig, make_trusty, strip_trusty, to_trig, validate
from llr.rdf import Iri, Literal, Quad, Dataset
from llr.trig import serialize_trig

from .generators import random_paper, random_relation, random_review, random_study

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
CREATOR = Iri("https://w3id.org/livingreviews/agent/curator")
TS = "2021-11-01T00:00:00Z"
BASE = Iri("https://w3id.org/livingreviews/np/")
AIDA_NS = Iri("http://purl.org/aida/")


def test_registry_iris_expand_from_table_namespaces():
    namespaces = tuple(vocab.TABLE_NAMESPACES.values())
    for name, iri in vocab.REGISTRY.items():
        assert iri.value.startswith(namespaces), f"{name} -> {iri.value}"


def test_registry_spot_values():
    assert vocab.REVIEWS.value == "http://purl.org/spar/cito/reviews"
    assert vocab.PROVIDES_EVIDENCE_FOR.value == "https://w3id.org/livingreviews/vocab/providesEvidenceFor"
    assert vocab.QUANTATITIVE_ANALYSIS.value.endswith("QuantatitiveAnalysis")
    assert vocab.QUANTITATIVE_ANALYSIS == vocab.QUANTATITIVE_ANALYSIS
    assert vocab.HAS_CONFLICTING_MEANING.value == "http://purl.org/petapico/o/hycl#hasConflictingMeaning"


def test_doi_iri_normalization():
    assert doi_iri("10.1177/2056305115610141").value == "https://doi.org/10.1177/2056305115610141"
    assert doi_iri("http://doi.org/10.1109/HICSS.2010.412").value == "http://doi.org/10.1109/HICSS.2010.412"
    with pytest.raises(ModelError):
        doi_iri("10.")
    with pytest.raises(ModelError):
        doi_iri("not-a-doi")


def test_review_with_two_papers_has_three_assertion_quads():
    r = ReviewArticle(
        doi_iri("10.9999/review"),
        reviews=(doi_iri("10.9999/p1"), doi_iri("10.9999/p2")),
    )
    np = review_to_nanopub(r, CREATOR, TS, BASE)
    assert len(np.assertion()) == 3
    assert validate(np).ok


def test_review_requires_papers():
    with pytest.raises(ModelError):
        ReviewArticle(doi_iri("10.9999/review"), reviews=())


def test_paper_with_no_claims_is_one_type_quad():
    p = ResearchPaper(doi_iri("10.9999/p1"))
    np = paper_to_nanopub(p, CREATOR, TS, BASE)
    assert len(np.assertion()) == 1
    assert np.assertion()[0].predicate == vocab.RDF_TYPE


def test_study_invariants():
    with pytest.raises(ModelError):
        Study(Iri("http://x/s#study"), overall_size=0, evidence_for=(AIDA_NS,))
    with pytest.raises(ModelError):
        Study(Iri("http://x/s#study"))  # no evidence at all
    s = Study(Iri("http://x/s#study"), evidence_for=(aida_to_iri("A claim."),))
    assert vocab.STUDY in s.classes


def test_relation_invariants():
    a = aida_to_iri("A claim.")
    b = aida_to_iri("B claim.")
    with pytest.raises(ModelError):
        StatementRelation(a, vocab.HAS_RELATED_MEANING, a, doi_iri("10.9999/x"))
    with pytest.raises(ModelError):
        StatementRelation(a, vocab.REVIEWS, b, doi_iri("10.9999/x"))


def test_relation_assertion_is_single_triple():
    rel = StatementRelation(
        aida_to_iri("A claim."),
        vocab.HAS_RELATED_MEANING,
        aida_to_iri("B claim."),
        doi_iri("10.9999/x"),
    )
    np = relation_to_nanopub(rel, CREATOR, TS, BASE, AIDA_NS)
    assert len(np.assertion()) == 1


def test_mint_iri_examples():
    parent = Iri("https://w3id.org/livingreviews/np/")
    assert mint_iri("study", parent).value == parent.value + "#study"
    assert mint_iri("study", parent, "1").value == parent.value + "#study"
    assert mint_iri("study", parent, "2").value == parent.value + "#study2"
    assert mint_iri("study", parent, "2") == mint_iri("study", parent, "2")


def test_mint_iri_uniqueness_sweep():
    parent = Iri("https://w3id.org/livingreviews/np/x")
    minted = {mint_iri("study", parent, str(i)).value for i in range(1, 10001)}
    assert len(minted) == 10000


@pytest.mark.parametrize(
    "name, expected_kind",
    [
        ("review-001.trig", "review"),
        ("paper-001.trig", "paper"),
        ("study-001.trig", "study"),
        ("relation-001.trig", "relation"),
    ],
)
def test_fixture_classification(name, expected_kind):
    np = from_trig((FIXTURES / name).read_text(encoding="utf-8"))
    assert classify(np) == expected_kind


@pytest.mark.parametrize(
    "name, rebuild",
    [
        (
            "review-001.trig",
            lambda np: review_to_nanopub(review_from_nanopub(np), CREATOR, np.created(), BASE),
        ),
        (
            "paper-001.trig",
            lambda np: paper_to_nanopub(paper_from_nanopub(np), CREATOR, np.created(), BASE, AIDA_NS),
        ),
        (
            "study-001.trig",
            lambda np: study_to_nanopub(
                study_from_nanopub(np),
                derived_from=Iri("https://doi.org/10.1177/1931243114546448"),
                creator=CREATOR,
                timestamp=np.created(),
                base=BASE,
                aida_namespace=AIDA_NS,
            ),
        ),
        (
            "relation-001.trig",
            lambda np: relation_to_nanopub(relation_from_nanopub(np), CREATOR, np.created(), BASE, AIDA_NS),
        ),
    ],
)
def test_fixture_round_trip_byte_identical(name, rebuild):
    original_text = (FIXTURES / name).read_text(encoding="utf-8")
    trusty = from_trig(original_text)
    pre = strip_trusty(trusty)
    rebuilt = make_trusty(rebuild(pre))
    assert to_trig(rebuilt) == original_text
    assert rebuilt.uri == trusty.uri


def test_study_fixture_field_values():
    np = from_trig((FIXTURES / "study-001.trig").read_text(encoding="utf-8"))
    s = study_from_nanopub(np)
    assert s.overall_size == 417
    assert s.country == Iri("http://dbpedia.org/resource/United_States")
    assert s.land_of_focus == Iri("http://dbpedia.org/resource/United_States")
    assert s.primary_object == "People"
    assert s.theoretical_approach == "Uses and gratifications"
    assert vocab.SURVEY in s.classes
    assert vocab.QUANTATITIVE_ANALYSIS in s.classes
    assert len(s.evidence_for) == 1
    assert s.evidence_for[0].value.endswith("opinion%20leaders.")


def test_round_trip_properties():
    rng = random.Random(60)
    for _ in range(50):
        r = random_review(rng)
        assert review_from_nanopub(review_to_nanopub(r, CREATOR, TS, BASE)) == r
        p = random_paper(rng)
        assert paper_from_nanopub(paper_to_nanopub(p, CREATOR, TS, BASE, AIDA_NS)) == p
        s = random_study(rng)
        np = study_to_nanopub(s, doi_iri("10.9999/src"), CREATOR, TS, BASE, AIDA_NS)
        assert study_from_nanopub(np) == s
        rel = random_relation(rng)
        assert relation_from_nanopub(relation_to_nanopub(rel, CREATOR, TS, BASE, AIDA_NS)) == rel


def test_metadata_round_trip():
    m = BibMetadata(
        doi=doi_iri("10.9999/p1"),
        title="A paper about news sharing",
        authors=(
            Author("Jane Doe", orcid=Iri("https://orcid.org/0000-0000-0000-0001")),
            Author("Sam Roe"),
        ),
        year=2015,
        venue="Journal of Examples",
    )
    np = metadata_to_nanopub(m, CREATOR, TS, BASE)
    assert metadata_from_nanopub(np) == m


def test_conflicting_type_quads_rejected():
    p = ResearchPaper(doi_iri("10.9999/p1"))
    np = paper_to_nanopub(p, CREATOR, TS, BASE)
    extra = Quad(p.iri, vocab.RDF_TYPE, vocab.REVIEW_ARTICLE, np.assertion_graph)
    from llr.nanopub import Nanopublication

    doubled = Nanopublication(np.uri, Dataset(list(np.data) + [extra], np.data.prefixes))
    with pytest.raises(ModelError):
        classify(doubled)


def test_unclassifiable_nanopub_rejected():
    from llr.nanopub import assemble

    np = assemble(
        [(Iri("http://example.org/x"), Iri("http://example.org/p"), Literal("y"))],
        derived_from=doi_iri("10.9999/x"),
        creator=CREATOR,
        timestamp=TS,
        base=BASE,
    )
    with pytest.raises(ModelError):
        classify(np)


def _brute_force_classify(np):
    """Oracle: scan every assertion quad for markers, independently of
    classify()'s shortcuts."""
    markers = []
    for quad in np.assertion():
        if quad.predicate == vocab.RDF_TYPE:
            if quad.object == vocab.REVIEW_ARTICLE:
                markers.append("review")
            elif quad.object == vocab.RESEARCH_PAPER:
                markers.append("paper")
            elif quad.object == vocab.STUDY:
                markers.append("study")
    if len(set(markers)) == 1:
        return markers[0]
    if len(set(markers)) > 1:
        return "error"
    assertion = np.assertion()
    if len(assertion) == 1 and assertion[0].predicate in vocab.RELATION_PREDICATES:
        return "relation"
    return "error"


def test_classification_agrees_with_brute_force_scan():
    rng = random.Random(61)
    for i in range(200):
        roll = rng.random()
        if roll < 0.25:
            np = review_to_nanopub(random_review(rng), CREATOR, TS, BASE)
        elif roll < 0.5:
            np = paper_to_nanopub(random_paper(rng), CREATOR, TS, BASE, AIDA_NS)
        elif roll < 0.75:
            np = study_to_nanopub(random_study(rng), doi_iri("10.9999/src"), CREATOR, TS, BASE, AIDA_NS)
        else:
            np = relation_to_nanopub(random_relation(rng), CREATOR, TS, BASE, AIDA_NS)
        expected = _brute_force_classify(np)
        assert expected != "error", f"generator produced unclassifiable nanopub {i}"
        assert classify(np) == expected
        value = from_nanopub(np)
        assert type(value).__name__ in {
            "review": "ReviewArticle",
            "paper": "ResearchPaper",
            "study": "Study",
            "relation": "StatementRelation",
        }[expected]


def test_no_stray_predicates_outside_registry():
    rng = random.Random(62)
    allowed = set(vocab.REGISTRY.values()) | {vocab.RDF_TYPE}
    nanopubs = [
        review_to_nanopub(random_review(rng), CREATOR, TS, BASE),
        paper_to_nanopub(random_paper(rng), CREATOR, TS, BASE, AIDA_NS),
        study_to_nanopub(random_study(rng), doi_iri("10.9999/src"), CREATOR, TS, BASE, AIDA_NS),
        relation_to_nanopub(random_relation(rng), CREATOR, TS, BASE, AIDA_NS),
        metadata_to_nanopub(
            BibMetadata(doi=doi_iri("10.9999/p1"), title="T", authors=(Author("A"),)),
            CREATOR,
            TS,
            BASE,
        ),
    ]
    for np in nanopubs:
        for quad in np.assertion():
            assert quad.predicate in allowed, quad.predicate.value
