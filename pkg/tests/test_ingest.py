import csv
import io
import os
import pathlib

import pytest

from llr import vocab
from llr.ingest import (
    ColumnMapping,
    FixtureDir,
    IngestError,
    LiveResolver,
    build_corpus,
    escaped_doi_filename,
    fetch_doi_metadata,
    ingest_study_table,
    load_gazetteer,
    parse_study_table,
    resolve_place,
)
from llr.model import doi_iri
from llr.queries import counts_by_kind
from llr.rdf import Iri
from llr.store import Corpus

ROOT = pathlib.Path(__file__).resolve().parent.parent
DOI_FIXTURES = FixtureDir(ROOT / "fixtures" / "doi")

CREATOR = Iri("https://w3id.org/livingreviews/agent/curator")
TS = "2021-11-01T00:00:00Z"

HEADER = (
    "paper_doi,study_ordinal,survey,quantitative,empirical,country,overall_size,"
    "first_author_origin,land_of_focus,primary_object,theoretical_approach,evidence,counter_evidence"
)


def table(*rows: str) -> io.StringIO:
    return io.StringIO("\n".join([HEADER, *rows]) + "\n")


def test_fetch_doi_metadata_from_fixture():
    bib = fetch_doi_metadata("10.1177/1931243114546448", DOI_FIXTURES)
    assert bib.year == 2015
    assert bib.venue == "Electronic News"
    assert bib.doi == doi_iri("10.1177/1931243114546448")


def test_fetch_doi_metadata_with_authors():
    bib = fetch_doi_metadata("10.9999/llr-demo.001", DOI_FIXTURES)
    assert [a.name for a in bib.authors] == ["Jane Doe", "Sam Roe"]
    assert bib.authors[0].orcid is not None
    assert bib.title == "Opinion leadership and news sharing on social network sites"


def test_fetch_rejects_malformed_doi_before_any_lookup():
    # the fixture directory does not even exist: validation must fire first
    missing = FixtureDir(ROOT / "no-such-dir")
    with pytest.raises(ValueError) as exc:
        fetch_doi_metadata("10.", missing)
    assert "not a valid DOI" in str(exc.value)


def test_fetch_unknown_doi_reports_missing_fixture():
    with pytest.raises(IngestError) as exc:
        fetch_doi_metadata("10.9999/never-captured", DOI_FIXTURES)
    assert "no metadata fixture" in str(exc.value)


def test_escaped_doi_filename():
    assert escaped_doi_filename("10.1177/1931243114546448") == "10.1177%2F1931243114546448.trig"


@pytest.mark.skipif(
    os.environ.get("LLR_NETWORK_TESTS") != "1",
    reason="set LLR_NETWORK_TESTS=1 to compare fixtures against the live resolver",
)
def test_live_and_fixture_sources_agree():
    live = LiveResolver()
    for doi, fields in {
        "10.1177/1931243114546448": ("year", "venue"),
        "10.1177/2056305115610141": ("year", "title"),
    }.items():
        from_fixture = fetch_doi_metadata(doi, DOI_FIXTURES)
        from_live = fetch_doi_metadata(doi, live)
        for field in fields:
            assert getattr(from_fixture, field) == getattr(from_live, field), (doi, field)


def test_gazetteer_resolves_known_countries():
    gazetteer = load_gazetteer()
    assert gazetteer["united states"] == Iri("http://dbpedia.org/resource/United_States")
    assert resolve_place("Germany") == Iri("http://dbpedia.org/resource/Germany")
    assert resolve_place("USA") == Iri("http://dbpedia.org/resource/United_States")


def test_gazetteer_miss_warns_and_falls_back_to_literal():
    warnings: list[str] = []
    value = resolve_place("Atlantis", warnings)
    assert value == "Atlantis"
    assert len(warnings) == 1 and "Atlantis" in warnings[0]


def test_two_rows_same_doi_group_into_one_paper():
    grouped = ingest_study_table(
        table(
            '10.9999/t.1,1,1,1,1,Germany,100,Germany,Germany,People,Trust,"Claim one holds.",',
            '10.9999/t.1,2,0,1,1,Germany,200,Germany,Germany,People,Trust,"Claim two holds.",',
        )
    )
    assert len(grouped) == 1
    paper, studies = grouped[0]
    assert paper.iri == doi_iri("10.9999/t.1")
    assert len(studies) == 2
    assert len(paper.claims) == 2
    assert vocab.SURVEY in studies[0].classes
    assert vocab.SURVEY not in studies[1].classes


def test_header_only_table_is_empty():
    assert ingest_study_table(table()) == []


def test_counter_evidence_only_row_is_valid():
    grouped = ingest_study_table(
        table('10.9999/t.2,1,0,1,1,Germany,50,Germany,Germany,People,Trust,,"Claim one holds."')
    )
    (_, studies), = grouped
    assert studies[0].counter_evidence_for
    assert not studies[0].evidence_for


def test_invalid_aida_sentence_rejects_row():
    with pytest.raises(IngestError) as exc:
        ingest_study_table(table('10.9999/t.3,1,1,1,1,,,,,,,"no capital letter.",'))
    assert "AIDA" in str(exc.value)


def test_duplicate_doi_ordinal_rejected():
    with pytest.raises(IngestError) as exc:
        ingest_study_table(
            table(
                '10.9999/t.4,1,1,1,1,,,,,,,"Claim one holds.",',
                '10.9999/t.4,1,1,1,1,,,,,,,"Claim two holds.",',
            )
        )
    assert "duplicate" in str(exc.value)


def test_missing_required_column():
    bad = io.StringIO("paper_doi,survey\n10.9999/t.5,1\n")
    with pytest.raises(IngestError) as exc:
        ingest_study_table(bad)
    assert "study_ordinal" in str(exc.value)


def test_tsv_detected_by_header():
    text = HEADER.replace(",", "\t") + "\n" + "\t".join(
        ["10.9999/t.6", "1", "1", "1", "1", "Germany", "100", "Germany", "Germany", "People", "Trust",
         "Claim one holds.", ""]
    ) + "\n"
    grouped = ingest_study_table(io.StringIO(text))
    assert len(grouped) == 1


def test_column_mapping_translates_headers():
    text = "doi,nr,evid\n10.9999/t.7,1,Claim one holds.\n"
    mapping = ColumnMapping({"paper_doi": "doi", "study_ordinal": "nr", "evidence": "evid"})
    grouped = ingest_study_table(io.StringIO(text), mapping)
    assert len(grouped) == 1
    assert grouped[0][1][0].evidence_for


def _random_table(rng) -> tuple[str, list[dict]]:
    rows = []
    for i in range(10):
        doi = f"10.9999/r.{rng.randint(1, 4)}"
        rows.append(
            {
                "paper_doi": doi,
                "study_ordinal": str(i + 1),
                "survey": rng.choice(["0", "1"]),
                "quantitative": "1",
                "empirical": "1",
                "country": rng.choice(["Germany", "United States", ""]),
                "overall_size": rng.choice(["", "100", "2000"]),
                "first_author_origin": "",
                "land_of_focus": "",
                "primary_object": f"Group {i}",
                "theoretical_approach": "",
                "evidence": f"Claim number {i + 1:02d} holds.",
                "counter_evidence": "",
            }
        )
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=HEADER.split(","))
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue(), rows


def test_grouping_matches_brute_force_oracle():
    import random

    rng = random.Random(11)
    text, raw_rows = _random_table(rng)
    grouped = ingest_study_table(io.StringIO(text))
    # oracle: group the raw dicts by DOI directly
    expected: dict[str, int] = {}
    for row in raw_rows:
        expected[row["paper_doi"]] = expected.get(row["paper_doi"], 0) + 1
    assert {p.iri.value.removeprefix("https://doi.org/") for p, _ in grouped} == set(expected)
    for paper, studies in grouped:
        key = paper.iri.value.removeprefix("https://doi.org/")
        assert len(studies) == expected[key]
    assert sum(len(s) for _, s in grouped) == 10


def _mini_tables():
    return [
        table(
            '10.9999/m.1,1,1,1,1,United States,1200,United States,United States,People,UG,"Claim one holds.|Claim two holds.",',
            '10.9999/m.1,2,0,1,1,United States,800,United States,United States,People,SC,"Claim three holds.",',
            '10.9999/m.2,1,1,1,1,Germany,,Germany,Germany,People,T,"Claim four holds.",',
            '10.9999/m.3,1,0,1,1,Germany,2000,Germany,Germany,People,H,"Claim five holds.",',
        )
    ]


def _mini_relations():
    from llr.model import StatementRelation
    from llr.aida import aida_to_iri

    return [
        StatementRelation(
            aida_to_iri("Claim one holds."),
            vocab.HAS_RELATED_MEANING,
            aida_to_iri("Claim two holds."),
            doi_iri("10.9999/m.1"),
        ),
        StatementRelation(
            aida_to_iri("Claim three holds."),
            vocab.HAS_CONFLICTING_MEANING,
            aida_to_iri("Claim four holds."),
            doi_iri("10.9999/m.2"),
        ),
    ]


def test_build_corpus_counts_add_up():
    build = build_corpus(
        doi_iri("10.9999/m.review"),
        _mini_tables(),
        _mini_relations(),
        creator=CREATOR,
        timestamp=TS,
    )
    census = counts_by_kind(Corpus.from_nanopubs(build.all_nanopubs()))
    assert census.review == 1
    assert census.doi_metadata == 3
    assert census.paper == 3
    assert census.study == 4
    assert census.relation == 2
    assert census.schema == len(vocab.SCHEMA_TERMS) == 19
    assert census.total == 1 + 3 + 3 + 4 + 2 + 19
    assert census.indexes == 1
    # the index lists every nanopub
    index = build.index
    from llr.nanopub import parse_index

    assert len(parse_index(index).elements) == len(build.nanopubs)


def test_build_corpus_zero_relations():
    build = build_corpus(
        doi_iri("10.9999/m.review"),
        _mini_tables(),
        [],
        creator=CREATOR,
        timestamp=TS,
    )
    census = counts_by_kind(Corpus.from_nanopubs(build.all_nanopubs()))
    assert census.relation == 0


def test_build_corpus_is_idempotent():
    kwargs = dict(creator=CREATOR, timestamp=TS)
    first = build_corpus(doi_iri("10.9999/m.review"), _mini_tables(), _mini_relations(), **kwargs)
    second = build_corpus(doi_iri("10.9999/m.review"), _mini_tables(), _mini_relations(), **kwargs)
    assert [np.uri.value for np in first.all_nanopubs()] == [np.uri.value for np in second.all_nanopubs()]


def test_build_corpus_each_study_in_exactly_one_paper():
    build = build_corpus(
        doi_iri("10.9999/m.review"),
        _mini_tables(),
        [],
        creator=CREATOR,
        timestamp=TS,
    )
    corpus = Corpus.from_nanopubs(build.all_nanopubs())
    claimed: dict[str, str] = {}
    for paper in corpus.papers.values():
        for study_iri in paper.studies:
            assert study_iri.value not in claimed, "study owned by two papers"
            claimed[study_iri.value] = paper.iri.value
    assert set(claimed) == set(corpus.studies)
    # every cdop:study target classifies as a study
    for study_iri in claimed:
        assert study_iri in corpus.studies
