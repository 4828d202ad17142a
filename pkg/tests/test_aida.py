import random
import urllib.parse

import pytest

from llr.aida import (
    DEFAULT_AIDA_NAMESPACE,
    AidaError,
    AidaStatement,
    aida_from_iri,
    aida_to_iri,
    percent_decode,
    percent_encode,
    validate_aida,
)
from llr.rdf import Iri

from .generators import random_sentence

OPINION_LEADERS = "People who share news in social media tend to perceive themselves as opinion leaders."


def test_opinion_leader_sentence_encoding():
    iri = aida_to_iri(AidaStatement(OPINION_LEADERS))
    assert iri.value == (
        DEFAULT_AIDA_NAMESPACE.value
        + "People%20who%20share%20news%20in%20social%20media%20tend%20to"
        + "%20perceive%20themselves%20as%20opinion%20leaders."
    )
    assert aida_from_iri(iri).text == OPINION_LEADERS


def test_reserved_character_table():
    iri = aida_to_iri(AidaStatement("People's habits, like sharing."))
    assert "%27" in iri.value  # apostrophe
    assert "%2C" in iri.value  # comma
    assert "%20" in iri.value  # space
    assert iri.value.endswith("sharing.")  # unreserved '.' untouched


def test_minimal_sentence():
    iri = aida_to_iri(AidaStatement("A."))
    assert iri.value == DEFAULT_AIDA_NAMESPACE.value + "A."


def test_custom_namespace():
    ns = Iri("https://statements.test/aida/")
    iri = aida_to_iri(AidaStatement("A."), namespace=ns)
    assert iri.value.startswith(ns.value)
    assert aida_from_iri(iri, namespace=ns).text == "A."


def test_wrong_namespace_rejected():
    iri = Iri("https://other.test/Hello.")
    with pytest.raises(AidaError):
        aida_from_iri(iri)


def test_decoded_text_must_be_valid():
    with pytest.raises(AidaError):
        aida_from_iri(Iri(DEFAULT_AIDA_NAMESPACE.value + "Hello"))  # no period


def test_malformed_percent_escape():
    with pytest.raises(AidaError):
        percent_decode("broken%2")
    with pytest.raises(AidaError):
        percent_decode("broken%zz")
    with pytest.raises(AidaError):
        aida_from_iri(Iri(DEFAULT_AIDA_NAMESPACE.value + "Hi%2"))


def test_validate_aida_reports():
    assert validate_aida(OPINION_LEADERS).ok
    assert len(validate_aida("")) == 3
    assert len(validate_aida("lowercase start is wrong.")) == 1
    assert not validate_aida("No terminal period").ok
    assert not validate_aida("Two periods..").ok
    assert not validate_aida("Line\nbreak.").ok
    assert validate_aida("417 respondents shared news.").ok


def test_statement_constructor_enforces_invariants():
    with pytest.raises(AidaError):
        AidaStatement("no capital.")
    with pytest.raises(AidaError):
        AidaStatement("")


def test_round_trip_1000_with_codec_oracle():
    rng = random.Random(31337)
    for i in range(1000):
        sentence = random_sentence(rng)
        iri = aida_to_iri(AidaStatement(sentence))
        # oracle: the stdlib codec agrees on both directions
        encoded = iri.value[len(DEFAULT_AIDA_NAMESPACE.value):]
        assert encoded == urllib.parse.quote(sentence, safe=""), f"case {i}: {sentence!r}"
        assert urllib.parse.unquote(encoded) == sentence
        assert aida_from_iri(iri).text == sentence, f"case {i}"


def test_distinct_sentences_distinct_iris():
    rng = random.Random(404)
    seen = {}
    for _ in range(500):
        s = random_sentence(rng)
        iri = aida_to_iri(AidaStatement(s))
        if iri.value in seen:
            assert seen[iri.value] == s
        seen[iri.value] = s
    decoded = {percent_decode(v[len(DEFAULT_AIDA_NAMESPACE.value):]) for v in seen}
    assert len(decoded) == len(seen)


def test_frontend_parity_fixture_matches_server_validator():
    import json
    import pathlib

    path = pathlib.Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures" / "aida-cases.json"
    cases = json.loads(path.read_text(encoding="utf-8"))
    assert len(cases) == 20
    for case in cases:
        assert list(validate_aida(case["text"]).violations) == case["violations"], case["text"]
