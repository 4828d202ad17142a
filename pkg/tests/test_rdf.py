import random

import pytest

from llr.rdf import (
    RDF_LANG_STRING,
    XSD_STRING,
    BlankNode,
    Dataset,
    Iri,
    Literal,
    PrefixMap,
    Quad,
    UnknownPrefixError,
    expand,
    to_nquads,
)

from .generators import random_dataset

G = Iri("http://example.org/g")
P = Iri("http://example.org/p")
S = Iri("http://example.org/s")


def test_iri_requires_scheme():
    Iri("urn:uuid:1234")
    Iri("https://doi.org/10.1177/2056305115610141")
    with pytest.raises(ValueError):
        Iri("")
    with pytest.raises(ValueError):
        Iri("no-scheme-here")
    with pytest.raises(ValueError):
        Iri("http://example.org/with space")
    with pytest.raises(ValueError):
        Iri('http://example.org/qu"ote')
    with pytest.raises(ValueError):
        Iri("http://example.org/<a>")


def test_blank_node_label():
    BlankNode("b0")
    BlankNode("study_1")
    with pytest.raises(ValueError):
        BlankNode("")
    with pytest.raises(ValueError):
        BlankNode("a-b")


def test_literal_datatype_default():
    lit = Literal("417")
    assert lit.datatype == XSD_STRING
    assert lit.language is None


def test_literal_language_switches_datatype():
    lit = Literal("hallo", language="de")
    assert lit.datatype == RDF_LANG_STRING
    with pytest.raises(ValueError):
        Literal("x", datatype=Iri("http://www.w3.org/2001/XMLSchema#integer"), language="en")
    with pytest.raises(ValueError):
        Literal("x", datatype=RDF_LANG_STRING)


def test_literal_compares_by_lexical_form():
    assert Literal("1") != Literal("01")
    assert Literal("1") != Literal("1", datatype=Iri("http://www.w3.org/2001/XMLSchema#integer"))


def test_quad_graph_must_be_named():
    with pytest.raises(TypeError):
        Quad(S, P, S, BlankNode("g"))
    with pytest.raises(TypeError):
        Quad(Literal("x"), P, S, G)


def test_dataset_dedupes_and_sorts():
    q1 = Quad(S, P, Literal("a"), G)
    q2 = Quad(S, P, Literal("b"), G)
    d = Dataset([q2, q1, q2, q1])
    assert len(d) == 2
    assert d.quads == (q1, q2)


def test_dataset_insertion_order_never_observable():
    rng = random.Random(7)
    d = random_dataset(rng)
    quads = list(d.quads)
    for seed in range(5):
        random.Random(seed).shuffle(quads)
        assert Dataset(quads, d.prefixes) == d
        assert Dataset(quads).quads == d.quads


def test_dataset_equality_ignores_prefixes():
    q = Quad(S, P, S, G)
    assert Dataset([q]) == Dataset([q], {"ex": Iri("http://example.org/")})


def test_expand_table_namespaces():
    pm = PrefixMap(
        {
            "cito": Iri("http://purl.org/spar/cito/"),
            "llr": Iri("https://w3id.org/livingreviews/vocab/"),
        }
    )
    assert expand(pm, "cito:reviews") == Iri("http://purl.org/spar/cito/reviews")
    assert expand(pm, "llr:providesEvidenceFor") == Iri(
        "https://w3id.org/livingreviews/vocab/providesEvidenceFor"
    )


def test_expand_empty_prefix():
    pm = PrefixMap({"": Iri("http://example.org/ns/")})
    assert expand(pm, ":x") == Iri("http://example.org/ns/x")


def test_expand_unknown_prefix():
    with pytest.raises(UnknownPrefixError):
        expand(PrefixMap(), "cito:reviews")


def test_to_nquads_empty():
    assert to_nquads(Dataset()) == ""


def test_to_nquads_single_quad_single_line():
    out = to_nquads(Dataset([Quad(S, P, Literal("x\ny"), G)]))
    assert out.count("\n") == 1
    assert out.endswith(" .\n")
    assert '"x\\ny"' in out


def _naive_nquads(d: Dataset) -> str:
    """Independent line emitter: renders terms with its own table, sorts
    whole lines grouped by graph first."""

    def term(t):
        if isinstance(t, Iri):
            return "<" + t.value + ">"
        if isinstance(t, BlankNode):
            return "_:" + t.label
        body = ""
        for ch in t.lexical:
            body += {
                "\\": "\\\\",
                '"': '\\"',
                "\n": "\\n",
                "\r": "\\r",
                "\t": "\\t",
                "\b": "\\b",
                "\f": "\\f",
            }.get(ch, ch)
        out = '"' + body + '"'
        if t.language:
            return out + "@" + t.language
        if t.datatype.value != "http://www.w3.org/2001/XMLSchema#string":
            return out + "^^<" + t.datatype.value + ">"
        return out

    entries = []
    for q in d.quads:
        entries.append(
            (
                q.graph.value,
                term(q.subject) + " " + term(q.predicate) + " " + term(q.object),
                term(q.graph),
            )
        )
    entries.sort(key=lambda e: (e[0], e[1]))
    return "".join(f"{spo} {g} .\n" for _, spo, g in entries)


def test_to_nquads_matches_naive_emitter():
    rng = random.Random(20210)
    for i in range(200):
        d = random_dataset(rng)
        assert to_nquads(d) == _naive_nquads(d), f"disagreement on dataset {i}"
