"""Nanopublication containers, trusty URIs, and index nanopublications.

A nanopublication is four named graphs (head, assertion, provenance,
pubinfo) under one URI; graph IRIs are the nanopub URI plus a fragment
suffix (#head, #assertion, ...), matching the ``sub:`` convention.

Trusty URIs: the artifact code is "RA" followed by the base64url (no
padding) SHA-256 of the canonical N-Quads form, with every self-reference
(the nanopub URI itself, or any IRI under its ``#`` fragment space)
replaced by the fixed sentinel ``urn:np:placeholder`` at term level before
hashing. Term-level substitution keeps other URIs that merely share the
namespace (index elements, for instance) intact. The placeholder URI given
to assemble() becomes the base; the final URI is base + artifact code.
"""

from __future__ import annotations

import base64
import hashlib
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from datetime import datetime, timezone

from . import vocab
from .rdf import (
    XSD_DATETIME,
    BlankNode,
    Dataset,
    Iri,
    Literal,
    Object,
    Quad,
    Subject,
    nq_term,
)
from .validation import ValidationReport

TRUSTY_SENTINEL = "urn:np:placeholder"
ARTIFACT_CODE_RE = re.compile(r"RA[A-Za-z0-9_-]{43}$")

HEAD_SUFFIX = "#head"
ASSERTION_SUFFIX = "#assertion"
PROVENANCE_SUFFIX = "#provenance"
PUBINFO_SUFFIX = "#pubinfo"


class NanopubError(ValueError):
    pass


@dataclass(frozen=True)
class TrustyUri:
    """A content-addressed URI split into base and artifact code."""

    base: Iri
    artifact_code: str

    def __post_init__(self) -> None:
        if not ARTIFACT_CODE_RE.fullmatch(self.artifact_code):
            raise ValueError(f"bad artifact code: {self.artifact_code!r}")

    @property
    def uri(self) -> Iri:
        return Iri(self.base.value + self.artifact_code)

    @classmethod
    def split(cls, iri: Iri) -> TrustyUri | None:
        if len(iri.value) > 45 and ARTIFACT_CODE_RE.fullmatch(iri.value[-45:]):
            return cls(Iri(iri.value[:-45]), iri.value[-45:])
        return None


def is_trusty(iri: Iri) -> bool:
    return TrustyUri.split(iri) is not None


@dataclass(frozen=True)
class Nanopublication:
    uri: Iri
    data: Dataset

    @property
    def head_graph(self) -> Iri:
        return Iri(self.uri.value + HEAD_SUFFIX)

    @property
    def assertion_graph(self) -> Iri:
        return Iri(self.uri.value + ASSERTION_SUFFIX)

    @property
    def provenance_graph(self) -> Iri:
        return Iri(self.uri.value + PROVENANCE_SUFFIX)

    @property
    def pubinfo_graph(self) -> Iri:
        return Iri(self.uri.value + PUBINFO_SUFFIX)

    def assertion(self) -> tuple[Quad, ...]:
        return self.data.graph(self.assertion_graph)

    def provenance(self) -> tuple[Quad, ...]:
        return self.data.graph(self.provenance_graph)

    def pubinfo(self) -> tuple[Quad, ...]:
        return self.data.graph(self.pubinfo_graph)

    def artifact_code(self) -> str | None:
        split = TrustyUri.split(self.uri)
        return split.artifact_code if split else None

    def created(self) -> str | None:
        for q in self.pubinfo():
            if q.subject == self.uri and q.predicate == vocab.DCT_CREATED and isinstance(q.object, Literal):
                return q.object.lexical
        return None

    def creator(self) -> Iri | None:
        for q in self.pubinfo():
            if q.subject == self.uri and q.predicate == vocab.DCT_CREATOR and isinstance(q.object, Iri):
                return q.object
        return None


def format_instant(ts: datetime) -> str:
    """ISO-8601 UTC instant, second precision, trailing Z."""
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def assemble(
    assertion_quads: Sequence[tuple[Subject, Iri, Object]],
    derived_from: Iri,
    creator: Iri,
    timestamp: datetime | str,
    base: Iri,
    extra_prefixes: dict[str, Iri] | None = None,
    provenance_predicate: Iri = vocab.WAS_DERIVED_FROM,
) -> Nanopublication:
    """Build a structurally valid nanopub under the placeholder URI ``base``.

    The assertion triples land in <base#assertion>; provenance records the
    assertion as prov:wasDerivedFrom ``derived_from``; pubinfo carries
    creator and creation timestamp.
    """
    if not assertion_quads:
        raise NanopubError("assertion must not be empty")
    uri = base
    head = Iri(uri.value + HEAD_SUFFIX)
    assertion = Iri(uri.value + ASSERTION_SUFFIX)
    provenance = Iri(uri.value + PROVENANCE_SUFFIX)
    pubinfo = Iri(uri.value + PUBINFO_SUFFIX)
    created = timestamp if isinstance(timestamp, str) else format_instant(timestamp)

    quads = [
        Quad(uri, vocab.RDF_TYPE, vocab.NANOPUBLICATION, head),
        Quad(uri, vocab.HAS_ASSERTION, assertion, head),
        Quad(uri, vocab.HAS_PROVENANCE, provenance, head),
        Quad(uri, vocab.HAS_PUBLICATION_INFO, pubinfo, head),
    ]
    for s, p, o in assertion_quads:
        quads.append(Quad(s, p, o, assertion))
    quads.append(Quad(assertion, provenance_predicate, derived_from, provenance))
    quads.append(Quad(uri, vocab.DCT_CREATOR, creator, pubinfo))
    quads.append(Quad(uri, vocab.DCT_CREATED, Literal(created, datatype=XSD_DATETIME), pubinfo))

    prefixes = dict(vocab.default_prefixes())
    prefixes["this"] = uri
    prefixes["sub"] = Iri(uri.value + "#")
    if extra_prefixes:
        prefixes.update(extra_prefixes)
    return Nanopublication(uri, Dataset(quads, prefixes))


def validate(np: Nanopublication) -> ValidationReport:
    """Check every container invariant; violations are reported, not raised."""
    violations: list[str] = []
    expected = {
        "head": np.head_graph,
        "assertion": np.assertion_graph,
        "provenance": np.provenance_graph,
        "pubinfo": np.pubinfo_graph,
    }
    present = set(np.data.graphs())
    for name, graph in expected.items():
        if graph not in present:
            violations.append(f"{name} graph missing or empty")
    for graph in present:
        if graph not in expected.values():
            violations.append(f"unexpected graph {graph.value}")

    head = np.data.graph(np.head_graph)
    links = {
        (np.uri, vocab.RDF_TYPE, vocab.NANOPUBLICATION): "head does not type the nanopublication",
        (np.uri, vocab.HAS_ASSERTION, np.assertion_graph): "head does not link the assertion graph",
        (np.uri, vocab.HAS_PROVENANCE, np.provenance_graph): "head does not link the provenance graph",
        (np.uri, vocab.HAS_PUBLICATION_INFO, np.pubinfo_graph): "head does not link the pubinfo graph",
    }
    head_triples = {q.triple() for q in head}
    for triple, message in links.items():
        if triple not in head_triples:
            violations.append(message)

    if np.provenance_graph in present:
        if not any(q.subject == np.assertion_graph for q in np.provenance()):
            violations.append("provenance has no quad about the assertion graph")
    if np.pubinfo_graph in present:
        if not any(q.subject == np.uri for q in np.pubinfo()):
            violations.append("pubinfo has no quad about the nanopublication")
    return ValidationReport.collect(violations)


def _substitute(value: str, target: str, replacement: str) -> str | None:
    """Rewrite an IRI value when it is the target or lives in its fragment
    space; None when untouched."""
    if value == target:
        return replacement
    if value.startswith(target + "#"):
        return replacement + value[len(target):]
    return None


def _normalized_nquads(data: Dataset, target: Iri) -> str:
    """Canonical N-Quads with self-references replaced by the sentinel."""
    lines = []
    for q in data:
        rendered = []
        for term in (q.subject, q.predicate, q.object, q.graph):
            text = nq_term(term)
            if isinstance(term, Iri):
                replaced = _substitute(term.value, target.value, TRUSTY_SENTINEL)
                if replaced is not None:
                    text = f"<{replaced}>"
            rendered.append(text)
        lines.append(" ".join(rendered) + " .\n")
    return "".join(sorted(lines))


def _rewrite_dataset(data: Dataset, target: Iri, replacement: Iri) -> Dataset:
    def rewrite_term(term):
        if isinstance(term, Iri):
            replaced = _substitute(term.value, target.value, replacement.value)
            if replaced is not None:
                return Iri(replaced)
        return term

    quads = [
        Quad(rewrite_term(q.subject), rewrite_term(q.predicate), rewrite_term(q.object), rewrite_term(q.graph))
        for q in data
    ]
    prefixes = {}
    for label, ns in data.prefixes.items():
        replaced = _substitute(ns.value, target.value, replacement.value)
        prefixes[label] = Iri(replaced) if replaced is not None else ns
    return Dataset(quads, prefixes)


def compute_artifact_code(data: Dataset, target: Iri) -> str:
    digest = hashlib.sha256(_normalized_nquads(data, target).encode("utf-8")).digest()
    return "RA" + base64.urlsafe_b64encode(digest).decode("ascii").rstrip("=")


def make_trusty(np: Nanopublication) -> Nanopublication:
    """Compute the artifact code and rewrite all self-references to the final
    content-addressed URI. The result verifies."""
    report = validate(np)
    if not report.ok:
        raise NanopubError("cannot make an invalid nanopub trusty: " + "; ".join(report.violations))
    if is_trusty(np.uri):
        raise NanopubError(f"nanopub URI already carries an artifact code: {np.uri.value}")
    code = compute_artifact_code(np.data, np.uri)
    final = Iri(np.uri.value + code)
    return Nanopublication(final, _rewrite_dataset(np.data, np.uri, final))


def verify_trusty(np: Nanopublication) -> bool:
    """True iff re-hashing the content reproduces the URI's artifact code."""
    split = TrustyUri.split(np.uri)
    if split is None:
        return False
    return compute_artifact_code(np.data, np.uri) == split.artifact_code


def strip_trusty(np: Nanopublication) -> Nanopublication:
    """Inverse of make_trusty: rewrite self-references back to the base URI."""
    split = TrustyUri.split(np.uri)
    if split is None:
        raise NanopubError(f"not a trusty nanopub: {np.uri.value}")
    return Nanopublication(split.base, _rewrite_dataset(np.data, np.uri, split.base))


def from_dataset(data: Dataset) -> Nanopublication:
    """Recover the nanopub whose four graphs make up ``data``."""
    uris = [
        q.subject
        for q in data
        if q.predicate == vocab.RDF_TYPE
        and q.object == vocab.NANOPUBLICATION
        and isinstance(q.subject, Iri)
        and q.graph.value == q.subject.value + HEAD_SUFFIX
    ]
    if len(uris) != 1:
        raise NanopubError(f"expected exactly one nanopublication head, found {len(uris)}")
    return Nanopublication(uris[0], data)


def from_trig(text: str) -> Nanopublication:
    from .trig import parse_trig

    return from_dataset(parse_trig(text))


def to_trig(np: Nanopublication) -> str:
    from .trig import serialize_trig

    return serialize_trig(np.data)


@dataclass(frozen=True)
class NanopubIndex:
    """An index nanopub's payload: the element set and its predecessor."""

    uri: Iri
    elements: tuple[Iri, ...]
    supersedes: Iri | None = None

    def __post_init__(self) -> None:
        if not self.elements:
            raise NanopubError("index must list at least one element")


def build_index(
    elements: Sequence[Iri],
    supersedes: Iri | None,
    creator: Iri,
    timestamp: datetime | str,
    base: Iri,
) -> Nanopublication:
    """Build (and make trusty) an index nanopub enumerating ``elements``."""
    if not elements:
        raise NanopubError("index must list at least one element")
    for element in elements:
        if not is_trusty(element):
            raise NanopubError(f"index element is not trusty: {element.value}")
    triples: list[tuple[Subject, Iri, Object]] = [(base, vocab.RDF_TYPE, vocab.NANOPUB_INDEX)]
    for element in elements:
        triples.append((base, vocab.INCLUDES_ELEMENT, element))
    if supersedes is not None:
        triples.append((base, vocab.SUPERSEDES, supersedes))
    np = assemble(
        triples,
        derived_from=creator,
        creator=creator,
        timestamp=timestamp,
        base=base,
        provenance_predicate=vocab.WAS_ATTRIBUTED_TO,
    )
    return make_trusty(np)


def parse_index(np: Nanopublication) -> NanopubIndex:
    elements = []
    supersedes = None
    is_index = False
    for q in np.assertion():
        if q.subject != np.uri:
            continue
        if q.predicate == vocab.RDF_TYPE and q.object == vocab.NANOPUB_INDEX:
            is_index = True
        elif q.predicate == vocab.INCLUDES_ELEMENT and isinstance(q.object, Iri):
            elements.append(q.object)
        elif q.predicate == vocab.SUPERSEDES and isinstance(q.object, Iri):
            supersedes = q.object
    if not is_index:
        raise NanopubError(f"not an index nanopublication: {np.uri.value}")
    return NanopubIndex(np.uri, tuple(sorted(elements, key=lambda i: i.value)), supersedes)


def resolve_latest(indexes: Iterable[NanopubIndex]) -> NanopubIndex:
    """Walk supersedes links to the newest index of a chain."""
    chain = list(indexes)
    if not chain:
        raise NanopubError("no indexes to resolve")
    superseded = {idx.supersedes.value for idx in chain if idx.supersedes is not None}
    heads = [idx for idx in chain if idx.uri.value not in superseded]
    if len(heads) != 1:
        raise NanopubError(f"expected exactly one chain head, found {len(heads)}")
    return heads[0]


def index_chain(indexes: Iterable[NanopubIndex]) -> list[NanopubIndex]:
    """Order a set of indexes oldest to newest along supersedes links."""
    by_uri = {idx.uri.value: idx for idx in indexes}
    latest = resolve_latest(by_uri.values())
    ordered = [latest]
    while ordered[-1].supersedes is not None:
        prev = by_uri.get(ordered[-1].supersedes.value)
        if prev is None:
            raise NanopubError(f"broken supersedes chain at {ordered[-1].supersedes.value}")
        ordered.append(prev)
    if len(ordered) != len(by_uri):
        raise NanopubError("indexes do not form a single chain")
    ordered.reverse()
    return ordered
