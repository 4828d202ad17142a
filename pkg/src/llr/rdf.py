"""RDF terms, quads, datasets, and prefix maps.

All types are immutable and hashable. A Dataset deduplicates its quads and
keeps them in canonical order: quads sort by graph IRI, then by the N-Quads
rendering of subject, predicate, and object. Serializing the same quad set
therefore yields byte-identical output regardless of insertion order, which
is what the content hashing layer relies on.

Literals compare by lexical form plus datatype; no value-space normalization
is ever applied ("1" and "01" are distinct literals).
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_BAD_IRI_RE = re.compile(r'[\s<>"]')
_BNODE_LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")
_PREFIX_LABEL_RE = re.compile(r"^$|^[A-Za-z][A-Za-z0-9_\-]*$")
_LANGTAG_RE = re.compile(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$")


@dataclass(frozen=True, order=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI must be non-empty")
        if not _SCHEME_RE.match(self.value):
            raise ValueError(f"IRI has no scheme: {self.value!r}")
        if _BAD_IRI_RE.search(self.value):
            raise ValueError(f"IRI contains whitespace or <>\": {self.value!r}")

    def __str__(self) -> str:
        return self.value


RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
RDF_LANG_STRING = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#langString")
XSD_STRING = Iri("http://www.w3.org/2001/XMLSchema#string")
XSD_DATETIME = Iri("http://www.w3.org/2001/XMLSchema#dateTime")
XSD_INTEGER = Iri("http://www.w3.org/2001/XMLSchema#integer")
XSD_GYEAR = Iri("http://www.w3.org/2001/XMLSchema#gYear")


@dataclass(frozen=True)
class BlankNode:
    """A document-scoped blank node. Labels are preserved, never rewritten."""

    label: str

    def __post_init__(self) -> None:
        if not _BNODE_LABEL_RE.match(self.label):
            raise ValueError(f"blank node label must be alphanumeric/_: {self.label!r}")

    def __str__(self) -> str:
        return f"_:{self.label}"


@dataclass(frozen=True)
class Literal:
    """A literal with lexical form, datatype, and optional language tag.

    The datatype defaults to xsd:string; passing a language tag switches it
    to rdf:langString (the only datatype a tag is allowed with).
    """

    lexical: str
    datatype: Iri = XSD_STRING
    language: str | None = None

    def __post_init__(self) -> None:
        if self.language is not None:
            if not _LANGTAG_RE.match(self.language):
                raise ValueError(f"malformed language tag: {self.language!r}")
            if self.datatype == XSD_STRING:
                object.__setattr__(self, "datatype", RDF_LANG_STRING)
            elif self.datatype != RDF_LANG_STRING:
                raise ValueError("language tag requires the rdf:langString datatype")
        elif self.datatype == RDF_LANG_STRING:
            raise ValueError("rdf:langString literal requires a language tag")


Subject = Iri | BlankNode
Object = Iri | BlankNode | Literal


@dataclass(frozen=True)
class Quad:
    """One statement in a named graph. Nanopublications have no default-graph
    content, so the graph is always an IRI."""

    subject: Subject
    predicate: Iri
    object: Object
    graph: Iri

    def __post_init__(self) -> None:
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TypeError(f"quad subject must be Iri or BlankNode, got {type(self.subject).__name__}")
        if not isinstance(self.predicate, Iri):
            raise TypeError(f"quad predicate must be Iri, got {type(self.predicate).__name__}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise TypeError(f"quad object must be Iri, BlankNode or Literal, got {type(self.object).__name__}")
        if not isinstance(self.graph, Iri):
            raise TypeError("quad graph must be a named Iri")

    def triple(self) -> tuple[Subject, Iri, Object]:
        return (self.subject, self.predicate, self.object)


_ECHARS = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}
_ESCAPE_RE = re.compile(r'[\\"\n\r\t\b\f]')


def escape_string(s: str) -> str:
    """Escape a literal's lexical form for N-Quads / TriG output."""
    return _ESCAPE_RE.sub(lambda m: _ECHARS[m.group(0)], s)


def nq_term(term: Subject | Object) -> str:
    """Render one term in N-Quads syntax."""
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    out = f'"{escape_string(term.lexical)}"'
    if term.language is not None:
        return f"{out}@{term.language}"
    if term.datatype != XSD_STRING:
        return f"{out}^^<{term.datatype.value}>"
    return out


def quad_sort_key(q: Quad) -> tuple[str, str, str, str]:
    return (q.graph.value, nq_term(q.subject), nq_term(q.predicate), nq_term(q.object))


class PrefixMap(Mapping[str, Iri]):
    """Immutable mapping of prefix label to namespace IRI.

    Expansion of ``label:local`` is plain concatenation namespace + local.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[str, Iri] | Iterable[tuple[str, Iri]] = ()):
        items = dict(entries)
        for label, ns in items.items():
            if not _PREFIX_LABEL_RE.match(label):
                raise ValueError(f"bad prefix label: {label!r}")
            if not isinstance(ns, Iri):
                raise TypeError(f"namespace for {label!r} must be an Iri")
        self._entries: dict[str, Iri] = items

    def __getitem__(self, label: str) -> Iri:
        return self._entries[label]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"PrefixMap({self._entries!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PrefixMap):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    def with_entry(self, label: str, namespace: Iri) -> PrefixMap:
        merged = dict(self._entries)
        merged[label] = namespace
        return PrefixMap(merged)

    def merged(self, other: Mapping[str, Iri]) -> PrefixMap:
        merged = dict(self._entries)
        merged.update(other)
        return PrefixMap(merged)


class UnknownPrefixError(KeyError):
    pass


def expand(pm: Mapping[str, Iri], name: str) -> Iri:
    """Expand a ``prefix:local`` name against a prefix map."""
    prefix, sep, local = name.partition(":")
    if not sep:
        raise ValueError(f"not a prefixed name (no colon): {name!r}")
    try:
        ns = pm[prefix]
    except KeyError:
        raise UnknownPrefixError(f"unknown prefix {prefix!r} in {name!r}") from None
    return Iri(ns.value + local)


class Dataset:
    """A deduplicated, canonically ordered collection of quads plus the
    prefix map used to (re)serialize it.

    Equality and hashing consider only the quad set: prefixes are
    presentation metadata and never affect identity.
    """

    __slots__ = ("_quads", "_prefixes")

    def __init__(self, quads: Iterable[Quad] = (), prefixes: Mapping[str, Iri] | None = None):
        unique = dict.fromkeys(quads)
        self._quads: tuple[Quad, ...] = tuple(sorted(unique, key=quad_sort_key))
        if prefixes is None:
            self._prefixes = PrefixMap()
        elif isinstance(prefixes, PrefixMap):
            self._prefixes = prefixes
        else:
            self._prefixes = PrefixMap(prefixes)

    @property
    def quads(self) -> tuple[Quad, ...]:
        return self._quads

    @property
    def prefixes(self) -> PrefixMap:
        return self._prefixes

    def __iter__(self) -> Iterator[Quad]:
        return iter(self._quads)

    def __len__(self) -> int:
        return len(self._quads)

    def __contains__(self, quad: object) -> bool:
        return quad in self._quads

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Dataset):
            return self._quads == other._quads
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._quads)

    def __repr__(self) -> str:
        return f"Dataset({len(self._quads)} quads, {len(self._prefixes)} prefixes)"

    def graphs(self) -> tuple[Iri, ...]:
        seen: dict[Iri, None] = {}
        for q in self._quads:
            seen.setdefault(q.graph)
        return tuple(seen)

    def graph(self, graph: Iri) -> tuple[Quad, ...]:
        return tuple(q for q in self._quads if q.graph == graph)

    def match(
        self,
        subject: Subject | None = None,
        predicate: Iri | None = None,
        object: Object | None = None,
        graph: Iri | None = None,
    ) -> Iterator[Quad]:
        for q in self._quads:
            if subject is not None and q.subject != subject:
                continue
            if predicate is not None and q.predicate != predicate:
                continue
            if object is not None and q.object != object:
                continue
            if graph is not None and q.graph != graph:
                continue
            yield q

    def with_prefixes(self, prefixes: Mapping[str, Iri]) -> Dataset:
        return Dataset(self._quads, self._prefixes.merged(prefixes))


def to_nquads(d: Dataset) -> str:
    """Serialize to N-Quads: one newline-terminated line per quad, canonical
    order, absolute IRIs only."""
    return "".join(
        f"{nq_term(q.subject)} {nq_term(q.predicate)} {nq_term(q.object)} {nq_term(q.graph)} .\n"
        for q in d
    )
