"""In-memory quad store over a nanopublication corpus.

A Corpus is immutable after load: per-graph SPO/POS/OSP indexes, a
graph-to-nanopub map, a kind per nanopublication, and typed views (papers,
studies, relations, metadata) extracted once. Updates never mutate a
Corpus; the living-document layer builds a fresh snapshot per version.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from enum import Enum

from . import model, vocab
from .model import BibMetadata, ModelError, ResearchPaper, ReviewArticle, StatementRelation, Study
from .nanopub import NanopubIndex, Nanopublication, parse_index
from .rdf import Iri, Literal, Object, Quad, Subject


class StoreError(ValueError):
    pass


class NanopubKind(Enum):
    REVIEW = "review"
    DOI_METADATA = "doi_metadata"
    PAPER = "paper"
    STUDY = "study"
    RELATION = "relation"
    SCHEMA = "schema"
    REVISION = "revision"
    INDEX = "index"


_BIB_PREDICATES = (
    vocab.DCT_TITLE,
    vocab.DCT_IDENTIFIER,
    vocab.DCT_CREATOR,
    vocab.DCT_DATE,
    vocab.DCT_IS_PART_OF,
)


def classify_kind(np: Nanopublication) -> NanopubKind:
    """Total classifier over the corpus kinds, index and revision included."""
    assertion = np.assertion()
    for q in assertion:
        if q.predicate == vocab.RDF_TYPE and q.object == vocab.NANOPUB_INDEX:
            return NanopubKind.INDEX
    for q in assertion:
        if q.predicate == vocab.RDF_TYPE and q.object in (vocab.RDFS_CLASS, vocab.RDF_PROPERTY):
            return NanopubKind.SCHEMA
    for q in assertion:
        if q.predicate == vocab.HAS_CURRENT_VALUE or (
            q.predicate == vocab.RDF_TYPE and q.object == vocab.FRAGMENT_REVISION
        ):
            return NanopubKind.REVISION
    try:
        return NanopubKind(model.classify(np))
    except ModelError:
        pass
    for q in assertion:
        if (
            q.predicate in _BIB_PREDICATES
            and isinstance(q.subject, Iri)
            and model.is_doi_uri(q.subject)
        ):
            return NanopubKind.DOI_METADATA
    raise StoreError(f"unclassifiable nanopublication: {np.uri.value}")


class QuadStore:
    """Per-graph SPO/POS/OSP indexes; every match pattern reduces to an
    indexed scan."""

    def __init__(self) -> None:
        self._spo: dict[Iri, dict] = defaultdict(lambda: defaultdict(lambda: defaultdict(set)))
        self._pos: dict[Iri, dict] = defaultdict(lambda: defaultdict(lambda: defaultdict(set)))
        self._osp: dict[Iri, dict] = defaultdict(lambda: defaultdict(lambda: defaultdict(set)))
        self._count = 0

    def add(self, quad: Quad) -> None:
        s, p, o, g = quad.subject, quad.predicate, quad.object, quad.graph
        if o not in self._spo[g][s][p]:
            self._spo[g][s][p].add(o)
            self._pos[g][p][o].add(s)
            self._osp[g][o][s].add(p)
            self._count += 1

    def __len__(self) -> int:
        return self._count

    def match(
        self,
        subject: Subject | None = None,
        predicate: Iri | None = None,
        object: Object | None = None,
        graph: Iri | None = None,
    ) -> Iterator[Quad]:
        graphs = [graph] if graph is not None else list(self._spo)
        for g in graphs:
            if g not in self._spo:
                continue
            if subject is not None:
                by_p = self._spo[g].get(subject)
                if not by_p:
                    continue
                preds = [predicate] if predicate is not None else list(by_p)
                for p in preds:
                    for o in by_p.get(p, ()):
                        if object is None or o == object:
                            yield Quad(subject, p, o, g)
            elif predicate is not None:
                by_o = self._pos[g].get(predicate)
                if not by_o:
                    continue
                objs = [object] if object is not None else list(by_o)
                for o in objs:
                    for s in by_o.get(o, ()):
                        yield Quad(s, predicate, o, g)
            elif object is not None:
                by_s = self._osp[g].get(object)
                if not by_s:
                    continue
                for s, preds in by_s.items():
                    for p in preds:
                        yield Quad(s, p, object, g)
            else:
                for s, by_p in self._spo[g].items():
                    for p, objs in by_p.items():
                        for o in objs:
                            yield Quad(s, p, o, g)


@dataclass(frozen=True)
class Revision:
    """A revise-fragment nanopub's payload."""

    fragment: Iri
    value: str
    created: str
    artifact_code: str


@dataclass(frozen=True)
class Corpus:
    nanopubs: dict[str, Nanopublication]
    kinds: dict[str, NanopubKind]
    store: QuadStore
    graph_owner: dict[str, str]
    reviews: tuple[ReviewArticle, ...]
    papers: dict[str, ResearchPaper]
    studies: dict[str, Study]
    relations: tuple[StatementRelation, ...]
    metadata: dict[str, BibMetadata]
    revisions: tuple[Revision, ...]
    indexes: dict[str, NanopubIndex]
    study_source: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_nanopubs(cls, nanopubs: Iterable[Nanopublication]) -> Corpus:
        registry: dict[str, Nanopublication] = {}
        kinds: dict[str, NanopubKind] = {}
        store = QuadStore()
        graph_owner: dict[str, str] = {}
        reviews: list[ReviewArticle] = []
        papers: dict[str, ResearchPaper] = {}
        studies: dict[str, Study] = {}
        relations: list[StatementRelation] = []
        metadata: dict[str, BibMetadata] = {}
        revisions: list[Revision] = []
        indexes: dict[str, NanopubIndex] = {}
        study_source: dict[str, str] = {}

        for np in nanopubs:
            if np.uri.value in registry:
                raise StoreError(f"duplicate nanopublication {np.uri.value}")
            registry[np.uri.value] = np
            kind = classify_kind(np)
            kinds[np.uri.value] = kind
            for quad in np.data:
                if quad.graph.value in graph_owner and graph_owner[quad.graph.value] != np.uri.value:
                    raise StoreError(f"graph {quad.graph.value} claimed by two nanopubs")
                graph_owner[quad.graph.value] = np.uri.value
                store.add(quad)
            if kind is NanopubKind.REVIEW:
                reviews.append(model.review_from_nanopub(np))
            elif kind is NanopubKind.PAPER:
                paper = model.paper_from_nanopub(np)
                papers[paper.iri.value] = paper
            elif kind is NanopubKind.STUDY:
                study = model.study_from_nanopub(np)
                studies[study.iri.value] = study
                for q in np.provenance():
                    if q.predicate == vocab.WAS_DERIVED_FROM and isinstance(q.object, Iri):
                        study_source[study.iri.value] = q.object.value
            elif kind is NanopubKind.RELATION:
                relations.append(model.relation_from_nanopub(np))
            elif kind is NanopubKind.DOI_METADATA:
                bib = model.metadata_from_nanopub(np)
                if bib.doi is not None:
                    metadata[bib.doi.value] = bib
            elif kind is NanopubKind.REVISION:
                revisions.append(_parse_revision(np))
            elif kind is NanopubKind.INDEX:
                indexes[np.uri.value] = parse_index(np)

        # join bibliographic records onto their papers
        for doi, bib in metadata.items():
            if doi in papers:
                p = papers[doi]
                papers[doi] = ResearchPaper(p.iri, p.claims, p.studies, metadata=bib)

        return cls(
            nanopubs=registry,
            kinds=kinds,
            store=store,
            graph_owner=graph_owner,
            reviews=tuple(reviews),
            papers=papers,
            studies=studies,
            relations=tuple(relations),
            metadata=metadata,
            revisions=tuple(revisions),
            indexes=indexes,
            study_source=study_source,
        )

    def __len__(self) -> int:
        return len(self.nanopubs)

    def studies_of_paper(self, paper: ResearchPaper) -> list[Study]:
        """A paper's studies: its cdop:study targets plus any later-added
        study whose nanopub derives from the paper."""
        found: dict[str, Study] = {}
        for iri in paper.studies:
            if iri.value in self.studies:
                found[iri.value] = self.studies[iri.value]
        for study_iri, source in self.study_source.items():
            if source == paper.iri.value and study_iri in self.studies:
                found[study_iri] = self.studies[study_iri]
        return list(found.values())

    def paper_of_study(self, study: Study) -> ResearchPaper | None:
        for paper in self.papers.values():
            if study.iri in paper.studies:
                return paper
        source = self.study_source.get(study.iri.value)
        if source is not None and source in self.papers:
            return self.papers[source]
        return None


def _parse_revision(np: Nanopublication) -> Revision:
    fragment = None
    value = None
    for q in np.assertion():
        if q.predicate == vocab.REVISES_FRAGMENT and isinstance(q.object, Iri):
            fragment = q.object
        elif q.predicate == vocab.HAS_CURRENT_VALUE and isinstance(q.object, Literal):
            value = q.object.lexical
    if fragment is None or value is None:
        raise StoreError(f"malformed revision nanopub {np.uri.value}")
    return Revision(
        fragment=fragment,
        value=value,
        created=np.created() or "",
        artifact_code=np.artifact_code() or "",
    )
