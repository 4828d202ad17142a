"""Build a publishable release from a build manifest.

The manifest (JSON) names the review DOI, study tables, a relations CSV,
document templates, and optionally a metadata fixture directory, plus the
creator and timestamp that pin the release's trusty URIs. Building resolves
every document fragment's publication value against the freshly built
corpus; a metric or citation anchor whose text does not match the computed
value is an error, because the published prose would contradict the data.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .config import Config
from .ingest import CorpusBuild, FixtureDir, IngestError, MetadataSource, build_corpus
from .livingdoc import (
    Fragment,
    LivingDocument,
    RELATION_NAMES,
    citation_list_value,
    evaluate_metric,
    load_document,
)
from .model import StatementRelation, doi_iri
from .rdf import Iri
from .store import Corpus


class ReleaseError(ValueError):
    pass


@dataclass(frozen=True)
class Release:
    build: CorpusBuild
    documents: tuple[LivingDocument, ...]
    warnings: tuple[str, ...]


def load_relations_csv(path: str | Path, aida_namespace: Iri) -> list[StatementRelation]:
    from .aida import aida_to_iri

    relations = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row_num, record in enumerate(csv.DictReader(fh), start=2):
            name = (record.get("relation") or "").strip()
            relation = RELATION_NAMES.get(name)
            if relation is None:
                try:
                    relation = Iri(name)
                except ValueError:
                    raise ReleaseError(f"relations row {row_num}: unknown relation {name!r}") from None
            source = (record.get("source_doi") or "").strip()
            relations.append(
                StatementRelation(
                    subject=aida_to_iri(record["subject"].strip(), aida_namespace),
                    relation=relation,
                    object=aida_to_iri(record["object"].strip(), aida_namespace),
                    derived_from=doi_iri(source),
                )
            )
    return relations


def _resolve_fragment_values(doc: LivingDocument, corpus: Corpus) -> LivingDocument:
    """Pin every fragment's publication value; computed fragments must match
    their anchored text."""
    fragments = []
    for fragment in doc.fragments:
        anchored = doc.anchored_text(fragment)
        if fragment.kind == "metric":
            computed = evaluate_metric(fragment.binding, corpus)
            if computed != anchored:
                raise ReleaseError(
                    f"fragment {fragment.id}: document says {anchored!r} but the corpus computes {computed!r}"
                )
            value = computed
        elif fragment.kind == "citation-list":
            computed = citation_list_value(corpus)
            if computed != anchored:
                raise ReleaseError(
                    f"fragment {fragment.id}: document says {anchored!r} but the corpus computes {computed!r}"
                )
            value = computed
        else:
            value = anchored
        fragments.append(
            Fragment(fragment.id, fragment.anchor, fragment.kind, fragment.binding, value)
        )
    return LivingDocument(
        id=doc.id,
        title=doc.title,
        review=doc.review,
        sections=doc.sections,
        fragments=tuple(fragments),
        version_index=doc.version_index,
        authors=doc.authors,
    )


def build_release(manifest_path: str | Path, config: Config) -> Release:
    manifest_path = Path(manifest_path)
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    root = manifest_path.parent

    review_doi = doi_iri(manifest["review_doi"])
    tables = [root / t for t in manifest.get("studies", ())]
    if not tables:
        raise ReleaseError("manifest names no study tables")
    relations = []
    if manifest.get("relations"):
        relations = load_relations_csv(root / manifest["relations"], config.aida_iri)

    metadata_source: MetadataSource | None = None
    if manifest.get("metadata_fixtures"):
        metadata_source = FixtureDir((root / manifest["metadata_fixtures"]).resolve())
    elif manifest.get("metadata_live"):
        from .ingest import LiveResolver

        metadata_source = LiveResolver(config.resolver_endpoint, config.resolver_timeout)

    creator = Iri(manifest.get("creator", config.creator))
    timestamp = manifest.get("timestamp")
    if not timestamp:
        raise ReleaseError("manifest needs an explicit timestamp (release URIs must be reproducible)")

    warnings: list[str] = []
    build = build_corpus(
        review_doi,
        tables,
        relations,
        creator=creator,
        timestamp=timestamp,
        base=config.np_base,
        aida_namespace=config.aida_iri,
        metadata_source=metadata_source,
        warnings=warnings,
    )

    corpus = Corpus.from_nanopubs(build.all_nanopubs())
    documents = []
    for name in manifest.get("documents", ()):
        doc = load_document(root / name)
        if doc.review != review_doi:
            raise ReleaseError(f"document {doc.id} is about {doc.review.value}, not {review_doi.value}")
        doc = _resolve_fragment_values(doc, corpus)
        documents.append(
            LivingDocument(
                id=doc.id,
                title=doc.title,
                review=doc.review,
                sections=doc.sections,
                fragments=doc.fragments,
                version_index=build.index.uri.value,
                authors=doc.authors,
            )
        )
    return Release(build, tuple(documents), tuple(warnings))
