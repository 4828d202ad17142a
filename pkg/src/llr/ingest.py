"""External data intake: DOI metadata retrieval and study-table ingestion.

DOI metadata comes either from a live resolver (content-negotiated CSL JSON)
or from an offline fixture directory of TriG snapshots under
``fixtures/doi/<percent-escaped-doi>.trig`` — both paths produce the same
BibMetadata.

Study tables are CSV or TSV (UTF-8, RFC-4180 quoting) with one study per
row. Country names resolve to DBpedia resource IRIs through the bundled
gazetteer; unmapped names are kept as plain literals and reported as
warnings, never as failures. Evidence cells hold one or more sentences
separated by '|'; every sentence must pass the AIDA surface rules or the
row is rejected.
"""

from __future__ import annotations

import csv
import importlib.resources
import io
import json
import logging
import urllib.parse
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

import httpx

from . import vocab
from .aida import DEFAULT_AIDA_NAMESPACE, aida_to_iri, validate_aida
from .model import (
    Author,
    BibMetadata,
    ResearchPaper,
    StatementRelation,
    Study,
    bib_from_quads,
    doi_iri,
    metadata_to_nanopub,
    mint_iri,
    paper_to_nanopub,
    relation_to_nanopub,
    review_to_nanopub,
    study_to_nanopub,
    ReviewArticle,
)
from .nanopub import Nanopublication, assemble, build_index, make_trusty, validate
from .rdf import Iri, Literal
from .trig import parse_trig

log = logging.getLogger(__name__)


class IngestError(ValueError):
    pass


# --- gazetteer ---------------------------------------------------------------


def load_gazetteer() -> dict[str, Iri]:
    text = importlib.resources.files("llr").joinpath("data/countries.tsv").read_text("utf-8")
    table = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        name, iri = line.split("\t")
        table[name.strip().lower()] = Iri(iri.strip())
    return table


_GAZETTEER = load_gazetteer()


def resolve_place(name: str, warnings: list[str] | None = None) -> Iri | str:
    hit = _GAZETTEER.get(name.strip().lower())
    if hit is not None:
        return hit
    message = f"no gazetteer entry for {name!r}; keeping it as a literal"
    log.warning(message)
    if warnings is not None:
        warnings.append(message)
    return name.strip()


# --- DOI metadata ------------------------------------------------------------


@dataclass(frozen=True)
class FixtureDir:
    """Offline metadata source: one TriG snapshot per DOI."""

    path: Path

    def file_for(self, doi: str) -> Path:
        return Path(self.path) / (urllib.parse.quote(doi, safe="") + ".trig")


@dataclass(frozen=True)
class LiveResolver:
    """Content-negotiating DOI resolver endpoint."""

    endpoint: str = "https://doi.org/"
    timeout: float = 15.0


MetadataSource = FixtureDir | LiveResolver


def escaped_doi_filename(doi: str) -> str:
    return urllib.parse.quote(doi, safe="") + ".trig"


def _doi_suffix(doi: Iri | str) -> str:
    value = doi.value if isinstance(doi, Iri) else doi
    for prefix in ("https://doi.org/", "http://doi.org/"):
        if value.startswith(prefix):
            return value[len(prefix):]
    return value


def _bib_from_csl(payload: dict, doi: Iri) -> BibMetadata:
    authors = []
    for entry in payload.get("author", []):
        name = " ".join(p for p in (entry.get("given"), entry.get("family")) if p) or entry.get("name", "")
        orcid = entry.get("ORCID")
        if orcid and not orcid.startswith("http"):
            orcid = "https://orcid.org/" + orcid
        authors.append(Author(name, orcid=Iri(orcid) if orcid else None))
    year = None
    issued = payload.get("issued", {}).get("date-parts", [])
    if issued and issued[0]:
        year = int(issued[0][0])
    return BibMetadata(
        doi=doi,
        title=payload.get("title"),
        authors=tuple(authors),
        year=year,
        venue=payload.get("container-title") or None,
    )


def fetch_doi_metadata(doi: Iri | str, source: MetadataSource) -> BibMetadata:
    """Resolve a DOI to its bibliographic core; the DOI is validated before
    any file or network access."""
    iri = doi_iri(doi if isinstance(doi, str) else doi.value)
    suffix = _doi_suffix(iri)
    if isinstance(source, FixtureDir):
        path = source.file_for(suffix)
        if not path.exists():
            raise IngestError(f"no metadata fixture for {suffix} at {path}")
        dataset = parse_trig(path.read_text(encoding="utf-8"))
        for subject in (iri, Iri(iri.value.replace("https://", "http://", 1))):
            bib = bib_from_quads(dataset.quads, subject)
            if bib.title or bib.authors or bib.year:
                return bib
        raise IngestError(f"fixture {path} carries no bibliographic data about {iri.value}")
    response = httpx.get(
        source.endpoint + suffix,
        headers={"Accept": "application/vnd.citationstyles.csl+json"},
        timeout=source.timeout,
        follow_redirects=True,
    )
    if response.status_code != 200:
        raise IngestError(f"DOI resolver returned {response.status_code} for {suffix}")
    try:
        payload = response.json()
    except json.JSONDecodeError as exc:
        raise IngestError(f"unparseable resolver response for {suffix}: {exc}") from None
    return _bib_from_csl(payload, iri)


# --- study tables ------------------------------------------------------------

#: canonical header set; a ColumnMapping translates alien headers onto it
CANONICAL_COLUMNS = (
    "paper_doi",
    "study_ordinal",
    "survey",
    "quantitative",
    "empirical",
    "country",
    "overall_size",
    "first_author_origin",
    "land_of_focus",
    "primary_object",
    "theoretical_approach",
    "evidence",
    "counter_evidence",
    "claims",
)

REQUIRED_COLUMNS = ("paper_doi", "study_ordinal", "evidence")

_TRUTHY = {"1", "true", "yes", "y", "x"}
_FALSY = {"", "0", "false", "no", "n"}


@dataclass(frozen=True)
class ColumnMapping:
    """Maps canonical field names to the table's actual headers."""

    columns: dict[str, str] = field(default_factory=lambda: {c: c for c in CANONICAL_COLUMNS})

    def header_for(self, name: str) -> str | None:
        return self.columns.get(name)


@dataclass(frozen=True)
class StudyTableRow:
    paper_doi: Iri
    study_ordinal: int
    survey: bool
    quantitative: bool
    empirical: bool
    country: str | None
    overall_size: int | None
    first_author_origin: str | None
    land_of_focus: str | None
    primary_object: str | None
    theoretical_approach: str | None
    evidence_sentences: tuple[str, ...]
    counter_evidence_sentences: tuple[str, ...]
    claims: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.study_ordinal < 1:
            raise IngestError(f"study ordinal must be >= 1, got {self.study_ordinal}")
        if not self.evidence_sentences and not self.counter_evidence_sentences:
            raise IngestError(f"row for {self.paper_doi.value} has no evidence sentences")


def _flag(raw: str | None, row_num: int, column: str) -> bool:
    if raw is None:
        return False
    value = raw.strip().lower()
    if value in _TRUTHY:
        return True
    if value in _FALSY:
        return False
    raise IngestError(f"row {row_num}: cannot read boolean {column}={raw!r}")


def _sentences(raw: str | None, row_num: int) -> tuple[str, ...]:
    if raw is None or not raw.strip():
        return ()
    out = []
    for sentence in raw.split("|"):
        sentence = sentence.strip()
        if not sentence:
            continue
        report = validate_aida(sentence)
        if not report.ok:
            raise IngestError(
                f"row {row_num}: not a valid AIDA sentence {sentence!r}: " + "; ".join(report.violations)
            )
        out.append(sentence)
    return tuple(out)


def parse_study_table(
    file: str | Path | io.TextIOBase,
    mapping: ColumnMapping | None = None,
) -> list[StudyTableRow]:
    mapping = mapping or ColumnMapping()
    if isinstance(file, (str, Path)):
        text = Path(file).read_text(encoding="utf-8")
    else:
        text = file.read()
    if not text.strip():
        raise IngestError("study table has no header row")
    delimiter = "\t" if "\t" in text.splitlines()[0] else ","
    reader = csv.DictReader(io.StringIO(text), delimiter=delimiter)
    headers = reader.fieldnames or []
    for required in REQUIRED_COLUMNS:
        header = mapping.header_for(required)
        if header is None or header not in headers:
            raise IngestError(f"missing required column {required!r} (header {header!r})")

    def cell(record: dict, name: str) -> str | None:
        header = mapping.header_for(name)
        if header is None:
            return None
        value = record.get(header)
        return value if value is None or value.strip() != "" else None

    rows: list[StudyTableRow] = []
    seen: set[tuple[str, int]] = set()
    for row_num, record in enumerate(reader, start=2):
        doi = cell(record, "paper_doi")
        if doi is None:
            raise IngestError(f"row {row_num}: empty paper_doi")
        ordinal_text = cell(record, "study_ordinal")
        try:
            ordinal = int(ordinal_text) if ordinal_text else 0
        except ValueError:
            raise IngestError(f"row {row_num}: bad study_ordinal {ordinal_text!r}") from None
        size_text = cell(record, "overall_size")
        try:
            size = int(size_text) if size_text else None
        except ValueError:
            raise IngestError(f"row {row_num}: bad overall_size {size_text!r}") from None
        row = StudyTableRow(
            paper_doi=doi_iri(doi),
            study_ordinal=ordinal,
            survey=_flag(cell(record, "survey"), row_num, "survey"),
            quantitative=_flag(cell(record, "quantitative"), row_num, "quantitative"),
            empirical=_flag(cell(record, "empirical"), row_num, "empirical"),
            country=cell(record, "country"),
            overall_size=size,
            first_author_origin=cell(record, "first_author_origin"),
            land_of_focus=cell(record, "land_of_focus"),
            primary_object=cell(record, "primary_object"),
            theoretical_approach=cell(record, "theoretical_approach"),
            evidence_sentences=_sentences(cell(record, "evidence"), row_num),
            counter_evidence_sentences=_sentences(cell(record, "counter_evidence"), row_num),
            claims=_sentences(cell(record, "claims"), row_num),
        )
        key = (row.paper_doi.value, row.study_ordinal)
        if key in seen:
            raise IngestError(f"row {row_num}: duplicate (doi, ordinal) {key}")
        seen.add(key)
        rows.append(row)
    return rows


def _row_to_study(
    row: StudyTableRow,
    np_base: Iri,
    aida_namespace: Iri,
    warnings: list[str] | None,
) -> Study:
    classes = {vocab.STUDY}
    if row.survey:
        classes.add(vocab.SURVEY)
    if row.quantitative:
        classes.add(vocab.QUANTATITIVE_ANALYSIS)
    if row.empirical:
        classes.add(vocab.EMPIRICAL_ARTICLE)
    return Study(
        iri=mint_iri("study", np_base),
        classes=frozenset(classes),
        country=resolve_place(row.country, warnings) if row.country else None,
        overall_size=row.overall_size,
        first_author_origin=resolve_place(row.first_author_origin, warnings) if row.first_author_origin else None,
        land_of_focus=resolve_place(row.land_of_focus, warnings) if row.land_of_focus else None,
        primary_object=row.primary_object,
        theoretical_approach=row.theoretical_approach,
        evidence_for=tuple(aida_to_iri(s, aida_namespace) for s in row.evidence_sentences),
        counter_evidence_for=tuple(aida_to_iri(s, aida_namespace) for s in row.counter_evidence_sentences),
    )


def ingest_study_table(
    file: str | Path | io.TextIOBase,
    mapping: ColumnMapping | None = None,
    np_base: Iri = Iri("https://w3id.org/livingreviews/np/"),
    aida_namespace: Iri | None = None,
    warnings: list[str] | None = None,
) -> list[tuple[ResearchPaper, list[Study]]]:
    """Group table rows into one ResearchPaper per distinct DOI with its
    studies. Paper claims come from an explicit claims column when mapped,
    otherwise from the union of the studies' evidence sentences.

    Study IRIs are minted in the (placeholder) nanopub namespace; they take
    their final content-addressed form when the corpus is built.
    """
    aida_ns = aida_namespace or DEFAULT_AIDA_NAMESPACE
    rows = parse_study_table(file, mapping)
    grouped: dict[str, list[StudyTableRow]] = {}
    order: list[str] = []
    for row in rows:
        key = row.paper_doi.value
        if key not in grouped:
            grouped[key] = []
            order.append(key)
        grouped[key].append(row)

    result: list[tuple[ResearchPaper, list[Study]]] = []
    for doi_value in order:
        doi_rows = sorted(grouped[doi_value], key=lambda r: r.study_ordinal)
        studies = [_row_to_study(row, np_base, aida_ns, warnings) for row in doi_rows]
        explicit_claims = [s for row in doi_rows for s in row.claims]
        if explicit_claims:
            claims = tuple(aida_to_iri(s, aida_ns) for s in explicit_claims)
        else:
            claims = tuple(iri for row in doi_rows for iri in
                           (aida_to_iri(s, aida_ns) for s in row.evidence_sentences))
        paper = ResearchPaper(iri=Iri(doi_value), claims=claims)
        result.append((paper, studies))
    return result


# --- corpus building ---------------------------------------------------------


@dataclass(frozen=True)
class CorpusBuild:
    nanopubs: tuple[Nanopublication, ...]
    index: Nanopublication

    def all_nanopubs(self) -> tuple[Nanopublication, ...]:
        return self.nanopubs + (self.index,)


def build_schema_nanopubs(
    creator: Iri,
    timestamp: datetime | str,
    base: Iri,
    terms: Sequence[tuple[Iri, Iri]] = vocab.SCHEMA_TERMS,
) -> list[Nanopublication]:
    out = []
    for term, kind in terms:
        label = term.value.rsplit("/", 1)[-1].rsplit("#", 1)[-1]
        np = assemble(
            [(term, vocab.RDF_TYPE, kind), (term, vocab.RDFS_LABEL, Literal(label))],
            derived_from=Iri(vocab.LLR),
            creator=creator,
            timestamp=timestamp,
            base=base,
        )
        out.append(make_trusty(np))
    return out


def build_corpus(
    review_doi: Iri,
    tables: Iterable[str | Path | io.TextIOBase],
    relations: Sequence[StatementRelation],
    creator: Iri,
    timestamp: datetime | str,
    base: Iri = Iri("https://w3id.org/livingreviews/np/"),
    aida_namespace: Iri | None = None,
    metadata_source: MetadataSource | None = None,
    mapping: ColumnMapping | None = None,
    schema_terms: Sequence[tuple[Iri, Iri]] = vocab.SCHEMA_TERMS,
    warnings: list[str] | None = None,
) -> CorpusBuild:
    """Turn a review DOI, study tables, and statement relations into the full
    trusty nanopub family: 1 review, N metadata, N papers, M studies, K
    relations, the schema set, and one index over all of them.

    Deterministic: identical inputs produce identical trusty URIs.
    """
    aida_ns = aida_namespace or DEFAULT_AIDA_NAMESPACE
    papers: list[tuple[ResearchPaper, list[Study]]] = []
    for table in tables:
        papers.extend(ingest_study_table(table, mapping, base, aida_ns, warnings))
    if not papers:
        raise IngestError("no study rows: a corpus needs at least one paper")

    nanopubs: list[Nanopublication] = []

    review = ReviewArticle(iri=review_doi, reviews=tuple(p.iri for p, _ in papers))
    nanopubs.append(make_trusty(review_to_nanopub(review, creator, timestamp, base)))

    for paper, _ in papers:
        if metadata_source is not None:
            bib = fetch_doi_metadata(paper.iri, metadata_source)
        else:
            bib = BibMetadata(doi=paper.iri)
        nanopubs.append(make_trusty(metadata_to_nanopub(bib, creator, timestamp, base)))

    study_nanopubs: list[Nanopublication] = []
    paper_nanopubs: list[Nanopublication] = []
    for paper, studies in papers:
        study_refs = []
        for study in studies:
            np = make_trusty(
                study_to_nanopub(study, paper.iri, creator, timestamp, base, aida_ns)
            )
            study_nanopubs.append(np)
            study_refs.append(Iri(np.uri.value + "#study"))
        linked = ResearchPaper(iri=paper.iri, claims=paper.claims, studies=tuple(study_refs))
        paper_nanopubs.append(
            make_trusty(paper_to_nanopub(linked, creator, timestamp, base, aida_ns))
        )
    nanopubs.extend(paper_nanopubs)
    nanopubs.extend(study_nanopubs)

    for relation in relations:
        nanopubs.append(make_trusty(relation_to_nanopub(relation, creator, timestamp, base, aida_ns)))

    nanopubs.extend(build_schema_nanopubs(creator, timestamp, base, schema_terms))

    for np in nanopubs:
        report = validate(np)
        if not report.ok:
            raise IngestError(f"built an invalid nanopub {np.uri.value}: {report.violations}")

    index = build_index([np.uri for np in nanopubs], None, creator, timestamp, base)
    return CorpusBuild(tuple(nanopubs), index)
