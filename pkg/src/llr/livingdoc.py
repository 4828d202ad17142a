"""Living documents: review text with anchored fragments, update templates,
and the four view modes.

A fragment anchors a span of a text block and binds it to living data: a
statement identifier (statement-text), a query with fixed parameters
(metric), or the review's citation list. Every fragment keeps the value it
had at publication; the value as of a given version comes from the corpus
snapshot for that version (revisions for statement text, recomputation for
metrics and citations).

View modes over original value O and latest value L:
  original   -> display O, no tooltip, never highlighted
  tooltip-l  -> display O, tooltip L, highlighted iff L != O
  tooltip-o  -> display L, tooltip O, highlighted iff L != O
  latest     -> display L, no tooltip, never highlighted
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone

from . import queries, vocab
from .aida import DEFAULT_AIDA_NAMESPACE, aida_to_iri, validate_aida
from .model import (
    Author,
    BibMetadata,
    ResearchPaper,
    StatementRelation,
    Study,
    doi_iri,
    metadata_to_nanopub,
    mint_iri,
    paper_to_nanopub,
    relation_to_nanopub,
    study_to_nanopub,
)
from .nanopub import Nanopublication, assemble, format_instant, make_trusty
from .rdf import Iri, Literal
from .store import Corpus
from .validation import ValidationReport

MODES = ("original", "tooltip-l", "tooltip-o", "latest")
FRAGMENT_KINDS = ("statement-text", "metric", "citation-list")
TEMPLATES = ("new-paper", "new-study", "new-relation", "revise-fragment")

RELATION_NAMES = {
    "related": vocab.HAS_RELATED_MEANING,
    "more-specific": vocab.HAS_MORE_SPECIFIC_MEANING_THAN,
    "more-general": vocab.HAS_MORE_GENERAL_MEANING_THAN,
    "conflicting": vocab.HAS_CONFLICTING_MEANING,
}


class DocumentError(ValueError):
    pass


class UpdateRejected(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__("; ".join(report.violations))
        self.report = report


@dataclass(frozen=True)
class Block:
    id: str
    text: str


@dataclass(frozen=True)
class Section:
    heading: str
    blocks: tuple[Block, ...]


@dataclass(frozen=True)
class FragmentAnchor:
    block: str
    start: int
    end: int

    def __post_init__(self) -> None:
        if not (0 <= self.start < self.end):
            raise DocumentError(f"bad anchor range [{self.start}, {self.end})")


@dataclass(frozen=True)
class MetricDescriptor:
    """A store query with pinned parameters; params are sorted key/value
    pairs so descriptors hash and compare cleanly."""

    op: str
    params: tuple[tuple[str, str], ...] = ()

    def get(self, key: str) -> str | None:
        for k, v in self.params:
            if k == key:
                return v
        return None

    @classmethod
    def from_json(cls, data: dict) -> MetricDescriptor:
        op = data.get("op", "")
        params = tuple(sorted((k, str(v)) for k, v in data.items() if k != "op"))
        return cls(op, params)

    def to_json(self) -> dict:
        return {"op": self.op, **dict(self.params)}


@dataclass(frozen=True)
class Fragment:
    id: str
    anchor: FragmentAnchor
    kind: str
    binding: str | MetricDescriptor | None
    original_value: str

    def __post_init__(self) -> None:
        if self.kind not in FRAGMENT_KINDS:
            raise DocumentError(f"unknown fragment kind {self.kind!r}")
        if self.kind == "metric" and not isinstance(self.binding, MetricDescriptor):
            raise DocumentError(f"metric fragment {self.id} needs a metric descriptor")
        if self.kind == "statement-text" and not isinstance(self.binding, str):
            raise DocumentError(f"statement fragment {self.id} needs a statement IRI")


@dataclass(frozen=True)
class LivingDocument:
    id: str
    title: str
    review: Iri
    sections: tuple[Section, ...]
    fragments: tuple[Fragment, ...]
    version_index: str  # index IRI of the publication release ("" until built)
    authors: tuple[str, ...] = ()  # submitter IRIs allowed under the original-authors policy

    def block(self, block_id: str) -> Block:
        for section in self.sections:
            for block in section.blocks:
                if block.id == block_id:
                    return block
        raise DocumentError(f"no block {block_id!r}")

    def fragment(self, fragment_id: str) -> Fragment:
        for fragment in self.fragments:
            if fragment.id == fragment_id:
                return fragment
        raise DocumentError(f"no fragment {fragment_id!r}")

    def validate_anchors(self) -> None:
        for fragment in self.fragments:
            block = self.block(fragment.anchor.block)
            if fragment.anchor.end > len(block.text):
                raise DocumentError(
                    f"fragment {fragment.id} anchor [{fragment.anchor.start},{fragment.anchor.end}) "
                    f"exceeds block {block.id} length {len(block.text)}"
                )

    def anchored_text(self, fragment: Fragment) -> str:
        block = self.block(fragment.anchor.block)
        return block.text[fragment.anchor.start:fragment.anchor.end]

    def fragment_iri(self, fragment_id: str) -> Iri:
        self.fragment(fragment_id)
        return Iri(f"{self.review.value}#fragment-{fragment_id}")


# --- document JSON -----------------------------------------------------------


def document_from_json(data: dict) -> LivingDocument:
    sections = tuple(
        Section(
            heading=s.get("heading", ""),
            blocks=tuple(Block(b["id"], b["text"]) for b in s.get("blocks", ())),
        )
        for s in data.get("sections", ())
    )
    fragments = []
    for f in data.get("fragments", ()):
        kind = f["kind"]
        binding: str | MetricDescriptor | None
        if kind == "metric":
            binding = MetricDescriptor.from_json(f["binding"])
        elif kind == "statement-text":
            binding = f["binding"]
        else:
            binding = None
        fragments.append(
            Fragment(
                id=f["id"],
                anchor=FragmentAnchor(f["block"], f["start"], f["end"]),
                kind=kind,
                binding=binding,
                original_value=f.get("original_value", ""),
            )
        )
    doc = LivingDocument(
        id=data["id"],
        title=data.get("title", data["id"]),
        review=Iri(data["review"]),
        sections=sections,
        fragments=tuple(fragments),
        version_index=data.get("version_index", ""),
        authors=tuple(data.get("authors", ())),
    )
    doc.validate_anchors()
    return doc


def document_to_json(doc: LivingDocument) -> dict:
    return {
        "id": doc.id,
        "title": doc.title,
        "review": doc.review.value,
        "version_index": doc.version_index,
        "authors": list(doc.authors),
        "sections": [
            {
                "heading": s.heading,
                "blocks": [{"id": b.id, "text": b.text} for b in s.blocks],
            }
            for s in doc.sections
        ],
        "fragments": [
            {
                "id": f.id,
                "block": f.anchor.block,
                "start": f.anchor.start,
                "end": f.anchor.end,
                "kind": f.kind,
                "binding": f.binding.to_json() if isinstance(f.binding, MetricDescriptor) else f.binding,
                "original_value": f.original_value,
            }
            for f in doc.fragments
        ],
    }


def load_document(path) -> LivingDocument:
    with open(path, encoding="utf-8") as fh:
        return document_from_json(json.load(fh))


# --- metrics -----------------------------------------------------------------

METRIC_OPS = ("class-pct", "field-pct", "size-pct", "census-total", "relation-count")


def evaluate_metric(descriptor: MetricDescriptor, corpus: Corpus) -> str:
    """Evaluate a pinned query and format it for display."""
    if descriptor.op == "class-pct":
        cls = descriptor.get("class")
        if cls is None:
            raise DocumentError("class-pct metric needs a 'class' parameter")
        value = queries.pct_statements_by_class(corpus, Iri(cls))
        return f"{queries.two_decimal_percent(value):.2f}%"
    if descriptor.op == "field-pct":
        field = descriptor.get("field")
        target = descriptor.get("value")
        if field is None or target is None:
            raise DocumentError("field-pct metric needs 'field' and 'value' parameters")
        expected = Iri(target) if target.startswith(("http://", "https://")) else target
        value = queries.pct_statements_by_study_field(corpus, field, lambda v: v == expected)
        return f"{queries.whole_percent(value)}%"
    if descriptor.op == "size-pct":
        threshold = int(descriptor.get("threshold") or 0)
        value = queries.pct_statements_large_study(corpus, threshold)
        return f"{queries.whole_percent(value)}%"
    if descriptor.op == "census-total":
        return str(queries.counts_by_kind(corpus).total)
    if descriptor.op == "relation-count":
        return str(len(corpus.relations))
    raise DocumentError(f"unknown metric op {descriptor.op!r}")


def citation_list_value(corpus: Corpus) -> str:
    n = len(corpus.papers)
    return f"{n} paper" + ("" if n == 1 else "s")


def latest_fragment_value(doc: LivingDocument, fragment: Fragment, corpus: Corpus) -> str:
    """The fragment's value as of the given corpus snapshot."""
    if fragment.kind == "metric":
        assert isinstance(fragment.binding, MetricDescriptor)
        return evaluate_metric(fragment.binding, corpus)
    if fragment.kind == "citation-list":
        return citation_list_value(corpus)
    target = doc.fragment_iri(fragment.id)
    candidates = [r for r in corpus.revisions if r.fragment == target]
    if not candidates:
        return fragment.original_value
    newest = max(candidates, key=lambda r: (r.created, r.artifact_code))
    return newest.value


def recompute_metrics(doc: LivingDocument, corpus: Corpus) -> list[tuple[str, str]]:
    """(fragment id, value) for every metric fragment on this snapshot."""
    return [
        (fragment.id, evaluate_metric(fragment.binding, corpus))
        for fragment in doc.fragments
        if fragment.kind == "metric" and isinstance(fragment.binding, MetricDescriptor)
    ]


# --- resolved views ----------------------------------------------------------


@dataclass(frozen=True)
class ResolvedFragment:
    id: str
    kind: str
    block: str
    start: int
    end: int
    display_value: str
    tooltip_value: str | None
    highlighted: bool


@dataclass(frozen=True)
class ResolvedView:
    review_id: str
    version: str
    mode: str
    fragments: tuple[ResolvedFragment, ...]

    def to_json(self) -> dict:
        return {
            "review": self.review_id,
            "version": self.version,
            "mode": self.mode,
            "fragments": [
                {
                    "id": f.id,
                    "kind": f.kind,
                    "block": f.block,
                    "start": f.start,
                    "end": f.end,
                    "display_value": f.display_value,
                    "tooltip_value": f.tooltip_value,
                    "highlighted": f.highlighted,
                }
                for f in self.fragments
            ],
        }


def resolve_view(doc: LivingDocument, version: str, mode: str, corpus: Corpus) -> ResolvedView:
    """Resolve every fragment under a view mode; ``corpus`` must be the
    snapshot the ``version`` index describes."""
    if mode not in MODES:
        raise DocumentError(f"unknown mode {mode!r}; expected one of {MODES}")
    resolved = []
    for fragment in doc.fragments:
        original = fragment.original_value
        latest = latest_fragment_value(doc, fragment, corpus)
        changed = latest != original
        if mode == "original":
            display, tooltip, highlighted = original, None, False
        elif mode == "tooltip-l":
            display, tooltip, highlighted = original, latest, changed
        elif mode == "tooltip-o":
            display, tooltip, highlighted = latest, original, changed
        else:
            display, tooltip, highlighted = latest, None, False
        resolved.append(
            ResolvedFragment(
                id=fragment.id,
                kind=fragment.kind,
                block=fragment.anchor.block,
                start=fragment.anchor.start,
                end=fragment.anchor.end,
                display_value=display,
                tooltip_value=tooltip,
                highlighted=highlighted,
            )
        )
    return ResolvedView(doc.id, version, mode, tuple(resolved))


# --- update templates ----------------------------------------------------------


@dataclass(frozen=True)
class UpdateSubmission:
    template: str
    payload: dict
    submitter: str
    timestamp: str

    @classmethod
    def make(
        cls,
        template: str,
        payload: dict,
        submitter: str,
        timestamp: str | datetime | None = None,
    ) -> UpdateSubmission:
        if timestamp is None:
            ts = format_instant(datetime.now(timezone.utc))
        elif isinstance(timestamp, datetime):
            ts = format_instant(timestamp)
        else:
            ts = timestamp
        return cls(template, payload, submitter, ts)


def _check_sentence(text, label: str, violations: list[str]) -> None:
    if not isinstance(text, str) or not text:
        violations.append(f"{label}: missing sentence")
        return
    report = validate_aida(text)
    for violation in report.violations:
        violations.append(f"{label}: {violation}")


def validate_submission(sub: UpdateSubmission, doc: LivingDocument, corpus: Corpus) -> ValidationReport:
    """Template-specific payload validation; violations are data."""
    violations: list[str] = []
    payload = sub.payload
    if sub.template not in TEMPLATES:
        return ValidationReport((f"unknown template {sub.template!r}",))
    if not sub.submitter:
        violations.append("submitter required")

    if sub.template == "new-relation":
        _check_sentence(payload.get("subject"), "subject", violations)
        _check_sentence(payload.get("object"), "object", violations)
        relation = payload.get("relation", "")
        known = relation in RELATION_NAMES
        if not known:
            try:
                known = Iri(relation) in vocab.RELATION_PREDICATES
            except ValueError:
                known = False
        if not known:
            violations.append(f"relation: unknown relation {relation!r}")
        if payload.get("subject") and payload.get("subject") == payload.get("object"):
            violations.append("subject and object must differ")
        source = payload.get("source", "")
        if not source:
            violations.append("source: required")
        else:
            try:
                _source_iri(source)
            except ValueError:
                violations.append(f"source: not a DOI or IRI {source!r}")
    elif sub.template == "new-paper":
        doi = payload.get("doi", "")
        try:
            iri = doi_iri(doi)
            if iri.value in corpus.papers:
                violations.append(f"doi: paper {doi} is already in the corpus")
        except ValueError:
            violations.append(f"doi: not a valid DOI {doi!r}")
        for i, claim in enumerate(payload.get("claims", ())):
            _check_sentence(claim, f"claims[{i}]", violations)
    elif sub.template == "new-study":
        doi = payload.get("paper_doi", "")
        try:
            iri = doi_iri(doi)
            if iri.value not in corpus.papers:
                violations.append(f"paper_doi: no paper {doi} in the corpus")
        except ValueError:
            violations.append(f"paper_doi: not a valid DOI {doi!r}")
        evidence = payload.get("evidence", ()) or ()
        counter = payload.get("counter_evidence", ()) or ()
        if not evidence and not counter:
            violations.append("evidence: at least one evidence or counter-evidence sentence required")
        for i, s in enumerate(evidence):
            _check_sentence(s, f"evidence[{i}]", violations)
        for i, s in enumerate(counter):
            _check_sentence(s, f"counter_evidence[{i}]", violations)
        size = payload.get("overall_size")
        if size is not None and (not isinstance(size, int) or size <= 0):
            violations.append(f"overall_size: must be a positive integer, got {size!r}")
    elif sub.template == "revise-fragment":
        fragment_id = payload.get("fragment", "")
        try:
            fragment = doc.fragment(fragment_id)
            if fragment.kind != "statement-text":
                violations.append(
                    f"fragment: {fragment_id} is a {fragment.kind} fragment; only statement-text "
                    "fragments take revisions (metrics recompute)"
                )
        except DocumentError:
            violations.append(f"fragment: no fragment {fragment_id!r}")
        _check_sentence(payload.get("value"), "value", violations)
    return ValidationReport.collect(violations)


def _relation_iri(name: str) -> Iri:
    return RELATION_NAMES.get(name) or Iri(name)


def build_update_nanopubs(
    sub: UpdateSubmission,
    doc: LivingDocument,
    corpus: Corpus,
    base: Iri,
    aida_namespace: Iri = DEFAULT_AIDA_NAMESPACE,
) -> list[Nanopublication]:
    """Turn a validated submission into trusty nanopublications."""
    report = validate_submission(sub, doc, corpus)
    if not report.ok:
        raise UpdateRejected(report)
    payload = sub.payload
    creator = Iri(sub.submitter)
    ts = sub.timestamp
    out: list[Nanopublication] = []

    if sub.template == "new-relation":
        relation = StatementRelation(
            subject=aida_to_iri(payload["subject"], aida_namespace),
            relation=_relation_iri(payload["relation"]),
            object=aida_to_iri(payload["object"], aida_namespace),
            derived_from=_source_iri(payload["source"]),
        )
        out.append(make_trusty(relation_to_nanopub(relation, creator, ts, base, aida_namespace)))
    elif sub.template == "new-paper":
        paper_iri = doi_iri(payload["doi"])
        claims = tuple(aida_to_iri(s, aida_namespace) for s in payload.get("claims", ()))
        meta = payload.get("metadata") or {}
        bib = BibMetadata(
            doi=paper_iri,
            title=meta.get("title"),
            authors=tuple(
                Author(a["name"], orcid=Iri(a["orcid"]) if a.get("orcid") else None)
                for a in meta.get("authors", ())
            ),
            year=meta.get("year"),
            venue=meta.get("venue"),
        )
        out.append(make_trusty(metadata_to_nanopub(bib, creator, ts, base)))
        paper = ResearchPaper(iri=paper_iri, claims=claims)
        out.append(make_trusty(paper_to_nanopub(paper, creator, ts, base, aida_namespace)))
    elif sub.template == "new-study":
        paper_iri = doi_iri(payload["paper_doi"])
        classes = {vocab.STUDY}
        if payload.get("survey"):
            classes.add(vocab.SURVEY)
        if payload.get("quantitative"):
            classes.add(vocab.QUANTATITIVE_ANALYSIS)
        if payload.get("empirical"):
            classes.add(vocab.EMPIRICAL_ARTICLE)
        from .ingest import resolve_place

        def place(name):
            return resolve_place(name) if name else None

        study = Study(
            iri=mint_iri("study", base),
            classes=frozenset(classes),
            country=place(payload.get("country")),
            overall_size=payload.get("overall_size"),
            first_author_origin=place(payload.get("first_author_origin")),
            land_of_focus=place(payload.get("land_of_focus")),
            primary_object=payload.get("primary_object"),
            theoretical_approach=payload.get("theoretical_approach"),
            evidence_for=tuple(aida_to_iri(s, aida_namespace) for s in payload.get("evidence", ())),
            counter_evidence_for=tuple(
                aida_to_iri(s, aida_namespace) for s in payload.get("counter_evidence", ())
            ),
        )
        out.append(make_trusty(study_to_nanopub(study, paper_iri, creator, ts, base, aida_namespace)))
    else:  # revise-fragment
        fragment_iri = doc.fragment_iri(payload["fragment"])
        revision_subject = mint_iri("revision", base)
        triples = [
            (revision_subject, vocab.RDF_TYPE, vocab.FRAGMENT_REVISION),
            (revision_subject, vocab.REVISES_FRAGMENT, fragment_iri),
            (revision_subject, vocab.HAS_CURRENT_VALUE, Literal(payload["value"])),
        ]
        source = payload.get("source")
        derived = _source_iri(source) if source else doc.review
        out.append(make_trusty(assemble(triples, derived, creator, ts, base)))
    return out


def _source_iri(source: str) -> Iri:
    if source.startswith(("http://", "https://")):
        return Iri(source)
    return doi_iri(source)


# --- version chains and diffs --------------------------------------------------


@dataclass(frozen=True)
class VersionChain:
    versions: tuple[str, ...]  # oldest (publication release) to newest

    def __post_init__(self) -> None:
        if not self.versions:
            raise DocumentError("a version chain needs at least one index")

    @property
    def latest(self) -> str:
        return self.versions[-1]

    def __len__(self) -> int:
        return len(self.versions)

    def __contains__(self, version: str) -> bool:
        return version in self.versions


@dataclass(frozen=True)
class FragmentChange:
    fragment: str
    before: str
    after: str


@dataclass(frozen=True)
class VersionDiff:
    from_version: str
    to_version: str
    changed_fragments: tuple[FragmentChange, ...]
    added_nanopubs: tuple[str, ...]


def diff_versions(
    doc: LivingDocument,
    v1: str,
    v2: str,
    corpus1: Corpus,
    corpus2: Corpus,
) -> VersionDiff:
    changes = []
    for fragment in doc.fragments:
        before = latest_fragment_value(doc, fragment, corpus1)
        after = latest_fragment_value(doc, fragment, corpus2)
        if before != after:
            changes.append(FragmentChange(fragment.id, before, after))
    added = tuple(sorted(set(corpus2.nanopubs) - set(corpus1.nanopubs)))
    return VersionDiff(v1, v2, tuple(changes), added)
