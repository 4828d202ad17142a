"""The ``llr`` command line: ingest, build, verify, query, update, serve."""

from __future__ import annotations

import json
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import click

from . import vocab
from .config import Config, load_config
from .docstore import DocumentStore
from .ingest import ColumnMapping, ingest_study_table
from .livingdoc import TEMPLATES, UpdateRejected, UpdateSubmission
from .queries import (
    counts_by_kind,
    list_statements,
    pct_statements_by_class,
    pct_statements_by_study_field,
    pct_statements_large_study,
    relation_distribution,
    statement_support,
    two_decimal_percent,
    whole_percent,
)
from .rdf import Iri
from .release import build_release
from .store import Corpus


def _config(config_path: str | None, data_dir: str | None) -> Config:
    cfg = load_config(config_path)
    if data_dir:
        cfg = replace(cfg, data_dir=data_dir)
    return cfg


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2, ensure_ascii=False))


@click.group()
def main() -> None:
    """Living literature reviews as networks of nanopublications."""


@main.command()
@click.option("--studies", "studies_path", required=True, type=click.Path(exists=True))
@click.option("--mapping", "mapping_path", type=click.Path(exists=True), help="JSON column mapping")
def ingest(studies_path: str, mapping_path: str | None) -> None:
    """Dry-run a study table: group rows and report what a build would see."""
    mapping = None
    if mapping_path:
        columns = json.loads(Path(mapping_path).read_text(encoding="utf-8"))
        base = {c: c for c in ColumnMapping().columns}
        base.update(columns)
        mapping = ColumnMapping(base)
    warnings: list[str] = []
    grouped = ingest_study_table(studies_path, mapping, warnings=warnings)
    summary = {
        "papers": len(grouped),
        "studies": sum(len(studies) for _, studies in grouped),
        "statements": len({c.value for paper, _ in grouped for c in paper.claims}),
        "warnings": warnings,
        "per_paper": [
            {"doi": paper.iri.value, "studies": len(studies), "claims": len(paper.claims)}
            for paper, studies in grouped
        ],
    }
    _echo_json(summary)


@main.command()
@click.option("--manifest", required=True, type=click.Path(exists=True), help="build manifest JSON")
@click.option("--data", "data_dir", required=True, type=click.Path(), help="output data directory")
@click.option("--config", "config_path", type=click.Path(exists=True))
def build(manifest: str, data_dir: str, config_path: str | None) -> None:
    """Build the corpus from a manifest and publish it into a data directory."""
    cfg = _config(config_path, data_dir)
    release = build_release(manifest, cfg)
    store = DocumentStore(cfg.data_dir)
    store.publish(list(release.build.nanopubs), release.build.index, list(release.documents))
    corpus = store.current_corpus()
    census = counts_by_kind(corpus)
    for warning in release.warnings:
        click.echo(f"warning: {warning}", err=True)
    _echo_json(
        {
            "data_dir": str(store.root),
            "index": release.build.index.uri.value,
            "documents": [doc.id for doc in release.documents],
            "census": census.as_dict(),
        }
    )


@main.command()
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
def verify(data_dir: str, config_path: str | None) -> None:
    """Re-parse, validate, and re-hash every stored nanopub; check the journal chain."""
    cfg = _config(config_path, data_dir)
    store = DocumentStore(cfg.data_dir)
    problems = store.verify_all()
    count = len(list(store.nanopub_dir.glob("*.trig")))
    if problems:
        for problem in problems:
            click.echo(f"FAIL {problem}", err=True)
        sys.exit(1)
    click.echo(f"ok: {count} nanopub files verified, journal chain intact")


def _fraction_payload(value: Fraction) -> dict:
    return {
        "exact": f"{value.numerator}/{value.denominator}",
        "percent": float(value),
        "display_whole": whole_percent(value),
        "display_two_decimals": two_decimal_percent(value),
    }


@main.command()
@click.argument("name", type=click.Choice(["census", "relations", "statements", "support", "field-pct", "size-pct", "class-pct"]))
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--statement", help="statement IRI (support)")
@click.option("--field", type=click.Choice(["country", "first_author_origin", "land_of_focus"]))
@click.option("--value", help="resource IRI or literal the field must equal")
@click.option("--threshold", type=int, default=1000, show_default=True)
@click.option("--class", "cls", help="class IRI (class-pct)")
def query(
    name: str,
    data_dir: str,
    config_path: str | None,
    statement: str | None,
    field: str | None,
    value: str | None,
    threshold: int,
    cls: str | None,
) -> None:
    """Run one of the descriptive analyses over the stored corpus."""
    cfg = _config(config_path, data_dir)
    store = DocumentStore(cfg.data_dir)
    corpus = store.current_corpus()
    if name == "census":
        _echo_json(counts_by_kind(corpus).as_dict())
    elif name == "relations":
        dist = relation_distribution(corpus)
        _echo_json(
            {
                predicate.value: {"count": share.count, **_fraction_payload(share.exact)}
                for predicate, share in sorted(dist.items(), key=lambda kv: -kv[1].count)
            }
        )
    elif name == "statements":
        _echo_json([s.value for s in list_statements(corpus)])
    elif name == "support":
        if not statement:
            raise click.UsageError("support needs --statement")
        report = statement_support(corpus, Iri(statement))
        _echo_json(
            {
                "statement": report.statement.value,
                "supporting_papers": report.supporting_papers,
                "distinct_authors": report.distinct_authors,
                "conflicting": [
                    {
                        "statement": e.statement.value,
                        "supporting_papers": e.supporting_papers,
                        "distinct_authors": e.distinct_authors,
                    }
                    for e in report.conflicting
                ],
            }
        )
    elif name == "field-pct":
        if not field or value is None:
            raise click.UsageError("field-pct needs --field and --value")
        expected: Iri | str = Iri(value) if value.startswith(("http://", "https://")) else value
        result = pct_statements_by_study_field(corpus, field, lambda v: v == expected)
        _echo_json({"field": field, "value": value, **_fraction_payload(result)})
    elif name == "size-pct":
        result = pct_statements_large_study(corpus, threshold)
        _echo_json({"threshold": threshold, **_fraction_payload(result)})
    elif name == "class-pct":
        if not cls:
            raise click.UsageError("class-pct needs --class")
        result = pct_statements_by_class(corpus, Iri(cls))
        _echo_json({"class": cls, **_fraction_payload(result)})


@main.command()
@click.option("--template", required=True, type=click.Choice(list(TEMPLATES)))
@click.option("--file", "payload_path", required=True, type=click.Path(exists=True), help="payload JSON")
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--review", "review_id", default=None, help="document id (default: the only one)")
@click.option("--submitter", default=None, help="submitter IRI")
@click.option("--timestamp", default=None, help="ISO-8601 UTC instant (default: now)")
def update(
    template: str,
    payload_path: str,
    data_dir: str,
    config_path: str | None,
    review_id: str | None,
    submitter: str | None,
    timestamp: str | None,
) -> None:
    """Apply an update template directly to the data directory."""
    cfg = _config(config_path, data_dir)
    store = DocumentStore(cfg.data_dir)
    if review_id is None:
        ids = store.document_ids()
        if len(ids) != 1:
            raise click.UsageError(f"--review required (documents: {ids})")
        review_id = ids[0]
    payload = json.loads(Path(payload_path).read_text(encoding="utf-8"))
    submission = UpdateSubmission.make(template, payload, submitter or cfg.creator, timestamp)
    try:
        result = store.register_update(review_id, submission, cfg.np_base, cfg.aida_iri)
    except UpdateRejected as exc:
        for violation in exc.report.violations:
            click.echo(f"rejected: {violation}", err=True)
        sys.exit(1)
    _echo_json(
        {
            "nanopubs": [np.uri.value for np in result.nanopubs],
            "index": result.index.uri.value,
        }
    )


@main.command()
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--policy", type=click.Choice(["open", "token-list", "original-authors"]), default=None)
@click.option("--listen", default=None, help="host:port (default 127.0.0.1:8351)")
@click.option("--token", "tokens", multiple=True, help="accepted bearer token (repeatable)")
def serve(
    data_dir: str,
    config_path: str | None,
    policy: str | None,
    listen: str | None,
    tokens: tuple[str, ...],
) -> None:
    """Serve the HTTP API over a data directory."""
    import uvicorn

    from .service import create_app

    cfg = _config(config_path, data_dir)
    overrides: dict = {}
    if policy:
        overrides["policy"] = policy
    if tokens:
        overrides["tokens"] = tuple(tokens)
    if listen:
        host, _, port = listen.rpartition(":")
        overrides["host"] = host or "127.0.0.1"
        overrides["port"] = int(port)
    cfg = replace(cfg, **overrides)
    store = DocumentStore(cfg.data_dir)
    app = create_app(store, cfg)
    uvicorn.run(app, host=cfg.host, port=cfg.port, log_level="warning")


if __name__ == "__main__":
    main()
