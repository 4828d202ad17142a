"""HTTP API over a document store.

JSON in and out, except nanopub retrieval which returns canonical TriG.
Updates go through the configured authorization policy:

  open              anyone may post updates
  token-list        the request must carry a configured bearer token
  original-authors  the submitter IRI must be one of the document's authors
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .aida import AidaError, aida_to_iri, percent_decode, validate_aida
from .config import Config
from .docstore import DocStoreError, DocumentStore
from .livingdoc import MODES, UpdateRejected, UpdateSubmission, recompute_metrics, resolve_view
from .queries import list_statements, statement_support
from .rdf import Iri
from .store import Corpus, StoreError

TRIG_MEDIA_TYPE = "application/trig"


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse({"error": message, **extra}, status_code=status)


def _resolve_statement(raw: str, corpus: Corpus, config: Config) -> Iri | None:
    """Accept a statement IRI in raw, percent-decoded, or plain-sentence
    form and normalize it to the canonical AIDA identifier."""
    known = {s.value for s in list_statements(corpus)}
    candidates = [raw]
    try:
        candidates.append(percent_decode(raw))
    except AidaError:
        pass
    for candidate in candidates:
        if candidate in known:
            return Iri(candidate)
    ns = config.aida_namespace
    for candidate in candidates:
        sentence = candidate[len(ns):] if candidate.startswith(ns) else candidate
        try:
            decoded = percent_decode(sentence) if "%" in sentence else sentence
        except AidaError:
            continue
        if validate_aida(decoded).ok:
            iri = aida_to_iri(decoded, config.aida_iri)
            if iri.value in known:
                return iri
    return None


def create_app(store: DocumentStore, config: Config) -> FastAPI:
    app = FastAPI(title="living literature reviews", version="0.1.0")
    # the viewer may be served from a different origin than the API
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["Authorization", "Content-Type"],
    )

    def check_policy(request: Request, submitter: str, doc) -> str | None:
        if config.policy == "open":
            return None
        if config.policy == "token-list":
            header = request.headers.get("authorization", "")
            token = header.removeprefix("Bearer ").strip()
            if token and token in config.tokens:
                return None
            return "a configured bearer token is required to post updates"
        if submitter in doc.authors:
            return None
        return f"submitter {submitter!r} is not an author of this review"

    @app.get("/reviews/{review_id}")
    def get_review(review_id: str):
        try:
            doc = store.load_document(review_id)
            chain = store.version_chain()
        except DocStoreError as exc:
            return _error(404, str(exc))
        return {
            "id": doc.id,
            "title": doc.title,
            "review": doc.review.value,
            "publication_version": doc.version_index,
            "versions": list(chain.versions),
            "current_version": chain.latest,
            "modes": list(MODES),
            "sections": [
                {
                    "heading": section.heading,
                    "blocks": [{"id": block.id, "text": block.text} for block in section.blocks],
                }
                for section in doc.sections
            ],
        }

    @app.get("/reviews/{review_id}/view")
    def get_view(review_id: str, version: str | None = None, mode: str = "latest"):
        try:
            doc = store.load_document(review_id)
            chain = store.version_chain()
        except DocStoreError as exc:
            return _error(404, str(exc))
        version = version or chain.latest
        if version not in chain:
            return _error(404, f"unknown version {version}")
        if mode not in MODES:
            return _error(400, f"unknown mode {mode!r}; expected one of {list(MODES)}")
        view = resolve_view(doc, version, mode, store.corpus_at(version))
        return view.to_json()

    @app.get("/reviews/{review_id}/statements/{statement:path}/support")
    def get_support(review_id: str, statement: str):
        try:
            store.load_document(review_id)
            corpus = store.current_corpus()
        except DocStoreError as exc:
            return _error(404, str(exc))
        resolved = _resolve_statement(statement, corpus, config)
        if resolved is None:
            return _error(404, f"unknown statement {statement}")
        try:
            report = statement_support(corpus, resolved)
        except StoreError as exc:
            return _error(404, str(exc))
        return {
            "statement": report.statement.value,
            "supporting_papers": report.supporting_papers,
            "distinct_authors": report.distinct_authors,
            "conflicting": [
                {
                    "statement": entry.statement.value,
                    "supporting_papers": entry.supporting_papers,
                    "distinct_authors": entry.distinct_authors,
                }
                for entry in report.conflicting
            ],
        }

    @app.get("/reviews/{review_id}/metrics")
    def get_metrics(review_id: str):
        try:
            doc = store.load_document(review_id)
            chain = store.version_chain()
        except DocStoreError as exc:
            return _error(404, str(exc))
        corpus = store.corpus_at(chain.latest)
        return {
            "version": chain.latest,
            "metrics": [
                {"fragment": fragment_id, "value": value}
                for fragment_id, value in recompute_metrics(doc, corpus)
            ],
        }

    @app.post("/reviews/{review_id}/updates", status_code=201)
    async def post_update(review_id: str, request: Request):
        try:
            doc = store.load_document(review_id)
        except DocStoreError as exc:
            return _error(404, str(exc))
        try:
            body = await request.json()
        except Exception:  # noqa: BLE001 - malformed body is a client error
            return _error(400, "request body is not valid JSON")
        template = body.get("template", "")
        payload = body.get("payload", {})
        submitter = body.get("submitter", "") or config.creator
        denied = check_policy(request, submitter, doc)
        if denied is not None:
            return _error(403, denied)
        submission = UpdateSubmission.make(template, payload, submitter, body.get("timestamp"))
        try:
            result = store.register_update(review_id, submission, config.np_base, config.aida_iri)
        except UpdateRejected as exc:
            return _error(400, "update rejected", violations=list(exc.report.violations))
        return {
            "nanopubs": [np.uri.value for np in result.nanopubs],
            "index": result.index.uri.value,
            "version": result.index.uri.value,
        }

    @app.get("/nanopubs/{artifact_code}")
    def get_nanopub(artifact_code: str):
        from .nanopub import to_trig

        try:
            np = store.load_nanopub(artifact_code)
        except DocStoreError as exc:
            return _error(404, str(exc))
        return Response(content=to_trig(np), media_type=TRIG_MEDIA_TYPE)

    return app


def create_app_from_config(config: Config) -> FastAPI:
    store = DocumentStore(config.data_dir)
    return create_app(store, config)
