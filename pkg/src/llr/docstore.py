"""File-backed, append-only persistence for a living review.

Layout under the data directory:

    nanopubs/<artifact-code>.trig   one canonical TriG file per nanopub
    journal.log                     one index IRI per line, oldest first
    documents/<id>.json             living document structure

Nanopub files are content-addressed and never rewritten; every update adds
files and appends one journal line. The corpus for any version is rebuilt
deterministically from the files listed by that version's index. Reads work
on immutable snapshots; writers serialize through a process-level lock and
swap the cached snapshot only after all files are on disk.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from .livingdoc import (
    LivingDocument,
    UpdateSubmission,
    build_update_nanopubs,
    document_from_json,
    document_to_json,
    VersionChain,
)
from .nanopub import (
    Nanopublication,
    NanopubError,
    build_index,
    from_trig,
    to_trig,
    validate,
    verify_trusty,
)
from .rdf import Iri
from .store import Corpus


class DocStoreError(ValueError):
    pass


@dataclass(frozen=True)
class UpdateResult:
    nanopubs: tuple[Nanopublication, ...]
    index: Nanopublication
    corpus: Corpus


class DocumentStore:
    """All state for one data directory; safe for concurrent readers with a
    single serialized writer."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.nanopub_dir = self.root / "nanopubs"
        self.journal_path = self.root / "journal.log"
        self.documents_dir = self.root / "documents"
        self._write_lock = threading.Lock()
        self._corpus_cache: dict[str, Corpus] = {}

    def initialize(self) -> None:
        self.nanopub_dir.mkdir(parents=True, exist_ok=True)
        self.documents_dir.mkdir(parents=True, exist_ok=True)
        if not self.journal_path.exists():
            self.journal_path.write_text("", encoding="utf-8")

    # --- nanopub files ---------------------------------------------------

    def _file_for(self, np: Nanopublication) -> Path:
        code = np.artifact_code()
        if code is None:
            raise DocStoreError(f"only trusty nanopubs persist: {np.uri.value}")
        return self.nanopub_dir / f"{code}.trig"

    def save_nanopub(self, np: Nanopublication) -> Path:
        report = validate(np)
        if not report.ok:
            raise DocStoreError(f"refusing to persist invalid nanopub: {report.violations}")
        if not verify_trusty(np):
            raise DocStoreError(f"refusing to persist unverifiable nanopub {np.uri.value}")
        path = self._file_for(np)
        text = to_trig(np)
        if path.exists():
            if path.read_text(encoding="utf-8") != text:
                raise DocStoreError(f"append-only violation: {path.name} exists with different content")
            return path
        path.write_text(text, encoding="utf-8", newline="\n")
        return path

    def load_nanopub(self, uri_or_code: str) -> Nanopublication:
        code = uri_or_code.rsplit("/", 1)[-1]
        path = self.nanopub_dir / f"{code}.trig"
        if not path.exists():
            raise DocStoreError(f"no nanopub file {path.name}")
        return from_trig(path.read_text(encoding="utf-8"))

    def all_nanopubs(self) -> list[Nanopublication]:
        return [
            from_trig(path.read_text(encoding="utf-8"))
            for path in sorted(self.nanopub_dir.glob("*.trig"))
        ]

    # --- journal and versions --------------------------------------------

    def journal(self) -> list[str]:
        if not self.journal_path.exists():
            return []
        return [line.strip() for line in self.journal_path.read_text(encoding="utf-8").splitlines() if line.strip()]

    def append_index(self, index_iri: Iri) -> None:
        with open(self.journal_path, "a", encoding="utf-8", newline="\n") as fh:
            fh.write(index_iri.value + "\n")

    def version_chain(self) -> VersionChain:
        entries = self.journal()
        if not entries:
            raise DocStoreError("empty journal: no published release")
        return VersionChain(tuple(entries))

    def current_index(self) -> str:
        return self.version_chain().latest

    # --- corpus snapshots --------------------------------------------------

    def corpus_at(self, index_iri: str) -> Corpus:
        """Deterministically rebuild the snapshot an index describes (the
        index's elements plus the index itself)."""
        cached = self._corpus_cache.get(index_iri)
        if cached is not None:
            return cached
        index_np = self.load_nanopub(index_iri)
        if index_np.uri.value != index_iri:
            raise DocStoreError(f"index file mismatch for {index_iri}")
        from .nanopub import parse_index

        parsed = parse_index(index_np)
        nanopubs = [self.load_nanopub(e.value) for e in parsed.elements]
        nanopubs.append(index_np)
        corpus = Corpus.from_nanopubs(nanopubs)
        self._corpus_cache[index_iri] = corpus
        return corpus

    def current_corpus(self) -> Corpus:
        return self.corpus_at(self.current_index())

    # --- documents -----------------------------------------------------------

    def save_document(self, doc: LivingDocument) -> Path:
        path = self.documents_dir / f"{doc.id}.json"
        path.write_text(
            json.dumps(document_to_json(doc), indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8",
            newline="\n",
        )
        return path

    def load_document(self, doc_id: str) -> LivingDocument:
        path = self.documents_dir / f"{doc_id}.json"
        if not path.exists():
            raise DocStoreError(f"no document {doc_id!r}")
        return document_from_json(json.loads(path.read_text(encoding="utf-8")))

    def document_ids(self) -> list[str]:
        return sorted(path.stem for path in self.documents_dir.glob("*.json"))

    # --- publishing and updating ----------------------------------------------

    def publish(
        self,
        nanopubs: list[Nanopublication],
        index: Nanopublication,
        documents: list[LivingDocument] = (),
    ) -> None:
        """Persist an initial release: all element files, the index file, one
        journal line, and the documents."""
        if self.journal():
            raise DocStoreError("store already has a published release")
        self.initialize()
        for np in nanopubs:
            self.save_nanopub(np)
        self.save_nanopub(index)
        self.append_index(index.uri)
        for doc in documents:
            self.save_document(doc)

    def register_update(
        self,
        doc_id: str,
        submission: UpdateSubmission,
        base: Iri,
        aida_namespace: Iri,
    ) -> UpdateResult:
        """Validate, build, persist, and advance the index; the previous
        snapshot stays untouched and resolvable."""
        with self._write_lock:
            doc = self.load_document(doc_id)
            current = self.current_index()
            corpus = self.corpus_at(current)
            new_nanopubs = build_update_nanopubs(submission, doc, corpus, base, aida_namespace)
            from .livingdoc import UpdateRejected
            from .validation import ValidationReport

            for np in new_nanopubs:
                if np.uri.value in corpus.nanopubs:
                    raise UpdateRejected(
                        ValidationReport((f"update is already registered as {np.uri.value}",))
                    )
            old_elements = self.corpus_at(current).indexes[current].elements
            new_index = build_index(
                list(old_elements) + [np.uri for np in new_nanopubs],
                supersedes=Iri(current),
                creator=Iri(submission.submitter),
                timestamp=submission.timestamp,
                base=base,
            )
            for np in new_nanopubs:
                self.save_nanopub(np)
            self.save_nanopub(new_index)
            self.append_index(new_index.uri)
            return UpdateResult(tuple(new_nanopubs), new_index, self.corpus_at(new_index.uri.value))

    # --- verification -----------------------------------------------------------

    def verify_all(self) -> list[str]:
        """Re-parse, validate, and re-hash every file; check the journal
        forms one supersedes chain. Returns problems (empty = clean)."""
        problems: list[str] = []
        by_uri: dict[str, Nanopublication] = {}
        for path in sorted(self.nanopub_dir.glob("*.trig")):
            try:
                np = from_trig(path.read_text(encoding="utf-8"))
            except Exception as exc:  # noqa: BLE001 - report, don't crash
                problems.append(f"{path.name}: unparseable ({exc})")
                continue
            report = validate(np)
            if not report.ok:
                problems.append(f"{path.name}: {'; '.join(report.violations)}")
            if not verify_trusty(np):
                problems.append(f"{path.name}: trusty verification failed")
            if to_trig(np) != path.read_text(encoding="utf-8"):
                problems.append(f"{path.name}: not in canonical form")
            by_uri[np.uri.value] = np
        journal = self.journal()
        if not journal:
            problems.append("journal.log: empty")
            return problems
        from .nanopub import parse_index

        previous: str | None = None
        for i, index_iri in enumerate(journal):
            np = by_uri.get(index_iri)
            if np is None:
                problems.append(f"journal[{i}]: missing index file for {index_iri}")
                continue
            try:
                parsed = parse_index(np)
            except NanopubError as exc:
                problems.append(f"journal[{i}]: {exc}")
                continue
            expected = previous
            actual = parsed.supersedes.value if parsed.supersedes else None
            if actual != expected:
                problems.append(
                    f"journal[{i}]: supersedes {actual}, expected {expected}"
                )
            for element in parsed.elements:
                if element.value not in by_uri:
                    problems.append(f"journal[{i}]: dangling element {element.value}")
            previous = index_iri
        return problems
