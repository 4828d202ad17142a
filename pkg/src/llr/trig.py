"""Deterministic TriG-subset parser and serializer.

The supported subset: @prefix declarations, named graph blocks, the ``a``
keyword, ``;`` predicate lists, ``,`` object lists, string literals (plain,
typed, language-tagged), blank node labels, and ``#`` comments. No
collections, no quoted triples, no default-graph statements, no @base
(every IRI must be absolute).

Serialization is canonical: prefixes sorted by label, graphs sorted by IRI,
quads within a graph sorted by the N-Quads forms of subject/predicate/object,
IRIs compressed to prefixed names whenever the local part survives
re-parsing. parse_trig(serialize_trig(d)) == d for every dataset.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .rdf import (
    XSD_STRING,
    BlankNode,
    Dataset,
    Iri,
    Literal,
    Object,
    PrefixMap,
    Quad,
    RDF_TYPE,
    Subject,
    escape_string,
    nq_term,
)

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")


class TrigParseError(ValueError):
    """Parse failure with 1-based line and column of the offending input."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class TrigSyntaxError(TrigParseError):
    pass


class UndefinedPrefixError(TrigParseError):
    pass


class RelativeIriError(TrigParseError):
    pass


@dataclass(frozen=True)
class _Token:
    kind: str  # IRIREF PNAME BNODE STRING LANGTAG DTYPE A PUNCT PREFIX_DECL EOF
    value: str
    line: int
    col: int
    extra: str = ""  # local part for PNAME


_PN_PREFIX_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*")
_LANG_RE = re.compile(r"[A-Za-z]+(?:-[A-Za-z0-9]+)*")
_HEX = set("0123456789abcdefABCDEF")
_LOCAL_CHARS = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-.%")
_STRING_ESCAPES = {
    "\\": "\\",
    '"': '"',
    "'": "'",
    "n": "\n",
    "r": "\r",
    "t": "\t",
    "b": "\b",
    "f": "\f",
}


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str, line: int | None = None, col: int | None = None) -> TrigSyntaxError:
        return TrigSyntaxError(message, self.line if line is None else line, self.col if col is None else col)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.text):
                if self.text[self.pos] == "\n":
                    self.line += 1
                    self.col = 1
                else:
                    self.col += 1
                self.pos += 1

    def _peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def _skip_ws_and_comments(self) -> None:
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c in " \t\r\n":
                self._advance()
            elif c == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def tokens(self) -> list[_Token]:
        out = []
        while True:
            tok = self.next_token()
            out.append(tok)
            if tok.kind == "EOF":
                return out

    def next_token(self) -> _Token:
        self._skip_ws_and_comments()
        line, col = self.line, self.col
        c = self._peek()
        if not c:
            return _Token("EOF", "", line, col)
        if c in "{}.;,":
            self._advance()
            return _Token("PUNCT", c, line, col)
        if c == "<":
            return self._iriref(line, col)
        if c in "\"'":
            return self._string(line, col)
        if c == "@":
            return self._at_word(line, col)
        if c == "^":
            if self._peek(1) == "^":
                self._advance(2)
                return _Token("DTYPE", "^^", line, col)
            raise self.error("expected '^^'")
        if c == "_" and self._peek(1) == ":":
            return self._bnode(line, col)
        return self._pname_or_keyword(line, col)

    def _iriref(self, line: int, col: int) -> _Token:
        self._advance()  # <
        chars: list[str] = []
        while True:
            c = self._peek()
            if not c or c == "\n":
                raise self.error("unterminated IRI", line, col)
            if c == ">":
                self._advance()
                break
            if c == "\\":
                chars.append(self._uchar(line, col))
                continue
            chars.append(c)
            self._advance()
        value = "".join(chars)
        if not _SCHEME_RE.match(value):
            raise RelativeIriError(f"relative IRI <{value}> (no base support)", line, col)
        return _Token("IRIREF", value, line, col)

    def _uchar(self, line: int, col: int) -> str:
        # positioned on the backslash; only \uXXXX and \UXXXXXXXX inside IRIs
        self._advance()
        marker = self._peek()
        width = {"u": 4, "U": 8}.get(marker)
        if width is None:
            raise self.error(f"invalid IRI escape '\\{marker}'", line, col)
        self._advance()
        digits = ""
        for _ in range(width):
            d = self._peek()
            if d not in _HEX:
                raise self.error("bad unicode escape", line, col)
            digits += d
            self._advance()
        return chr(int(digits, 16))

    def _string(self, line: int, col: int) -> _Token:
        quote = self._peek()
        self._advance()
        chars: list[str] = []
        while True:
            c = self._peek()
            if not c or c == "\n":
                raise self.error("unterminated string", line, col)
            if c == quote:
                self._advance()
                break
            if c == "\\":
                self._advance()
                esc = self._peek()
                if esc in _STRING_ESCAPES:
                    chars.append(_STRING_ESCAPES[esc])
                    self._advance()
                elif esc in "uU":
                    self.pos -= 1
                    self.col -= 1
                    chars.append(self._uchar(line, col))
                else:
                    raise self.error(f"invalid string escape '\\{esc}'")
                continue
            chars.append(c)
            self._advance()
        return _Token("STRING", "".join(chars), line, col)

    def _at_word(self, line: int, col: int) -> _Token:
        self._advance()  # @
        m = _LANG_RE.match(self.text, self.pos)
        if not m:
            raise self.error("bare '@'", line, col)
        word = m.group(0)
        self._advance(len(word))
        if word == "prefix":
            return _Token("PREFIX_DECL", "@prefix", line, col)
        if word == "base":
            raise self.error("@base is not supported (absolute IRIs only)", line, col)
        return _Token("LANGTAG", word, line, col)

    def _bnode(self, line: int, col: int) -> _Token:
        self._advance(2)  # _:
        chars: list[str] = []
        while self._peek() and (self._peek().isalnum() or self._peek() == "_"):
            chars.append(self._peek())
            self._advance()
        if not chars:
            raise self.error("empty blank node label", line, col)
        return _Token("BNODE", "".join(chars), line, col)

    def _pname_or_keyword(self, line: int, col: int) -> _Token:
        m = _PN_PREFIX_RE.match(self.text, self.pos)
        prefix = m.group(0) if m else ""
        after = self.pos + len(prefix)
        if after < len(self.text) and self.text[after] == ":":
            self._advance(len(prefix) + 1)
            local = self._local_part()
            return _Token("PNAME", prefix, line, col, extra=local)
        if prefix == "a":
            self._advance(1)
            return _Token("A", "a", line, col)
        raise self.error(f"unexpected character {self._peek()!r}")

    def _local_part(self) -> str:
        chars: list[str] = []
        while True:
            c = self._peek()
            if c not in _LOCAL_CHARS or not c:
                break
            if c == "%":
                if self._peek(1) not in _HEX or self._peek(2) not in _HEX:
                    raise self.error("'%' in prefixed name must start a %XX escape")
            chars.append(c)
            self._advance()
        # trailing dots belong to the statement, not the name
        while chars and chars[-1] == ".":
            chars.pop()
            self.pos -= 1
            self.col -= 1
        return "".join(chars)


class _Parser:
    def __init__(self, text: str):
        self.toks = _Lexer(text).tokens()
        self.i = 0
        self.prefixes: dict[str, Iri] = {}
        self.quads: list[Quad] = []

    def peek(self) -> _Token:
        return self.toks[self.i]

    def take(self) -> _Token:
        tok = self.toks[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def expect_punct(self, value: str) -> _Token:
        tok = self.take()
        if tok.kind != "PUNCT" or tok.value != value:
            raise TrigSyntaxError(f"expected {value!r}, found {tok.value!r}", tok.line, tok.col)
        return tok

    def parse(self) -> Dataset:
        while True:
            tok = self.peek()
            if tok.kind == "EOF":
                break
            if tok.kind == "PREFIX_DECL":
                self.take()
                self._prefix_decl()
            else:
                self._graph_block()
        return Dataset(self.quads, PrefixMap(self.prefixes))

    def _prefix_decl(self) -> None:
        name = self.take()
        if name.kind != "PNAME" or name.extra:
            raise TrigSyntaxError("expected prefix label ending in ':'", name.line, name.col)
        ns = self.take()
        if ns.kind != "IRIREF":
            raise TrigSyntaxError("expected namespace IRI", ns.line, ns.col)
        self.expect_punct(".")
        self.prefixes[name.value] = Iri(ns.value)

    def _resolve(self, tok: _Token) -> Iri:
        if tok.kind == "IRIREF":
            try:
                return Iri(tok.value)
            except ValueError as exc:
                raise TrigSyntaxError(str(exc), tok.line, tok.col) from None
        if tok.kind == "PNAME":
            if tok.value not in self.prefixes:
                raise UndefinedPrefixError(f"undefined prefix {tok.value!r}:", tok.line, tok.col)
            try:
                return Iri(self.prefixes[tok.value].value + tok.extra)
            except ValueError as exc:
                raise TrigSyntaxError(str(exc), tok.line, tok.col) from None
        raise TrigSyntaxError(f"expected IRI, found {tok.value!r}", tok.line, tok.col)

    def _graph_block(self) -> None:
        graph = self._resolve(self.take())
        self.expect_punct("{")
        while True:
            tok = self.peek()
            if tok.kind == "PUNCT" and tok.value == "}":
                self.take()
                return
            if tok.kind == "EOF":
                raise TrigSyntaxError("unterminated graph block", tok.line, tok.col)
            self._triples(graph)
            nxt = self.peek()
            if nxt.kind == "PUNCT" and nxt.value == ".":
                self.take()
            elif not (nxt.kind == "PUNCT" and nxt.value == "}"):
                raise TrigSyntaxError(f"expected '.' or '}}', found {nxt.value!r}", nxt.line, nxt.col)

    def _subject(self) -> Subject:
        tok = self.peek()
        if tok.kind == "BNODE":
            self.take()
            return BlankNode(tok.value)
        return self._resolve(self.take())

    def _verb(self) -> Iri:
        tok = self.peek()
        if tok.kind == "A":
            self.take()
            return RDF_TYPE
        return self._resolve(self.take())

    def _object(self) -> Object:
        tok = self.take()
        if tok.kind == "BNODE":
            return BlankNode(tok.value)
        if tok.kind == "STRING":
            nxt = self.peek()
            if nxt.kind == "LANGTAG":
                self.take()
                return Literal(tok.value, language=nxt.value)
            if nxt.kind == "DTYPE":
                self.take()
                dtype = self._resolve(self.take())
                try:
                    return Literal(tok.value, datatype=dtype)
                except ValueError as exc:
                    raise TrigSyntaxError(str(exc), tok.line, tok.col) from None
            return Literal(tok.value)
        if tok.kind in ("IRIREF", "PNAME"):
            return self._resolve(tok)
        raise TrigSyntaxError(f"expected object, found {tok.value!r}", tok.line, tok.col)

    def _triples(self, graph: Iri) -> None:
        subject = self._subject()
        while True:
            predicate = self._verb()
            while True:
                obj = self._object()
                self.quads.append(Quad(subject, predicate, obj, graph))
                nxt = self.peek()
                if nxt.kind == "PUNCT" and nxt.value == ",":
                    self.take()
                    continue
                break
            nxt = self.peek()
            if nxt.kind == "PUNCT" and nxt.value == ";":
                self.take()
                # tolerate a dangling ';' before '.' or '}'
                after = self.peek()
                if after.kind == "PUNCT" and after.value in (".", "}"):
                    return
                continue
            return


def parse_trig(text: str) -> Dataset:
    """Parse TriG text into a Dataset with all prefixes expanded.

    Raises TrigSyntaxError / UndefinedPrefixError / RelativeIriError, each
    carrying the 1-based line and column.
    """
    return _Parser(text).parse()


_LOCAL_SAFE_RE = re.compile(r"^(?:[A-Za-z0-9_\-.]|%[0-9A-Fa-f]{2})*$")


def _local_is_safe(local: str) -> bool:
    # must re-lex identically: allowed chars only, %XX escapes intact, and no
    # trailing dot (the lexer would hand it back to the statement)
    if local.endswith("."):
        return False
    if not _LOCAL_SAFE_RE.match(local):
        return False
    for m in re.finditer("%", local):
        if not re.match(r"%[0-9A-Fa-f]{2}", local[m.start():]):
            return False
    return True


class _Compressor:
    def __init__(self, prefixes: PrefixMap):
        # longest namespace wins; ties broken by smallest label for determinism
        self.by_ns: list[tuple[str, str]] = sorted(
            ((ns.value, label) for label, ns in prefixes.items()),
            key=lambda pair: (-len(pair[0]), pair[1]),
        )

    def term(self, term: Subject | Object) -> str:
        if isinstance(term, Iri):
            return self.iri(term)
        if isinstance(term, BlankNode):
            return f"_:{term.label}"
        out = f'"{escape_string(term.lexical)}"'
        if term.language is not None:
            return f"{out}@{term.language}"
        if term.datatype != XSD_STRING:
            return f"{out}^^{self.iri(term.datatype)}"
        return out

    def iri(self, iri: Iri) -> str:
        for ns, label in self.by_ns:
            if iri.value.startswith(ns):
                local = iri.value[len(ns):]
                if _local_is_safe(local):
                    return f"{label}:{local}"
        return f"<{iri.value}>"

    def verb(self, iri: Iri) -> str:
        if iri == RDF_TYPE:
            return "a"
        return self.iri(iri)


def serialize_trig(d: Dataset) -> str:
    """Serialize canonically; the output re-parses to an equal Dataset."""
    comp = _Compressor(d.prefixes)
    lines: list[str] = []
    for label in sorted(d.prefixes):
        lines.append(f"@prefix {label}: <{d.prefixes[label].value}> .")
    if lines:
        lines.append("")
    for graph in d.graphs():
        lines.append(f"{comp.iri(graph)} {{")
        quads = d.graph(graph)
        i = 0
        while i < len(quads):
            subject = quads[i].subject
            parts: list[str] = []
            while i < len(quads) and quads[i].subject == subject:
                predicate = quads[i].predicate
                objs: list[str] = []
                while i < len(quads) and quads[i].subject == subject and quads[i].predicate == predicate:
                    objs.append(comp.term(quads[i].object))
                    i += 1
                parts.append(f"{comp.verb(predicate)} {', '.join(objs)}")
            joined = " ;\n    ".join(parts)
            lines.append(f"  {comp.term(subject)} {joined} .")
        lines.append("}")
        lines.append("")
    if lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + ("\n" if lines else "")


def dataset_from_file(path: str) -> Dataset:
    with open(path, encoding="utf-8") as fh:
        return parse_trig(fh.read())


def dataset_to_file(d: Dataset, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_trig(d))
