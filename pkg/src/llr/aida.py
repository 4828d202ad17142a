"""AIDA statements: English claim sentences doubling as IRI identifiers.

A statement's IRI is the AIDA namespace followed by the percent-encoded
sentence. The codec is fixed: RFC 3986 unreserved characters (letters,
digits, ``-._~``) pass through untouched, everything else becomes %XX with
uppercase hex — so spaces are %20, apostrophes %27, commas %2C. Decoding is
strict: a '%' not followed by two hex digits is an error, never passed
through silently.

Only the surface form of a sentence is checkable by machine (casing,
terminal period, one line, non-empty); atomicity and independence are
semantic properties left to authors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rdf import Iri
from .validation import ValidationReport

DEFAULT_AIDA_NAMESPACE = Iri("http://purl.org/aida/")

_UNRESERVED = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-._~")
_HEX_DIGITS = set("0123456789abcdefABCDEF")


class AidaError(ValueError):
    pass


@dataclass(frozen=True)
class AidaStatement:
    """A single-sentence English claim, validated on construction."""

    text: str

    def __post_init__(self) -> None:
        report = validate_aida(self.text)
        if not report.ok:
            raise AidaError("not a valid AIDA sentence: " + "; ".join(report.violations))


def validate_aida(text: str) -> ValidationReport:
    """Check the machine-checkable AIDA surface rules."""
    violations: list[str] = []
    if not text:
        violations.append("sentence is empty")
    if not text.endswith(".") or text.endswith(".."):
        violations.append("sentence must end with exactly one '.'")
    if not text or not (text[0].isupper() or text[0].isdigit()):
        violations.append("sentence must start with an uppercase letter or digit")
    if "\n" in text or "\r" in text:
        violations.append("sentence must not contain line breaks")
    return ValidationReport.collect(violations)


def percent_encode(text: str) -> str:
    out: list[str] = []
    for byte in text.encode("utf-8"):
        char = chr(byte)
        if char in _UNRESERVED:
            out.append(char)
        else:
            out.append(f"%{byte:02X}")
    return "".join(out)


def percent_decode(encoded: str) -> str:
    out = bytearray()
    i = 0
    while i < len(encoded):
        c = encoded[i]
        if c == "%":
            if len(encoded) < i + 3:
                raise AidaError(f"truncated percent escape at offset {i}")
            hi, lo = encoded[i + 1], encoded[i + 2]
            if hi not in _HEX_DIGITS or lo not in _HEX_DIGITS:
                raise AidaError(f"malformed percent escape {encoded[i:i+3]!r} at offset {i}")
            out.append(int(hi + lo, 16))
            i += 3
        else:
            out.extend(c.encode("utf-8"))
            i += 1
    try:
        return out.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise AidaError(f"percent-decoded bytes are not valid UTF-8: {exc}") from None


def aida_to_iri(statement: AidaStatement | str, namespace: Iri = DEFAULT_AIDA_NAMESPACE) -> Iri:
    """Build the identifier IRI for a statement; decoding it recovers the
    sentence exactly."""
    if isinstance(statement, str):
        statement = AidaStatement(statement)
    return Iri(namespace.value + percent_encode(statement.text))


def aida_from_iri(iri: Iri, namespace: Iri = DEFAULT_AIDA_NAMESPACE) -> AidaStatement:
    """Recover the statement encoded in an AIDA identifier."""
    if not iri.value.startswith(namespace.value):
        raise AidaError(f"not in the AIDA namespace {namespace.value}: {iri.value}")
    return AidaStatement(percent_decode(iri.value[len(namespace.value):]))


def is_aida_iri(iri: Iri, namespace: Iri = DEFAULT_AIDA_NAMESPACE) -> bool:
    return iri.value.startswith(namespace.value)
