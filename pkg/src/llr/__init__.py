"""Living literature reviews as networks of nanopublications."""

from .aida import AidaStatement, aida_from_iri, aida_to_iri, validate_aida
from .model import (
    BibMetadata,
    ResearchPaper,
    ReviewArticle,
    StatementRelation,
    Study,
    from_nanopub,
    mint_iri,
)
from .nanopub import (
    Nanopublication,
    NanopubIndex,
    TrustyUri,
    assemble,
    build_index,
    make_trusty,
    validate,
    verify_trusty,
)
from .rdf import BlankNode, Dataset, Iri, Literal, PrefixMap, Quad, expand, to_nquads
from .store import Corpus, NanopubKind
from .trig import parse_trig, serialize_trig

__version__ = "0.1.0"

__all__ = [
    "AidaStatement",
    "BibMetadata",
    "BlankNode",
    "Corpus",
    "Dataset",
    "Iri",
    "Literal",
    "NanopubIndex",
    "NanopubKind",
    "Nanopublication",
    "PrefixMap",
    "Quad",
    "ResearchPaper",
    "ReviewArticle",
    "StatementRelation",
    "Study",
    "TrustyUri",
    "aida_from_iri",
    "aida_to_iri",
    "assemble",
    "build_index",
    "expand",
    "from_nanopub",
    "make_trusty",
    "mint_iri",
    "parse_trig",
    "serialize_trig",
    "to_nquads",
    "validate",
    "validate_aida",
    "verify_trusty",
    "__version__",
]
