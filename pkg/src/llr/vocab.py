"""Vocabulary registry: namespaces and every predicate/class the model emits.

Namespaces for the domain ontologies (FaBiO, CiTO, HYCL, PROV-O, the
cooperation-databank vocabularies, and our own living-reviews terms) plus the
structural RDF/XSD/nanopub-container namespaces. The registry is the single
source of truth: every quad the model layer writes uses a constant from here.

``QUANTATITIVE_ANALYSIS`` keeps the original (misspelled) class name found in
the source data for fidelity; ``QUANTITATIVE_ANALYSIS`` is an alias with the
corrected spelling that expands to the same IRI.
"""

from __future__ import annotations

from .rdf import Iri, PrefixMap

# domain ontology namespaces
CDOC = "https://data.cooperationdatabank.org/vocab/class/"
CDOP = "https://data.cooperationdatabank.org/vocab/prop/"
FOAF = "http://xmlns.com/foaf/"
CITO = "http://purl.org/spar/cito/"
DCT = "http://purl.org/dc/terms/"
FABIO = "http://purl.org/spar/fabio/"
HYCL = "http://purl.org/petapico/o/hycl#"
LLR = "https://w3id.org/livingreviews/vocab/"
PROV = "http://www.w3.org/ns/prov#"

# structural namespaces
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"
NP = "http://www.nanopub.org/nschema#"
NPX = "http://purl.org/nanopub/x/"
DBPEDIA = "http://dbpedia.org/resource/"

TABLE_NAMESPACES: dict[str, str] = {
    "cdoc": CDOC,
    "cdop": CDOP,
    "foaf": FOAF,
    "cito": CITO,
    "dct": DCT,
    "fabio": FABIO,
    "hycl": HYCL,
    "llr": LLR,
    "prov": PROV,
}

# classes
REVIEW_ARTICLE = Iri(FABIO + "ReviewArticle")
RESEARCH_PAPER = Iri(FABIO + "ResearchPaper")
STUDY = Iri(CDOC + "Study")
EMPIRICAL_ARTICLE = Iri(LLR + "EmpiricalArticle")
QUANTATITIVE_ANALYSIS = Iri(LLR + "QuantatitiveAnalysis")  # spelling as in the source data
QUANTITATIVE_ANALYSIS = QUANTATITIVE_ANALYSIS  # corrected-spelling alias, same IRI
SURVEY = Iri(LLR + "Survey")
FRAGMENT_REVISION = Iri(LLR + "FragmentRevision")

# predicates
REVIEWS = Iri(CITO + "reviews")
CLAIMS = Iri(HYCL + "claims")
HAS_STUDY = Iri(CDOP + "study")
COUNTRY = Iri(CDOP + "country")
OVERALL = Iri(CDOP + "overall")
FIRST_AUTHOR_ORIGIN = Iri(LLR + "firstAuthorOrigin")
LAND_OF_FOCUS = Iri(LLR + "landOfFocus")
PRIMARY_OBJECT = Iri(LLR + "primaryObject")
THEORETICAL_APPROACH = Iri(LLR + "theoreticalApproach")
PROVIDES_EVIDENCE_FOR = Iri(LLR + "providesEvidenceFor")
PROVIDES_COUNTER_EVIDENCE_FOR = Iri(LLR + "providesCounterEvidenceFor")
REVISES_FRAGMENT = Iri(LLR + "revisesFragment")
HAS_CURRENT_VALUE = Iri(LLR + "hasCurrentValue")

HAS_RELATED_MEANING = Iri(HYCL + "hasRelatedMeaning")
HAS_MORE_SPECIFIC_MEANING_THAN = Iri(HYCL + "hasMoreSpecificMeaningThan")
HAS_MORE_GENERAL_MEANING_THAN = Iri(HYCL + "hasMoreGeneralMeaningThan")
HAS_CONFLICTING_MEANING = Iri(HYCL + "hasConflictingMeaning")
RELATION_PREDICATES = (
    HAS_RELATED_MEANING,
    HAS_MORE_SPECIFIC_MEANING_THAN,
    HAS_MORE_GENERAL_MEANING_THAN,
    HAS_CONFLICTING_MEANING,
)

WAS_DERIVED_FROM = Iri(PROV + "wasDerivedFrom")
WAS_ATTRIBUTED_TO = Iri(PROV + "wasAttributedTo")

# dct bibliographic terms
DCT_TITLE = Iri(DCT + "title")
DCT_CREATOR = Iri(DCT + "creator")
DCT_CREATED = Iri(DCT + "created")
DCT_DATE = Iri(DCT + "date")
DCT_IS_PART_OF = Iri(DCT + "isPartOf")
DCT_IDENTIFIER = Iri(DCT + "identifier")

FOAF_NAME = Iri(FOAF + "name")

# structural terms
RDF_TYPE = Iri(RDF + "type")
RDFS_CLASS = Iri(RDFS + "Class")
RDFS_LABEL = Iri(RDFS + "label")
RDF_PROPERTY = Iri(RDF + "Property")

NANOPUBLICATION = Iri(NP + "Nanopublication")
HAS_ASSERTION = Iri(NP + "hasAssertion")
HAS_PROVENANCE = Iri(NP + "hasProvenance")
HAS_PUBLICATION_INFO = Iri(NP + "hasPublicationInfo")
NANOPUB_INDEX = Iri(NPX + "NanopubIndex")
INCLUDES_ELEMENT = Iri(NPX + "includesElement")
SUPERSEDES = Iri(NPX + "supersedes")

#: every domain constant the model layer may emit, keyed by its short name
REGISTRY: dict[str, Iri] = {
    "fabio:ReviewArticle": REVIEW_ARTICLE,
    "fabio:ResearchPaper": RESEARCH_PAPER,
    "cdoc:Study": STUDY,
    "llr:EmpiricalArticle": EMPIRICAL_ARTICLE,
    "llr:QuantatitiveAnalysis": QUANTATITIVE_ANALYSIS,
    "llr:Survey": SURVEY,
    "llr:FragmentRevision": FRAGMENT_REVISION,
    "cito:reviews": REVIEWS,
    "hycl:claims": CLAIMS,
    "cdop:study": HAS_STUDY,
    "cdop:country": COUNTRY,
    "cdop:overall": OVERALL,
    "llr:firstAuthorOrigin": FIRST_AUTHOR_ORIGIN,
    "llr:landOfFocus": LAND_OF_FOCUS,
    "llr:primaryObject": PRIMARY_OBJECT,
    "llr:theoreticalApproach": THEORETICAL_APPROACH,
    "llr:providesEvidenceFor": PROVIDES_EVIDENCE_FOR,
    "llr:providesCounterEvidenceFor": PROVIDES_COUNTER_EVIDENCE_FOR,
    "llr:revisesFragment": REVISES_FRAGMENT,
    "llr:hasCurrentValue": HAS_CURRENT_VALUE,
    "hycl:hasRelatedMeaning": HAS_RELATED_MEANING,
    "hycl:hasMoreSpecificMeaningThan": HAS_MORE_SPECIFIC_MEANING_THAN,
    "hycl:hasMoreGeneralMeaningThan": HAS_MORE_GENERAL_MEANING_THAN,
    "hycl:hasConflictingMeaning": HAS_CONFLICTING_MEANING,
    "prov:wasDerivedFrom": WAS_DERIVED_FROM,
    "prov:wasAttributedTo": WAS_ATTRIBUTED_TO,
    "dct:title": DCT_TITLE,
    "dct:creator": DCT_CREATOR,
    "dct:created": DCT_CREATED,
    "dct:date": DCT_DATE,
    "dct:isPartOf": DCT_IS_PART_OF,
    "dct:identifier": DCT_IDENTIFIER,
    "foaf:name": FOAF_NAME,
}

#: the 19 vocabulary terms our corpora ship schema-definition nanopubs for
SCHEMA_TERMS: tuple[tuple[Iri, Iri], ...] = (
    (EMPIRICAL_ARTICLE, RDFS_CLASS),
    (QUANTATITIVE_ANALYSIS, RDFS_CLASS),
    (SURVEY, RDFS_CLASS),
    (STUDY, RDFS_CLASS),
    (FRAGMENT_REVISION, RDFS_CLASS),
    (FIRST_AUTHOR_ORIGIN, RDF_PROPERTY),
    (LAND_OF_FOCUS, RDF_PROPERTY),
    (PRIMARY_OBJECT, RDF_PROPERTY),
    (THEORETICAL_APPROACH, RDF_PROPERTY),
    (PROVIDES_EVIDENCE_FOR, RDF_PROPERTY),
    (PROVIDES_COUNTER_EVIDENCE_FOR, RDF_PROPERTY),
    (HAS_RELATED_MEANING, RDF_PROPERTY),
    (HAS_MORE_SPECIFIC_MEANING_THAN, RDF_PROPERTY),
    (HAS_MORE_GENERAL_MEANING_THAN, RDF_PROPERTY),
    (HAS_CONFLICTING_MEANING, RDF_PROPERTY),
    (CLAIMS, RDF_PROPERTY),
    (COUNTRY, RDF_PROPERTY),
    (OVERALL, RDF_PROPERTY),
    (HAS_STUDY, RDF_PROPERTY),
)


def default_prefixes(aida_namespace: Iri | None = None) -> PrefixMap:
    """Prefix map every serialized nanopublication starts from."""
    entries = {label: Iri(ns) for label, ns in TABLE_NAMESPACES.items()}
    entries.update(
        {
            "rdf": Iri(RDF),
            "rdfs": Iri(RDFS),
            "xsd": Iri(XSD),
            "np": Iri(NP),
            "npx": Iri(NPX),
            "dbpedia": Iri(DBPEDIA),
        }
    )
    if aida_namespace is not None:
        entries["aida"] = aida_namespace
    return PrefixMap(entries)
