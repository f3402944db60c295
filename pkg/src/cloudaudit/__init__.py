"""cloudaudit: semantic compliance toolchain for cloud engine models.

Parses RDF/Turtle models of cloud engines, materializes RDFS subclass
entailments, answers SELECT queries, validates node shapes, computes
standards-coverage gap reports and ingests OpenStack inventory exports.
"""

__version__ = "0.1.0"

from .rdf import (  # noqa: F401
    BlankNode,
    Graph,
    Iri,
    Literal,
    PrefixMap,
    Term,
    Triple,
    TriplePattern,
    Var,
    isomorphic,
)
from .turtle import Document, ParseError, parse_turtle, serialize_turtle  # noqa: F401
from .reasoner import ClosureResult, materialize, subclasses_of  # noqa: F401
from .sparql import Query, SolutionTable, evaluate, parse_query  # noqa: F401
from .shacl import (  # noqa: F401
    NodeShape,
    PropertyConstraint,
    ShapeError,
    ValidationReport,
    parse_shapes,
    validate,
)
from .compliance import (  # noqa: F401
    ComplianceReport,
    CoverageEvidence,
    NoPolicyError,
    attached_interfaces,
    coverage,
    coverage_queries,
    remediation_hints,
    standards_of,
)
from .openstack import (  # noqa: F401
    EndpointRecord,
    IngestConfig,
    IngestError,
    JsonShapeError,
    ProjectRecord,
    RoleAssignmentRecord,
    UserRecord,
    ingest,
    parse_cli_json,
)
