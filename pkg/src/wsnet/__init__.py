"""Dependency, interaction and similarity networks of web-service collections.

Typical use::

    from wsnet import load_manifest, enumerate_taxonomy, build_network, analyze

    coll = load_manifest("services.json")
    for spec in enumerate_taxonomy():
        report = analyze(build_network(coll, spec))
"""

from .analysis import TopologyReport, analyze, find_isolated_nodes, strong_components, trim, weak_components
from .errors import (
    CycleError,
    MissingConcept,
    ParseError,
    SpecError,
    UnknownConcept,
    UnsupportedFeature,
    ValidationError,
    WsnetError,
)
from .export import ExportFormat, export_graph, export_report, read_graphml, read_report
from .ingest import dump_manifest, load_collection, load_manifest, load_ontology, load_sawsdl_subset
from .kernels import BACKEND
from .matching import (
    MatchingConfig,
    jaro_similarity,
    jaro_winkler_similarity,
    levenshtein_distance,
    match_semantic,
    match_syntactic,
    smoothed_similarity,
)
from .model import (
    Description,
    Granularity,
    Matching,
    Mode,
    Model,
    Network,
    NetworkSpec,
    Ontology,
    Operation,
    Parameter,
    Service,
    ServiceCollection,
    SimilarityFunction,
    derive_service_signature,
)
from .networks import (
    ParameterClassIndex,
    build_dependency_network,
    build_interaction_network,
    build_network,
    build_similarity_network,
    enumerate_taxonomy,
)

__version__ = "0.1.0"
