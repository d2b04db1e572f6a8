"""Core domain types: services, operations, parameters, ontologies, specs, networks.

Every type here is immutable once constructed. Parameter identity (hash and
equality) is the ``(name, concept)`` pair; ``direction`` and ``owner`` ride
along as metadata so that set operations behave as parameter-set semantics.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Optional

from .errors import CycleError, SpecError, ValidationError

DEFAULT_THRESHOLD = 0.9


class Direction(str, Enum):
    INPUT = "input"
    OUTPUT = "output"


class Description(str, Enum):
    SYNTACTIC = "syntactic"
    SEMANTIC = "semantic"


class Granularity(str, Enum):
    SERVICE = "service"
    OPERATION = "operation"
    PARAMETER = "parameter"


class Model(str, Enum):
    DEPENDENCY = "dependency"
    INTERACTION = "interaction"
    SIMILARITY = "similarity"


class Mode(str, Enum):
    FULL = "full"
    PARTIAL = "partial"


class Matching(str, Enum):
    EQUAL = "equal"
    LEVENSHTEIN = "levenshtein"
    JARO = "jaro"
    WINKLER = "winkler"
    SMOOTHED = "smoothed"
    EXACT = "exact"
    PLUGIN = "plugin"
    SUBSUME = "subsume"
    FITIN = "fitin"

    @property
    def is_semantic(self) -> bool:
        return self in SEMANTIC_MATCHINGS

    @property
    def is_approximate(self) -> bool:
        return self in APPROXIMATE_MATCHINGS


class SimilarityFunction(str, Enum):
    FULLSIM = "fullsim"
    PARTIALSIM = "partialsim"
    EXCESSSIM = "excesssim"
    RELATIONSIM = "relationsim"


SYNTACTIC_MATCHINGS = (
    Matching.EQUAL,
    Matching.LEVENSHTEIN,
    Matching.JARO,
    Matching.WINKLER,
    Matching.SMOOTHED,
)
SEMANTIC_MATCHINGS = (Matching.EXACT, Matching.PLUGIN, Matching.SUBSUME, Matching.FITIN)
APPROXIMATE_MATCHINGS = (
    Matching.LEVENSHTEIN,
    Matching.JARO,
    Matching.WINKLER,
    Matching.SMOOTHED,
)
# matchings that induce an equivalence relation, usable for merging parameter nodes
EQUIVALENCE_MATCHINGS = (Matching.EQUAL, Matching.EXACT)
SYMMETRIC_SIMILARITY = (SimilarityFunction.FULLSIM, SimilarityFunction.RELATIONSIM)


# ----------------------------------------------------------------------------
# services
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Parameter:
    name: str
    concept: Optional[str] = None
    direction: Direction = field(default=Direction.INPUT, compare=False)
    owner: str = field(default="", compare=False)

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name.strip():
            raise ValidationError(f"empty parameter name in operation {self.owner!r}")
        if self.concept is not None and not self.concept.strip():
            raise ValidationError(f"empty concept on parameter {self.name!r}")

    @property
    def key(self) -> tuple[str, Optional[str]]:
        return (self.name, self.concept)

    @property
    def instance_id(self) -> str:
        side = "in" if self.direction is Direction.INPUT else "out"
        base = f"{self.owner}:{side}:{self.name}"
        return f"{base}|{self.concept}" if self.concept else base


def _dedupe(params: Iterable[Parameter]) -> tuple[Parameter, ...]:
    seen: dict[tuple, Parameter] = {}
    for p in params:
        seen.setdefault(p.key, p)
    return tuple(seen.values())


@dataclass(frozen=True)
class Operation:
    id: str
    service: str
    inputs: tuple[Parameter, ...] = ()
    outputs: tuple[Parameter, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise ValidationError("operation with empty id")
        # duplicate (name, concept) pairs on one side collapse to one parameter
        object.__setattr__(self, "inputs", _dedupe(self.inputs))
        object.__setattr__(self, "outputs", _dedupe(self.outputs))

    @classmethod
    def build(
        cls,
        id: str,
        service: str,
        inputs: Iterable = (),
        outputs: Iterable = (),
    ) -> "Operation":
        """Convenience constructor taking names or ``(name, concept)`` tuples."""

        def params(items, direction):
            out = []
            for item in items:
                if isinstance(item, Parameter):
                    name, concept = item.name, item.concept
                elif isinstance(item, str):
                    name, concept = item, None
                else:
                    name, concept = item
                out.append(Parameter(name, concept, direction, id))
            return out

        return cls(id, service, tuple(params(inputs, Direction.INPUT)), tuple(params(outputs, Direction.OUTPUT)))

    @property
    def parameters(self) -> tuple[Parameter, ...]:
        return self.inputs + self.outputs


@dataclass(frozen=True)
class Service:
    id: str
    operations: tuple[Operation, ...]

    def __post_init__(self):
        object.__setattr__(self, "operations", tuple(self.operations))
        if not self.id:
            raise ValidationError("service with empty id")
        if not self.operations:
            raise ValidationError(f"service {self.id!r} has no operations")
        for op in self.operations:
            if op.service != self.id:
                raise ValidationError(f"operation {op.id!r} claims service {op.service!r}, not {self.id!r}")

    @property
    def inputs(self) -> tuple[Parameter, ...]:
        return derive_service_signature(self)[0]

    @property
    def outputs(self) -> tuple[Parameter, ...]:
        return derive_service_signature(self)[1]


def derive_service_signature(service: Service) -> tuple[tuple[Parameter, ...], tuple[Parameter, ...]]:
    """Service-level input and output sets: unions over its operations."""
    if not service.operations:
        raise ValidationError(f"service {service.id!r} has no operations")
    inputs = _dedupe(p for op in service.operations for p in op.inputs)
    outputs = _dedupe(p for op in service.operations for p in op.outputs)
    return inputs, outputs


# ----------------------------------------------------------------------------
# ontology
# ----------------------------------------------------------------------------


class Ontology:
    """Concept taxonomy with a precomputed reflexive-transitive subsumption closure."""

    def __init__(self, concepts: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()):
        self.concepts = frozenset(concepts)
        parents: dict[str, set[str]] = {c: set() for c in self.concepts}
        for child, parent in edges:
            for c in (child, parent):
                if c not in self.concepts:
                    raise ValidationError(f"subsumption edge endpoint {c!r} is not a declared concept")
            parents[child].add(parent)
        self.parents: Mapping[str, frozenset[str]] = {c: frozenset(ps) for c, ps in parents.items()}

        sorter = graphlib.TopologicalSorter(self.parents)
        try:
            order = list(sorter.static_order())
        except graphlib.CycleError as exc:
            raise CycleError(list(exc.args[1])) from None
        ancestors: dict[str, frozenset[str]] = {}
        for c in order:  # parents come before children
            acc = {c}
            for p in self.parents[c]:
                acc |= ancestors[p]
            ancestors[c] = frozenset(acc)
        self._ancestors = ancestors

    @property
    def edges(self) -> list[tuple[str, str]]:
        return sorted((c, p) for c, ps in self.parents.items() for p in ps)

    def __contains__(self, concept: object) -> bool:
        return concept in self.concepts

    def __len__(self) -> int:
        return len(self.concepts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ontology):
            return NotImplemented
        return self.concepts == other.concepts and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Ontology({len(self.concepts)} concepts, {len(self.edges)} edges)"

    def ancestors(self, concept: str) -> frozenset[str]:
        return self._ancestors[concept]

    def is_sub_concept_of(self, child: str, parent: str) -> bool:
        """Reflexive-transitive subsumption: ``child ⊑ parent``."""
        anc = self._ancestors.get(child)
        return anc is not None and parent in anc

    def merge(self, other: "Ontology") -> "Ontology":
        return Ontology(self.concepts | other.concepts, self.edges + other.edges)


# ----------------------------------------------------------------------------
# collection
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ServiceCollection:
    services: tuple[Service, ...] = ()
    ontology: Optional[Ontology] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "services", tuple(self.services))
        seen_services: set[str] = set()
        seen_ops: set[str] = set()
        for svc in self.services:
            if svc.id in seen_services:
                raise ValidationError(f"duplicate service id {svc.id!r}")
            seen_services.add(svc.id)
            for op in svc.operations:
                if op.id in seen_ops:
                    raise ValidationError(f"duplicate operation id {op.id!r}")
                seen_ops.add(op.id)
        if self.ontology is not None:
            for p in self.parameters():
                if p.concept is not None and p.concept not in self.ontology:
                    raise ValidationError(
                        f"parameter {p.instance_id!r} references unknown concept {p.concept!r}"
                    )

    @property
    def operations(self) -> tuple[Operation, ...]:
        return tuple(op for svc in self.services for op in svc.operations)

    def parameters(self) -> Iterator[Parameter]:
        for op in self.operations:
            yield from op.parameters

    @property
    def parameter_count(self) -> int:
        return sum(len(op.parameters) for op in self.operations)

    @property
    def fully_semantic(self) -> bool:
        """True when every parameter carries a concept (vacuously true when empty)."""
        return all(p.concept is not None for p in self.parameters())

    def subset(self, service_ids: Iterable[str]) -> "ServiceCollection":
        wanted = set(service_ids)
        missing = wanted - {s.id for s in self.services}
        if missing:
            raise ValidationError(f"unknown service ids: {sorted(missing)}")
        return ServiceCollection(tuple(s for s in self.services if s.id in wanted), self.ontology)

    def with_ontology(self, ontology: Optional[Ontology]) -> "ServiceCollection":
        return ServiceCollection(self.services, ontology)

    def merge(self, other: "ServiceCollection") -> "ServiceCollection":
        if self.ontology is None or other.ontology is None:
            ont = self.ontology or other.ontology
        else:
            ont = self.ontology.merge(other.ontology)
        return ServiceCollection(self.services + other.services, ont)


# ----------------------------------------------------------------------------
# network specification
# ----------------------------------------------------------------------------


def _enum(cls, value, what):
    if value is None or isinstance(value, cls):
        return value
    try:
        return cls(value)
    except ValueError:
        choices = ", ".join(m.value for m in cls)
        raise SpecError(f"invalid {what} {value!r} (expected one of: {choices})") from None


@dataclass(frozen=True)
class NetworkSpec:
    """One point of the five-variable network taxonomy.

    ``threshold`` defaults to ``DEFAULT_THRESHOLD`` for approximate matchings and
    must stay ``None`` otherwise. ``service_scope`` is an extension for
    dependency networks that draws dependencies per service signature instead
    of per operation.
    """

    description: Description
    granularity: Granularity
    model: Model
    matching: Matching
    mode: Optional[Mode] = None
    similarity_function: Optional[SimilarityFunction] = None
    threshold: Optional[float] = None
    service_scope: bool = False

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("description", _enum(Description, self.description, "description"))
        set_("granularity", _enum(Granularity, self.granularity, "granularity"))
        set_("model", _enum(Model, self.model, "model"))
        set_("matching", _enum(Matching, self.matching, "matching"))
        set_("mode", _enum(Mode, self.mode, "mode"))
        set_("similarity_function", _enum(SimilarityFunction, self.similarity_function, "similarity function"))
        if self.threshold is None and self.matching is not None and self.matching.is_approximate:
            set_("threshold", DEFAULT_THRESHOLD)
        if self.threshold is not None:
            set_("threshold", float(self.threshold))
        self.validate()

    def validate(self) -> None:
        d, g, m, k = self.description, self.granularity, self.model, self.matching
        if None in (d, g, m, k):
            raise SpecError("description, granularity, model and matching are all required")
        if (d is Description.SEMANTIC) != k.is_semantic:
            raise SpecError(f"{d.value} description cannot use {k.value} matching")
        if k.is_approximate:
            if not 0.0 <= self.threshold <= 1.0:
                raise SpecError(f"threshold {self.threshold} outside [0, 1]")
        elif self.threshold is not None:
            raise SpecError(f"threshold only applies to approximate matchings, not {k.value}")
        if self.service_scope and m is not Model.DEPENDENCY:
            raise SpecError("service_scope only applies to dependency networks")

        if m is Model.DEPENDENCY:
            if g is not Granularity.PARAMETER:
                raise SpecError("dependency networks have parameter granularity")
            if k not in EQUIVALENCE_MATCHINGS:
                raise SpecError("dependency networks use equal or exact matching")
            if self.mode is not None or self.similarity_function is not None:
                raise SpecError("dependency networks take neither mode nor similarity function")
        elif m is Model.INTERACTION:
            if g not in (Granularity.SERVICE, Granularity.OPERATION):
                raise SpecError("interaction networks have service or operation granularity")
            if self.mode is None:
                raise SpecError("interaction networks require a mode (full or partial)")
            if self.similarity_function is not None:
                raise SpecError("interaction networks take no similarity function")
        else:
            if g is not Granularity.OPERATION:
                raise SpecError("similarity networks have operation granularity")
            if k not in EQUIVALENCE_MATCHINGS:
                raise SpecError("similarity networks use equal or exact matching")
            if self.similarity_function is None:
                raise SpecError("similarity networks require a similarity function")
            if self.mode is not None:
                raise SpecError("similarity networks take no mode")

    @property
    def directed(self) -> bool:
        return not (self.model is Model.SIMILARITY and self.similarity_function in SYMMETRIC_SIMILARITY)

    @property
    def name(self) -> str:
        """File stem ``<model>_<description>_<granularity>_<mode>_<matching>[_<simfn>]``."""
        parts = [
            self.model.value,
            self.description.value,
            self.granularity.value,
            self.mode.value if self.mode else "na",
            self.matching.value,
        ]
        if self.similarity_function:
            parts.append(self.similarity_function.value)
        if self.service_scope:
            parts.append("servicescope")
        return "_".join(parts)

    def to_dict(self) -> dict:
        return {
            "model": self.model.value,
            "description": self.description.value,
            "granularity": self.granularity.value,
            "mode": self.mode.value if self.mode else None,
            "matching": self.matching.value,
            "similarityFunction": self.similarity_function.value if self.similarity_function else None,
            "threshold": self.threshold,
            "serviceScope": self.service_scope,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "NetworkSpec":
        return cls(
            description=data["description"],
            granularity=data["granularity"],
            model=data["model"],
            matching=data["matching"],
            mode=data.get("mode"),
            similarity_function=data.get("similarityFunction"),
            threshold=data.get("threshold"),
            service_scope=bool(data.get("serviceScope", False)),
        )


# ----------------------------------------------------------------------------
# network
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    id: str
    label: str
    kind: Granularity
    members: tuple[str, ...] = ()


@dataclass(frozen=True)
class Edge:
    tail: str
    head: str
    provenance: tuple[str, ...] = ()

    @property
    def pair(self) -> tuple[str, str]:
        return (self.tail, self.head)


@dataclass(frozen=True)
class Network:
    """Labeled graph. Undirected networks store each link once with ``tail <= head``."""

    spec: Optional[NetworkSpec]
    directed: bool
    nodes: tuple[Node, ...] = ()
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        ids = set()
        for n in self.nodes:
            if n.id in ids:
                raise ValidationError(f"duplicate node id {n.id!r}")
            ids.add(n.id)
        pairs = set()
        for e in self.edges:
            if e.tail not in ids or e.head not in ids:
                raise ValidationError(f"edge {e.tail!r} -> {e.head!r} has an unknown endpoint")
            key = e.pair if self.directed else tuple(sorted(e.pair))
            if key in pairs:
                raise ValidationError(f"duplicate edge {e.tail!r} -> {e.head!r}")
            pairs.add(key)

    @property
    def node_ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    @property
    def edge_set(self) -> set[tuple[str, str]]:
        return {e.pair for e in self.edges}

    def __len__(self) -> int:
        return len(self.nodes)
