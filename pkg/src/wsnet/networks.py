"""Dependency, interaction and similarity network builders, plus the taxonomy."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import MissingConcept, SpecError, UnknownConcept
from .matching import MatchingConfig, match_index, parameter_key
from .model import (
    EQUIVALENCE_MATCHINGS,
    SEMANTIC_MATCHINGS,
    SYNTACTIC_MATCHINGS,
    DEFAULT_THRESHOLD,
    Description,
    Edge,
    Granularity,
    Matching,
    Mode,
    Model,
    Network,
    NetworkSpec,
    Node,
    Ontology,
    Operation,
    Parameter,
    ServiceCollection,
    SimilarityFunction,
    derive_service_signature,
)


def _label(key: str, semantic: bool) -> str:
    return key.rsplit("#", 1)[-1] if semantic and "#" in key else key


@dataclass(frozen=True)
class ParameterClassIndex:
    """Partition of parameter instances into the nodes of an equivalence matching.

    ``equal`` groups instances by name and ``exact`` by concept.
    """

    matching: Matching
    classes: dict[str, tuple[str, ...]]
    class_of: dict[str, str]

    @classmethod
    def build(
        cls,
        params: Iterable[Parameter],
        matching: Matching,
        ontology: Optional[Ontology] = None,
    ) -> "ParameterClassIndex":
        matching = Matching(matching)
        if matching not in EQUIVALENCE_MATCHINGS:
            raise SpecError(f"{matching.value} is not an equivalence; parameter classes need equal or exact")
        classes: dict[str, list[str]] = defaultdict(list)
        class_of: dict[str, str] = {}
        for p in params:
            key = parameter_key(p, matching)
            if matching is Matching.EXACT and (ontology is None or key not in ontology):
                raise UnknownConcept(f"concept {key!r} is not in the ontology")
            classes[key].append(p.instance_id)
            class_of[p.instance_id] = key
        return cls(matching, {k: tuple(v) for k, v in classes.items()}, class_of)

    def key(self, p: Parameter) -> str:
        return self.class_of[p.instance_id]

    def __len__(self) -> int:
        return len(self.classes)


def _resolve_ontology(coll: ServiceCollection, spec: NetworkSpec, ont: Optional[Ontology]) -> Optional[Ontology]:
    ont = ont if ont is not None else coll.ontology
    if spec.description is Description.SEMANTIC:
        missing = next((p for p in coll.parameters() if p.concept is None), None)
        if missing is not None:
            raise MissingConcept(f"parameter {missing.instance_id!r} has no concept; semantic networks need all")
        if ont is None and coll.services:
            raise UnknownConcept("semantic networks need an ontology")
    return ont


def _finish(spec: NetworkSpec, nodes: Iterable[Node], edges: dict[tuple[str, str], Iterable[str]]) -> Network:
    return Network(
        spec,
        spec.directed,
        tuple(sorted(nodes, key=lambda n: n.id)),
        tuple(Edge(t, h, tuple(sorted(set(prov)))) for (t, h), prov in sorted(edges.items())),
    )


# ----------------------------------------------------------------------------
# dependency
# ----------------------------------------------------------------------------


def build_dependency_network(
    coll: ServiceCollection,
    spec: NetworkSpec,
    ont: Optional[Ontology] = None,
) -> Network:
    """One node per parameter class; an arc from every input class to every
    output class of the same operation (or service signature with
    ``spec.service_scope``). Self-loops are dropped."""
    if spec.model is not Model.DEPENDENCY:
        raise SpecError(f"not a dependency spec: {spec.name}")
    ont = _resolve_ontology(coll, spec, ont)
    semantic = spec.description is Description.SEMANTIC
    index = ParameterClassIndex.build(coll.parameters(), spec.matching, ont)
    nodes = [
        Node(key, _label(key, semantic), Granularity.PARAMETER, tuple(sorted(members)))
        for key, members in index.classes.items()
    ]

    if spec.service_scope:
        scopes = [(svc.id, *derive_service_signature(svc)) for svc in coll.services]
    else:
        scopes = [(op.id, op.inputs, op.outputs) for op in coll.operations]

    edges: dict[tuple[str, str], list[str]] = defaultdict(list)
    for source, inputs, outputs in scopes:
        heads = {index.key(o) for o in outputs}
        for tail in {index.key(i) for i in inputs}:
            for head in heads:
                if tail != head:
                    edges[(tail, head)].append(source)
    return _finish(spec, nodes, edges)


# ----------------------------------------------------------------------------
# interaction
# ----------------------------------------------------------------------------


def _units(coll: ServiceCollection, granularity: Granularity):
    if granularity is Granularity.SERVICE:
        for svc in coll.services:
            ins, outs = derive_service_signature(svc)
            yield Node(svc.id, svc.id, Granularity.SERVICE, tuple(op.id for op in svc.operations)), ins, outs
    else:
        for op in coll.operations:
            yield Node(op.id, op.id, Granularity.OPERATION, (op.id,)), op.inputs, op.outputs


def build_interaction_network(
    coll: ServiceCollection,
    spec: NetworkSpec,
    ont: Optional[Ontology] = None,
) -> Network:
    """Arc A -> B when A's outputs supply every input of B (full mode) or at
    least one of them (partial mode). Targets without inputs get no arcs.

    Matching runs once over the distinct output and input keys; each unit is
    then reduced to two bitmasks over the input keys (what it requires and
    what its outputs can supply), so the pair test is integer arithmetic.
    Edge provenance lists the input keys of B that A supplies.
    """
    if spec.model is not Model.INTERACTION:
        raise SpecError(f"not an interaction spec: {spec.name}")
    ont = _resolve_ontology(coll, spec, ont)
    kind = spec.matching
    cfg = MatchingConfig(kind, spec.threshold)
    units = list(_units(coll, spec.granularity))

    out_keys: dict[str, int] = {}
    in_keys: dict[str, int] = {}
    unit_outs, unit_ins = [], []
    for _, ins, outs in units:
        unit_outs.append({out_keys.setdefault(parameter_key(p, kind), len(out_keys)) for p in outs})
        unit_ins.append({in_keys.setdefault(parameter_key(p, kind), len(in_keys)) for p in ins})

    matches = match_index(list(out_keys), list(in_keys), cfg, ont)
    supply = [sum(1 << j for j in set(row)) for row in matches]
    required = [sum(1 << j for j in ins) for ins in unit_ins]
    provides = []
    for outs in unit_outs:
        mask = 0
        for k in outs:
            mask |= supply[k]
        provides.append(mask)

    in_names = list(in_keys)
    full = spec.mode is Mode.FULL
    edges: dict[tuple[str, str], list[str]] = {}
    for b, need in enumerate(required):
        if not need:
            continue
        for a, have in enumerate(provides):
            if a == b:
                continue
            got = need & have
            if (got == need) if full else got:
                edges[(units[a][0].id, units[b][0].id)] = [in_names[j] for j in _bits(got)]
    return _finish(spec, (u[0] for u in units), edges)


def _bits(mask: int) -> Iterable[int]:
    j = 0
    while mask:
        if mask & 1:
            yield j
        mask >>= 1
        j += 1


# ----------------------------------------------------------------------------
# similarity
# ----------------------------------------------------------------------------


def similarity_relation(fn: SimilarityFunction, i1: frozenset, o1: frozenset, i2: frozenset, o2: frozenset) -> bool:
    """Set predicate of a similarity function on the ordered pair (1, 2)."""
    if fn is SimilarityFunction.FULLSIM:
        return o1 == o2 and bool(i1 & i2)
    if fn is SimilarityFunction.PARTIALSIM:
        return o1 > o2 and bool(i1 & i2)
    if fn is SimilarityFunction.EXCESSSIM:
        return o1 < o2 and i1 >= i2
    if fn is SimilarityFunction.RELATIONSIM:
        return o1 == o2 and not (i1 & i2)
    raise SpecError(f"unknown similarity function {fn!r}")


def build_similarity_network(
    coll: ServiceCollection,
    spec: NetworkSpec,
    ont: Optional[Ontology] = None,
) -> Network:
    """Operations linked by a set relation between their input and output
    parameter classes. fullsim and relationsim give undirected links; for
    partialsim and excesssim the arc 1 -> 2 reads "2 is similar to 1"."""
    if spec.model is not Model.SIMILARITY:
        raise SpecError(f"not a similarity spec: {spec.name}")
    ont = _resolve_ontology(coll, spec, ont)
    fn = spec.similarity_function
    index = ParameterClassIndex.build(coll.parameters(), spec.matching, ont)
    ops: Sequence[Operation] = coll.operations

    # parameter classes as bit positions; set relations become mask arithmetic
    bit = {key: 1 << k for k, key in enumerate(sorted(index.classes))}
    ins = [sum(bit[k] for k in {index.key(p) for p in op.inputs}) for op in ops]
    outs = [sum(bit[k] for k in {index.key(p) for p in op.outputs}) for op in ops]

    edges: dict[tuple[str, str], list[str]] = {}
    n = len(ops)
    if fn in (SimilarityFunction.FULLSIM, SimilarityFunction.RELATIONSIM):
        overlap_wanted = fn is SimilarityFunction.FULLSIM
        by_outputs: dict[int, list[int]] = defaultdict(list)
        for k, o in enumerate(outs):
            by_outputs[o].append(k)
        for group in by_outputs.values():
            for x, a in enumerate(group):
                for b in group[x + 1:]:
                    if bool(ins[a] & ins[b]) == overlap_wanted:
                        t, h = sorted((ops[a].id, ops[b].id))
                        edges[(t, h)] = [ops[a].id, ops[b].id]
    else:
        partial = fn is SimilarityFunction.PARTIALSIM
        for a in range(n):
            oa, ia = outs[a], ins[a]
            for b in range(n):
                if a == b:
                    continue
                ob, ib = outs[b], ins[b]
                if partial:
                    # ob strictly inside oa, overlapping inputs
                    hit = oa != ob and ob & ~oa == 0 and ia & ib
                else:
                    # oa strictly inside ob, ib inside ia
                    hit = oa != ob and oa & ~ob == 0 and ib & ~ia == 0
                if hit:
                    edges[(ops[a].id, ops[b].id)] = [ops[a].id, ops[b].id]

    nodes = [Node(op.id, op.id, Granularity.OPERATION, (op.id,)) for op in ops]
    return _finish(spec, nodes, edges)


# ----------------------------------------------------------------------------
# dispatch and taxonomy
# ----------------------------------------------------------------------------

_BUILDERS = {
    Model.DEPENDENCY: build_dependency_network,
    Model.INTERACTION: build_interaction_network,
    Model.SIMILARITY: build_similarity_network,
}


def build_network(coll: ServiceCollection, spec: NetworkSpec, ont: Optional[Ontology] = None) -> Network:
    if not isinstance(spec, NetworkSpec):
        raise SpecError(f"expected a NetworkSpec, got {type(spec).__name__}")
    return _BUILDERS[spec.model](coll, spec, ont)


def enumerate_taxonomy(threshold: float = DEFAULT_THRESHOLD) -> list[NetworkSpec]:
    """All 46 extractable networks, ordered model > description > granularity > mode > matching."""
    specs = [
        NetworkSpec(Description.SYNTACTIC, Granularity.PARAMETER, Model.DEPENDENCY, Matching.EQUAL),
        NetworkSpec(Description.SEMANTIC, Granularity.PARAMETER, Model.DEPENDENCY, Matching.EXACT),
    ]
    for description, family in ((Description.SYNTACTIC, SYNTACTIC_MATCHINGS), (Description.SEMANTIC, SEMANTIC_MATCHINGS)):
        for granularity in (Granularity.SERVICE, Granularity.OPERATION):
            for mode in (Mode.FULL, Mode.PARTIAL):
                for matching in family:
                    specs.append(NetworkSpec(
                        description, granularity, Model.INTERACTION, matching, mode=mode,
                        threshold=threshold if matching.is_approximate else None,
                    ))
    for description, matching in ((Description.SYNTACTIC, Matching.EQUAL), (Description.SEMANTIC, Matching.EXACT)):
        for fn in SimilarityFunction:
            specs.append(NetworkSpec(description, Granularity.OPERATION, Model.SIMILARITY, matching,
                                     similarity_function=fn))
    return specs
