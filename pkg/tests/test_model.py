import itertools
import random

import pytest

from synth import closure_by_squaring, random_collection, random_dag_ontology
from wsnet.errors import CycleError, SpecError, ValidationError
from wsnet.model import (
    Description,
    Direction,
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
    Service,
    ServiceCollection,
    SimilarityFunction,
    derive_service_signature,
)
from wsnet.networks import enumerate_taxonomy


def names(params):
    return sorted(p.name for p in params)


def test_two_operation_service_signature():
    svc = Service("WS1", (
        Operation.build("op1", "WS1", "ab", "d"),
        Operation.build("op2", "WS1", "c", "ef"),
    ))
    ins, outs = derive_service_signature(svc)
    assert names(ins) == ["a", "b", "c"]
    assert names(outs) == ["d", "e", "f"]


def test_single_operation_signature_unchanged():
    op = Operation.build("op", "S", ["x", "y"], ["z"])
    ins, outs = derive_service_signature(Service("S", (op,)))
    assert ins == op.inputs and outs == op.outputs


def test_shared_input_appears_once():
    svc = Service("S", (Operation.build("o1", "S", "a", "b"), Operation.build("o2", "S", "a", "c")))
    assert names(svc.inputs) == ["a"]


def test_parameter_identity_is_name_and_concept():
    a1 = Parameter("PARAMETER", "urn:x#price", Direction.INPUT, "op1")
    a2 = Parameter("PARAMETER", "urn:x#price", Direction.OUTPUT, "op2")
    b = Parameter("PARAMETER", "urn:x#city", Direction.INPUT, "op1")
    assert a1 == a2 and hash(a1) == hash(a2)
    assert a1 != b
    assert len({a1, a2, b}) == 2


def test_duplicate_parameters_collapse_within_a_side():
    op = Operation.build("op", "S", ["a", "a", ("a", "urn:x#a")], [])
    assert [p.key for p in op.inputs] == [("a", None), ("a", "urn:x#a")]


@pytest.mark.parametrize("name", ["", "   "])
def test_empty_parameter_name_rejected(name):
    with pytest.raises(ValidationError):
        Parameter(name)


def test_service_without_operations_rejected():
    with pytest.raises(ValidationError):
        Service("S", ())


def test_duplicate_operation_ids_across_services_rejected():
    with pytest.raises(ValidationError):
        ServiceCollection((
            Service("A", (Operation.build("op", "A"),)),
            Service("B", (Operation.build("op", "B"),)),
        ))


def test_dangling_concept_rejected_when_ontology_given():
    ont = Ontology(["urn:x#a"])
    svc = Service("S", (Operation.build("op", "S", [("p", "urn:x#missing")]),))
    with pytest.raises(ValidationError):
        ServiceCollection((svc,), ont)


def test_signature_size_bound():
    rng = random.Random(3)
    for _ in range(50):
        coll = random_collection(rng)
        for svc in coll.services:
            ins, outs = derive_service_signature(svc)
            total_in = sum(len(op.inputs) for op in svc.operations)
            assert len(ins) <= total_in
            keys = [p.key for op in svc.operations for p in op.inputs]
            assert (len(ins) == total_in) == (len(keys) == len(set(keys)))


# ----------------------------------------------------------------------------
# ontology
# ----------------------------------------------------------------------------


def test_single_edge_subsumption():
    ont = Ontology(["#novel", "#book"], [("#novel", "#book")])
    assert ont.is_sub_concept_of("#novel", "#book")
    assert not ont.is_sub_concept_of("#book", "#novel")


def test_reflexive_only_without_edges():
    ont = Ontology(["#a", "#b"])
    assert ont.is_sub_concept_of("#a", "#a")
    assert not ont.is_sub_concept_of("#a", "#b")


def test_chain_is_transitive():
    ont = Ontology(["#a", "#b", "#c"], [("#a", "#b"), ("#b", "#c")])
    assert ont.is_sub_concept_of("#a", "#c")


def test_cycle_rejected_with_witness():
    with pytest.raises(CycleError) as info:
        Ontology(["#a", "#b", "#c"], [("#a", "#b"), ("#b", "#c"), ("#c", "#a")])
    assert set(info.value.cycle) == {"#a", "#b", "#c"}


def test_undeclared_endpoint_rejected():
    with pytest.raises(ValidationError):
        Ontology(["#a"], [("#a", "#b")])


@pytest.mark.parametrize("seed", range(20))
def test_closure_matches_squaring_oracle(seed):
    ont = random_dag_ontology(random.Random(seed), 30)
    oracle = closure_by_squaring(ont)
    for (a, b), expected in oracle.items():
        assert ont.is_sub_concept_of(a, b) == expected


# ----------------------------------------------------------------------------
# network spec
# ----------------------------------------------------------------------------


def _all_combinations():
    for d, g, m, k in itertools.product(Description, Granularity, Model, Matching):
        for mode in [None, *Mode]:
            for fn in [None, *SimilarityFunction]:
                yield dict(description=d, granularity=g, model=m, matching=k, mode=mode, similarity_function=fn)


def test_validation_accepts_exactly_the_taxonomy():
    accepted = set()
    for combo in _all_combinations():
        try:
            accepted.add(NetworkSpec(**combo))
        except SpecError:
            pass
    assert accepted == set(enumerate_taxonomy())
    assert len(accepted) == 46


@pytest.mark.parametrize("bad", [
    dict(description="syntactic", granularity="parameter", model="dependency", matching="jaro"),
    dict(description="semantic", granularity="service", model="interaction", matching="equal", mode="full"),
    dict(description="syntactic", granularity="service", model="interaction", matching="equal"),
    dict(description="syntactic", granularity="operation", model="similarity", matching="equal"),
    dict(description="syntactic", granularity="operation", model="interaction", matching="equal", mode="full",
         threshold=0.5),
    dict(description="syntactic", granularity="operation", model="interaction", matching="jaro", mode="full",
         threshold=1.5),
    dict(description="syntactic", granularity="bogus", model="dependency", matching="equal"),
])
def test_invalid_specs(bad):
    with pytest.raises(SpecError):
        NetworkSpec(**bad)


def test_approximate_threshold_defaults():
    spec = NetworkSpec("syntactic", "service", "interaction", "smoothed", mode="full")
    assert spec.threshold == 0.9


def test_spec_dict_round_trip():
    for spec in enumerate_taxonomy():
        assert NetworkSpec.from_dict(spec.to_dict()) == spec


def test_spec_names_are_unique():
    assert len({s.name for s in enumerate_taxonomy()}) == 46


# ----------------------------------------------------------------------------
# network
# ----------------------------------------------------------------------------


def test_network_rejects_duplicate_and_dangling_edges():
    nodes = (Node("a", "a", Granularity.OPERATION), Node("b", "b", Granularity.OPERATION))
    with pytest.raises(ValidationError):
        Network(None, True, nodes, (Edge("a", "b"), Edge("a", "b")))
    with pytest.raises(ValidationError):
        Network(None, True, nodes, (Edge("a", "c"),))
    with pytest.raises(ValidationError):
        Network(None, False, nodes, (Edge("a", "b"), Edge("b", "a")))
    assert len(Network(None, True, nodes, (Edge("a", "b"), Edge("b", "a"))).edges) == 2
