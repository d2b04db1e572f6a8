import json
import logging
import textwrap

import pytest

from wsnet.errors import CycleError, ParseError, UnsupportedFeature, ValidationError
from wsnet.ingest import (
    dump_manifest,
    dump_ontology,
    load_collection,
    load_manifest,
    load_ontology,
    load_sawsdl_directory,
    load_sawsdl_subset,
    parse_manifest,
    parse_ontology,
    write_manifest,
)
from wsnet.model import Operation, Parameter, Service, ServiceCollection

WSDL_NS = "http://schemas.xmlsoap.org/wsdl/"
SAWSDL_NS = "http://www.w3.org/ns/sawsdl"
ONTO = "http://wsnet.example/books.owl"


def sawsdl(body: str, extra_ns: str = "") -> str:
    return textwrap.dedent(f"""\
        <?xml version="1.0" encoding="UTF-8"?>
        <wsdl:definitions xmlns:wsdl="{WSDL_NS}" xmlns:sawsdl="{SAWSDL_NS}"
                          xmlns:xs="http://www.w3.org/2001/XMLSchema" {extra_ns}>
        """) + textwrap.dedent(body) + "</wsdl:definitions>\n"


AUTHOR_BOOK = f"""\
<wsdl:message name="req">
  <wsdl:part name="_AUTHOR" sawsdl:modelReference="{ONTO}#author"/>
</wsdl:message>
<wsdl:message name="resp">
  <wsdl:part name="_BOOK" sawsdl:modelReference="{ONTO}#book"/>
</wsdl:message>
<wsdl:portType name="AuthorBookPort">
  <wsdl:operation name="get_BOOK">
    <wsdl:input message="req"/>
    <wsdl:output message="resp"/>
  </wsdl:operation>
</wsdl:portType>
<wsdl:service name="AuthorBookService"/>
"""


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def two_operation_manifest():
    return {"services": [{"id": "WS1", "operations": [
        {"id": "op1", "inputs": [{"name": "a"}, {"name": "b"}], "outputs": [{"name": "d"}]},
        {"id": "op2", "inputs": [{"name": "c"}], "outputs": [{"name": "e"}, {"name": "f"}]},
    ]}]}


def canonical(coll: ServiceCollection):
    data = dump_manifest(coll)
    return sorted(
        (s["id"], sorted((o["id"], json.dumps(sorted(o["inputs"], key=json.dumps)),
                          json.dumps(sorted(o["outputs"], key=json.dumps))) for o in s["operations"]))
        for s in data["services"]
    )


# ----------------------------------------------------------------------------
# manifest
# ----------------------------------------------------------------------------


def test_two_operation_service_manifest():
    coll = parse_manifest(two_operation_manifest())
    assert len(coll.services) == 1
    assert len(coll.operations) == 2
    assert coll.parameter_count == 6
    assert not coll.fully_semantic


def test_empty_services_list():
    assert parse_manifest({"services": []}).services == ()


def test_duplicate_operation_id():
    data = two_operation_manifest()
    data["services"][0]["operations"][1]["id"] = "op1"
    with pytest.raises(ValidationError):
        parse_manifest(data)


def test_duplicate_service_id():
    data = {"services": two_operation_manifest()["services"] * 2}
    with pytest.raises(ValidationError):
        parse_manifest(data)


@pytest.mark.parametrize("bad", [[], {"services": 3}, {"services": [{"operations": []}]},
                                 {"services": [{"id": "S", "operations": [{"id": "o", "inputs": [{"concept": "x"}]}]}]}])
def test_schema_errors(bad):
    with pytest.raises(ParseError):
        parse_manifest(bad)


def test_empty_name_rejected():
    with pytest.raises(ValidationError):
        parse_manifest({"services": [{"id": "S", "operations": [{"id": "o", "inputs": [{"name": ""}]}]}]})


def test_malformed_json(tmp_path):
    with pytest.raises(ParseError):
        load_manifest(write(tmp_path, "m.json", "{not json"))


def test_missing_ontology_file(tmp_path):
    data = dict(two_operation_manifest(), ontologyFiles=["nope.json"])
    with pytest.raises(ValidationError):
        load_manifest(write(tmp_path, "m.json", json.dumps(data)))


def test_manifest_with_ontology_and_dangling_concept(tmp_path):
    write(tmp_path, "o.json", json.dumps({"iri": ONTO, "concepts": ["author"]}))
    data = {"ontologyFiles": ["o.json"], "services": [{"id": "S", "operations": [
        {"id": "o", "inputs": [{"name": "x", "concept": f"{ONTO}#author"}]}]}]}
    coll = load_manifest(write(tmp_path, "ok.json", json.dumps(data)))
    assert coll.fully_semantic and f"{ONTO}#author" in coll.ontology
    data["services"][0]["operations"][0]["inputs"][0]["concept"] = f"{ONTO}#ghost"
    with pytest.raises(ValidationError):
        load_manifest(write(tmp_path, "bad.json", json.dumps(data)))


def test_manifest_round_trip(tmp_path, minicorpus):
    path = tmp_path / "copy.json"
    write_manifest(minicorpus, path)
    again = load_manifest(path, minicorpus.ontology)
    assert canonical(again) == canonical(minicorpus)
    assert again == minicorpus


# ----------------------------------------------------------------------------
# ontology
# ----------------------------------------------------------------------------


def test_ontology_examples(tmp_path):
    ont = parse_ontology({"iri": "urn:b", "concepts": ["novel", "book"], "subClassOf": [["novel", "book"]]})
    assert ont.is_sub_concept_of("urn:b#novel", "urn:b#book")
    assert not ont.is_sub_concept_of("urn:b#book", "urn:b#novel")
    empty = parse_ontology({"iri": "urn:e", "concepts": ["x"]})
    assert empty.is_sub_concept_of("urn:e#x", "urn:e#x")


def test_ontology_files_merge_across_edges(tmp_path):
    a = write(tmp_path, "a.json", json.dumps({"iri": "urn:o", "concepts": ["a", "b"], "subClassOf": [["a", "b"]]}))
    c = write(tmp_path, "c.json", json.dumps({"iri": "urn:o", "concepts": ["c"], "subClassOf": [["b", "c"]]}))
    ont = load_ontology([a, c])
    assert ont.is_sub_concept_of("urn:o#a", "urn:o#c")


def test_ontology_cycle_across_files(tmp_path):
    a = write(tmp_path, "a.json", json.dumps({"iri": "urn:o", "concepts": ["a", "b"], "subClassOf": [["a", "b"]]}))
    b = write(tmp_path, "b.json", json.dumps({"iri": "urn:o", "concepts": [], "subClassOf": [["b", "a"]]}))
    with pytest.raises(CycleError) as info:
        load_ontology([a, b])
    assert set(info.value.cycle) == {"urn:o#a", "urn:o#b"}


def test_ontology_round_trip(minicorpus):
    ont = minicorpus.ontology
    assert parse_ontology(dump_ontology(ont)) == ont


@pytest.mark.parametrize("bad", [{"concepts": []}, {"iri": "x", "concepts": [1]}, {"iri": "x", "subClassOf": [["a"]]}])
def test_ontology_schema_errors(bad):
    with pytest.raises(ParseError):
        parse_ontology(bad)


# ----------------------------------------------------------------------------
# SAWSDL subset
# ----------------------------------------------------------------------------


def test_sawsdl_author_book(tmp_path):
    svc = load_sawsdl_subset(write(tmp_path, "ab.wsdl", sawsdl(AUTHOR_BOOK)))
    assert svc.id == "AuthorBookService"
    (op,) = svc.operations
    assert op.id == "get_BOOK"
    assert [p.key for p in op.inputs] == [("_AUTHOR", f"{ONTO}#author")]
    assert [p.key for p in op.outputs] == [("_BOOK", f"{ONTO}#book")]


def test_sawsdl_equals_manifest_construction(tmp_path):
    svc = load_sawsdl_subset(write(tmp_path, "ab.wsdl", sawsdl(AUTHOR_BOOK)))
    direct = parse_manifest({"services": [{"id": "AuthorBookService", "operations": [{
        "id": "get_BOOK",
        "inputs": [{"name": "_AUTHOR", "concept": f"{ONTO}#author"}],
        "outputs": [{"name": "_BOOK", "concept": f"{ONTO}#book"}],
    }]}]})
    assert dump_manifest(ServiceCollection((svc,))) == dump_manifest(direct)


def test_sawsdl_without_annotations(tmp_path):
    body = AUTHOR_BOOK.replace(f' sawsdl:modelReference="{ONTO}#author"', "").replace(
        f' sawsdl:modelReference="{ONTO}#book"', "")
    svc = load_sawsdl_subset(write(tmp_path, "plain.wsdl", sawsdl(body)))
    assert all(p.concept is None for op in svc.operations for p in op.inputs + op.outputs)


def test_sawsdl_two_services(tmp_path):
    body = AUTHOR_BOOK + '<wsdl:service name="Other"/>\n'
    with pytest.raises(UnsupportedFeature) as info:
        load_sawsdl_subset(write(tmp_path, "two.wsdl", sawsdl(body)))
    assert "service" in info.value.path


def test_sawsdl_fault_is_unsupported(tmp_path):
    body = AUTHOR_BOOK.replace('<wsdl:output message="resp"/>',
                               '<wsdl:output message="resp"/>\n    <wsdl:fault name="f" message="resp"/>')
    with pytest.raises(UnsupportedFeature) as info:
        load_sawsdl_subset(write(tmp_path, "fault.wsdl", sawsdl(body)))
    assert info.value.path.endswith("operation[get_BOOK]/fault")


def test_sawsdl_unknown_top_level(tmp_path):
    body = AUTHOR_BOOK + "<wsdl:import namespace='x' location='y'/>\n"
    with pytest.raises(UnsupportedFeature):
        load_sawsdl_subset(write(tmp_path, "imp.wsdl", sawsdl(body)))


def test_sawsdl_malformed_xml(tmp_path):
    with pytest.raises(ParseError):
        load_sawsdl_subset(write(tmp_path, "bad.wsdl", "<definitions><oops></definitions>"))


def test_sawsdl_multiple_references_keep_first(tmp_path, caplog):
    body = AUTHOR_BOOK.replace(f'"{ONTO}#author"', f'"{ONTO}#author {ONTO}#writer"')
    with caplog.at_level(logging.WARNING, logger="wsnet.ingest"):
        svc = load_sawsdl_subset(write(tmp_path, "multi.wsdl", sawsdl(body)))
    assert svc.operations[0].inputs[0].concept == f"{ONTO}#author"
    assert "modelReference" in caplog.text


def test_sawsdl_schema_annotation_fallback(tmp_path):
    body = f"""\
    <wsdl:types>
      <xs:schema targetNamespace="urn:t">
        <xs:element name="Title" sawsdl:modelReference="{ONTO}#title"/>
      </xs:schema>
    </wsdl:types>
    <wsdl:message name="in"><wsdl:part name="t" element="tns:Title"/></wsdl:message>
    <wsdl:portType name="P"><wsdl:operation name="lookup"><wsdl:input message="tns:in"/></wsdl:operation></wsdl:portType>
    """
    svc = load_sawsdl_subset(write(tmp_path, "types.wsdl", sawsdl(body, 'xmlns:tns="urn:t"')))
    assert svc.id == "P"
    assert svc.operations[0].inputs[0].concept == f"{ONTO}#title"


def test_sawsdl_directory_and_lenient(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    write(d, "one.wsdl", sawsdl(AUTHOR_BOOK))
    write(d, "two.wsdl", sawsdl(AUTHOR_BOOK))
    write(d, "broken.wsdl", sawsdl(AUTHOR_BOOK + '<wsdl:service name="X"/>'))
    with pytest.raises(UnsupportedFeature):
        load_sawsdl_directory(d)
    services = load_sawsdl_directory(d, lenient=True)
    assert [s.id for s in services] == ["one", "two"]
    assert [s.operations[0].id for s in services] == ["one.get_BOOK", "two.get_BOOK"]


def test_load_collection_dispatch(tmp_path, data_dir):
    wsdl = write(tmp_path, "ab.wsdl", sawsdl(AUTHOR_BOOK))
    onto = write(tmp_path, "books.json", json.dumps({"iri": ONTO, "concepts": ["author", "book"]}))
    coll = load_collection([data_dir / "micro.json", wsdl], [onto])
    assert {s.id for s in coll.services} == {"WS1", "WS2", "WS3", "WS4", "WS5", "AuthorBookService"}
    assert f"{ONTO}#book" in coll.ontology
    with pytest.raises(FileNotFoundError):
        load_collection([tmp_path / "missing.json"])


def test_parameter_names_not_normalized():
    coll = parse_manifest({"services": [{"id": "S", "operations": [
        {"id": "o", "inputs": [{"name": "City"}, {"name": "city"}]}]}]})
    assert [p.name for p in coll.operations[0].inputs] == ["City", "city"]


def test_collection_equality_ignores_parameter_owner():
    a = Service("S", (Operation("o", "S", (Parameter("x", owner="o"),), ()),))
    b = Service("S", (Operation("o", "S", (Parameter("x", owner="zzz"),), ()),))
    assert a == b
