"""Loading service collections and ontologies from disk.

Two collection formats are read: the canonical JSON manifest::

    {"services": [{"id": "WS1", "operations": [
        {"id": "op1", "inputs": [{"name": "a", "concept": "http://x#a"}],
                      "outputs": [{"name": "d"}]}]}],
     "ontologyFiles": ["onto.json"]}

and a small WSDL 1.1 / SAWSDL subset (one service, one portType, message
parts with optional ``modelReference`` annotations). Ontology files are JSON::

    {"iri": "http://x", "concepts": ["book", "novel"], "subClassOf": [["novel", "book"]]}
"""

from __future__ import annotations

import json
import logging
import os
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, Union

from .errors import ParseError, UnsupportedFeature, ValidationError
from .model import Direction, Ontology, Operation, Parameter, Service, ServiceCollection

log = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]
SAWSDL_SUFFIXES = (".wsdl", ".sawsdl", ".xml")


def _read_json(path: PathLike) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise ParseError(msg)


# ----------------------------------------------------------------------------
# ontology
# ----------------------------------------------------------------------------


def concept_iri(iri: str, fragment: str) -> str:
    if "#" in fragment or "://" in fragment:
        return fragment
    return f"{iri.rstrip('#')}#{fragment}"


def _ontology_parts(data: Any, source: str) -> tuple[list[str], list[tuple[str, str]]]:
    _expect(isinstance(data, dict), f"{source}: ontology must be a JSON object")
    iri = data.get("iri")
    _expect(isinstance(iri, str) and bool(iri), f"{source}: missing 'iri'")
    concepts = data.get("concepts", [])
    edges = data.get("subClassOf", [])
    _expect(isinstance(concepts, list) and all(isinstance(c, str) and c for c in concepts),
            f"{source}: 'concepts' must be a list of non-empty strings")
    _expect(isinstance(edges, list)
            and all(isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e) for e in edges),
            f"{source}: 'subClassOf' must be a list of [child, parent] pairs")
    return (
        [concept_iri(iri, c) for c in concepts],
        [(concept_iri(iri, c), concept_iri(iri, p)) for c, p in edges],
    )


def parse_ontology(data: Any, source: str = "<ontology>") -> Ontology:
    return Ontology(*_ontology_parts(data, source))


def load_ontology(paths: Union[PathLike, Sequence[PathLike]]) -> Ontology:
    """Merge one or more ontology files. Edges may cross files; cycles raise ``CycleError``."""
    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]
    concepts: list[str] = []
    edges: list[tuple[str, str]] = []
    for path in paths:
        c, e = _ontology_parts(_read_json(path), str(path))
        concepts += c
        edges += e
    return Ontology(concepts, edges)


def dump_ontology(ont: Ontology, iri: str = "urn:wsnet") -> dict:
    """Serialize with absolute concept IRIs so any ``iri`` value round-trips."""
    return {"iri": iri, "concepts": sorted(ont.concepts), "subClassOf": [list(e) for e in ont.edges]}


# ----------------------------------------------------------------------------
# manifest
# ----------------------------------------------------------------------------


def _parse_params(items: Any, direction: Direction, owner: str, source: str) -> tuple[Parameter, ...]:
    _expect(isinstance(items, list), f"{source}: operation {owner!r} {direction.value}s must be a list")
    params = []
    for item in items:
        _expect(isinstance(item, dict), f"{source}: parameter entries must be objects")
        name = item.get("name")
        concept = item.get("concept")
        _expect(isinstance(name, str), f"{source}: parameter in {owner!r} lacks a string 'name'")
        _expect(concept is None or isinstance(concept, str), f"{source}: 'concept' must be a string")
        params.append(Parameter(name, concept, direction, owner))
    return tuple(params)


def parse_manifest(data: Any, source: str = "<manifest>", ontology: Optional[Ontology] = None) -> ServiceCollection:
    _expect(isinstance(data, dict), f"{source}: manifest must be a JSON object")
    services_raw = data.get("services")
    _expect(isinstance(services_raw, list), f"{source}: 'services' must be a list")
    services = []
    for s in services_raw:
        _expect(isinstance(s, dict) and isinstance(s.get("id"), str), f"{source}: service entries need a string 'id'")
        ops_raw = s.get("operations")
        _expect(isinstance(ops_raw, list), f"{source}: service {s['id']!r} needs an 'operations' list")
        ops = []
        seen = set()
        for o in ops_raw:
            _expect(isinstance(o, dict) and isinstance(o.get("id"), str),
                    f"{source}: operation entries need a string 'id'")
            if o["id"] in seen:
                raise ValidationError(f"{source}: duplicate operation id {o['id']!r}")
            seen.add(o["id"])
            ops.append(Operation(
                o["id"],
                s["id"],
                _parse_params(o.get("inputs", []), Direction.INPUT, o["id"], source),
                _parse_params(o.get("outputs", []), Direction.OUTPUT, o["id"], source),
            ))
        services.append(Service(s["id"], tuple(ops)))
    return ServiceCollection(tuple(services), ontology)


def load_manifest(path: PathLike, ontology: Optional[Ontology] = None) -> ServiceCollection:
    """Load a JSON manifest, plus any ontology files it references (relative to itself)."""
    data = _read_json(path)
    base = Path(path).parent
    files = data.get("ontologyFiles") if isinstance(data, dict) else None
    if files:
        _expect(isinstance(files, list) and all(isinstance(f, str) for f in files),
                f"{path}: 'ontologyFiles' must be a list of paths")
        resolved = [base / f for f in files]
        missing = [str(p) for p in resolved if not p.is_file()]
        if missing:
            raise ValidationError(f"{path}: ontology files not found: {missing}")
        own = load_ontology(resolved)
        ontology = own if ontology is None else ontology.merge(own)
    return parse_manifest(data, str(path), ontology)


def _param_dict(p: Parameter) -> dict:
    return {"name": p.name, "concept": p.concept} if p.concept is not None else {"name": p.name}


def dump_manifest(coll: ServiceCollection) -> dict:
    return {
        "services": [
            {
                "id": svc.id,
                "operations": [
                    {
                        "id": op.id,
                        "inputs": [_param_dict(p) for p in op.inputs],
                        "outputs": [_param_dict(p) for p in op.outputs],
                    }
                    for op in svc.operations
                ],
            }
            for svc in coll.services
        ]
    }


def write_manifest(coll: ServiceCollection, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dump_manifest(coll), fh, indent=2, ensure_ascii=False)
        fh.write("\n")


# ----------------------------------------------------------------------------
# SAWSDL subset
# ----------------------------------------------------------------------------

_TOP_LEVEL = {"documentation", "types", "message", "portType", "binding", "service"}


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1] if isinstance(tag, str) else ""


def _local_attr(elem: ET.Element, name: str) -> Optional[str]:
    for key, value in elem.attrib.items():
        if _local(key) == name:
            return value
    return None


def _qname_local(value: str) -> str:
    return value.split(":", 1)[-1]


def _model_reference(elem: ET.Element, path: str) -> Optional[str]:
    value = _local_attr(elem, "modelReference")
    if value is None:
        return None
    refs = value.split()
    if not refs:
        return None
    if len(refs) > 1:
        log.warning("%s: %d modelReference IRIs, keeping the first (%s)", path, len(refs), refs[0])
    return refs[0]


def _schema_annotations(types: ET.Element) -> dict[str, str]:
    """Named top-level schema declarations that carry a modelReference."""
    out: dict[str, str] = {}
    for schema in types:
        for decl in schema:
            name = decl.get("name")
            if name is None:
                continue
            ref = _model_reference(decl, f"types/{_local(schema.tag)}/{name}")
            if ref is not None:
                out.setdefault(name, ref)
    return out


def load_sawsdl_subset(path: PathLike, service_id: Optional[str] = None, qualify: bool = False) -> Service:
    """Parse one SAWSDL-annotated WSDL 1.1 document into a Service.

    Supported: ``definitions`` holding ``message`` elements with ``part``
    children, exactly one ``portType`` whose ``operation`` elements reference
    an input and/or output message, at most one ``service``. ``types`` is only
    consulted for modelReference annotations on declarations a part refers to
    through ``element``/``type``; ``binding`` and ``service`` contents are not
    interpreted. Anything else raises UnsupportedFeature with its element path.

    With ``qualify`` the operation ids become ``<service>.<operation>``, which
    keeps ids unique when many documents reuse operation names.
    """
    try:
        root = ET.parse(path).getroot()
    except ET.ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc

    if _local(root.tag) != "definitions":
        raise UnsupportedFeature(f"{path}: root element must be definitions", _local(root.tag))

    messages: dict[str, list[ET.Element]] = {}
    port_types: list[ET.Element] = []
    services: list[ET.Element] = []
    annotations: dict[str, str] = {}
    for child in root:
        tag = _local(child.tag)
        if not tag:  # comments, processing instructions
            continue
        if tag not in _TOP_LEVEL:
            raise UnsupportedFeature(f"{path}: unsupported element", f"definitions/{tag}")
        if tag == "message":
            name = child.get("name")
            _expect(bool(name), f"{path}: message without a name")
            parts = []
            for part in child:
                ptag = _local(part.tag)
                if ptag == "documentation" or not ptag:
                    continue
                if ptag != "part":
                    raise UnsupportedFeature(f"{path}: unsupported element", f"definitions/message[{name}]/{ptag}")
                parts.append(part)
            messages[name] = parts
        elif tag == "portType":
            port_types.append(child)
        elif tag == "service":
            services.append(child)
        elif tag == "types":
            annotations.update(_schema_annotations(child))

    if len(services) > 1:
        raise UnsupportedFeature(f"{path}: more than one service", "definitions/service")
    if len(port_types) > 1:
        raise UnsupportedFeature(f"{path}: more than one portType", "definitions/portType")
    if not port_types:
        raise ParseError(f"{path}: no portType, hence no operations")

    port_type = port_types[0]
    sid = (
        service_id
        or (services[0].get("name") if services else None)
        or port_type.get("name")
        or Path(path).stem
    )

    def params_of(message_ref: str, direction: Direction, op_id: str, where: str) -> list[Parameter]:
        mname = _qname_local(message_ref)
        if mname not in messages:
            raise ParseError(f"{path}: {where} references unknown message {mname!r}")
        out = []
        for part in messages[mname]:
            pname = part.get("name")
            ppath = f"definitions/message[{mname}]/part"
            _expect(bool(pname and pname.strip()), f"{path}: {ppath} without a name")
            concept = _model_reference(part, f"{ppath}[{pname}]")
            if concept is None:
                ref = part.get("element") or part.get("type")
                if ref is not None:
                    concept = annotations.get(_qname_local(ref))
            out.append(Parameter(pname, concept, direction, op_id))
        return out

    operations = []
    for op in port_type:
        tag = _local(op.tag)
        if tag == "documentation" or not tag:
            continue
        where = f"definitions/portType/{tag}"
        if tag != "operation":
            raise UnsupportedFeature(f"{path}: unsupported element", where)
        oname = op.get("name")
        _expect(bool(oname), f"{path}: operation without a name")
        op_id = f"{sid}.{oname}" if qualify else oname
        inputs: list[Parameter] = []
        outputs: list[Parameter] = []
        seen_io: set[str] = set()
        for io in op:
            iotag = _local(io.tag)
            if iotag == "documentation" or not iotag:
                continue
            iowhere = f"definitions/portType/operation[{oname}]/{iotag}"
            if iotag not in ("input", "output") or iotag in seen_io:
                raise UnsupportedFeature(f"{path}: unsupported element", iowhere)
            seen_io.add(iotag)
            mref = io.get("message")
            _expect(bool(mref), f"{path}: {iowhere} has no message attribute")
            if iotag == "input":
                inputs = params_of(mref, Direction.INPUT, op_id, iowhere)
            else:
                outputs = params_of(mref, Direction.OUTPUT, op_id, iowhere)
        operations.append(Operation(op_id, sid, tuple(inputs), tuple(outputs)))

    if not operations:
        raise ParseError(f"{path}: portType declares no operations")
    return Service(sid, tuple(operations))


def load_sawsdl_directory(directory: PathLike, lenient: bool = False) -> list[Service]:
    """Every SAWSDL document in a directory, sorted by filename.

    Service ids are the file stems and operation ids are qualified by them.
    With ``lenient``, documents outside the subset are skipped with a warning.
    """
    files = sorted(p for p in Path(directory).iterdir() if p.suffix.lower() in SAWSDL_SUFFIXES and p.is_file())
    services = []
    for f in files:
        try:
            services.append(load_sawsdl_subset(f, service_id=f.stem, qualify=True))
        except (UnsupportedFeature, ParseError) as exc:
            if not lenient:
                raise
            log.warning("skipped %s: %s", f, exc)
    return services


def load_collection(
    paths: Iterable[PathLike],
    ontology_paths: Iterable[PathLike] = (),
    lenient: bool = False,
) -> ServiceCollection:
    """Load and merge manifests, SAWSDL documents and directories of them.

    Concepts are checked once, against the union of every ontology involved.
    """
    ontology_paths = list(ontology_paths)
    ontology = load_ontology(ontology_paths) if ontology_paths else None
    services: list[Service] = []
    for raw in paths:
        path = Path(raw)
        if not path.exists():
            raise FileNotFoundError(f"no such file or directory: {path}")
        if path.is_dir():
            services += load_sawsdl_directory(path, lenient)
        elif path.suffix.lower() == ".json":
            part = load_manifest(path, ontology)
            services += part.services
            ontology = part.ontology
        else:
            services.append(load_sawsdl_subset(path))
    return ServiceCollection(tuple(services), ontology)
