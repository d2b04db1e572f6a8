"""Write the five-service worked-example corpus (WS1..WS5) as a bundled manifest."""

import json
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "wsnet" / "data"
IRI = "http://wsnet.example/micro"

OPS = {
    # service: [(op, inputs, outputs)]
    "WS1": [("op1", "ab", "d"), ("op2", "c", "ef")],
    "WS2": [("op3", "f", "gh")],
    "WS3": [("op6", "ghi", "jk")],
    "WS4": [("op4", "a", "bd")],
    "WS5": [("op5", "ab", "de")],
}


def params(names):
    return [{"name": n, "concept": f"{IRI}#{n}"} for n in names]


def main():
    manifest = {
        "services": [
            {"id": sid, "operations": [{"id": oid, "inputs": params(i), "outputs": params(o)} for oid, i, o in ops]}
            for sid, ops in OPS.items()
        ],
        "ontologyFiles": ["micro_ontology.json"],
    }
    ontology = {"iri": IRI, "concepts": list("abcdefghijk"), "subClassOf": []}
    (DATA / "micro.json").write_text(json.dumps(manifest, indent=2) + "\n")
    (DATA / "micro_ontology.json").write_text(json.dumps(ontology, indent=2) + "\n")


if __name__ == "__main__":
    main()
