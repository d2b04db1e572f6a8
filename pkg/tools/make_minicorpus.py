"""Write the bundled 40-service synthetic corpus and its ontology.

Eight thematic families of five single-operation services. Within a family
four operations produce the family's hub output (so they form small
similarity clusters) and a fifth "planner" consumes the previous family's hub
and produces this family's inputs plus the shared DATE parameter, chaining
the families into one composition structure. Two planners also need a
parameter nobody produces, which detaches one family in full mode. Two parameter names carry
numbered variants (``_AUTHOR1``, ``CITY2``) bound to the same concept as the
plain name, so syntactic and semantic networks differ.

Annotations also vary in specificity: planners additionally return their
parameters at a narrower (``Preferred*``) and a broader (parent) concept, and
the ``get_<extra>_<hub>`` operations also return a narrower ``Featured*`` and a
broader hub. This gives plugin and subsume matchings something to connect.
"""

import json
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "wsnet" / "data"
IRI = "http://wsnet.example/minicorpus"

# family: (hub, primary input, secondary input, extra output)
FAMILIES = [
    ("HOTEL", "CITY", "REGION", "RATING"),
    ("FLIGHT", "AIRPORT", "AIRLINE", "SEAT"),
    ("BOOK", "AUTHOR", "PUBLISHER", "PRICE"),
    ("CAR", "DEALER", "BRAND", "MILEAGE"),
    ("FORECAST", "LOCATION", "COORDINATES", "TEMPERATURE"),
    ("RESTAURANT", "CUISINE", "DISTRICT", "MENU"),
    ("MUSEUM", "EXHIBITION", "ARTIST", "TICKET"),
    ("CONCERT", "VENUE", "BAND", "ADMISSION"),
]
VARIANTS = {"AUTHOR": "_AUTHOR1", "CITY": "CITY2"}
# planner inputs nobody produces: they cut the chain on both sides of the
# CONCERT family, leaving it a separate component in full-mode interaction
UNSUPPLIED = {"hotel": "MEMBERSHIP", "concert": "PASSPORT"}

ONTOLOGY = {
    "Thing": None,
    "Place": "Thing", "Agent": "Thing", "Offer": "Thing", "Attribute": "Thing", "Time": "Thing",
    "City": "Place", "Region": "Place", "Airport": "Place", "Location": "Place", "Coordinates": "Location",
    "District": "Region", "Venue": "Place",
    "Airline": "Agent", "Author": "Agent", "Publisher": "Agent", "Dealer": "Agent", "Artist": "Agent",
    "Band": "Agent", "Brand": "Agent",
    "Accommodation": "Offer", "Hotel": "Accommodation", "Flight": "Offer", "Book": "Offer", "Car": "Offer",
    "Restaurant": "Offer", "Museum": "Offer", "Concert": "Offer", "Exhibition": "Offer", "Ticket": "Offer",
    "Admission": "Ticket", "Seat": "Ticket", "Menu": "Offer",
    "Forecast": "Attribute", "Rating": "Attribute", "Price": "Attribute", "Mileage": "Attribute",
    "Temperature": "Attribute", "Cuisine": "Attribute",
    "Date": "Time",
    "Passport": "Attribute", "Membership": "Attribute",
}


# narrower concepts for annotations more specific than the plain parameter
for _hub, _x, _y, _extra in FAMILIES:
    for _name, _prefix in ((_hub, "Featured"), (_x, "Preferred"), (_y, "Preferred")):
        ONTOLOGY[_prefix + _name.capitalize()] = _name.capitalize()
ONTOLOGY["PreferredDate"] = "Date"


def concept(name: str) -> str:
    base = {v: k for k, v in VARIANTS.items()}.get(name, name)
    return f"{IRI}#{base.capitalize()}"


def p(*names):
    return [{"name": n, "concept": concept(n)} for n in names]


def broader(name):
    """The parent concept, exposed under its own parameter name."""
    parent = ONTOLOGY[concept(name).rsplit("#", 1)[1]]
    return {"name": parent.upper(), "concept": f"{IRI}#{parent}"}


def narrower(name, prefix):
    base = concept(name).rsplit("#", 1)[1]
    return {"name": f"{prefix.upper()}_{name.lstrip('_')}", "concept": f"{IRI}#{prefix}{base}"}


def variant(name):
    return VARIANTS.get(name, name)


def main():
    services = []
    for k, (hub, x, y, extra) in enumerate(FAMILIES):
        prev_hub = FAMILIES[k - 1][0]
        fam = hub.lower()
        ops = [
            (f"get_{hub}", p(x, "DATE"), p(hub)),
            (f"find_{hub}", p(variant(x)), p(hub)),
            (f"{y.lower()}_{hub}", p(y), p(hub)),
            (f"get_{extra}_{hub}", p(x), p(hub, extra) + [narrower(hub, "Featured"), broader(hub)]),
            (f"plan_{fam}", p(prev_hub, *filter(None, [UNSUPPLIED.get(fam)])),
             p(x, y, "DATE") + [narrower(n, "Preferred") for n in (x, y, "DATE")] + [broader(n) for n in (x, y, "DATE")]),
        ]
        for oid, ins, outs in ops:
            services.append({"id": f"{oid}_service", "operations": [{"id": oid, "inputs": ins, "outputs": outs}]})
    manifest = {"services": services, "ontologyFiles": ["minicorpus_ontology.json"]}
    ontology = {
        "iri": IRI,
        "concepts": list(ONTOLOGY),
        "subClassOf": [[c, parent] for c, parent in ONTOLOGY.items() if parent],
    }
    (DATA / "minicorpus.json").write_text(json.dumps(manifest, indent=2) + "\n")
    (DATA / "minicorpus_ontology.json").write_text(json.dumps(ontology, indent=2) + "\n")


if __name__ == "__main__":
    main()
