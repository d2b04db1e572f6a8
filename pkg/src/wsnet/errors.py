"""Exception hierarchy shared by every wsnet module."""


class WsnetError(Exception):
    """Base class for all library errors."""


class ParseError(WsnetError):
    """Input file is not well-formed (JSON, XML) or does not match its schema."""


class ValidationError(WsnetError):
    """Input parsed but violates a model invariant (duplicate ids, empty names...)."""


class UnsupportedFeature(ParseError):
    """XML construct outside the supported SAWSDL subset."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{message} (at {path})" if path else message)
        self.path = path


class CycleError(ValidationError):
    """Ontology subsumption edges contain a cycle."""

    def __init__(self, cycle: list[str]):
        super().__init__("subsumption cycle: " + " -> ".join(cycle))
        self.cycle = cycle


class MissingConcept(WsnetError):
    """Semantic matching requested on a parameter without a concept."""


class UnknownConcept(WsnetError):
    """Concept is not declared in the ontology in use."""


class SpecError(WsnetError):
    """NetworkSpec combination outside the taxonomy."""
