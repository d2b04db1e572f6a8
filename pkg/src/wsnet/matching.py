"""Parameter matching: string similarity metrics and concept subsumption operators.

Syntactic kinds compare parameter names; semantic kinds compare concepts. In
every ordered comparison the *provided* parameter (an output) comes first and
the *required* one (an input) second, so ``plugin`` holds when the provided
concept is strictly more specific than the required one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernels
from .errors import MissingConcept, SpecError, UnknownConcept
from .model import DEFAULT_THRESHOLD, Matching, Ontology, Parameter

_NON_ALNUM = re.compile(r"[\W_]+")


@dataclass(frozen=True)
class MatchingConfig:
    kind: Matching
    threshold: Optional[float] = None

    def __post_init__(self):
        kind = Matching(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind.is_approximate:
            if self.threshold is None:
                object.__setattr__(self, "threshold", DEFAULT_THRESHOLD)
            if not 0.0 <= self.threshold <= 1.0:
                raise SpecError(f"threshold {self.threshold} outside [0, 1]")
        elif self.threshold is not None:
            raise SpecError(f"{kind.value} matching takes no threshold")


# ----------------------------------------------------------------------------
# string metrics
# ----------------------------------------------------------------------------


def levenshtein_distance(a: str, b: str) -> int:
    """Minimum number of single-character insertions, deletions and substitutions."""
    return kernels.levenshtein(a, b)


def levenshtein_similarity(a: str, b: str) -> float:
    """``1 - d / max(|a|, |b|)``; 1.0 for two empty strings."""
    return kernels.normalized_levenshtein(a, b)


def jaro_similarity(a: str, b: str) -> float:
    """Jaro similarity with match window ``max(|a|,|b|)//2 - 1``.

    Transpositions are half the number of matched characters that appear in a
    different order in the two strings.
    """
    return kernels.jaro(a, b)


def jaro_winkler_similarity(a: str, b: str) -> float:
    """Jaro boosted by a common prefix of up to 4 characters, scale 0.1."""
    return kernels.jaro_winkler(a, b)


def smooth_filter(name: str) -> str:
    """Lowercase, drop non-alphanumerics, then drop trailing digits.

    >>> smooth_filter("_AUTHOR1")
    'author'
    """
    return _NON_ALNUM.sub("", name.lower()).rstrip("0123456789")


def smoothed_similarity(a: str, b: str) -> float:
    return kernels.normalized_levenshtein(smooth_filter(a), smooth_filter(b))


_SCORERS = {
    Matching.LEVENSHTEIN: levenshtein_similarity,
    Matching.JARO: jaro_similarity,
    Matching.WINKLER: jaro_winkler_similarity,
    Matching.SMOOTHED: smoothed_similarity,
}

_KERNEL_METRIC = {
    Matching.LEVENSHTEIN: kernels.METRIC_LEVENSHTEIN,
    Matching.SMOOTHED: kernels.METRIC_LEVENSHTEIN,
    Matching.JARO: kernels.METRIC_JARO,
    Matching.WINKLER: kernels.METRIC_WINKLER,
}


def similarity(kind: Matching, a: str, b: str) -> float:
    return _SCORERS[Matching(kind)](a, b)


# ----------------------------------------------------------------------------
# pairwise predicates
# ----------------------------------------------------------------------------


def match_syntactic(provided: Parameter, required: Parameter, cfg: MatchingConfig) -> bool:
    if cfg.kind.is_semantic:
        raise SpecError(f"{cfg.kind.value} is not a syntactic matching")
    if cfg.kind is Matching.EQUAL:
        return provided.name == required.name
    return similarity(cfg.kind, provided.name, required.name) >= cfg.threshold - kernels.python_backend.EPS


def _concepts(provided: Parameter, required: Parameter, ont: Optional[Ontology]) -> tuple[str, str]:
    for p in (provided, required):
        if p.concept is None:
            raise MissingConcept(f"parameter {p.instance_id!r} has no concept")
    if ont is None:
        raise UnknownConcept("semantic matching needs an ontology")
    for p in (provided, required):
        if p.concept not in ont:
            raise UnknownConcept(f"concept {p.concept!r} is not in the ontology")
    return provided.concept, required.concept


def concept_relation(kind: Matching, c1: str, c2: str, ont: Ontology) -> bool:
    """Semantic operator on an ordered concept pair (provided first)."""
    if kind is Matching.EXACT:
        return c1 == c2
    if kind is Matching.PLUGIN:
        return c1 != c2 and ont.is_sub_concept_of(c1, c2)
    if kind is Matching.SUBSUME:
        return c1 != c2 and ont.is_sub_concept_of(c2, c1)
    if kind is Matching.FITIN:
        # exact or plugin
        return ont.is_sub_concept_of(c1, c2)
    raise SpecError(f"{kind.value} is not a semantic matching")


def match_semantic(provided: Parameter, required: Parameter, ont: Optional[Ontology], cfg: MatchingConfig) -> bool:
    if not cfg.kind.is_semantic:
        raise SpecError(f"{cfg.kind.value} is not a semantic matching")
    c1, c2 = _concepts(provided, required, ont)
    return concept_relation(cfg.kind, c1, c2, ont)


def match(provided: Parameter, required: Parameter, cfg: MatchingConfig, ont: Optional[Ontology] = None) -> bool:
    if cfg.kind.is_semantic:
        return match_semantic(provided, required, ont, cfg)
    return match_syntactic(provided, required, cfg)


# ----------------------------------------------------------------------------
# bulk matching
# ----------------------------------------------------------------------------


def parameter_key(param: Parameter, kind: Matching) -> str:
    """The attribute a matching kind looks at: the concept for semantic kinds, else the name."""
    if kind.is_semantic:
        if param.concept is None:
            raise MissingConcept(f"parameter {param.instance_id!r} has no concept")
        return param.concept
    return param.name


def match_index(
    provided: Sequence[str],
    required: Sequence[str],
    cfg: MatchingConfig,
    ont: Optional[Ontology] = None,
) -> list[list[int]]:
    """All-pairs matching of distinct keys (names or concepts).

    Returns, for each provided key, the indices of the required keys it
    satisfies. Approximate kinds run through the compiled kernel.
    """
    kind = cfg.kind
    if not provided or not required:
        return [[] for _ in provided]
    if kind is Matching.EQUAL:
        where = {key: j for j, key in enumerate(required)}
        return [[where[k]] if k in where else [] for k in provided]

    if kind.is_approximate:
        metric = _KERNEL_METRIC[kind]
        if kind is Matching.SMOOTHED:
            left = [smooth_filter(s) for s in provided]
            right = [smooth_filter(s) for s in required]
        else:
            left, right = list(provided), list(required)
        return kernels.match_pairs(metric, left, right, cfg.threshold)

    if ont is None:
        raise UnknownConcept("semantic matching needs an ontology")
    for c in list(provided) + list(required):
        if c not in ont:
            raise UnknownConcept(f"concept {c!r} is not in the ontology")
    where = {key: j for j, key in enumerate(required)}
    if kind is Matching.EXACT:
        return [[where[c]] if c in where else [] for c in provided]
    if kind is Matching.SUBSUME:
        # c1 strictly above c2: invert the ancestor lists of the required side
        below: dict[str, list[int]] = {}
        for j, c2 in enumerate(required):
            for anc in ont.ancestors(c2):
                if anc != c2:
                    below.setdefault(anc, []).append(j)
        return [sorted(below.get(c1, ())) for c1 in provided]
    strict = kind is Matching.PLUGIN
    out = []
    for c1 in provided:
        hits = [where[a] for a in ont.ancestors(c1) if a in where and not (strict and a == c1)]
        out.append(sorted(hits))
    return out
