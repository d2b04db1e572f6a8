"""Component-level topology: isolated nodes, trimming, weak components, giant component."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import kernels
from .model import Network, NetworkSpec


def find_isolated_nodes(net: Network) -> set[str]:
    """Nodes with no incident edge in either direction."""
    touched = {e.tail for e in net.edges} | {e.head for e in net.edges}
    return {n.id for n in net.nodes if n.id not in touched}


def trim(net: Network) -> Network:
    isolated = find_isolated_nodes(net)
    if not isolated:
        return net
    return Network(net.spec, net.directed, tuple(n for n in net.nodes if n.id not in isolated), net.edges)


def _weak_union_find(net: Network) -> list[set[str]]:
    ids = net.node_ids
    pos = {nid: k for k, nid in enumerate(ids)}
    labels = kernels.component_labels(
        len(ids), [pos[e.tail] for e in net.edges], [pos[e.head] for e in net.edges]
    )
    groups: dict[int, set[str]] = defaultdict(set)
    for nid, lab in zip(ids, labels):
        groups[lab].add(nid)
    return list(groups.values())


def _weak_bfs(net: Network) -> list[set[str]]:
    adj: dict[str, set[str]] = {nid: set() for nid in net.node_ids}
    for e in net.edges:
        adj[e.tail].add(e.head)
        adj[e.head].add(e.tail)
    seen: set[str] = set()
    out = []
    for start in net.node_ids:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            for nxt in adj[queue.popleft()]:
                if nxt not in comp:
                    comp.add(nxt)
                    queue.append(nxt)
        seen |= comp
        out.append(comp)
    return out


def _order(components: list[set[str]]) -> list[set[str]]:
    return sorted(components, key=lambda c: (-len(c), min(c)))


def weak_components(net: Network, method: str = "union_find") -> list[set[str]]:
    """Partition of the nodes, ignoring edge direction; largest component first.

    ``method`` is ``"union_find"`` (kernel-backed) or ``"bfs"``.
    """
    if method == "union_find":
        return _order(_weak_union_find(net))
    if method == "bfs":
        return _order(_weak_bfs(net))
    raise ValueError(f"unknown component method {method!r}")


def strong_components(net: Network) -> list[set[str]]:
    """Strongly connected components (iterative Tarjan); undirected networks fall back to weak ones."""
    if not net.directed:
        return weak_components(net)
    succ: dict[str, list[str]] = {nid: [] for nid in net.node_ids}
    for e in net.edges:
        succ[e.tail].append(e.head)
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    out: list[set[str]] = []
    counter = 0
    for root in net.node_ids:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(succ[nxt])))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == node:
                        break
                out.append(comp)
    return _order(out)


@dataclass
class TopologyReport:
    total_nodes: int = 0
    total_edges: int = 0
    isolated_nodes: int = 0
    isolated_fraction: float = 0.0
    trimmed_nodes: int = 0
    trimmed_edges: int = 0
    # (size in nodes, internal edges), largest first
    components: list[tuple[int, int]] = field(default_factory=list)
    giant_node_fraction: float = 0.0
    giant_edge_fraction: float = 0.0
    small_component_min: Optional[int] = None
    small_component_max: Optional[int] = None
    components_for_90_percent: int = 0
    empty_trimmed: bool = True
    strong_component_sizes: Optional[list[int]] = None
    spec: Optional[NetworkSpec] = None

    @property
    def component_count(self) -> int:
        return len(self.components)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["components"] = [{"size": s, "edges": e} for s, e in self.components]
        data["spec"] = self.spec.to_dict() if self.spec else None
        return {_JSON_NAMES[k]: v for k, v in data.items()}

    @classmethod
    def from_dict(cls, data: dict) -> "TopologyReport":
        kwargs = {_FIELD_NAMES[k]: v for k, v in data.items()}
        kwargs["components"] = [(c["size"], c["edges"]) for c in kwargs.get("components", [])]
        if kwargs.get("spec") is not None:
            kwargs["spec"] = NetworkSpec.from_dict(kwargs["spec"])
        return cls(**kwargs)


def _camel(name: str) -> str:
    head, *rest = name.split("_")
    return head + "".join(w.capitalize() for w in rest)


_JSON_NAMES = {name: _camel(name) for name in TopologyReport.__dataclass_fields__}
_FIELD_NAMES = {v: k for k, v in _JSON_NAMES.items()}


def analyze(net: Network, strong: bool = False) -> TopologyReport:
    """Every report field; giant fractions are relative to the trimmed network."""
    isolated = find_isolated_nodes(net)
    trimmed = trim(net)
    comps = weak_components(trimmed)
    where = {nid: k for k, comp in enumerate(comps) for nid in comp}
    internal = [0] * len(comps)
    for e in trimmed.edges:
        internal[where[e.tail]] += 1
    components = [(len(c), internal[k]) for k, c in enumerate(comps)]

    rep = TopologyReport(
        total_nodes=len(net.nodes),
        total_edges=len(net.edges),
        isolated_nodes=len(isolated),
        isolated_fraction=len(isolated) / len(net.nodes) if net.nodes else 0.0,
        trimmed_nodes=len(trimmed.nodes),
        trimmed_edges=len(trimmed.edges),
        components=components,
        empty_trimmed=not trimmed.nodes,
        spec=net.spec,
    )
    if components:
        rep.giant_node_fraction = components[0][0] / rep.trimmed_nodes
        rep.giant_edge_fraction = components[0][1] / rep.trimmed_edges if rep.trimmed_edges else 0.0
        small = [s for s, _ in components[1:]]
        if small:
            rep.small_component_min, rep.small_component_max = min(small), max(small)
        covered = 0
        for k, (size, _) in enumerate(components, 1):
            covered += size
            if 10 * covered >= 9 * rep.trimmed_nodes:
                rep.components_for_90_percent = k
                break
    if strong:
        rep.strong_component_sizes = [len(c) for c in strong_components(net)]

    assert sum(s for s, _ in components) == rep.trimmed_nodes
    assert sum(e for _, e in components) == rep.trimmed_edges
    return rep
