"""Text hypergraph data model.

Nodes (documents) and hyperedges (semantic groups) both carry a text
payload. All distances are measured on the induced graph where two nodes
are adjacent iff at least one hyperedge contains both.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class HypergraphError(Exception):
    """Base class for hypergraph construction and I/O errors."""


class ValidationError(HypergraphError):
    """A structural invariant is violated (dangling members, bad payloads)."""


class ParseError(HypergraphError):
    """Serialized hypergraph bytes could not be parsed."""


class UnknownNodeError(HypergraphError):
    """A node id was referenced that does not exist in the hypergraph."""


@dataclass(frozen=True)
class Hyperedge:
    """A labelled set of node ids. Members are set-semantic (no duplicates)."""

    label: str
    members: frozenset[str]

    def __init__(self, label: str, members: Iterable[str]) -> None:
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "members", frozenset(members))

    @property
    def size(self) -> int:
        return len(self.members)


class HoT:
    """Immutable hypergraph of text.

    ``nodes`` maps node id to node text; ``hyperedges`` maps edge id to a
    :class:`Hyperedge`. Every member of every hyperedge must be a known
    node id. Instances are safe for concurrent reads.
    """

    __slots__ = ("nodes", "hyperedges", "_incidence")

    def __init__(self, nodes: Mapping[str, str], hyperedges: Mapping[str, Hyperedge]) -> None:
        for nid, text in nodes.items():
            if not isinstance(nid, str) or not nid:
                raise ValidationError(f"node id must be a non-empty string, got {nid!r}")
            if not isinstance(text, str):
                raise ValidationError(f"node {nid!r} has non-string text payload")
        dangling: list[str] = []
        for eid, edge in hyperedges.items():
            if not isinstance(eid, str) or not eid:
                raise ValidationError(f"hyperedge id must be a non-empty string, got {eid!r}")
            if not isinstance(edge.label, str):
                raise ValidationError(f"hyperedge {eid!r} has non-string label")
            if not edge.members:
                raise ValidationError(f"hyperedge {eid!r} has no members")
            dangling.extend(m for m in edge.members if m not in nodes)
        if dangling:
            listed = ", ".join(repr(m) for m in sorted(set(dangling)))
            raise ValidationError(f"hyperedge members not present as nodes: {listed}")
        self.nodes: dict[str, str] = dict(nodes)
        self.hyperedges: dict[str, Hyperedge] = dict(hyperedges)
        # node id -> edge ids containing it, fixed at construction time
        incidence: dict[str, list[str]] = {nid: [] for nid in self.nodes}
        for eid in sorted(self.hyperedges):
            for member in self.hyperedges[eid].members:
                incidence[member].append(eid)
        self._incidence = incidence

    # -- queries ---------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.hyperedges)

    def edges_of(self, node_id: str) -> list[str]:
        """Ids of the hyperedges containing ``node_id``, in sorted order."""
        if node_id not in self.nodes:
            raise UnknownNodeError(f"unknown node id: {node_id!r}")
        return list(self._incidence[node_id])

    def induced_adjacency(self) -> dict[str, set[str]]:
        """Adjacency of the induced graph: u ~ v iff they share a hyperedge.

        Every node appears as a key (isolated nodes map to an empty set);
        no node is adjacent to itself.
        """
        adjacency: dict[str, set[str]] = {nid: set() for nid in self.nodes}
        for edge in self.hyperedges.values():
            for member in edge.members:
                adjacency[member].update(edge.members)
        for nid, neighbours in adjacency.items():
            neighbours.discard(nid)
        return adjacency

    def shortest_distances(self, sources: Iterable[str]) -> dict[str, dict[str, int]]:
        """Breadth-first hop counts from each source in the induced graph.

        Returns ``{source: {reachable node: distance}}`` with the source at
        distance 0; nodes absent from the inner mapping are unreachable.
        Traversal alternates node -> hyperedge -> node so hyperedge member
        sets are never expanded into cliques; crossing one hyperedge counts
        as one hop. Cost is linear in total membership size per source.
        """
        source_list = list(sources)
        for source in source_list:
            if source not in self.nodes:
                raise UnknownNodeError(f"unknown source node id: {source!r}")
        result: dict[str, dict[str, int]] = {}
        for source in source_list:
            dist = {source: 0}
            frontier = deque([source])
            seen_edges: set[str] = set()
            while frontier:
                node = frontier.popleft()
                next_hop = dist[node] + 1
                for eid in self._incidence[node]:
                    if eid in seen_edges:
                        continue
                    # the first dequeued member has minimal distance among the
                    # edge's members, so one expansion per edge is exact
                    seen_edges.add(eid)
                    for other in self.hyperedges[eid].members:
                        if other not in dist:
                            dist[other] = next_hop
                            frontier.append(other)
            result[source] = dist
        return result

    # -- transforms ------------------------------------------------------

    def prune_by_size(self, min_size: int) -> HoT:
        """Keep only hyperedges with at least ``min_size`` members.

        Nodes are unchanged; pruning may leave isolated nodes.
        """
        if min_size < 1:
            raise ValueError(f"min_size must be >= 1, got {min_size}")
        kept = {eid: e for eid, e in self.hyperedges.items() if e.size >= min_size}
        return HoT(self.nodes, kept)

    def with_edge(self, edge_id: str, label: str, members: Iterable[str]) -> HoT:
        """Return a new hypergraph with one extra hyperedge."""
        if edge_id in self.hyperedges:
            raise ValidationError(f"hyperedge id already present: {edge_id!r}")
        edges = dict(self.hyperedges)
        edges[edge_id] = Hyperedge(label, members)
        return HoT(self.nodes, edges)

    # -- serialization ---------------------------------------------------

    def serialize(self) -> bytes:
        """Canonical UTF-8 JSON bytes: sorted keys, sorted member lists.

        Byte output is deterministic, so structurally equal hypergraphs
        serialize identically and files diff cleanly.
        """
        doc = {
            "nodes": {nid: {"text": text} for nid, text in self.nodes.items()},
            "hyperedges": {
                eid: {"label": e.label, "members": sorted(e.members)}
                for eid, e in self.hyperedges.items()
            },
        }
        return (json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n").encode("utf-8")

    @classmethod
    def deserialize(cls, data: bytes) -> HoT:
        try:
            doc = json.loads(data.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        if not isinstance(doc, dict):
            raise ParseError("top-level value must be an object")
        nodes_raw = doc.get("nodes")
        edges_raw = doc.get("hyperedges")
        if not isinstance(nodes_raw, dict):
            raise ParseError('missing or malformed "nodes" object')
        if not isinstance(edges_raw, dict):
            raise ParseError('missing or malformed "hyperedges" object')
        nodes: dict[str, str] = {}
        for nid, payload in nodes_raw.items():
            if not isinstance(payload, dict) or not isinstance(payload.get("text"), str):
                raise ParseError(f'node {nid!r}: expected an object with a string "text" field')
            nodes[nid] = payload["text"]
        edges: dict[str, Hyperedge] = {}
        for eid, payload in edges_raw.items():
            if not isinstance(payload, dict):
                raise ParseError(f"hyperedge {eid!r}: expected an object")
            label = payload.get("label")
            members = payload.get("members")
            if not isinstance(label, str):
                raise ParseError(f'hyperedge {eid!r}: missing string "label" field')
            if not isinstance(members, list) or not all(isinstance(m, str) for m in members):
                raise ParseError(f'hyperedge {eid!r}: "members" must be a list of node ids')
            edges[eid] = Hyperedge(label, members)
        return cls(nodes, edges)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HoT):
            return NotImplemented
        return self.nodes == other.nodes and self.hyperedges == other.hyperedges

    def __repr__(self) -> str:
        return f"HoT(nodes={self.node_count}, hyperedges={self.edge_count})"

    def __iter__(self) -> Iterator[str]:
        return iter(self.nodes)
