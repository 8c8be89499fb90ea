"""Pydantic response models for the read-only browse API."""

from pydantic import BaseModel


class MetaResponse(BaseModel):
    node_count: int
    edge_count: int
    label: str


class EdgeRef(BaseModel):
    id: str
    label: str
    size: int


class MemberRef(BaseModel):
    id: str
    title: str
    snippet: str = ""


class NodeResponse(BaseModel):
    id: str
    title: str
    text: str
    hyperedges: list[EdgeRef]


class EdgeResponse(BaseModel):
    id: str
    label: str
    members: list[MemberRef]


class SearchResponse(BaseModel):
    query: str
    nodes: list[MemberRef]
    edges: list[EdgeRef]


class NeighborGroup(BaseModel):
    edge_id: str
    label: str
    nodes: list[MemberRef]


class NeighborsResponse(BaseModel):
    id: str
    groups: list[NeighborGroup]
