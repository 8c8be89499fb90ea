"""Read-only FastAPI service over one loaded hypergraph.

All responses are pure functions of the immutable hypergraph, so the
service is safe under concurrent requests. The static browser bundle, if
present, is mounted at the web root.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from ..hypergraph import HoT
from .schemas import (
    EdgeRef,
    EdgeResponse,
    MemberRef,
    MetaResponse,
    NeighborGroup,
    NeighborsResponse,
    NodeResponse,
    SearchResponse,
)

TITLE_MAX_CHARS = 80
SNIPPET_MAX_CHARS = 400


def derive_title(node_id: str, text: str) -> str:
    """Display title for a node: first non-empty text line, else the id."""
    for line in text.splitlines():
        line = line.strip()
        if line:
            return line if len(line) <= TITLE_MAX_CHARS else line[:TITLE_MAX_CHARS].rstrip() + "…"
    return node_id


def create_app(hot: HoT, label: str = "hot", static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="hotnav browse API", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET"], allow_headers=["*"]
    )

    titles = {nid: derive_title(nid, text) for nid, text in hot.nodes.items()}

    def member_ref(node_id: str) -> MemberRef:
        # bounded raw head; display truncation at a word boundary is the UI's job
        snippet = " ".join(hot.nodes[node_id].split())[:SNIPPET_MAX_CHARS]
        return MemberRef(id=node_id, title=titles[node_id], snippet=snippet)

    def edge_ref(edge_id: str) -> EdgeRef:
        edge = hot.hyperedges[edge_id]
        return EdgeRef(id=edge_id, label=edge.label, size=edge.size)

    @app.get("/api/meta", response_model=MetaResponse)
    def meta() -> MetaResponse:
        return MetaResponse(node_count=hot.node_count, edge_count=hot.edge_count, label=label)

    @app.get("/api/nodes/{node_id:path}", response_model=NodeResponse)
    def node(node_id: str) -> NodeResponse:
        if node_id not in hot.nodes:
            raise HTTPException(status_code=404, detail=f"unknown node id: {node_id}")
        return NodeResponse(
            id=node_id,
            title=titles[node_id],
            text=hot.nodes[node_id],
            hyperedges=[edge_ref(eid) for eid in hot.edges_of(node_id)],
        )

    @app.get("/api/hyperedges/{edge_id:path}", response_model=EdgeResponse)
    def hyperedge(edge_id: str) -> EdgeResponse:
        edge = hot.hyperedges.get(edge_id)
        if edge is None:
            raise HTTPException(status_code=404, detail=f"unknown hyperedge id: {edge_id}")
        return EdgeResponse(
            id=edge_id,
            label=edge.label,
            members=[member_ref(m) for m in sorted(edge.members)],
        )

    @app.get("/api/search", response_model=SearchResponse)
    def search(q: str = "", limit: int = 50) -> SearchResponse:
        limit = max(0, limit)
        needle = q.lower()
        edges = []
        for eid in sorted(hot.hyperedges):
            if len(edges) >= limit:
                break
            if needle in hot.hyperedges[eid].label.lower():
                edges.append(edge_ref(eid))
        budget = limit - len(edges)
        nodes = []
        for nid in sorted(hot.nodes):
            if len(nodes) >= budget:
                break
            if needle in titles[nid].lower():
                nodes.append(member_ref(nid))
        return SearchResponse(query=q, nodes=nodes, edges=edges)

    @app.get("/api/neighbors/{node_id:path}", response_model=NeighborsResponse)
    def neighbors(node_id: str) -> NeighborsResponse:
        if node_id not in hot.nodes:
            raise HTTPException(status_code=404, detail=f"unknown node id: {node_id}")
        groups = []
        for eid in hot.edges_of(node_id):
            edge = hot.hyperedges[eid]
            others = sorted(m for m in edge.members if m != node_id)
            groups.append(
                NeighborGroup(
                    edge_id=eid, label=edge.label, nodes=[member_ref(m) for m in others]
                )
            )
        return NeighborsResponse(id=node_id, groups=groups)

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
