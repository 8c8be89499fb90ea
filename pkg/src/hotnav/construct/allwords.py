"""All-words construction.

Every vocabulary word shared by at least two documents is a candidate
hyperedge over the documents containing it, scored by its mean TF-IDF
across members; only the top fraction of candidates is kept.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from ..corpus import Document, TfIdfStats
from ..hypergraph import HoT, Hyperedge

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScoredWordEdge:
    word: str
    members: frozenset[str]
    score: float


def build_word_edges(stats: TfIdfStats) -> list[ScoredWordEdge]:
    """One scored candidate edge per vocabulary word in >= 2 documents.

    Single-document words are discarded up front: they cannot connect
    anything and would only dilute the pruning budget.
    """
    members_by_term: dict[str, list[str]] = {}
    for doc_id, counts in stats.tf.items():
        for term in counts:
            members_by_term.setdefault(term, []).append(doc_id)
    edges = []
    for term in sorted(members_by_term):
        members = members_by_term[term]
        if len(members) < 2:
            continue
        idf = stats.idf(term)
        total = sum(stats.tf[doc_id][term] * idf for doc_id in members)
        edges.append(
            ScoredWordEdge(word=term, members=frozenset(members), score=total / len(members))
        )
    return edges


def prune_top_fraction(
    edges: Sequence[ScoredWordEdge], fraction: float, documents: Sequence[Document]
) -> HoT:
    """Keep the ceil(fraction * count) best-scoring candidates.

    Ties at the cut are broken by word, ascending, so output is
    deterministic. The hypergraph spans the full document node set;
    documents not covered by any kept edge stay as isolated nodes.
    """
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    nodes = {doc.id: doc.text for doc in documents}
    if not edges:
        logger.warning("no candidate word edges; emitting edgeless hypergraph")
        return HoT(nodes, {})
    keep_count = math.ceil(fraction * len(edges))
    ranked = sorted(edges, key=lambda e: (-e.score, e.word))
    kept = ranked[:keep_count]
    edge_map = {e.word: Hyperedge(e.word, e.members) for e in kept}
    return HoT(nodes, edge_map)


def build_allwords_hot(
    documents: Sequence[Document], stats: TfIdfStats, fraction: float
) -> HoT:
    return prune_top_fraction(build_word_edges(stats), fraction, documents)
