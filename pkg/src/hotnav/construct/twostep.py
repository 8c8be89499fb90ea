"""Two-step similarity construction.

TF-IDF keeps only the most informative sentences per document, embedding
cosine similarity picks sentence pairs (preferring pairs that repeat no
sentence or document), and an LLM names the common topic of each pair.
Pairs sharing a normalized topic key merge into one hyperedge.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from ..cache import JsonlCache
from ..corpus import Document, TfIdfStats, sentence_score
from ..hypergraph import HoT, Hyperedge
from ..prompts import common_topic_prompt
from ..providers import ChatProvider, ConfigurationError, EmbeddingProvider, ProviderError
from .llm_topics import normalize_topic, parse_topic_list

logger = logging.getLogger(__name__)

DEFAULT_K_PER_DOC = 5
DEFAULT_PAIRS_PER_DOC = 10


@dataclass
class SentenceCandidate:
    doc_id: str
    index: int
    text: str
    score: float
    embedding: np.ndarray | None = field(default=None, repr=False)

    @property
    def ref(self) -> tuple[str, int]:
        return (self.doc_id, self.index)


@dataclass(frozen=True)
class SentencePair:
    first: tuple[str, int]
    second: tuple[str, int]
    similarity: float
    from_fill: bool  # False: chosen in the no-repeat phase; True: fill phase


def filter_sentences(
    documents: Sequence[Document], stats: TfIdfStats, k_per_doc: int
) -> list[SentenceCandidate]:
    """Top ``k_per_doc`` sentences per document by mean TF-IDF score.

    Ties are broken by sentence position; documents with fewer sentences
    keep them all.
    """
    if k_per_doc < 1:
        raise ValueError(f"k_per_doc must be >= 1, got {k_per_doc}")
    candidates: list[SentenceCandidate] = []
    for doc in documents:
        scored = [
            SentenceCandidate(doc.id, s.index, s.text, sentence_score(s, stats))
            for s in doc.sentences
        ]
        scored.sort(key=lambda c: (-c.score, c.index))
        kept = scored[:k_per_doc]
        kept.sort(key=lambda c: c.index)
        candidates.extend(kept)
    candidates.sort(key=lambda c: c.ref)
    return candidates


def embed_candidates(
    candidates: Sequence[SentenceCandidate],
    provider: EmbeddingProvider,
    batch_size: int = 64,
) -> list[SentenceCandidate]:
    """Assign a unit-normalized embedding to every candidate, in batches."""
    dimension: int | None = None
    for start in range(0, len(candidates), batch_size):
        batch = candidates[start : start + batch_size]
        try:
            vectors = provider.embed([c.text for c in batch])
        except ProviderError as exc:
            raise ProviderError(f"embedding batch starting at {start} failed: {exc}") from exc
        for candidate, vector in zip(batch, vectors):
            arr = np.asarray(vector, dtype=np.float64)
            if dimension is None:
                dimension = arr.shape[0]
            elif arr.shape[0] != dimension:
                raise ConfigurationError(
                    f"embedding dimension mismatch: got {arr.shape[0]}, expected {dimension}"
                )
            norm = float(np.linalg.norm(arr))
            if norm == 0.0:
                raise ConfigurationError(f"zero embedding vector for {candidate.ref}")
            candidate.embedding = arr / norm
    return list(candidates)


def select_pairs(candidates: Sequence[SentenceCandidate], k_pairs: int) -> list[SentencePair]:
    """Pick up to ``k_pairs`` cross-document sentence pairs by cosine similarity.

    Phase 1 walks pairs in descending similarity, skipping any pair that
    would repeat an already-used sentence or document; when no such pair is
    left (or the budget is met), phase 2 fills the remainder in descending
    similarity allowing repeats but never duplicating a pair. Similarity
    ties are broken on the sorted (doc id, sentence index) pair key, so the
    result is deterministic given the embeddings.
    """
    if len(candidates) < 2:
        raise ValueError("need at least 2 candidates to select pairs")
    if k_pairs < 1:
        raise ValueError(f"k_pairs must be >= 1, got {k_pairs}")
    ordered = sorted(candidates, key=lambda c: c.ref)
    if any(c.embedding is None for c in ordered):
        raise ConfigurationError("all candidates must be embedded before pair selection")

    matrix = np.stack([c.embedding for c in ordered])
    sims = matrix @ matrix.T
    n = len(ordered)
    iu, ju = np.triu_indices(n, k=1)
    doc_ids = [c.doc_id for c in ordered]
    code_of: dict[str, int] = {}
    doc_codes = np.asarray([code_of.setdefault(d, len(code_of)) for d in doc_ids])
    cross = doc_codes[iu] != doc_codes[ju]
    iu, ju = iu[cross], ju[cross]
    if iu.size == 0:
        logger.warning("no cross-document candidate pairs available")
        return []
    values = sims[iu, ju]
    # primary: similarity descending; then lexicographic pair key ascending
    order = np.lexsort((ju, iu, -values))

    pairs: list[SentencePair] = []
    chosen: set[tuple[int, int]] = set()
    used_sentences: set[int] = set()
    used_docs: set[str] = set()
    for idx in order:
        if len(pairs) >= k_pairs:
            break
        i, j = int(iu[idx]), int(ju[idx])
        if i in used_sentences or j in used_sentences:
            continue
        if doc_ids[i] in used_docs or doc_ids[j] in used_docs:
            continue
        used_sentences.update((i, j))
        used_docs.update((doc_ids[i], doc_ids[j]))
        chosen.add((i, j))
        pairs.append(
            SentencePair(ordered[i].ref, ordered[j].ref, float(values[idx]), from_fill=False)
        )
    if len(pairs) < k_pairs:
        for idx in order:
            if len(pairs) >= k_pairs:
                break
            i, j = int(iu[idx]), int(ju[idx])
            if (i, j) in chosen:
                continue
            chosen.add((i, j))
            pairs.append(
                SentencePair(ordered[i].ref, ordered[j].ref, float(values[idx]), from_fill=True)
            )
    if len(pairs) < k_pairs:
        logger.warning(
            "requested %d pairs but only %d distinct cross-document pairs exist",
            k_pairs,
            len(pairs),
        )
    return pairs


def extract_pair_topics(
    pairs: Sequence[SentencePair],
    provider: ChatProvider,
    documents: Sequence[Document],
    cache_path: Union[str, Path, None] = None,
    max_concurrent: int = 4,
) -> HoT:
    """Name each pair's common topic and merge pairs by normalized key.

    Documents found to share a topic (an identical normalized key from any
    pair) join the same hyperedge. A pair whose provider call fails or
    whose reply yields no topic is skipped with a diagnostic.
    """
    if not pairs:
        raise ValueError("no pairs to extract topics from")
    sentence_text = {
        (doc.id, s.index): s.text for doc in documents for s in doc.sentences
    }
    cache = JsonlCache(cache_path)

    def pair_key(pair: SentencePair) -> str:
        (d1, i1), (d2, i2) = pair.first, pair.second
        return f"{d1}#{i1}|{d2}#{i2}"

    def worker(pair: SentencePair) -> tuple[SentencePair, str | None]:
        prompt = common_topic_prompt(sentence_text[pair.first], sentence_text[pair.second])
        for attempt in range(2):
            try:
                raw = provider.complete(prompt)
            except ProviderError as exc:
                logger.warning("pair %s skipped: %s", pair_key(pair), exc)
                return pair, None
            topics = parse_topic_list(raw)
            if topics:
                return pair, topics[0]  # single common topic; lists take the first entry
        logger.warning("pair %s yielded no parseable topic", pair_key(pair))
        return pair, None

    resolved: dict[str, str | None] = {}
    pending = []
    for pair in pairs:
        key = pair_key(pair)
        if key in cache:
            resolved[key] = cache.get(key)
        else:
            pending.append(pair)
    if pending:
        with ThreadPoolExecutor(max_workers=max(1, max_concurrent)) as pool:
            for pair, topic in pool.map(worker, pending):
                key = pair_key(pair)
                cache.put(key, topic)
                resolved[key] = topic

    members: dict[str, set[str]] = {}
    surfaces: dict[str, Counter] = {}
    for pair in pairs:
        topic = resolved.get(pair_key(pair))
        if not topic:
            continue
        key = normalize_topic(topic)
        if not key:
            continue
        members.setdefault(key, set()).update((pair.first[0], pair.second[0]))
        surfaces.setdefault(key, Counter())[topic.strip()] += 1

    nodes = {doc.id: doc.text for doc in documents}
    edges: dict[str, Hyperedge] = {}
    for key in sorted(members):
        counts = surfaces[key]
        best = max(counts.values())
        label = min(s for s, c in counts.items() if c == best)
        edges[key] = Hyperedge(label, members[key])
    return HoT(nodes, edges)


def build_twostep_hot(
    documents: Sequence[Document],
    stats: TfIdfStats,
    chat_provider: ChatProvider,
    embedding_provider: EmbeddingProvider,
    k_per_doc: int = DEFAULT_K_PER_DOC,
    k_pairs: int | None = None,
    prune_min_size: int | None = None,
    cache_path: Union[str, Path, None] = None,
    max_concurrent: int = 4,
) -> HoT:
    """Run the full two-step pipeline; optionally prune small edges at the end."""
    if k_pairs is None:
        k_pairs = DEFAULT_PAIRS_PER_DOC * len(documents)
    candidates = filter_sentences(documents, stats, k_per_doc)
    if len(candidates) < 2:
        logger.warning("fewer than 2 sentence candidates; emitting edgeless hypergraph")
        return HoT({doc.id: doc.text for doc in documents}, {})
    embed_candidates(candidates, embedding_provider)
    pairs = select_pairs(candidates, k_pairs)
    if not pairs:
        return HoT({doc.id: doc.text for doc in documents}, {})
    hot = extract_pair_topics(
        pairs, chat_provider, documents, cache_path=cache_path, max_concurrent=max_concurrent
    )
    if prune_min_size is not None:
        hot = hot.prune_by_size(prune_min_size)
    return hot


def pair_budget(doc_count: int, pairs_per_doc: int = DEFAULT_PAIRS_PER_DOC) -> int:
    return max(1, pairs_per_doc * doc_count)
