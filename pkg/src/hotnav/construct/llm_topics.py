"""Topic-extraction construction at document or sentence level.

An LLM lists topics per unit; each distinct normalized topic key becomes
one hyperedge over the documents that produced it.
"""

from __future__ import annotations

import json
import logging
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from ..cache import JsonlCache
from ..corpus import Document
from ..hypergraph import HoT, Hyperedge
from ..prompts import topic_prompt
from ..providers import ChatProvider, ProviderError

logger = logging.getLogger(__name__)

LEVELS = ("document", "sentence")

_EDGE_PUNCT = "\"'`.,;:!?()[]{}<>«»“”‘’-–—*#"
_BULLET_RE = re.compile(r"^\s*(?:[-*•]|\d+[.)])\s*")


@dataclass
class TopicExtraction:
    doc_id: str
    sentence_index: int | None
    topics: list[str]
    normalized: list[str]

    @property
    def unit(self) -> str:
        if self.sentence_index is None:
            return self.doc_id
        return f"{self.doc_id}#{self.sentence_index}"


def normalize_topic(raw: str) -> str:
    """Canonical topic key: trimmed, lowercased, single-spaced, de-punctuated ends."""
    text = " ".join(raw.split()).lower()
    text = text.strip(_EDGE_PUNCT + " ")
    return " ".join(text.split())


def parse_topic_list(raw: str) -> list[str]:
    """Topics from a provider reply: JSON array preferred, lines as fallback."""
    raw = raw.strip()
    if not raw:
        return []
    try:
        parsed = json.loads(raw)
    except json.JSONDecodeError:
        parsed = None
    if isinstance(parsed, list):
        return [str(item).strip() for item in parsed if str(item).strip()]
    if isinstance(parsed, str):
        return [parsed.strip()] if parsed.strip() else []
    items = []
    for line in raw.splitlines():
        line = _BULLET_RE.sub("", line).strip()
        if line:
            items.append(line)
    return items


def extract_topics(
    doc_id: str,
    unit_text: str,
    level: str,
    provider: ChatProvider,
    sentence_index: int | None = None,
) -> TopicExtraction:
    """One extraction call with a single parse retry.

    Unparseable replies after the retry yield an empty extraction with a
    logged diagnostic so the pipeline keeps going; transport failures
    propagate as :class:`ProviderError` carrying the unit id.
    """
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    if not unit_text.strip():
        raise ValueError(f"empty unit text for {doc_id!r}")
    prompt = topic_prompt(unit_text, level)
    unit = doc_id if sentence_index is None else f"{doc_id}#{sentence_index}"
    topics: list[str] = []
    for attempt in range(2):
        try:
            raw = provider.complete(prompt)
        except ProviderError as exc:
            raise ProviderError(str(exc), unit=unit) from exc
        topics = parse_topic_list(raw)
        if topics:
            break
        if attempt == 0:
            logger.warning("unparseable topic reply for %s, retrying once", unit)
    if not topics:
        logger.warning("no topics extracted for %s after retry", unit)
    normalized = [key for key in (normalize_topic(t) for t in topics) if key]
    return TopicExtraction(
        doc_id=doc_id, sentence_index=sentence_index, topics=topics, normalized=normalized
    )


def run_llm_extraction(
    documents: Sequence[Document],
    level: str,
    provider: ChatProvider,
    cache_path: Union[str, Path, None] = None,
    max_concurrent: int = 4,
) -> list[TopicExtraction]:
    """Extract topics for every unit of the corpus, skipping cached units."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    units: list[tuple[str, int | None, str]] = []
    for doc in documents:
        if level == "document":
            units.append((doc.id, None, doc.text))
        else:
            units.extend((doc.id, s.index, s.text) for s in doc.sentences)

    cache = JsonlCache(cache_path)
    extractions: dict[tuple[str, int | None], TopicExtraction] = {}
    pending = []
    for doc_id, index, text in units:
        key = f"{level}:{doc_id}:{'' if index is None else index}"
        if key in cache:
            value = cache.get(key)
            extractions[(doc_id, index)] = TopicExtraction(
                doc_id=doc_id,
                sentence_index=index,
                topics=value["topics"],
                normalized=value["normalized"],
            )
        else:
            pending.append((key, doc_id, index, text))

    def worker(item: tuple[str, str, int | None, str]) -> tuple[str, TopicExtraction]:
        key, doc_id, index, text = item
        extraction = extract_topics(doc_id, text, level, provider, sentence_index=index)
        return key, extraction

    if pending:
        with ThreadPoolExecutor(max_workers=max(1, max_concurrent)) as pool:
            for key, extraction in pool.map(worker, pending):
                cache.put(key, {"topics": extraction.topics, "normalized": extraction.normalized})
                extractions[(extraction.doc_id, extraction.sentence_index)] = extraction

    ordered = sorted(
        extractions.values(),
        key=lambda e: (e.doc_id, -1 if e.sentence_index is None else e.sentence_index),
    )
    return ordered


def assemble_topic_hot(
    extractions: Sequence[TopicExtraction], documents: Sequence[Document]
) -> HoT:
    """Merge extractions into a hypergraph, one edge per normalized topic key.

    The edge label is the most frequent surface form of the topic (ties
    broken lexicographically); members are the documents whose extraction
    produced the key at any unit. Size-1 topic edges are kept. Assembly is
    deterministic given the extraction list.
    """
    members: dict[str, set[str]] = {}
    surfaces: dict[str, Counter] = {}
    for extraction in extractions:
        for topic in extraction.topics:
            key = normalize_topic(topic)
            if not key:
                continue
            members.setdefault(key, set()).add(extraction.doc_id)
            surfaces.setdefault(key, Counter())[topic.strip()] += 1
    nodes = {doc.id: doc.text for doc in documents}
    edges: dict[str, Hyperedge] = {}
    for key in sorted(members):
        counts = surfaces[key]
        best = max(counts.values())
        label = min(s for s, c in counts.items() if c == best)
        edges[key] = Hyperedge(label, members[key])
    return HoT(nodes, edges)


def build_llm_hot(
    documents: Sequence[Document],
    level: str,
    provider: ChatProvider,
    cache_path: Union[str, Path, None] = None,
    max_concurrent: int = 4,
) -> HoT:
    extractions = run_llm_extraction(
        documents, level, provider, cache_path=cache_path, max_concurrent=max_concurrent
    )
    return assemble_topic_hot(extractions, documents)
