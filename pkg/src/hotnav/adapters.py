"""Corpus adapters.

Converts the MultiHop-RAG news release into the JSON Lines corpus format
and its multi-hop queries into relevance-set files, and generates a
seeded synthetic release with the same shape (609 documents, 2,556
relevance sets of 2-4 documents) for environments where the original
dataset is not available.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .metrics import save_relevance_sets

logger = logging.getLogger(__name__)


class AdapterError(Exception):
    pass


# ---------------------------------------------------------------------------
# MultiHop-RAG release
# ---------------------------------------------------------------------------


def _record_doc_id(record: dict) -> str:
    doc_id = record.get("url") or record.get("title")
    if not doc_id:
        raise AdapterError(f"cannot derive a document id from record keys {sorted(record)}")
    return str(doc_id)


def convert_multihop_corpus(
    corpus_json: Union[str, Path], out_jsonl: Union[str, Path]
) -> int:
    """News articles (list of objects with title/body/url) to corpus JSONL.

    The document id is the article url, falling back to the title.
    Returns the number of documents written.
    """
    with open(corpus_json, "r", encoding="utf-8") as handle:
        records = json.load(handle)
    if not isinstance(records, list):
        raise AdapterError("corpus release must be a JSON array of article records")
    count = 0
    seen: set[str] = set()
    with open(out_jsonl, "w", encoding="utf-8") as out:
        for record in records:
            doc_id = _record_doc_id(record)
            if doc_id in seen:
                logger.warning("duplicate article id %r skipped", doc_id)
                continue
            seen.add(doc_id)
            body = record.get("body") or record.get("text") or ""
            row = {"id": doc_id, "title": record.get("title") or "", "text": body}
            out.write(json.dumps(row, ensure_ascii=False) + "\n")
            count += 1
    return count


def convert_multihop_queries(
    queries_json: Union[str, Path], out_sets: Union[str, Path]
) -> int:
    """Multi-hop query records to a relevance-sets file.

    Each query's evidence documents become one set; queries with fewer
    than 2 distinct evidence documents are dropped with a warning count.
    Returns the number of sets written.
    """
    with open(queries_json, "r", encoding="utf-8") as handle:
        records = json.load(handle)
    if not isinstance(records, list):
        raise AdapterError("query release must be a JSON array of query records")
    sets = []
    dropped = 0
    for record in records:
        evidence = record.get("evidence_list") or []
        ids = {_record_doc_id(e) for e in evidence if isinstance(e, dict)}
        if len(ids) < 2:
            dropped += 1
            continue
        sets.append(frozenset(ids))
    if dropped:
        logger.warning("%d query record(s) had fewer than 2 distinct evidence docs", dropped)
    save_relevance_sets(sets, out_sets)
    return len(sets)


# ---------------------------------------------------------------------------
# synthetic release
# ---------------------------------------------------------------------------

_SYLLABLES = [
    "ba", "be", "bi", "bo", "bu", "da", "de", "di", "do", "du",
    "fa", "fe", "fi", "fo", "fu", "ga", "ge", "gi", "go", "gu",
    "ka", "ke", "ki", "ko", "ku", "la", "le", "li", "lo", "lu",
    "ma", "me", "mi", "mo", "mu", "na", "ne", "ni", "no", "nu",
    "pa", "pe", "pi", "po", "pu", "ra", "re", "ri", "ro", "ru",
    "sa", "se", "si", "so", "su", "ta", "te", "ti", "to", "tu",
    "va", "ve", "vi", "vo", "vu", "za", "ze", "zi", "zo", "zu",
]


@dataclass
class SyntheticReleaseInfo:
    doc_count: int
    set_count: int
    topic_count: int
    seed: int


def _make_lexicon(rng: random.Random, count: int) -> list[str]:
    words: list[str] = []
    seen: set[str] = set()
    while len(words) < count:
        word = "".join(rng.choice(_SYLLABLES) for _ in range(rng.randint(2, 4)))
        if word not in seen:
            seen.add(word)
            words.append(word)
    return words


def synthetic_release(
    out_corpus: Union[str, Path],
    out_sets: Union[str, Path],
    doc_count: int = 609,
    set_count: int = 2556,
    seed: int = 7,
    topic_count: int | None = None,
) -> SyntheticReleaseInfo:
    """Generate a topic-structured corpus plus matching relevance sets.

    Documents draw their vocabulary from 1-3 latent topics (plus shared
    filler and noise words); each relevance set groups 2-4 documents that
    share a topic, mirroring the shape of a multi-hop QA benchmark. Fully
    determined by the seed. Topic count defaults to roughly one topic per
    four documents, keeping about eight documents per topic at any scale.
    """
    if doc_count < 8 or set_count < 1:
        raise ValueError("doc_count must be >= 8 and set_count >= 1")
    if topic_count is None:
        topic_count = max(4, doc_count // 4)
    rng = random.Random(seed)
    lexicon = _make_lexicon(rng, topic_count * 25 + 2500)
    common = lexicon[:60]
    topic_words = [
        lexicon[60 + t * 25 : 60 + (t + 1) * 25] for t in range(topic_count)
    ]
    noise_pool = lexicon[60 + topic_count * 25 :]

    docs_by_topic: dict[int, list[str]] = {t: [] for t in range(topic_count)}
    corpus_path = Path(out_corpus)
    corpus_path.parent.mkdir(parents=True, exist_ok=True)
    with open(corpus_path, "w", encoding="utf-8") as out:
        for d in range(doc_count):
            doc_id = f"doc-{d:04d}"
            topics = rng.sample(range(topic_count), rng.randint(1, 3))
            for t in topics:
                docs_by_topic[t].append(doc_id)
            sentences = []
            for _ in range(rng.randint(10, 18)):
                words = []
                for _ in range(rng.randint(6, 14)):
                    roll = rng.random()
                    if roll < 0.40:
                        words.append(rng.choice(topic_words[rng.choice(topics)]))
                    elif roll < 0.75:
                        words.append(rng.choice(common))
                    else:
                        words.append(rng.choice(noise_pool))
                sentence = " ".join(words)
                sentences.append(sentence[0].upper() + sentence[1:] + ".")
            title_words = [rng.choice(topic_words[t]) for t in topics]
            row = {
                "id": doc_id,
                "title": " ".join(w.capitalize() for w in title_words),
                "text": " ".join(sentences),
            }
            out.write(json.dumps(row, ensure_ascii=False) + "\n")

    eligible = [t for t, docs in docs_by_topic.items() if len(docs) >= 2]
    if not eligible:
        raise AdapterError("no topic has 2 or more documents; increase doc_count")
    sets = []
    for _ in range(set_count):
        while True:
            t = rng.choice(eligible)
            size = rng.choices((2, 3, 4), weights=(55, 30, 15))[0]
            docs = docs_by_topic[t]
            if len(docs) >= size:
                sets.append(frozenset(rng.sample(docs, size)))
                break
    save_relevance_sets(sets, out_sets)
    return SyntheticReleaseInfo(
        doc_count=doc_count, set_count=set_count, topic_count=topic_count, seed=seed
    )
