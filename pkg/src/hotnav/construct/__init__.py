"""Hypergraph construction methods: all-words, LLM topics, two-step similarity."""

from .allwords import ScoredWordEdge, build_allwords_hot, build_word_edges, prune_top_fraction
from .llm_topics import (
    TopicExtraction,
    assemble_topic_hot,
    build_llm_hot,
    extract_topics,
    normalize_topic,
    run_llm_extraction,
)
from .twostep import (
    SentenceCandidate,
    SentencePair,
    build_twostep_hot,
    embed_candidates,
    extract_pair_topics,
    filter_sentences,
    select_pairs,
)

__all__ = [
    "ScoredWordEdge",
    "SentenceCandidate",
    "SentencePair",
    "TopicExtraction",
    "assemble_topic_hot",
    "build_allwords_hot",
    "build_llm_hot",
    "build_twostep_hot",
    "build_word_edges",
    "embed_candidates",
    "extract_pair_topics",
    "extract_topics",
    "filter_sentences",
    "normalize_topic",
    "prune_top_fraction",
    "run_llm_extraction",
    "select_pairs",
]
