"""Corpus ingestion, sentence segmentation, tokenization and TF-IDF statistics.

The corpus input format is UTF-8 JSON Lines, one object per line:
``{"id": str, "title": str (optional), "text": str}``.
"""

from __future__ import annotations

import json
import logging
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Union

logger = logging.getLogger(__name__)


class CorpusError(Exception):
    """Base class for corpus errors."""


class CorpusFormatError(CorpusError):
    """A corpus input record is malformed."""


# ---------------------------------------------------------------------------
# tokenization
# ---------------------------------------------------------------------------

# alphanumeric runs (unicode letters and digits, underscore excluded)
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    """The pinned stopword list shipped with the package."""
    text = resources.files("hotnav.data").joinpath("stopwords.txt").read_text("utf-8")
    return _parse_stopwords(text)


def _parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def load_stopwords(path: Union[str, Path]) -> frozenset[str]:
    """Load an override stopword list (same one-token-per-line format)."""
    return _parse_stopwords(Path(path).read_text("utf-8"))


def tokenize(text: str, stopwords: frozenset[str] | None = None) -> list[str]:
    """Lowercase tokens split on non-alphanumeric runs.

    Drops tokens shorter than 2 characters, pure digit tokens, and
    stopwords. Pure function: identical input gives identical output.
    """
    words = default_stopwords() if stopwords is None else stopwords
    out = []
    for token in _TOKEN_RE.findall(text.lower()):
        if len(token) < 2 or token.isdigit() or token in words:
            continue
        out.append(token)
    return out


# ---------------------------------------------------------------------------
# sentence segmentation
# ---------------------------------------------------------------------------

# split after ./!/? followed by whitespace and an uppercase letter, quote or digit
_SENTENCE_BREAK_RE = re.compile(r"(?<=[.!?])\s+(?=[A-Z0-9\"'“”‘’])")

# trailing words that end with '.' without ending a sentence
_ABBREVIATIONS = frozenset(
    {
        "Dr.", "Mr.", "Mrs.", "Ms.", "Prof.", "Rev.", "Gen.", "Sen.", "Rep.",
        "Gov.", "St.", "Mt.", "Jr.", "Sr.", "U.S.", "U.K.", "U.N.", "E.U.",
        "Inc.", "Ltd.", "Co.", "Corp.", "vs.", "etc.", "e.g.", "i.e.",
        "Fig.", "No.", "Vol.", "approx.",
    }
)


def segment_sentences(text: str) -> list[str]:
    """Deterministic rule-based sentence split.

    Splits after ``.``, ``!`` or ``?`` followed by whitespace and an
    uppercase letter, quote or digit, unless the preceding word is on the
    fixed abbreviation list. Returned sentences are stripped and non-empty.
    """
    sentences: list[str] = []
    start = 0
    for match in _SENTENCE_BREAK_RE.finditer(text):
        candidate = text[start : match.start()]
        trailing = candidate.rsplit(None, 1)[-1] if candidate.strip() else ""
        if trailing in _ABBREVIATIONS:
            continue
        stripped = candidate.strip()
        if stripped:
            sentences.append(stripped)
        start = match.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


# ---------------------------------------------------------------------------
# documents
# ---------------------------------------------------------------------------


@dataclass
class Sentence:
    doc_id: str
    index: int
    text: str
    tokens: list[str]


@dataclass
class Document:
    id: str
    title: str
    text: str
    sentences: list[Sentence] = field(default_factory=list)

    def all_tokens(self) -> list[str]:
        tokens: list[str] = []
        for sentence in self.sentences:
            tokens.extend(sentence.tokens)
        return tokens


def make_document(
    doc_id: str, title: str, text: str, stopwords: frozenset[str] | None = None
) -> Document:
    """Build a document with its sentence segmentation and token streams."""
    sentences = [
        Sentence(doc_id=doc_id, index=i, text=s, tokens=tokenize(s, stopwords))
        for i, s in enumerate(segment_sentences(text))
    ]
    return Document(id=doc_id, title=title, text=text, sentences=sentences)


@dataclass
class IngestResult:
    documents: list[Document]
    skipped_empty: int


def ingest(
    source: Union[str, Path, IO[str], Iterable[str]],
    stopwords: frozenset[str] | None = None,
) -> IngestResult:
    """Read a JSON Lines corpus into documents.

    Record order is preserved and ids must be unique. Records with empty
    text are skipped and counted; structural problems (bad JSON, missing
    fields, duplicate ids) raise :class:`CorpusFormatError` naming the
    offending record.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    else:
        lines = list(source)

    documents: list[Document] = []
    seen_ids: set[str] = set()
    skipped = 0
    for index, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"record {index}: invalid JSON: {exc.msg}") from exc
        if not isinstance(record, dict):
            raise CorpusFormatError(f"record {index}: expected a JSON object")
        doc_id = record.get("id")
        if not isinstance(doc_id, str) or not doc_id:
            raise CorpusFormatError(f"record {index}: missing or empty id field")
        if "text" not in record or not isinstance(record["text"], str):
            raise CorpusFormatError(f"record {index}: missing text field")
        if doc_id in seen_ids:
            raise CorpusFormatError(f"record {index}: duplicate document id {doc_id!r}")
        seen_ids.add(doc_id)
        text = record["text"]
        if not text.strip():
            skipped += 1
            continue
        title = record.get("title") or ""
        documents.append(make_document(doc_id, title, text, stopwords))
    if skipped:
        logger.warning("ingest skipped %d record(s) with empty text", skipped)
    return IngestResult(documents=documents, skipped_empty=skipped)


# ---------------------------------------------------------------------------
# TF-IDF
# ---------------------------------------------------------------------------


@dataclass
class TfIdfStats:
    """Corpus term statistics, immutable once built.

    ``tf`` holds raw per-document term counts; ``df`` counts the documents
    containing each term; idf is ``ln(N / df)`` with no smoothing.
    """

    doc_count: int
    df: dict[str, int]
    tf: dict[str, Counter]

    @classmethod
    def from_documents(cls, documents: Iterable[Document]) -> TfIdfStats:
        tf: dict[str, Counter] = {}
        df: Counter = Counter()
        for doc in documents:
            counts = Counter(doc.all_tokens())
            tf[doc.id] = counts
            df.update(counts.keys())
        return cls(doc_count=len(tf), df=dict(df), tf=tf)

    @property
    def vocabulary(self) -> set[str]:
        return set(self.df)

    def idf(self, term: str) -> float:
        return math.log(self.doc_count / self.df[term])


def tfidf(term: str, doc_id: str, stats: TfIdfStats) -> float:
    """Raw term count times ln(N/df); 0 when the term is absent from the doc."""
    if term not in stats.df:
        raise CorpusError(f"unknown term: {term!r}")
    if doc_id not in stats.tf:
        raise CorpusError(f"unknown document: {doc_id!r}")
    count = stats.tf[doc_id].get(term, 0)
    if count == 0:
        return 0.0
    return count * stats.idf(term)


def sentence_score(sentence: Sentence, stats: TfIdfStats) -> float:
    """Mean of the sentence's TF-IDF vector entries.

    TF is counted within the sentence, IDF at document granularity; the
    divisor is the sentence token count including repeats. Empty-token
    sentences score 0. Summation is over sorted terms so the value is
    invariant under token reordering.
    """
    if not sentence.tokens:
        return 0.0
    counts = Counter(sentence.tokens)
    total = 0.0
    for term, count in sorted(counts.items()):
        if term in stats.df:
            total += count * stats.idf(term)
    return total / len(sentence.tokens)
