"""Pluggable chat-completion and embedding backends.

HTTP providers speak the wire contracts documented in the README; the
mock providers are fully deterministic and exist so pipelines can run
end-to-end reproducibly without a model server.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
from dataclasses import dataclass
from typing import Protocol, Sequence

import httpx
import numpy as np

from .corpus import TfIdfStats, tokenize
from .prompts import split_prompt_payload

logger = logging.getLogger(__name__)

_TRANSPORT_ATTEMPTS = 3


class ProviderError(Exception):
    """Provider call failed after retries."""

    def __init__(self, message: str, unit: str | None = None):
        super().__init__(message if unit is None else f"{message} (unit: {unit})")
        self.unit = unit


class ConfigurationError(Exception):
    """Provider or pipeline configuration is inconsistent."""


@dataclass
class LlmProviderConfig:
    base_url: str
    model: str
    credential_env: str = ""
    timeout: float = 60.0
    max_concurrent: int = 4
    temperature: float = 0.0

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ConfigurationError("timeout must be positive")
        if self.max_concurrent < 1:
            raise ConfigurationError("max_concurrent must be >= 1")


@dataclass
class EmbeddingProviderConfig:
    base_url: str
    model: str
    credential_env: str = ""
    timeout: float = 60.0
    max_concurrent: int = 4

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ConfigurationError("timeout must be positive")
        if self.max_concurrent < 1:
            raise ConfigurationError("max_concurrent must be >= 1")


class ChatProvider(Protocol):
    def complete(self, prompt: str) -> str: ...


class EmbeddingProvider(Protocol):
    def embed(self, texts: Sequence[str]) -> list[list[float]]: ...


def _auth_headers(credential_env: str) -> dict[str, str]:
    if not credential_env:
        return {}
    token = os.environ.get(credential_env, "")
    if not token:
        logger.warning("credential env var %s is unset or empty", credential_env)
        return {}
    return {"Authorization": f"Bearer {token}"}


class HttpChatProvider:
    """Chat-completion over HTTP: POST {base_url}/chat/completions.

    Request body ``{"model", "messages", "temperature"}``; the reply text
    is read from ``choices[0].message.content``.
    """

    def __init__(self, config: LlmProviderConfig):
        self.config = config
        self._client = httpx.Client(timeout=config.timeout)

    @property
    def model(self) -> str:
        return self.config.model

    def complete(self, prompt: str) -> str:
        url = self.config.base_url.rstrip("/") + "/chat/completions"
        payload = {
            "model": self.config.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.config.temperature,
        }
        headers = _auth_headers(self.config.credential_env)
        last: Exception | None = None
        for attempt in range(_TRANSPORT_ATTEMPTS):
            try:
                response = self._client.post(url, json=payload, headers=headers)
                response.raise_for_status()
                body = response.json()
                return body["choices"][0]["message"]["content"]
            except (httpx.HTTPError, KeyError, IndexError, ValueError) as exc:
                last = exc
                logger.warning("chat request failed (attempt %d): %s", attempt + 1, exc)
        raise ProviderError(f"chat completion failed after {_TRANSPORT_ATTEMPTS} attempts: {last}")


class HttpEmbeddingProvider:
    """Embeddings over HTTP: POST {base_url} with {"model", "inputs"}.

    The response is ``{"vectors": [[...], ...]}``, one vector per input,
    in order. Vectors are unit-normalized by the caller.
    """

    def __init__(self, config: EmbeddingProviderConfig):
        self.config = config
        self._client = httpx.Client(timeout=config.timeout)

    @property
    def model(self) -> str:
        return self.config.model

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        payload = {"model": self.config.model, "inputs": list(texts)}
        headers = _auth_headers(self.config.credential_env)
        last: Exception | None = None
        for attempt in range(_TRANSPORT_ATTEMPTS):
            try:
                response = self._client.post(self.config.base_url, json=payload, headers=headers)
                response.raise_for_status()
                vectors = response.json()["vectors"]
                if len(vectors) != len(texts):
                    raise ValueError(
                        f"expected {len(texts)} vectors, got {len(vectors)}"
                    )
                return vectors
            except (httpx.HTTPError, KeyError, ValueError) as exc:
                last = exc
                logger.warning("embedding request failed (attempt %d): %s", attempt + 1, exc)
        raise ProviderError(f"embedding request failed after {_TRANSPORT_ATTEMPTS} attempts: {last}")


# ---------------------------------------------------------------------------
# deterministic mocks
# ---------------------------------------------------------------------------


class MockChatProvider:
    """Deterministic chat stand-in driven by corpus TF-IDF statistics.

    Topic prompts are answered with the unit's two highest-TF-IDF tokens;
    common-topic prompts with the highest-IDF token shared by both
    sentences (falling back to the highest-IDF token of either). The mock
    is pure, so it doubles as the oracle in pipeline tests.
    """

    model = "mock-chat"

    def __init__(self, stats: TfIdfStats, topics_per_unit: int = 2):
        self._stats = stats
        self._topics_per_unit = topics_per_unit
        self.calls = 0

    def _idf(self, term: str) -> float:
        df = self._stats.df.get(term, 1)
        return math.log(max(self._stats.doc_count, 1) / df) if self._stats.doc_count else 0.0

    def _ranked_tokens(self, text: str) -> list[str]:
        tokens = tokenize(text)
        weights: dict[str, float] = {}
        for token in tokens:
            weights[token] = weights.get(token, 0.0) + self._idf(token)
        return sorted(weights, key=lambda t: (-weights[t], t))

    def complete(self, prompt: str) -> str:
        self.calls += 1
        payload = split_prompt_payload(prompt)
        if len(payload) == 2:
            first, second = (set(tokenize(t)) for t in payload)
            shared = first & second
            pool = shared if shared else (first | second)
            if not pool:
                return ""
            return max(pool, key=lambda t: (self._idf(t), t))
        ranked = self._ranked_tokens(payload[0])
        return json.dumps(ranked[: self._topics_per_unit])


class MockEmbeddingProvider:
    """Seeded hash projection to a fixed dimension, then unit-normalized.

    Identical texts always map to identical vectors, across runs and
    platforms.
    """

    model = "mock-embedding"

    def __init__(self, dimension: int = 32, seed: int = 0):
        if dimension < 2:
            raise ConfigurationError("embedding dimension must be >= 2")
        self.dimension = dimension
        self.seed = seed

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        out = []
        for text in texts:
            digest = hashlib.sha256(f"{self.seed}:{text}".encode("utf-8")).digest()
            rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
            vec = rng.standard_normal(self.dimension)
            vec /= np.linalg.norm(vec)
            out.append(vec.tolist())
        return out


class FailingChatProvider:
    """Test helper: always raises, optionally after a few good responses."""

    model = "failing-chat"

    def __init__(self, good_responses: list[str] | None = None):
        self._queue = list(good_responses or [])

    def complete(self, prompt: str) -> str:
        if self._queue:
            return self._queue.pop(0)
        raise ProviderError("simulated transport failure")
