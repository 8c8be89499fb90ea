"""Command-line entry point: construct, evaluate, serve, plus corpus helpers.

Exit codes: 0 success, 1 user/config error, 2 environment/provider error.
"""

from __future__ import annotations

import json
import logging
import sys
import time
from pathlib import Path

import click

from . import adapters
from .construct import build_allwords_hot, build_llm_hot, build_twostep_hot
from .corpus import CorpusError, Document, TfIdfStats, ingest, load_stopwords
from .hypergraph import HoT, HypergraphError
from .metrics import (
    RelevanceSetError,
    evaluate,
    load_relevance_sets,
    random_hot,
    render_table,
    validate_relevance_sets,
)
from .prompts import PROMPT_VERSION
from .providers import (
    ConfigurationError,
    EmbeddingProviderConfig,
    HttpChatProvider,
    HttpEmbeddingProvider,
    LlmProviderConfig,
    MockChatProvider,
    MockEmbeddingProvider,
    ProviderError,
)

logger = logging.getLogger(__name__)

METHODS = ("allwords", "llm-doc", "llm-sentence", "twostep")


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_corpus(corpus_path: str, stopwords_path: str | None) -> list[Document]:
    stopwords = load_stopwords(stopwords_path) if stopwords_path else None
    try:
        result = ingest(corpus_path, stopwords)
    except FileNotFoundError:
        _fail(f"corpus file not found: {corpus_path}", 1)
    except CorpusError as exc:
        _fail(str(exc), 1)
    if result.skipped_empty:
        click.echo(f"warning: skipped {result.skipped_empty} empty record(s)", err=True)
    return result.documents


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging.")
def main(verbose: bool) -> None:
    """Build text hypergraphs and evaluate how navigable they are."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.option("--corpus", "corpus_path", required=True, help="Corpus JSONL path.")
@click.option("--method", required=True, help="One of: " + ", ".join(METHODS))
@click.option("--top-fraction", type=float, default=None, help="allwords: fraction of candidate edges kept.")
@click.option("--k-sentences", type=int, default=None, help="twostep: sentences kept per document.")
@click.option("--k-pairs", type=int, default=None, help="twostep: sentence-pair budget.")
@click.option("--prune-min-size", type=int, default=None, help="twostep: drop edges smaller than this.")
@click.option("--mock-providers", is_flag=True, help="Use the deterministic mock LLM/embedding providers.")
@click.option("--llm-base-url", default="http://localhost:8000/v1", show_default=True)
@click.option("--llm-model", default="llama3-8b-instruct", show_default=True)
@click.option("--llm-credential-env", default="", help="Env var holding the chat API token.")
@click.option("--embed-base-url", default="http://localhost:8001/embed", show_default=True)
@click.option("--embed-model", default="all-minilm-l6-v2", show_default=True)
@click.option("--embed-credential-env", default="", help="Env var holding the embedding API token.")
@click.option("--max-concurrent", type=int, default=4, show_default=True)
@click.option("--cache", "cache_path", default=None, help="Extraction cache (JSONL), reused across runs.")
@click.option("--stopwords", "stopwords_path", default=None, help="Override stopword list file.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output-dir", default="out", show_default=True)
@click.pass_context
def construct(
    ctx: click.Context,
    corpus_path: str,
    method: str,
    top_fraction: float | None,
    k_sentences: int | None,
    k_pairs: int | None,
    prune_min_size: int | None,
    mock_providers: bool,
    llm_base_url: str,
    llm_model: str,
    llm_credential_env: str,
    embed_base_url: str,
    embed_model: str,
    embed_credential_env: str,
    max_concurrent: int,
    cache_path: str | None,
    stopwords_path: str | None,
    seed: int,
    output_dir: str,
) -> None:
    """Construct a hypergraph from a corpus and write hot.json + manifest.json."""
    if method not in METHODS:
        click.echo(ctx.get_usage(), err=True)
        _fail(f"unknown method {method!r}; expected one of: {', '.join(METHODS)}", 1)
    if method == "allwords":
        if top_fraction is None:
            _fail("--top-fraction is required for method allwords", 1)
        if not 0 < top_fraction <= 1:
            _fail(f"--top-fraction must be in (0, 1], got {top_fraction}", 1)
        for name, value in (("--k-sentences", k_sentences), ("--k-pairs", k_pairs),
                            ("--prune-min-size", prune_min_size)):
            if value is not None:
                _fail(f"{name} does not apply to method allwords", 1)
    elif method in ("llm-doc", "llm-sentence"):
        for name, value in (("--top-fraction", top_fraction), ("--k-sentences", k_sentences),
                            ("--k-pairs", k_pairs), ("--prune-min-size", prune_min_size)):
            if value is not None:
                _fail(f"{name} does not apply to method {method}", 1)
    else:  # twostep
        if top_fraction is not None:
            _fail("--top-fraction does not apply to method twostep", 1)
        if k_sentences is not None and k_sentences < 1:
            _fail("--k-sentences must be >= 1", 1)
        if k_pairs is not None and k_pairs < 1:
            _fail("--k-pairs must be >= 1", 1)
        if prune_min_size is not None and prune_min_size < 1:
            _fail("--prune-min-size must be >= 1", 1)

    documents = _load_corpus(corpus_path, stopwords_path)
    if not documents:
        _fail("corpus contains no usable documents", 1)
    stats = TfIdfStats.from_documents(documents)

    provider_models: dict[str, str] = {}
    started = time.monotonic()
    try:
        if method == "allwords":
            hot = build_allwords_hot(documents, stats, top_fraction)
        else:
            if mock_providers:
                chat = MockChatProvider(stats)
                embedder = MockEmbeddingProvider(seed=seed)
            else:
                chat = HttpChatProvider(
                    LlmProviderConfig(
                        base_url=llm_base_url,
                        model=llm_model,
                        credential_env=llm_credential_env,
                        max_concurrent=max_concurrent,
                    )
                )
                embedder = HttpEmbeddingProvider(
                    EmbeddingProviderConfig(
                        base_url=embed_base_url,
                        model=embed_model,
                        credential_env=embed_credential_env,
                        max_concurrent=max_concurrent,
                    )
                )
            provider_models["llm"] = chat.model
            if method == "llm-doc":
                hot = build_llm_hot(documents, "document", chat,
                                    cache_path=cache_path, max_concurrent=max_concurrent)
            elif method == "llm-sentence":
                hot = build_llm_hot(documents, "sentence", chat,
                                    cache_path=cache_path, max_concurrent=max_concurrent)
            else:
                provider_models["embedding"] = embedder.model
                hot = build_twostep_hot(
                    documents,
                    stats,
                    chat,
                    embedder,
                    k_per_doc=k_sentences if k_sentences is not None else 5,
                    k_pairs=k_pairs,
                    prune_min_size=prune_min_size,
                    cache_path=cache_path,
                    max_concurrent=max_concurrent,
                )
    except ProviderError as exc:
        _fail(f"provider failure: {exc}", 2)
    except ConfigurationError as exc:
        _fail(str(exc), 1)
    elapsed = time.monotonic() - started

    out_dir = Path(output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    hot_path = out_dir / "hot.json"
    hot_path.write_bytes(hot.serialize())
    manifest = {
        "method": method,
        "parameters": {
            "top_fraction": top_fraction,
            "k_sentences": k_sentences,
            "k_pairs": k_pairs,
            "prune_min_size": prune_min_size,
        },
        "corpus": str(corpus_path),
        "seed": seed,
        "provider_models": provider_models or None,
        "mock_providers": mock_providers,
        "prompt_version": PROMPT_VERSION,
        "node_count": hot.node_count,
        "edge_count": hot.edge_count,
        "wall_time_s": round(elapsed, 3),
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n", "utf-8"
    )
    click.echo(f"wrote {hot_path} ({hot.node_count} nodes, {hot.edge_count} hyperedges)")


@main.command()
@click.argument("hot_path")
@click.option("--relevance", "relevance_path", required=True, help="Relevance-sets JSON path.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--label", default=None, help="Method label used in the report table.")
@click.option("--output-dir", default="out", show_default=True)
def evaluate_cmd(
    hot_path: str, relevance_path: str, seed: int, label: str | None, output_dir: str
) -> None:
    """Evaluate a hypergraph file against relevance sets; write report.json/.txt."""
    try:
        hot = HoT.deserialize(Path(hot_path).read_bytes())
    except FileNotFoundError:
        _fail(f"hypergraph file not found: {hot_path}", 1)
    except HypergraphError as exc:
        _fail(f"cannot load hypergraph: {exc}", 1)
    try:
        sets = load_relevance_sets(relevance_path)
        validate_relevance_sets(sets, hot)
    except FileNotFoundError:
        _fail(f"relevance file not found: {relevance_path}", 1)
    except RelevanceSetError as exc:
        _fail(str(exc), 1)

    report = evaluate(hot, sets, seed)
    method = label or Path(hot_path).stem
    out_dir = Path(output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(report.to_json(), "utf-8")
    table = render_table([(method, report)])
    (out_dir / "report.txt").write_text(table, "utf-8")
    click.echo(table, nl=False)
    if report.effort_ratio is None:
        click.echo(f"note: effort ratio undefined: {report.reason}")


main.add_command(evaluate_cmd, name="evaluate")


@main.command()
@click.argument("hot_path")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--label", default=None)
@click.option("--static-dir", default=None, help="Browser UI bundle directory (default: ./frontend/dist if present).")
def serve(hot_path: str, host: str, port: int, label: str | None, static_dir: str | None) -> None:
    """Serve a hypergraph file over the read-only browse API."""
    import uvicorn

    from .service import create_app

    try:
        hot = HoT.deserialize(Path(hot_path).read_bytes())
    except FileNotFoundError:
        _fail(f"hypergraph file not found: {hot_path}", 1)
    except HypergraphError as exc:
        _fail(f"cannot load hypergraph: {exc}", 1)
    if static_dir is None and Path("frontend/dist").is_dir():
        static_dir = "frontend/dist"
    app = create_app(hot, label=label or Path(hot_path).stem, static_dir=static_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except OSError as exc:
        _fail(f"cannot bind {host}:{port}: {exc}", 2)


@main.command("adapt-multihop")
@click.argument("corpus_json")
@click.argument("queries_json")
@click.option("--out-corpus", default="corpus.jsonl", show_default=True)
@click.option("--out-sets", default="relevance.json", show_default=True)
def adapt_multihop(corpus_json: str, queries_json: str, out_corpus: str, out_sets: str) -> None:
    """Convert a MultiHop-RAG style release into corpus JSONL + relevance sets."""
    try:
        docs = adapters.convert_multihop_corpus(corpus_json, out_corpus)
        sets = adapters.convert_multihop_queries(queries_json, out_sets)
    except FileNotFoundError as exc:
        _fail(str(exc), 1)
    except (adapters.AdapterError, json.JSONDecodeError) as exc:
        _fail(str(exc), 1)
    click.echo(f"wrote {docs} documents to {out_corpus} and {sets} sets to {out_sets}")


@main.command("synth-corpus")
@click.option("--docs", type=int, default=609, show_default=True)
@click.option("--sets", type=int, default=2556, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--out-corpus", default="corpus.jsonl", show_default=True)
@click.option("--out-sets", default="relevance.json", show_default=True)
def synth_corpus(docs: int, sets: int, seed: int, out_corpus: str, out_sets: str) -> None:
    """Generate the seeded synthetic corpus release plus matching relevance sets."""
    try:
        info = adapters.synthetic_release(
            out_corpus, out_sets, doc_count=docs, set_count=sets, seed=seed
        )
    except (ValueError, adapters.AdapterError) as exc:
        _fail(str(exc), 1)
    click.echo(
        f"wrote {info.doc_count} documents and {info.set_count} relevance sets (seed {info.seed})"
    )


@main.command("random-hot")
@click.option("--corpus", "corpus_path", required=True, help="Corpus JSONL supplying the node ids.")
@click.option("--edges", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", default="random-hot.json", show_default=True)
def random_hot_cmd(corpus_path: str, edges: int, seed: int, out_path: str) -> None:
    """Write a seeded random hypergraph over the corpus document ids."""
    documents = _load_corpus(corpus_path, None)
    try:
        hot = random_hot([d.id for d in documents], edges, seed)
    except ValueError as exc:
        _fail(str(exc), 1)
    Path(out_path).write_bytes(hot.serialize())
    click.echo(f"wrote {out_path} ({hot.node_count} nodes, {hot.edge_count} hyperedges)")


if __name__ == "__main__":
    main()
