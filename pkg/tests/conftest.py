import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hotnav.adapters import synthetic_release
from hotnav.corpus import TfIdfStats, ingest
from hotnav.metrics import load_relevance_sets

# one pass/fail line per acceptance criterion, printed after the run
ACCEPTANCE_PREFIX = "test_acceptance.py"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    reports = []
    for status in ("passed", "failed", "skipped"):
        for report in terminalreporter.stats.get(status, []):
            if getattr(report, "when", "call") != "call" and status != "skipped":
                continue
            if ACCEPTANCE_PREFIX in report.nodeid:
                reports.append((report.nodeid.split("::")[-1], status))
    if not reports:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    label = {"passed": "PASS", "failed": "FAIL", "skipped": "BLOCKED"}
    for name, status in sorted(reports):
        terminalreporter.write_line(f"[{label[status]}] {name}")


@pytest.fixture(scope="session")
def synthetic_paths(tmp_path_factory):
    """Seeded synthetic release at benchmark scale: 609 docs, 2556 sets."""
    base = tmp_path_factory.mktemp("synthetic")
    corpus = base / "corpus.jsonl"
    sets = base / "relevance.json"
    synthetic_release(corpus, sets, doc_count=609, set_count=2556, seed=7)
    return corpus, sets


@pytest.fixture(scope="session")
def synthetic_corpus(synthetic_paths):
    corpus_path, _ = synthetic_paths
    return ingest(corpus_path).documents


@pytest.fixture(scope="session")
def synthetic_sets(synthetic_paths):
    _, sets_path = synthetic_paths
    return load_relevance_sets(sets_path)


@pytest.fixture(scope="session")
def synthetic_stats(synthetic_corpus):
    return TfIdfStats.from_documents(synthetic_corpus)


@pytest.fixture(scope="session")
def mini_corpus_lines():
    """Nine tiny documents over three themes, for constructor tests."""
    rows = [
        ("d1", "Orchard Report", "Apple orchards expanded quickly. Cider presses ran all autumn. Orchard crews picked apples."),
        ("d2", "Cider Notes", "Cider demand grew. Apple farmers sold cider at markets. Presses broke under load."),
        ("d3", "Harvest Season", "Harvest festivals celebrated apples. Orchard tours sold out. Cider tastings drew crowds."),
        ("d4", "Rocket Launch", "Rockets launched from the coast. Satellites reached orbit. Engineers cheered the launch."),
        ("d5", "Orbit Update", "Satellites adjusted orbit. Ground crews tracked rockets. Telemetry showed stable orbit."),
        ("d6", "Engine Test", "Engineers tested rocket engines. Thrust exceeded targets. Launch windows narrowed."),
        ("d7", "Harbor News", "Fishing boats returned to harbor. Nets held record catches. Harbor markets opened early."),
        ("d8", "Market Day", "Markets sold fish and apples. Harbor stalls drew buyers. Prices fell by noon."),
        ("d9", "Storm Watch", "Storms closed the harbor. Boats sheltered inland. Fishing paused for days."),
    ]
    return [
        '{"id": "%s", "title": "%s", "text": "%s"}' % row
        for row in rows
    ]


@pytest.fixture()
def mini_corpus(mini_corpus_lines):
    return ingest(mini_corpus_lines).documents


@pytest.fixture()
def mini_stats(mini_corpus):
    return TfIdfStats.from_documents(mini_corpus)
