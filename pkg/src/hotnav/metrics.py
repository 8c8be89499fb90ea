"""Structural navigability metrics.

Compares shortest-path distances between known-relevant documents against
distances between randomly sampled documents. The headline number is the
effort ratio (relevant mean distance over random mean distance); values
below 1 mean relevant documents are structurally closer than random ones.
Disconnected pairs are excluded from the means and reported separately as
disconnect proportions, so a hypergraph cannot game the ratio by simply
dropping hard pairs.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Iterable, Sequence, Union

from .hypergraph import HoT, Hyperedge

REPORT_COLUMNS = ("Method", "Effort Ratio", "Number of Hyperedges", "RDP")


class RelevanceSetError(Exception):
    """Relevance sets are malformed or do not match the hypergraph."""

    def __init__(self, message: str, offenders: list[str] | None = None):
        super().__init__(message)
        self.offenders = offenders or []


class SimulationConfigError(Exception):
    """The saturation simulator cannot run with the given inputs."""


# ---------------------------------------------------------------------------
# relevance / random set families
# ---------------------------------------------------------------------------


def load_relevance_sets(path: Union[str, Path]) -> list[frozenset[str]]:
    """Read a ``{"sets": [[id, ...], ...]}`` JSON file of relevance sets."""
    with open(path, "r", encoding="utf-8") as handle:
        doc = json.load(handle)
    if not isinstance(doc, dict) or not isinstance(doc.get("sets"), list):
        raise RelevanceSetError('relevance file must be an object with a "sets" array')
    sets: list[frozenset[str]] = []
    for i, raw in enumerate(doc["sets"]):
        if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
            raise RelevanceSetError(f"set {i}: expected a list of node id strings")
        members = frozenset(raw)
        if len(members) < 2:
            raise RelevanceSetError(f"set {i}: needs at least 2 distinct ids, got {len(members)}")
        sets.append(members)
    return sets


def save_relevance_sets(sets: Sequence[frozenset[str]], path: Union[str, Path]) -> None:
    doc = {"sets": [sorted(s) for s in sets]}
    Path(path).write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", "utf-8")


def validate_relevance_sets(sets: Sequence[frozenset[str]], hot: HoT) -> None:
    """Reject set families referencing ids absent from the hypergraph."""
    missing = sorted({m for s in sets for m in s if m not in hot.nodes})
    if missing:
        shown = ", ".join(repr(m) for m in missing[:10])
        raise RelevanceSetError(
            f"{len(missing)} relevance id(s) not present in the hypergraph: {shown}",
            offenders=missing,
        )


def random_sets_like(
    reference: Sequence[frozenset[str]], node_ids: Iterable[str], seed: int
) -> list[frozenset[str]]:
    """Random set family with exactly the reference's multiset of sizes.

    Each set is sampled uniformly without replacement from the node pool;
    fully determined by the seed.
    """
    pool = sorted(node_ids)
    rng = random.Random(seed)
    out = []
    for ref in reference:
        size = len(ref)
        if size > len(pool):
            raise RelevanceSetError(f"cannot sample a set of {size} from {len(pool)} nodes")
        out.append(frozenset(rng.sample(pool, size)))
    return out


# ---------------------------------------------------------------------------
# distance aggregation
# ---------------------------------------------------------------------------


@dataclass
class DistanceSummary:
    """Per-family aggregate of pairwise hop distances.

    ``value`` is the mean over sets of each set's mean distance across its
    connected ordered pairs, or None when no set has a connected pair. The
    mean is carried as an exact rational and rounded once on read, so it
    agrees bit-for-bit with any exact recomputation.
    """

    value_exact: Fraction | None
    total_pairs: int
    excluded_pairs: int  # disconnected ordered pairs (they feed the disconnect proportion)
    one_hop_pairs: int
    skipped_sets: int  # sets with no connected pair
    reason: str | None = None

    @property
    def value(self) -> float | None:
        return None if self.value_exact is None else float(self.value_exact)

    @property
    def connected_pairs(self) -> int:
        return self.total_pairs - self.excluded_pairs

    @property
    def disconnect_proportion(self) -> float:
        if self.total_pairs == 0:
            return 0.0
        return self.excluded_pairs / self.total_pairs

    @property
    def saturation(self) -> float:
        if self.total_pairs == 0:
            return 0.0
        return self.one_hop_pairs / self.total_pairs


def distance_index(
    hot: HoT, families: Sequence[Sequence[frozenset[str]]]
) -> dict[str, dict[str, int]]:
    """BFS distances from every node that appears in any of the families."""
    sources = sorted({m for family in families for s in family for m in s})
    return hot.shortest_distances(sources)


def summarize_distances(
    sets: Sequence[frozenset[str]],
    index: dict[str, dict[str, int]],
) -> DistanceSummary:
    if not sets:
        return DistanceSummary(
            value_exact=None,
            total_pairs=0,
            excluded_pairs=0,
            one_hop_pairs=0,
            skipped_sets=0,
            reason="empty set family",
        )
    total = excluded = one_hop = skipped = 0
    mean_sum = Fraction(0)
    mean_count = 0
    for members in sets:
        ordered = sorted(members)
        dist_sum = 0
        dist_count = 0
        for a in ordered:
            row = index[a]
            for b in ordered:
                if a == b:
                    continue
                total += 1
                d = row.get(b)
                if d is None:
                    excluded += 1
                else:
                    dist_sum += d
                    dist_count += 1
                    if d == 1:
                        one_hop += 1
        if dist_count:
            mean_sum += Fraction(dist_sum, dist_count)
            mean_count += 1
        else:
            skipped += 1
    if mean_count:
        value: Fraction | None = mean_sum / mean_count
        reason = None
    else:
        value = None
        reason = "no set has a connected pair"
    return DistanceSummary(
        value_exact=value,
        total_pairs=total,
        excluded_pairs=excluded,
        one_hop_pairs=one_hop,
        skipped_sets=skipped,
        reason=reason,
    )


def drel(hot: HoT, relevance_sets: Sequence[frozenset[str]]) -> DistanceSummary:
    """Mean per-set pairwise distance over the relevance family.

    Disconnected pairs are excluded from the mean and counted; a pair
    appearing in several sets contributes once per containing set.
    """
    validate_relevance_sets(relevance_sets, hot)
    index = distance_index(hot, [relevance_sets])
    return summarize_distances(relevance_sets, index)


def drand(hot: HoT, random_sets: Sequence[frozenset[str]]) -> DistanceSummary:
    """Same contract as :func:`drel`, over the random-set family."""
    validate_relevance_sets(random_sets, hot)
    index = distance_index(hot, [random_sets])
    return summarize_distances(random_sets, index)


# ---------------------------------------------------------------------------
# the report
# ---------------------------------------------------------------------------


@dataclass
class EvalReport:
    drel: float | None
    drand: float | None
    effort_ratio: float | None
    rdp: float
    random_disconnect: float
    sigma_rel: float
    sigma_rand: float
    node_count: int
    hyperedge_count: int
    relevant_total_pairs: int
    relevant_connected_pairs: int
    random_total_pairs: int
    random_connected_pairs: int
    relevant_skipped_sets: int
    random_skipped_sets: int
    seed: int | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "drel": self.drel,
            "drand": self.drand,
            "effort_ratio": self.effort_ratio,
            "rdp": self.rdp,
            "random_disconnect": self.random_disconnect,
            "sigma_rel": self.sigma_rel,
            "sigma_rand": self.sigma_rand,
            "node_count": self.node_count,
            "hyperedge_count": self.hyperedge_count,
            "relevant_total_pairs": self.relevant_total_pairs,
            "relevant_connected_pairs": self.relevant_connected_pairs,
            "random_total_pairs": self.random_total_pairs,
            "random_connected_pairs": self.random_connected_pairs,
            "relevant_skipped_sets": self.relevant_skipped_sets,
            "random_skipped_sets": self.random_skipped_sets,
            "seed": self.seed,
            "reason": self.reason,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def effort_ratio(
    hot: HoT,
    relevance_sets: Sequence[frozenset[str]],
    random_sets: Sequence[frozenset[str]],
    seed: int | None = None,
) -> EvalReport:
    """Full evaluation report over a relevance family and a random family.

    The effort ratio is DRel/DRand when both are defined; otherwise the
    report carries the reason. RDP is the proportion of relevant ordered
    pairs with no connecting path.
    """
    validate_relevance_sets(relevance_sets, hot)
    validate_relevance_sets(random_sets, hot)
    index = distance_index(hot, [relevance_sets, random_sets])
    rel = summarize_distances(relevance_sets, index)
    rand = summarize_distances(random_sets, index)
    if rel.value_exact is not None and rand.value_exact is not None:
        ratio: float | None = float(rel.value_exact / rand.value_exact)
        reason = None
    else:
        ratio = None
        parts = []
        if rel.value is None:
            parts.append(f"DRel undefined ({rel.reason})")
        if rand.value is None:
            parts.append(f"DRand undefined ({rand.reason})")
        reason = "; ".join(parts)
    return EvalReport(
        drel=rel.value,
        drand=rand.value,
        effort_ratio=ratio,
        rdp=rel.disconnect_proportion,
        random_disconnect=rand.disconnect_proportion,
        sigma_rel=rel.saturation,
        sigma_rand=rand.saturation,
        node_count=hot.node_count,
        hyperedge_count=hot.edge_count,
        relevant_total_pairs=rel.total_pairs,
        relevant_connected_pairs=rel.connected_pairs,
        random_total_pairs=rand.total_pairs,
        random_connected_pairs=rand.connected_pairs,
        relevant_skipped_sets=rel.skipped_sets,
        random_skipped_sets=rand.skipped_sets,
        seed=seed,
        reason=reason,
    )


def evaluate(
    hot: HoT, relevance_sets: Sequence[frozenset[str]], seed: int
) -> EvalReport:
    """Evaluate against a seeded random family matching the relevance sizes."""
    random_sets = random_sets_like(relevance_sets, hot.nodes, seed)
    return effort_ratio(hot, relevance_sets, random_sets, seed=seed)


def saturation(
    hot: HoT,
    relevance_sets: Sequence[frozenset[str]],
    random_sets: Sequence[frozenset[str]],
) -> tuple[float, float]:
    """Fractions of relevant and random ordered pairs at distance exactly 1."""
    index = distance_index(hot, [relevance_sets, random_sets])
    rel = summarize_distances(relevance_sets, index)
    rand = summarize_distances(random_sets, index)
    return rel.saturation, rand.saturation


# ---------------------------------------------------------------------------
# alignment classification
# ---------------------------------------------------------------------------


@dataclass
class AlignmentEntry:
    edge_id: str
    size: int
    relevant_fraction: float | None  # None for edges below size 2
    relevance_aligned: bool | None
    non_relevance_aligned: bool | None


@dataclass
class AlignmentReport:
    alpha: float
    beta: float
    entries: list[AlignmentEntry] = field(default_factory=list)

    def entry(self, edge_id: str) -> AlignmentEntry:
        for e in self.entries:
            if e.edge_id == edge_id:
                return e
        raise KeyError(edge_id)


def relevant_pair_set(relevance_sets: Sequence[frozenset[str]]) -> set[frozenset[str]]:
    pairs: set[frozenset[str]] = set()
    for members in relevance_sets:
        ordered = sorted(members)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1 :]:
                pairs.add(frozenset((a, b)))
    return pairs


def edge_relevant_fraction(edge: Hyperedge, pairs: set[frozenset[str]]) -> float | None:
    """Fraction of the edge's unordered member pairs that are relevant."""
    if edge.size < 2:
        return None
    ordered = sorted(edge.members)
    hits = 0
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            if frozenset((a, b)) in pairs:
                hits += 1
    return hits / comb(edge.size, 2)


def classify_alignment(
    hot: HoT,
    relevance_sets: Sequence[frozenset[str]],
    alpha: float,
    beta: float,
) -> AlignmentReport:
    """Flag each hyperedge by how relevance-aligned its member pairs are.

    An edge is relevance-aligned when at least an ``alpha`` fraction of its
    unordered pairs is relevant, and non-relevance-aligned when that
    fraction is below ``beta``. The thresholds are independent; each must
    lie in [0, 1]. Edges of size < 2 are marked not applicable.
    """
    for name, value in (("alpha", alpha), ("beta", beta)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {value}")
    pairs = relevant_pair_set(relevance_sets)
    report = AlignmentReport(alpha=alpha, beta=beta)
    for eid in sorted(hot.hyperedges):
        edge = hot.hyperedges[eid]
        fraction = edge_relevant_fraction(edge, pairs)
        if fraction is None:
            report.entries.append(AlignmentEntry(eid, edge.size, None, None, None))
        else:
            report.entries.append(
                AlignmentEntry(eid, edge.size, fraction, fraction >= alpha, fraction < beta)
            )
    return report


# ---------------------------------------------------------------------------
# random baseline
# ---------------------------------------------------------------------------


def random_hot(node_ids: Iterable[str], edge_count: int, seed: int) -> HoT:
    """Seeded random hypergraph used as an evaluation sanity baseline.

    Edge sizes are uniform on [2, 10] (capped by the node count); members
    are sampled uniformly without replacement. Node texts are empty.
    """
    ids = sorted(node_ids)
    if len(ids) < 2:
        raise ValueError("need at least 2 nodes")
    if edge_count < 1:
        raise ValueError("edge_count must be >= 1")
    rng = random.Random(seed)
    max_size = min(10, len(ids))
    edges: dict[str, Hyperedge] = {}
    for i in range(edge_count):
        size = rng.randint(2, max_size)
        members = rng.sample(ids, size)
        label = f"random-{i}"
        edges[label] = Hyperedge(label, members)
    return HoT({nid: "" for nid in ids}, edges)


# ---------------------------------------------------------------------------
# saturation dynamics
# ---------------------------------------------------------------------------


@dataclass
class SimPoint:
    step: int
    edge_count: int
    drel: float | None
    drand: float | None
    effort_ratio: float | None
    sigma_rel: float
    sigma_rand: float


def _sample_aligned_edge(
    rng: random.Random,
    node_ids: Sequence[str],
    relevant_pairs: Sequence[tuple[str, str]],
    pair_lookup: set[frozenset[str]],
    alpha: float,
    max_attempts: int = 50,
) -> frozenset[str]:
    """One hyperedge whose relevant-pair fraction is at least ``alpha``.

    Sizes are drawn from [2, 6]. The relevant-pair quota is filled by
    growing overlapping relevant pairs around a uniformly drawn seed pair
    (independent pair draws almost never fit inside one small edge), the
    remaining slots are filled uniformly, and the whole proposal is
    resampled until the alignment test passes. The uniform seed pair keeps
    every relevant pair at positive probability; falls back to a single
    relevant pair (always 1.0-aligned) if sampling keeps missing.
    """
    max_size = min(6, len(node_ids))
    for _ in range(max_attempts):
        size = rng.randint(2, max_size)
        needed = math.ceil(alpha * comb(size, 2))
        chosen: set[str] = set()
        if needed > 0:
            # needed > 0 implies alpha > 0, and the caller guarantees
            # relevant_pairs is non-empty in that case
            chosen.update(relevant_pairs[rng.randrange(len(relevant_pairs))])
            while len(chosen) < size and comb(len(chosen), 2) < needed:
                extensions = [
                    u
                    for u in node_ids
                    if u not in chosen
                    and all(frozenset((u, v)) in pair_lookup for v in chosen)
                ]
                if not extensions:
                    break
                chosen.add(extensions[rng.randrange(len(extensions))])
        remaining = [n for n in node_ids if n not in chosen]
        fill = size - len(chosen)
        if fill > 0:
            chosen.update(rng.sample(remaining, fill))
        ordered = sorted(chosen)
        hits = sum(
            1
            for i, a in enumerate(ordered)
            for b in ordered[i + 1 :]
            if frozenset((a, b)) in pair_lookup
        )
        if hits / comb(len(ordered), 2) >= alpha:
            return frozenset(chosen)
    if relevant_pairs:
        a, b = relevant_pairs[rng.randrange(len(relevant_pairs))]
        return frozenset((a, b))
    return frozenset(rng.sample(list(node_ids), 2))


def saturation_sim(
    h0: HoT,
    relevance_sets: Sequence[frozenset[str]],
    alpha: float,
    steps: int,
    seed: int,
    stop_when_sigma_rand: float | None = None,
) -> list[SimPoint]:
    """Add relevance-aligned hyperedges one per step and track the metrics.

    Returns the trajectory starting with the metrics of ``h0`` (step 0).
    The random comparison family is generated once from the seed and held
    fixed, so the whole trajectory is seed-deterministic.
    ``stop_when_sigma_rand`` ends the run early once the random one-hop
    fraction exceeds the threshold.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    validate_relevance_sets(relevance_sets, h0)
    pair_lookup = relevant_pair_set(relevance_sets)
    relevant_pairs = sorted(tuple(sorted(p)) for p in pair_lookup)
    if alpha > 0 and not relevant_pairs:
        raise SimulationConfigError("alpha > 0 requires at least one relevant pair")
    rng = random.Random(seed)
    random_sets = random_sets_like(relevance_sets, h0.nodes, rng.randrange(2**63))
    nodes_sorted = sorted(h0.nodes)

    def point(step: int, hot: HoT) -> SimPoint:
        report = effort_ratio(hot, relevance_sets, random_sets)
        return SimPoint(
            step=step,
            edge_count=hot.edge_count,
            drel=report.drel,
            drand=report.drand,
            effort_ratio=report.effort_ratio,
            sigma_rel=report.sigma_rel,
            sigma_rand=report.sigma_rand,
        )

    hot = h0
    trajectory = [point(0, hot)]
    for step in range(1, steps + 1):
        members = _sample_aligned_edge(rng, nodes_sorted, relevant_pairs, pair_lookup, alpha)
        hot = hot.with_edge(f"sim-{step}", f"sim-{step}", members)
        trajectory.append(point(step, hot))
        if stop_when_sigma_rand is not None and trajectory[-1].sigma_rand > stop_when_sigma_rand:
            break
    return trajectory


# ---------------------------------------------------------------------------
# plain-text report table
# ---------------------------------------------------------------------------


def _fmt(value: float | None, digits: int = 3) -> str:
    return "n/a" if value is None else f"{value:.{digits}f}"


def render_table(rows: Sequence[tuple[str, EvalReport]]) -> str:
    """Aligned text table with one row per evaluated method."""
    data = [
        (method, _fmt(r.effort_ratio), f"{r.hyperedge_count:,}", _fmt(r.rdp))
        for method, r in rows
    ]
    widths = [
        max(len(REPORT_COLUMNS[i]), *(len(row[i]) for row in data)) if data else len(REPORT_COLUMNS[i])
        for i in range(4)
    ]
    lines = [
        "  ".join(REPORT_COLUMNS[i].ljust(widths[i]) for i in range(4)).rstrip(),
        "  ".join("-" * widths[i] for i in range(4)),
    ]
    for row in data:
        lines.append("  ".join(row[i].ljust(widths[i]) for i in range(4)).rstrip())
    return "\n".join(lines) + "\n"
