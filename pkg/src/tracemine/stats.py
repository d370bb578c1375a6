"""Exploratory log statistics: start/end activities, frequencies, DFG, variants."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .log import DEFAULT_CLASSIFIER, EventLog, log_labels

logger = logging.getLogger(__name__)


def sort_counts(counts: Mapping) -> dict:
    """Order a count map by count descending, then key ascending."""
    return dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))


def _sequences(log: EventLog, classifier: Sequence[str]) -> list[tuple[str, ...]]:
    seqs = log_labels(log, classifier)
    empty = sum(1 for s in seqs if not s)
    if empty:
        logger.warning("log contains %d empty trace(s)", empty)
    return seqs


def start_activities(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> dict[str, int]:
    return sort_counts(Counter(s[0] for s in _sequences(log, classifier) if s))


def end_activities(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> dict[str, int]:
    return sort_counts(Counter(s[-1] for s in _sequences(log, classifier) if s))


def activity_frequencies(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> dict[str, int]:
    counts: Counter[str] = Counter()
    for s in log_labels(log, classifier):
        counts.update(s)
    return sort_counts(counts)


@dataclass
class DirectlyFollowsGraph:
    edge_counts: dict[tuple[str, str], int] = field(default_factory=dict)
    node_counts: dict[str, int] = field(default_factory=dict)
    start_counts: dict[str, int] = field(default_factory=dict)
    end_counts: dict[str, int] = field(default_factory=dict)

    @property
    def activities(self) -> list[str]:
        return sorted(self.node_counts)

    def count(self, a: str, b: str) -> int:
        return self.edge_counts.get((a, b), 0)

    def successors(self, a: str) -> list[str]:
        return sorted(b for (x, b) in self.edge_counts if x == a)

    def predecessors(self, b: str) -> list[str]:
        return sorted(a for (a, y) in self.edge_counts if y == b)


def dfg_from_sequences(
    sequences: Iterable[Sequence[str]], weights: Iterable[int] | None = None
) -> DirectlyFollowsGraph:
    """Build a DFG from label sequences, optionally weighted (e.g. by variant count)."""
    edges: Counter[tuple[str, str]] = Counter()
    nodes: Counter[str] = Counter()
    starts: Counter[str] = Counter()
    ends: Counter[str] = Counter()
    seqs = list(sequences)
    ws = list(weights) if weights is not None else [1] * len(seqs)
    for seq, w in zip(seqs, ws):
        if not seq:
            continue
        starts[seq[0]] += w
        ends[seq[-1]] += w
        for a in seq:
            nodes[a] += w
        for a, b in zip(seq, seq[1:]):
            edges[(a, b)] += w
    return DirectlyFollowsGraph(
        edge_counts=dict(sorted(edges.items())),
        node_counts=dict(sorted(nodes.items())),
        start_counts=dict(sorted(starts.items())),
        end_counts=dict(sorted(ends.items())),
    )


def directly_follows(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> DirectlyFollowsGraph:
    return dfg_from_sequences(_sequences(log, classifier))


@dataclass(frozen=True)
class Variant:
    sequence: tuple[str, ...]
    count: int
    trace_indices: tuple[int, ...]


def variants(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> list[Variant]:
    """Group traces by activity sequence.

    Sorted by count descending; equal counts by sequence ascending.
    """
    groups: dict[tuple[str, ...], list[int]] = {}
    for i, seq in enumerate(log_labels(log, classifier)):
        groups.setdefault(seq, []).append(i)
    out = [Variant(seq, len(idx), tuple(idx)) for seq, idx in groups.items()]
    out.sort(key=lambda v: (-v.count, v.sequence))
    return out


def filter_variants(
    log: EventLog,
    keep: Iterable[Sequence[str]],
    classifier: Sequence[str] = DEFAULT_CLASSIFIER,
) -> EventLog:
    wanted = {tuple(k) for k in keep}
    kept = [t for t, seq in zip(log.traces, log_labels(log, classifier)) if seq in wanted]
    return log.with_traces(kept)


def top_k_variants(log: EventLog, k: int, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> EventLog:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    top = variants(log, classifier)[:k]
    return filter_variants(log, (v.sequence for v in top), classifier)


def stats_report(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> dict:
    """Summary dict in the shape used by ``tracemine stats --format json``."""
    vs = variants(log, classifier)
    return {
        "start_activities": start_activities(log, classifier),
        "end_activities": end_activities(log, classifier),
        "activities": activity_frequencies(log, classifier),
        "num_traces": len(log),
        "num_events": log.num_events,
        "num_variants": len(vs),
        "variants": [{"sequence": list(v.sequence), "count": v.count} for v in vs],
    }
