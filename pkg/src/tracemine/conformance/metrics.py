"""Model quality metrics: precision, simplicity, generalization."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence

from ..log import DEFAULT_CLASSIFIER, EventLog, log_labels
from ..petri import AcceptingPetriNet, PetriNet, degree_stats
from .replay import DEFAULT_SILENT_DEPTH, Replayer, ReplayResult, _Recorder, token_replay


def precision_escaping_edges(
    log: EventLog,
    apn: AcceptingPetriNet,
    classifier: Sequence[str] = DEFAULT_CLASSIFIER,
    skip_unfit: bool = False,
    silent_depth: int = DEFAULT_SILENT_DEPTH,
) -> float:
    """Escaping-edges precision.

    For every observed prefix (including the empty one and complete traces)
    the replay marking is computed; labels the model can do next, possibly
    after silent moves, but the log never does after that prefix are
    escaping. Prefixes are weighted by the number of traces sharing them.
    With ``skip_unfit`` prefixes that needed missing tokens are ignored
    instead of being evaluated on the repaired marking.
    """
    freq: Counter[tuple[str, ...]] = Counter()
    follows: dict[tuple[str, ...], set[str]] = {}
    for seq in log_labels(log, classifier):
        for i in range(len(seq) + 1):
            prefix = seq[:i]
            freq[prefix] += 1
            if i < len(seq):
                follows.setdefault(prefix, set()).add(seq[i])
    if not freq:
        return 1.0

    replayer = Replayer(apn, silent_depth)
    markings: dict[tuple[str, ...], dict[str, int] | None] = {(): dict(apn.initial)}
    escaping = allowed_total = 0
    for prefix in sorted(freq, key=lambda p: (len(p), p)):
        if prefix:
            parent = markings[prefix[:-1]]
            if parent is None:
                markings[prefix] = None
                continue
            tokens = dict(parent)
            rec = _Recorder()
            replayer.step(tokens, prefix[-1], rec)
            if skip_unfit and rec.missing:
                markings[prefix] = None
                continue
            markings[prefix] = tokens
        allowed = enabled_labels(replayer, markings[prefix])
        n = freq[prefix]
        escaping += n * len(allowed - follows.get(prefix, set()))
        allowed_total += n * len(allowed)
    if allowed_total == 0:
        return 1.0
    return 1.0 - escaping / allowed_total


def enabled_labels(replayer: Replayer, tokens: dict[str, int]) -> set[str]:
    """Visible labels that can fire from ``tokens`` after zero or more silent moves."""
    labels: set[str] = set()
    for m in replayer.silent_closure(tokens):
        for lab, ts in replayer.by_label.items():
            if lab not in labels and any(replayer.enabled(m, t) for t in ts):
                labels.add(lab)
    return labels


def simplicity_arc_degree(net: AcceptingPetriNet | PetriNet, k: float = 2.0) -> float:
    """``1 / (1 + max(0, mean_degree - k))``; a plain sequence scores 1.0."""
    stats = degree_stats(net)
    if stats.num_places + stats.num_transitions == 0:
        raise ValueError("simplicity is undefined for an empty net")
    return 1.0 / (1.0 + max(0.0, stats.mean_degree - k))


def generalization(
    log: EventLog,
    apn: AcceptingPetriNet,
    replay: ReplayResult | None = None,
    classifier: Sequence[str] = DEFAULT_CLASSIFIER,
) -> float:
    """``1 - mean over visible transitions of exec(t) ** -0.5``; a transition
    that never fired contributes 1. A net without visible transitions scores 0."""
    if replay is None:
        replay = token_replay(log, apn, classifier)
    visible = apn.net.visible_transitions
    if not visible:
        return 0.0
    total = 0.0
    for t in visible:
        n = replay.transition_counts.get(t, 0)
        total += n ** -0.5 if n > 0 else 1.0
    return 1.0 - total / len(visible)
