"""Alpha and Alpha+ miners.

Alpha builds one place per maximal pair ``(A, B)`` where every ``a in A``
causally precedes every ``b in B`` and both sets are internally unrelated.
Alpha+ additionally handles length-one loops: self-looping activities are
projected out, Alpha runs on the rest, and each loop activity is re-attached
as a self-loop on the places matching its neighbourhood.
"""

from __future__ import annotations

from collections.abc import Sequence

from ..log import DEFAULT_CLASSIFIER, EventLog, log_labels
from ..petri import AcceptingPetriNet, Marking, PetriNet
from ..stats import DirectlyFollowsGraph, dfg_from_sequences
from .common import SINK, SOURCE, check_log, fmt_set, tid
from .footprint import FootprintMatrix, footprint_from_dfg

Pair = tuple[frozenset[str], frozenset[str]]


def place_id(pair: Pair) -> str:
    return f"p({fmt_set(pair[0])},{fmt_set(pair[1])})"


def _valid(fp: FootprintMatrix, a_set: frozenset[str], b_set: frozenset[str]) -> bool:
    for x in a_set:
        if any(not fp.unrelated(x, y) for y in a_set):
            return False
        if any(not fp.causal(x, b) for b in b_set):
            return False
    return all(fp.unrelated(x, y) for x in b_set for y in b_set)


def maximal_pairs(fp: FootprintMatrix) -> list[Pair]:
    """All maximal ``(A, B)`` pairs, sorted for deterministic place order.

    Valid pairs are closed under taking subsets, so every one of them is
    reachable from a singleton pair by adding one activity at a time.
    """
    alphabet = fp.alphabet
    seeds = [
        (frozenset([a]), frozenset([b]))
        for a in alphabet
        for b in alphabet
        if fp.causal(a, b) and fp.unrelated(a, a) and fp.unrelated(b, b)
    ]
    seen: set[Pair] = set(seeds)
    frontier = list(seeds)
    while frontier:
        nxt = []
        for a_set, b_set in frontier:
            for x in alphabet:
                if x not in a_set:
                    cand = (a_set | {x}, b_set)
                    if cand not in seen and _valid(fp, *cand):
                        seen.add(cand)
                        nxt.append(cand)
                if x not in b_set:
                    cand = (a_set, b_set | {x})
                    if cand not in seen and _valid(fp, *cand):
                        seen.add(cand)
                        nxt.append(cand)
        frontier = nxt
    maximal = [
        (a, b)
        for (a, b) in seen
        if not any((a <= a2 and b <= b2) and (a, b) != (a2, b2) for (a2, b2) in seen)
    ]
    return sorted(maximal, key=lambda p: (sorted(p[0]), sorted(p[1])))


def _build(
    activities: Sequence[str],
    pairs: Sequence[Pair],
    starts: Sequence[str],
    ends: Sequence[str],
    extra_arcs: set[tuple[str, str]] = frozenset(),  # type: ignore[assignment]
) -> AcceptingPetriNet:
    places = {SOURCE, SINK}
    arcs = set(extra_arcs)
    for pair in pairs:
        pid = place_id(pair)
        places.add(pid)
        arcs.update((tid(a), pid) for a in pair[0])
        arcs.update((pid, tid(b)) for b in pair[1])
    arcs.update((SOURCE, tid(a)) for a in starts)
    arcs.update((tid(a), SINK) for a in ends)
    transitions = {tid(a): a for a in activities}
    net = PetriNet(frozenset(places), transitions, frozenset(arcs))
    return AcceptingPetriNet(net, Marking({SOURCE: 1}), Marking({SINK: 1}))


def alpha_from_dfg(dfg: DirectlyFollowsGraph) -> AcceptingPetriNet:
    fp = footprint_from_dfg(dfg)
    return _build(dfg.activities, maximal_pairs(fp), sorted(dfg.start_counts), sorted(dfg.end_counts))


def alpha_miner(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> AcceptingPetriNet:
    seqs = log_labels(log, classifier)
    check_log(seqs)
    return alpha_from_dfg(dfg_from_sequences(seqs))


def length_one_loops(dfg: DirectlyFollowsGraph) -> list[str]:
    return [a for a in dfg.activities if dfg.count(a, a) > 0]


def alpha_plus_miner(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> AcceptingPetriNet:
    seqs = log_labels(log, classifier)
    check_log(seqs)
    full = dfg_from_sequences(seqs)
    loops = length_one_loops(full)
    if not loops:
        return alpha_from_dfg(full)
    loop_set = set(loops)
    reduced = [tuple(a for a in s if a not in loop_set) for s in seqs]
    reduced_dfg = dfg_from_sequences([s for s in reduced if s])
    pairs = maximal_pairs(footprint_from_dfg(reduced_dfg))
    arcs: set[tuple[str, str]] = set()
    for t in loops:
        hosts = [
            place_id(pair)
            for pair in pairs
            if all(full.count(a, t) > 0 for a in pair[0]) and all(full.count(t, b) > 0 for b in pair[1])
        ]
        if not hosts:
            # no matching inner place: fall back to the boundary the loop touches
            if t in full.start_counts:
                hosts = [SOURCE]
            elif t in full.end_counts:
                hosts = [SINK]
        for pid in hosts:
            arcs.add((pid, tid(t)))
            arcs.add((tid(t), pid))
    return _build(
        full.activities,
        pairs,
        sorted(reduced_dfg.start_counts),
        sorted(reduced_dfg.end_counts),
        arcs,
    )
