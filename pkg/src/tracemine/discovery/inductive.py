"""Inductive miner (base variant).

The log is recursively split by the first cut found on its directly-follows
graph, tried in the order xor, sequence, parallel, loop. Logs with empty
traces become ``xor(tau, ...)``, single-activity logs are leaves (or
``loop(a, tau)`` when the activity repeats), and when no cut applies the
flower model over the remaining activities is returned, so the result
always replays its log perfectly.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence

from ..log import DEFAULT_CLASSIFIER, EventLog, log_labels
from ..stats import DirectlyFollowsGraph, dfg_from_sequences
from .tree import TAU, Operator, ProcessTree, flower, leaf, loop, parallel, sequence, xor

VariantLog = Counter  # Counter[tuple[str, ...]]


def inductive_miner(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> ProcessTree:
    return mine_variants(Counter(log_labels(log, classifier)))


def mine_variants(vlog: VariantLog) -> ProcessTree:
    vlog = Counter({k: n for k, n in vlog.items() if n > 0})
    if not vlog or set(vlog) == {()}:
        return TAU
    if () in vlog:
        rest = Counter({k: n for k, n in vlog.items() if k})
        return xor(TAU, mine_variants(rest))
    acts = sorted({a for trace in vlog for a in trace})
    if len(acts) == 1:
        a = acts[0]
        if set(vlog) == {(a,)}:
            return leaf(a)
        return loop(leaf(a), TAU)

    dfg = _dfg(vlog)
    for detect, split, op in (
        (xor_cut, _split_xor, Operator.XOR),
        (sequence_cut, _split_project, Operator.SEQUENCE),
        (parallel_cut, _split_project, Operator.PARALLEL),
        (loop_cut, _split_loop, Operator.LOOP),
    ):
        groups = detect(dfg)
        if groups:
            children = [mine_variants(sub) for sub in split(vlog, groups)]
            if op is Operator.XOR:
                return xor(*children)
            if op is Operator.SEQUENCE:
                return sequence(*children)
            if op is Operator.PARALLEL:
                return parallel(*children)
            return loop(*children)
    return flower(acts)


def _dfg(vlog: VariantLog) -> DirectlyFollowsGraph:
    keys = sorted(vlog)
    return dfg_from_sequences(keys, [vlog[k] for k in keys])


# -- graph helpers ------------------------------------------------------------

def _components(nodes: list[str], adjacent) -> list[list[str]]:
    """Connected components of an undirected relation, each sorted, ordered
    by smallest member."""
    left = sorted(nodes)
    comps = []
    while left:
        comp = [left.pop(0)]
        i = 0
        while i < len(comp):
            linked = [x for x in left if adjacent(comp[i], x)]
            for x in linked:
                left.remove(x)
            comp.extend(linked)
            i += 1
        comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


def _reachability(dfg: DirectlyFollowsGraph) -> dict[str, set[str]]:
    succ: dict[str, set[str]] = {a: set() for a in dfg.activities}
    for a, b in dfg.edge_counts:
        succ[a].add(b)
    reach = {}
    for a in dfg.activities:
        seen: set[str] = set()
        todo = list(succ[a])
        while todo:
            x = todo.pop()
            if x not in seen:
                seen.add(x)
                todo.extend(succ[x])
        reach[a] = seen
    return reach


# -- cut detection ------------------------------------------------------------

def xor_cut(dfg: DirectlyFollowsGraph) -> list[list[str]] | None:
    edges = dfg.edge_counts
    comps = _components(dfg.activities, lambda a, b: (a, b) in edges or (b, a) in edges)
    return comps if len(comps) > 1 else None


def sequence_cut(dfg: DirectlyFollowsGraph) -> list[list[str]] | None:
    reach = _reachability(dfg)
    # strongly connected components
    groups = _components(dfg.activities, lambda a, b: b in reach[a] and a in reach[b])

    def reaches(g1, g2) -> bool:
        return any(y in reach[x] for x in g1 for y in g2)

    merged = True
    while merged:
        merged = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                if not reaches(groups[i], groups[j]) and not reaches(groups[j], groups[i]):
                    groups[i] = sorted(groups[i] + groups[j])
                    del groups[j]
                    merged = True
                    break
            if merged:
                break
    if len(groups) < 2:
        return None
    groups.sort(key=lambda g: (sum(reaches(h, g) for h in groups if h is not g), g[0]))
    for i, gi in enumerate(groups):
        for gj in groups[i + 1:]:
            if reaches(gj, gi):
                return None
    return groups


def parallel_cut(dfg: DirectlyFollowsGraph) -> list[list[str]] | None:
    edges = dfg.edge_counts
    parts = _components(
        dfg.activities, lambda a, b: not ((a, b) in edges and (b, a) in edges)
    )
    if len(parts) < 2:
        return None
    starts, ends = set(dfg.start_counts), set(dfg.end_counts)
    good = [p for p in parts if starts & set(p) and ends & set(p)]
    bad = [p for p in parts if not (starts & set(p) and ends & set(p))]
    if not good:
        return None
    if bad:
        good[0] = sorted(good[0] + [a for p in bad for a in p])
        good.sort(key=lambda p: p[0])
    return good if len(good) > 1 else None


def loop_cut(dfg: DirectlyFollowsGraph) -> list[list[str]] | None:
    starts, ends = set(dfg.start_counts), set(dfg.end_counts)
    edges = dfg.edge_counts
    do = starts | ends
    rest = [a for a in dfg.activities if a not in do]
    comps = _components(rest, lambda a, b: (a, b) in edges or (b, a) in edges)
    redo = [set(c) for c in comps]
    changed = True
    while changed:
        changed = False
        for comp in redo:
            entries = {b for (a, b) in edges if a in do and b in comp}
            exits = {a for (a, b) in edges if a in comp and b in do}
            ok = (
                all(a in ends for (a, b) in edges if a in do and b in comp)
                and all(b in starts for (a, b) in edges if a in comp and b in do)
                and all((e, b) in edges for b in entries for e in ends)
                and all((a, s) in edges for a in exits for s in starts)
            )
            if not ok:
                do |= comp
                redo.remove(comp)
                changed = True
                break
    if not redo:
        return None
    return [sorted(do)] + sorted((sorted(c) for c in redo), key=lambda c: c[0])


# -- log splitting ------------------------------------------------------------

def _split_xor(vlog: VariantLog, groups: list[list[str]]) -> list[VariantLog]:
    owner = {a: i for i, g in enumerate(groups) for a in g}
    subs = [Counter() for _ in groups]
    for trace, n in vlog.items():
        subs[owner[trace[0]]][trace] += n
    return subs


def _split_project(vlog: VariantLog, groups: list[list[str]]) -> list[VariantLog]:
    subs = [Counter() for _ in groups]
    sets = [set(g) for g in groups]
    for trace, n in vlog.items():
        for sub, g in zip(subs, sets):
            sub[tuple(a for a in trace if a in g)] += n
    return subs


def _split_loop(vlog: VariantLog, groups: list[list[str]]) -> list[VariantLog]:
    owner = {a: i for i, g in enumerate(groups) for a in g}
    subs = [Counter() for _ in groups]
    for trace, n in vlog.items():
        seg = [trace[0]]
        for a in trace[1:]:
            if owner[a] == owner[seg[-1]]:
                seg.append(a)
            else:
                subs[owner[seg[-1]]][tuple(seg)] += n
                seg = [a]
        subs[owner[seg[-1]]][tuple(seg)] += n
    return subs
