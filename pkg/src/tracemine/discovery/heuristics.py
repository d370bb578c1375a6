"""Heuristic miner: frequency-based dependency graphs and their Petri nets."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from ..log import DEFAULT_CLASSIFIER, EventLog, log_labels
from ..petri import AcceptingPetriNet, Marking, PetriNet, fuse_silent_series
from ..stats import dfg_from_sequences
from .common import SINK, SOURCE, DiscoveryError, MinerParams, fmt_set, tid

# artificial case start/end; NUL cannot occur in XML 1.0 text, so no parsed
# activity label collides with these
START = "\x00start"
END = "\x00end"

Group = tuple[str, ...]


@dataclass
class DependencyGraph:
    activities: tuple[str, ...]
    activity_counts: dict[str, int]
    dfg: dict[tuple[str, str], int]
    start_counts: dict[str, int]
    end_counts: dict[str, int]
    dependency: dict[tuple[str, str], float]
    loop1: dict[str, float]
    loop2: dict[tuple[str, str], float]
    edges: frozenset[tuple[str, str]]
    output_groups: dict[str, tuple[Group, ...]] = field(default_factory=dict)
    input_groups: dict[str, tuple[Group, ...]] = field(default_factory=dict)
    params: MinerParams = field(default_factory=MinerParams)

    def count(self, a: str, b: str) -> int:
        return self.dfg.get((a, b), 0)

    def dependency_of(self, a: str, b: str) -> float:
        if a == b:
            return self.loop1.get(a, 0.0)
        return self.dependency.get((a, b), 0.0)

    def successors(self, a: str) -> list[str]:
        return sorted(b for (x, b) in self.edges if x == a)

    def predecessors(self, b: str) -> list[str]:
        return sorted(a for (a, y) in self.edges if y == b)

    def disconnected(self) -> list[str]:
        """Activities not on any start-to-end path through the retained edges."""
        fwd = _closure(self.start_counts, self.successors)
        bwd = _closure(self.end_counts, self.predecessors)
        return [a for a in self.activities if a not in fwd or a not in bwd]


def _closure(seeds, step) -> set[str]:
    seen = set(seeds)
    todo = sorted(seen)
    while todo:
        for n in step(todo.pop()):
            if n not in seen:
                seen.add(n)
                todo.append(n)
    return seen


def dependency_measure(ab: int, ba: int) -> float:
    return (ab - ba) / (ab + ba + 1)


def _loop2_counts(seqs: Sequence[Sequence[str]]) -> Counter:
    """``(a, b) -> number of a,b,a windows``."""
    out: Counter = Counter()
    for s in seqs:
        for x, y, z in zip(s, s[1:], s[2:]):
            if x == z and x != y:
                out[(x, y)] += 1
    return out


def _best(candidates: list[tuple[float, Any]]) -> Any:
    """Key of the highest-scoring candidate; ties go to the smallest key."""
    if not candidates:
        return None
    return min(candidates, key=lambda c: (-c[0], c[1]))[1]


def heuristic_miner(
    log: EventLog,
    params: MinerParams | None = None,
    classifier: Sequence[str] = DEFAULT_CLASSIFIER,
) -> DependencyGraph:
    params = params or MinerParams()
    seqs = log_labels(log, classifier)
    if not seqs or all(not s for s in seqs):
        raise DiscoveryError("cannot discover a model from an empty log")
    return dependency_graph(seqs, params)


def dependency_graph(seqs: Sequence[Sequence[str]], params: MinerParams) -> DependencyGraph:
    seqs = [tuple(s) for s in seqs if s]
    dfg = dfg_from_sequences(seqs)
    acts = tuple(dfg.activities)
    count = dfg.count

    dependency = {}
    for a in acts:
        for b in acts:
            if a != b and (count(a, b) or count(b, a)):
                dependency[(a, b)] = dependency_measure(count(a, b), count(b, a))
    loop1 = {a: count(a, a) / (count(a, a) + 1) for a in acts if count(a, a)}
    l2 = _loop2_counts(seqs)
    loop2 = {}
    for (a, b) in l2:
        n = l2[(a, b)] + l2.get((b, a), 0)
        loop2[(a, b)] = loop2[(b, a)] = n / (n + 1)

    thr = params.dependency_threshold
    edges = {e for e, d in dependency.items() if count(*e) > 0 and d >= thr}
    edges |= {(a, a) for a, v in loop1.items() if v >= thr}
    for (a, b), v in loop2.items():
        if v >= params.loop2_threshold and a not in loop1 and b not in loop1:
            edges |= {(a, b), (b, a)}

    if params.all_connected:
        for a in acts:
            if a not in dfg.start_counts:
                best = _best([(dependency[(x, a)], x) for x in acts if x != a and count(x, a)])
                if best is not None:
                    edges.add((best, a))
            if a not in dfg.end_counts:
                best = _best([(dependency[(a, y)], y) for y in acts if y != a and count(a, y)])
                if best is not None:
                    edges.add((a, best))
        _repair_reachability(acts, dfg.start_counts, dfg.end_counts, edges, dependency, count)

    graph = DependencyGraph(
        activities=acts,
        activity_counts=dict(dfg.node_counts),
        dfg=dict(dfg.edge_counts),
        start_counts=dict(dfg.start_counts),
        end_counts=dict(dfg.end_counts),
        dependency=dependency,
        loop1=loop1,
        loop2=loop2,
        edges=frozenset(edges),
        params=params,
    )
    _classify_bindings(graph)
    return graph


def _repair_reachability(acts, starts, ends, edges, dependency, count) -> None:
    """Add the strongest observed edges until every activity lies on a
    start-to-end path. Always succeeds: each trace is such a path in the DFG."""

    def succ(a):
        return [y for (x, y) in edges if x == a]

    def pred(b):
        return [x for (x, y) in edges if y == b]

    while True:
        reach = _closure(starts, succ)
        missing = [a for a in acts if a not in reach]
        if not missing:
            break
        cand = [(dependency[(x, y)], (x, y)) for x in sorted(reach) for y in missing if count(x, y)]
        edges.add(_best(cand))
    while True:
        coreach = _closure(ends, pred)
        missing = [a for a in acts if a not in coreach]
        if not missing:
            break
        cand = [(dependency[(x, y)], (x, y)) for x in missing for y in sorted(coreach) if count(x, y)]
        edges.add(_best(cand))


def _and_groups(items: list[str], is_and) -> list[Group]:
    """Connected components of the AND relation among ``items``."""
    groups: list[Group] = []
    left = sorted(items)
    while left:
        comp = [left.pop(0)]
        i = 0
        while i < len(comp):
            joined = [x for x in left if is_and(comp[i], x)]
            for x in joined:
                left.remove(x)
            comp.extend(joined)
            i += 1
        groups.append(tuple(sorted(comp)))
    return groups


def _classify_bindings(g: DependencyGraph) -> None:
    """Split every activity's outputs and inputs into XOR-alternative AND-groups."""
    thr = g.params.and_threshold
    count = g.count
    for a in g.activities:
        outs = [b for b in g.successors(a) if b != a]

        def out_and(b, c, a=a):
            return (count(b, c) + count(c, b)) / (count(a, b) + count(a, c) + 1) >= thr

        groups = _and_groups(outs, out_and)
        if (a, a) in g.edges:
            groups.append((a,))
        if a in g.end_counts:
            groups.append((END,))
        g.output_groups[a] = tuple(groups)

        ins = [x for x in g.predecessors(a) if x != a]

        def in_and(x, y, a=a):
            return (count(x, y) + count(y, x)) / (count(x, a) + count(y, a) + 1) >= thr

        groups = _and_groups(ins, in_and)
        if (a, a) in g.edges:
            groups.append((a,))
        if a in g.start_counts:
            groups.append((START,))
        g.input_groups[a] = tuple(groups)


def _edge_place(a: str, b: str) -> str:
    if a == START:
        return SOURCE
    if b == END:
        return SINK
    return f"e({a},{b})"


def heuristic_net_to_petri(dg: DependencyGraph) -> AcceptingPetriNet:
    """Translate a dependency graph into an accepting Petri net.

    Every activity becomes a visible transition. When an activity has more
    than one output (input) group, a place ``out(a)`` (``in(a)``) holds the
    XOR choice and one silent transition per group forks (joins) the AND
    branches. Routing-only silent steps are fused away afterwards.
    """
    if not dg.activities:
        raise DiscoveryError("dependency graph is empty")
    bad = dg.disconnected()
    if bad:
        raise DiscoveryError(
            "activities not on a start-to-end path (enable all_connected to repair): " + ", ".join(bad)
        )
    places = {SOURCE, SINK}
    transitions: dict[str, str | None] = {}
    arcs: set[tuple[str, str]] = set()

    def name(g: Group) -> str:
        return fmt_set("start" if x == START else "end" if x == END else x for x in g)

    for a in dg.activities:
        t = tid(a)
        transitions[t] = a
        outs = dg.output_groups[a]
        if len(outs) == 1:
            for b in outs[0]:
                places.add(_edge_place(a, b))
                arcs.add((t, _edge_place(a, b)))
        else:
            hub = f"out({a})"
            places.add(hub)
            arcs.add((t, hub))
            for grp in outs:
                tau = f"tau:split({a})->{name(grp)}"
                transitions[tau] = None
                arcs.add((hub, tau))
                for b in grp:
                    places.add(_edge_place(a, b))
                    arcs.add((tau, _edge_place(a, b)))
        ins = dg.input_groups[a]
        if len(ins) == 1:
            for x in ins[0]:
                places.add(_edge_place(x, a))
                arcs.add((_edge_place(x, a), t))
        else:
            hub = f"in({a})"
            places.add(hub)
            arcs.add((hub, t))
            for grp in ins:
                tau = f"tau:join{name(grp)}->({a})"
                transitions[tau] = None
                arcs.add((tau, hub))
                for x in grp:
                    places.add(_edge_place(x, a))
                    arcs.add((_edge_place(x, a), tau))
    net = PetriNet(frozenset(places), transitions, frozenset(arcs))
    return fuse_silent_series(AcceptingPetriNet(net, Marking({SOURCE: 1}), Marking({SINK: 1})))
