"""Token-based replay of traces on accepting Petri nets.

Counting convention: tokens of the initial marking count as produced and the
final-marking tokens taken at the end count as consumed, so a perfectly
fitting trace has ``missing == remaining == 0``.
"""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Callable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..log import DEFAULT_CLASSIFIER, EventLog
from ..petri import AcceptingPetriNet
from ..stats import variants

DEFAULT_SILENT_DEPTH = 10
# hard cap on markings visited by one silent search
MAX_SEARCH_STATES = 20_000

Tokens = dict[str, int]


class ReplayError(ValueError):
    pass


@dataclass(frozen=True)
class TraceReplay:
    variant: tuple[str, ...]
    count: int
    produced: int
    consumed: int
    missing: int
    remaining: int
    fired: tuple[str, ...] = ()
    unmatched: tuple[str, ...] = ()
    missing_tokens: Mapping[str, int] = field(default_factory=dict)
    remaining_tokens: Mapping[str, int] = field(default_factory=dict)

    @property
    def fits(self) -> bool:
        return self.missing == 0 and self.remaining == 0

    @property
    def fitness(self) -> float:
        return _fitness(self.produced, self.consumed, self.missing, self.remaining)


@dataclass(frozen=True)
class ReplayResult:
    traces: tuple[TraceReplay, ...]
    produced: int
    consumed: int
    missing: int
    remaining: int
    transition_counts: Mapping[str, int]

    @property
    def num_traces(self) -> int:
        return sum(t.count for t in self.traces)

    @property
    def fitting_traces(self) -> int:
        return sum(t.count for t in self.traces if t.fits)


def _fitness(p: int, c: int, m: int, r: int) -> float:
    if p == 0 or c == 0:
        raise ReplayError("fitness is undefined when no tokens were produced or consumed")
    return 0.5 * (1 - m / c) + 0.5 * (1 - r / p)


def fitness(rr: ReplayResult) -> float:
    """Token-replay fitness ``(1 - M/C)/2 + (1 - R/P)/2`` over the whole log."""
    return _fitness(rr.produced, rr.consumed, rr.missing, rr.remaining)


def _key(tokens: Tokens) -> frozenset:
    return frozenset(tokens.items())


class Replayer:
    """Step-wise token game with silent-transition look-ahead and
    missing-token insertion. Stateless between calls, so one instance can
    serve concurrent replays."""

    def __init__(self, apn: AcceptingPetriNet, silent_depth: int = DEFAULT_SILENT_DEPTH) -> None:
        net = apn.net
        self.apn = apn
        self.pre = net.preset
        self.post = net.postset
        self.by_label = net.transitions_by_label
        self.silent = net.silent_transitions
        self.silent_depth = silent_depth

    def enabled(self, tokens: Tokens, t: str) -> bool:
        return all(tokens.get(p, 0) > 0 for p in self.pre[t])

    def fire(self, tokens: Tokens, t: str) -> None:
        for p in self.pre[t]:
            n = tokens[p] - 1
            if n:
                tokens[p] = n
            else:
                del tokens[p]
        for p in self.post[t]:
            tokens[p] = tokens.get(p, 0) + 1

    def silent_path(self, tokens: Tokens, goal: Callable[[Tokens], bool]) -> list[str] | None:
        """Shortest sequence of silent firings from ``tokens`` to a marking
        satisfying ``goal`` (breadth-first, transitions tried in id order)."""
        if goal(tokens):
            return []
        if not self.silent or self.silent_depth <= 0:
            return None
        seen = {_key(tokens)}
        queue = deque([(tokens, [])])
        while queue:
            cur, path = queue.popleft()
            if len(path) >= self.silent_depth:
                continue
            for t in self.silent:
                if not self.enabled(cur, t):
                    continue
                nxt = dict(cur)
                self.fire(nxt, t)
                k = _key(nxt)
                if k in seen:
                    continue
                if goal(nxt):
                    return path + [t]
                if len(seen) >= MAX_SEARCH_STATES:
                    return None
                seen.add(k)
                queue.append((nxt, path + [t]))
        return None

    def silent_closure(self, tokens: Tokens) -> list[Tokens]:
        """All markings reachable through silent firings within the depth bound."""
        seen = {_key(tokens)}
        out = [tokens]
        frontier = [tokens]
        for _ in range(self.silent_depth):
            nxt_frontier = []
            for cur in frontier:
                for t in self.silent:
                    if self.enabled(cur, t):
                        nxt = dict(cur)
                        self.fire(nxt, t)
                        k = _key(nxt)
                        if k not in seen and len(seen) < MAX_SEARCH_STATES:
                            seen.add(k)
                            out.append(nxt)
                            nxt_frontier.append(nxt)
            if not nxt_frontier:
                break
            frontier = nxt_frontier
        return out

    def step(self, tokens: Tokens, label: str, rec: _Recorder) -> None:
        """Replay one event in place on ``tokens``."""
        cands = self.by_label.get(label)
        if not cands:
            rec.unmatched.append(label)
            return
        chosen = next((t for t in cands if self.enabled(tokens, t)), None)
        if chosen is None:
            path = self.silent_path(tokens, lambda tk: any(self.enabled(tk, t) for t in cands))
            if path is not None:
                for s in path:
                    rec.fire(self, tokens, s)
                chosen = next(t for t in cands if self.enabled(tokens, t))
            else:
                chosen = min(cands, key=lambda t: (sum(1 for p in self.pre[t] if not tokens.get(p)), t))
                for p in self.pre[chosen]:
                    if not tokens.get(p):
                        tokens[p] = 1
                        rec.missing += 1
                        rec.missing_tokens[p] += 1
        rec.fire(self, tokens, chosen)

    def _deficit(self, tokens: Tokens) -> tuple[int, int]:
        final = self.apn.final
        missing = sum(max(0, n - tokens.get(p, 0)) for p, n in final.items())
        surplus = sum(max(0, n - final.get(p, 0)) for p, n in tokens.items())
        return missing, surplus

    def end_path(self, tokens: Tokens) -> list[str]:
        """Shortest silent sequence leading to the marking closest to the final
        one: fewest missing tokens first, then fewest remaining."""
        best, best_path = self._deficit(tokens), []
        if best == (0, 0) or not self.silent or self.silent_depth <= 0:
            return best_path
        seen = {_key(tokens)}
        queue = deque([(tokens, [])])
        while queue:
            cur, path = queue.popleft()
            if len(path) >= self.silent_depth:
                continue
            for t in self.silent:
                if not self.enabled(cur, t):
                    continue
                nxt = dict(cur)
                self.fire(nxt, t)
                k = _key(nxt)
                if k in seen:
                    continue
                d = self._deficit(nxt)
                if d < best:
                    best, best_path = d, path + [t]
                    if d == (0, 0):
                        return best_path
                if len(seen) >= MAX_SEARCH_STATES:
                    return best_path
                seen.add(k)
                queue.append((nxt, path + [t]))
        return best_path

    def finish(self, tokens: Tokens, rec: _Recorder) -> None:
        final = dict(self.apn.final)
        for s in self.end_path(tokens):
            rec.fire(self, tokens, s)
        for p, n in final.items():
            have = tokens.get(p, 0)
            if have < n:
                rec.missing += n - have
                rec.missing_tokens[p] += n - have
                have = n
            rec.consumed += n
            if have - n:
                tokens[p] = have - n
            else:
                tokens.pop(p, None)

    def replay(self, trace: Sequence[str], count: int = 1) -> TraceReplay:
        tokens: Tokens = dict(self.apn.initial)
        rec = _Recorder()
        rec.produced = sum(tokens.values())
        for label in trace:
            self.step(tokens, label, rec)
        self.finish(tokens, rec)
        return TraceReplay(
            variant=tuple(trace),
            count=count,
            produced=rec.produced,
            consumed=rec.consumed,
            missing=rec.missing,
            remaining=sum(tokens.values()),
            fired=tuple(rec.fired),
            unmatched=tuple(rec.unmatched),
            missing_tokens=dict(sorted(rec.missing_tokens.items())),
            remaining_tokens=dict(sorted(tokens.items())),
        )


class _Recorder:
    __slots__ = ("produced", "consumed", "missing", "fired", "unmatched", "missing_tokens")

    def __init__(self) -> None:
        self.produced = 0
        self.consumed = 0
        self.missing = 0
        self.fired: list[str] = []
        self.unmatched: list[str] = []
        self.missing_tokens: Counter[str] = Counter()

    def fire(self, replayer: Replayer, tokens: Tokens, t: str) -> None:
        replayer.fire(tokens, t)
        self.consumed += len(replayer.pre[t])
        self.produced += len(replayer.post[t])
        self.fired.append(t)


def replay_variants(
    apn: AcceptingPetriNet,
    variant_counts: Sequence[tuple[Sequence[str], int]],
    workers: int | None = None,
    silent_depth: int = DEFAULT_SILENT_DEPTH,
) -> ReplayResult:
    replayer = Replayer(apn, silent_depth)
    items = [(tuple(v), n) for v, n in variant_counts]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            traces = list(pool.map(lambda vc: replayer.replay(*vc), items))
    else:
        traces = [replayer.replay(v, n) for v, n in items]
    exec_counts: Counter[str] = Counter()
    for tr in traces:
        for t in tr.fired:
            exec_counts[t] += tr.count
    return ReplayResult(
        traces=tuple(traces),
        produced=sum(t.produced * t.count for t in traces),
        consumed=sum(t.consumed * t.count for t in traces),
        missing=sum(t.missing * t.count for t in traces),
        remaining=sum(t.remaining * t.count for t in traces),
        transition_counts=dict(sorted(exec_counts.items())),
    )


def token_replay(
    log: EventLog,
    apn: AcceptingPetriNet,
    classifier: Sequence[str] = DEFAULT_CLASSIFIER,
    workers: int | None = None,
    silent_depth: int = DEFAULT_SILENT_DEPTH,
) -> ReplayResult:
    """Replay every variant of ``log`` once and weight the counts by frequency."""
    vs = [(v.sequence, v.count) for v in variants(log, classifier)]
    return replay_variants(apn, vs, workers=workers, silent_depth=silent_depth)
