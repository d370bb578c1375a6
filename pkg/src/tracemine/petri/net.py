"""Place/transition nets with unit arc weights, markings, and firing rules."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union


class PetriNetError(ValueError):
    pass


class NotEnabledError(PetriNetError):
    pass


@dataclass(frozen=True, eq=False)
class PetriNet:
    """An ordinary Petri net.

    ``transitions`` maps transition id to its label; ``None`` marks a silent
    (tau) transition. Arcs are ``(source, target)`` id pairs and must run
    between a place and a transition.
    """

    places: frozenset[str] = frozenset()
    transitions: Mapping[str, Union[str, None]] = field(default_factory=dict)
    arcs: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "places", frozenset(self.places))
        object.__setattr__(self, "transitions", dict(self.transitions))
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        clash = self.places & self.transitions.keys()
        if clash:
            raise PetriNetError(f"ids used for both places and transitions: {sorted(clash)}")
        for src, dst in self.arcs:
            if src in self.places:
                if dst not in self.transitions:
                    raise PetriNetError(f"arc {src}->{dst}: place must connect to a transition")
            elif src in self.transitions:
                if dst not in self.places:
                    raise PetriNetError(f"arc {src}->{dst}: transition must connect to a place")
            else:
                raise PetriNetError(f"arc {src}->{dst}: unknown source {src!r}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PetriNet):
            return NotImplemented
        return (
            self.places == other.places
            and self.transitions == other.transitions
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return hash((self.places, frozenset(self.transitions.items()), self.arcs))

    @cached_property
    def preset(self) -> dict[str, tuple[str, ...]]:
        """Input nodes of every node, sorted by id."""
        pre: dict[str, list[str]] = {n: [] for n in (*self.places, *self.transitions)}
        for src, dst in self.arcs:
            pre[dst].append(src)
        return {n: tuple(sorted(v)) for n, v in pre.items()}

    @cached_property
    def postset(self) -> dict[str, tuple[str, ...]]:
        post: dict[str, list[str]] = {n: [] for n in (*self.places, *self.transitions)}
        for src, dst in self.arcs:
            post[src].append(dst)
        return {n: tuple(sorted(v)) for n, v in post.items()}

    @cached_property
    def silent_transitions(self) -> tuple[str, ...]:
        return tuple(sorted(t for t, lab in self.transitions.items() if lab is None))

    @cached_property
    def visible_transitions(self) -> tuple[str, ...]:
        return tuple(sorted(t for t, lab in self.transitions.items() if lab is not None))

    @cached_property
    def transitions_by_label(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {}
        for t in sorted(self.transitions):
            lab = self.transitions[t]
            if lab is not None:
                out.setdefault(lab, []).append(t)
        return {k: tuple(v) for k, v in out.items()}

    @property
    def labels(self) -> set[str]:
        return set(self.transitions_by_label)


class Marking(Mapping[str, int]):
    """An immutable multiset of tokens over place ids."""

    __slots__ = ("_tokens", "_hash")

    def __init__(self, tokens: Mapping[str, int] | Iterable[tuple[str, int]] | None = None) -> None:
        items = dict(tokens or {})
        for p, n in items.items():
            if n < 0:
                raise PetriNetError(f"negative token count {n} on {p!r}")
        self._tokens = {p: n for p, n in sorted(items.items()) if n > 0}
        self._hash: int | None = None

    def __getitem__(self, place: str) -> int:
        return self._tokens[place]

    def __iter__(self) -> Iterator[str]:
        return iter(self._tokens)

    def __len__(self) -> int:
        return len(self._tokens)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._tokens.items()))
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Marking):
            return self._tokens == other._tokens
        if isinstance(other, Mapping):
            return self._tokens == {p: n for p, n in other.items() if n}
        return NotImplemented

    def __repr__(self) -> str:
        return f"Marking({self._tokens!r})"

    def total(self) -> int:
        return sum(self._tokens.values())

    def covers(self, other: Mapping[str, int]) -> bool:
        return all(self._tokens.get(p, 0) >= n for p, n in other.items())


@dataclass(frozen=True)
class AcceptingPetriNet:
    net: PetriNet
    initial: Marking = field(default_factory=Marking)
    final: Marking = field(default_factory=Marking)

    def __post_init__(self) -> None:
        object.__setattr__(self, "initial", Marking(self.initial))
        object.__setattr__(self, "final", Marking(self.final))
        for name, m in (("initial", self.initial), ("final", self.final)):
            unknown = set(m) - self.net.places
            if unknown:
                raise PetriNetError(f"{name} marking refers to unknown places {sorted(unknown)}")


def _net(apn: AcceptingPetriNet | PetriNet) -> PetriNet:
    return apn.net if isinstance(apn, AcceptingPetriNet) else apn


def is_enabled(apn: AcceptingPetriNet | PetriNet, m: Mapping[str, int], t: str) -> bool:
    net = _net(apn)
    return all(m.get(p, 0) >= 1 for p in net.preset[t])


def enabled_transitions(apn: AcceptingPetriNet | PetriNet, m: Mapping[str, int]) -> set[str]:
    net = _net(apn)
    return {t for t in net.transitions if all(m.get(p, 0) >= 1 for p in net.preset[t])}


def fire(apn: AcceptingPetriNet | PetriNet, m: Mapping[str, int], t: str) -> Marking:
    """Fire enabled transition ``t`` at ``m`` and return the successor marking."""
    net = _net(apn)
    if t not in net.transitions:
        raise PetriNetError(f"unknown transition {t!r}")
    if not is_enabled(net, m, t):
        raise NotEnabledError(f"transition {t!r} is not enabled")
    tokens = dict(m)
    for p in net.preset[t]:
        tokens[p] -= 1
    for p in net.postset[t]:
        tokens[p] = tokens.get(p, 0) + 1
    return Marking(tokens)


@dataclass(frozen=True)
class DegreeStats:
    num_places: int
    num_transitions: int
    num_arcs: int
    mean_degree: float


def degree_stats(net: AcceptingPetriNet | PetriNet) -> DegreeStats:
    net = _net(net)
    nodes = len(net.places) + len(net.transitions)
    mean = 2 * len(net.arcs) / nodes if nodes else 0.0
    return DegreeStats(len(net.places), len(net.transitions), len(net.arcs), mean)


@dataclass(frozen=True)
class WorkflowNetCheck:
    ok: bool
    diagnostics: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _reach(start: str, succ: Mapping[str, tuple[str, ...]]) -> set[str]:
    seen = {start}
    todo = deque([start])
    while todo:
        for n in succ[todo.popleft()]:
            if n not in seen:
                seen.add(n)
                todo.append(n)
    return seen


def is_workflow_net(apn: AcceptingPetriNet | PetriNet) -> WorkflowNetCheck:
    """Structural workflow-net test: one source place, one sink place, and
    every node on some path from source to sink."""
    net = _net(apn)
    diags = []
    sources = sorted(p for p in net.places if not net.preset[p])
    sinks = sorted(p for p in net.places if not net.postset[p])
    if len(sources) != 1:
        diags.append(f"expected exactly one source place, found {len(sources)}: {sources}")
    if len(sinks) != 1:
        diags.append(f"expected exactly one sink place, found {len(sinks)}: {sinks}")
    if len(sources) == 1 and len(sinks) == 1:
        fwd = _reach(sources[0], net.postset)
        bwd = _reach(sinks[0], net.preset)
        for node in sorted((*net.places, *net.transitions)):
            if node not in fwd:
                diags.append(f"{node!r} is not reachable from source {sources[0]!r}")
            elif node not in bwd:
                diags.append(f"sink {sinks[0]!r} is not reachable from {node!r}")
    for p in sources:
        if p in sinks:
            diags.append(f"place {p!r} is isolated")
    return WorkflowNetCheck(not diags, tuple(diags))
