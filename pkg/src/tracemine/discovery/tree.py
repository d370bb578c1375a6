"""Process trees and their translation into workflow nets."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..petri import AcceptingPetriNet, Marking, PetriNet, fuse_silent_series
from .common import SINK, SOURCE, tid


class Operator(enum.Enum):
    SEQUENCE = "sequence"
    XOR = "xor"
    PARALLEL = "parallel"
    LOOP = "loop"


@dataclass(frozen=True)
class ProcessTree:
    """Operator node or leaf. A leaf with ``label=None`` is silent (tau).

    ``loop(do, redo1, ..., redoN)`` runs ``do``, then any number of times one
    redo child followed by ``do`` again.
    """

    operator: Operator | None = None
    children: tuple[ProcessTree, ...] = ()
    label: str | None = None

    def __post_init__(self) -> None:
        if self.operator is None:
            if self.children:
                raise ValueError("a leaf cannot have children")
        else:
            if self.label is not None:
                raise ValueError("an operator node has no label")
            if not self.children:
                raise ValueError(f"{self.operator.value} node needs children")
            if self.operator is Operator.LOOP and len(self.children) < 2:
                raise ValueError("a loop needs a do child and at least one redo child")

    @property
    def is_leaf(self) -> bool:
        return self.operator is None

    @property
    def is_tau(self) -> bool:
        return self.operator is None and self.label is None

    def activities(self) -> set[str]:
        if self.is_leaf:
            return set() if self.label is None else {self.label}
        return set().union(*(c.activities() for c in self.children))

    def __str__(self) -> str:
        if self.is_leaf:
            return "tau" if self.label is None else self.label
        return f"{self.operator.value}({', '.join(str(c) for c in self.children)})"


def leaf(label: str) -> ProcessTree:
    return ProcessTree(label=label)


TAU = ProcessTree()


def _node(op: Operator, children) -> ProcessTree:
    flat: list[ProcessTree] = []
    for c in children:
        if op is not Operator.LOOP and c.operator is op:
            flat.extend(c.children)
        else:
            flat.append(c)
    return ProcessTree(op, tuple(flat))


def sequence(*children: ProcessTree) -> ProcessTree:
    return _node(Operator.SEQUENCE, children)


def xor(*children: ProcessTree) -> ProcessTree:
    return _node(Operator.XOR, children)


def parallel(*children: ProcessTree) -> ProcessTree:
    return _node(Operator.PARALLEL, children)


def loop(do: ProcessTree, *redo: ProcessTree) -> ProcessTree:
    return ProcessTree(Operator.LOOP, (do, *redo))


def flower(activities) -> ProcessTree:
    """The model accepting every sequence over ``activities``."""
    return loop(TAU, *(leaf(a) for a in sorted(activities)))


class _Builder:
    def __init__(self) -> None:
        self.places = {SOURCE, SINK}
        self.transitions: dict[str, str | None] = {}
        self.arcs: set[tuple[str, str]] = set()

    def place(self, path: str, role: str = "") -> str:
        pid = f"p{path}{role}"
        self.places.add(pid)
        return pid

    def transition(self, label: str | None, path: str, role: str = "") -> str:
        if label is None:
            t = f"tau:{path}{role}"
        else:
            t = tid(label)
            if t in self.transitions:
                t = f"{t}@{path}"
        self.transitions[t] = label
        return t

    def link(self, entry: str, t: str, exit_: str) -> None:
        self.arcs.add((entry, t))
        self.arcs.add((t, exit_))

    def build(self, node: ProcessTree, entry: str, exit_: str, path: str) -> None:
        if node.is_leaf:
            self.link(entry, self.transition(node.label, path), exit_)
            return
        kids = node.children
        op = node.operator
        if op is Operator.SEQUENCE:
            cur = entry
            for i, child in enumerate(kids):
                nxt = exit_ if i == len(kids) - 1 else self.place(f"{path}.{i}", "/out")
                self.build(child, cur, nxt, f"{path}.{i}")
                cur = nxt
        elif op is Operator.XOR:
            for i, child in enumerate(kids):
                self.build(child, entry, exit_, f"{path}.{i}")
        elif op is Operator.PARALLEL:
            split = self.transition(None, path, "/split")
            join = self.transition(None, path, "/join")
            self.arcs.add((entry, split))
            self.arcs.add((join, exit_))
            for i, child in enumerate(kids):
                cin = self.place(f"{path}.{i}", "/in")
                cout = self.place(f"{path}.{i}", "/out")
                self.arcs.add((split, cin))
                self.arcs.add((cout, join))
                self.build(child, cin, cout, f"{path}.{i}")
        else:
            do_in = self.place(path, "/do_in")
            do_out = self.place(path, "/do_out")
            self.link(entry, self.transition(None, path, "/enter"), do_in)
            self.link(do_out, self.transition(None, path, "/exit"), exit_)
            self.build(kids[0], do_in, do_out, f"{path}.0")
            for i, child in enumerate(kids[1:], start=1):
                self.build(child, do_out, do_in, f"{path}.{i}")


def tree_to_petri(tree: ProcessTree, reduce: bool = True) -> AcceptingPetriNet:
    """Compositional translation into a workflow net from ``source`` to ``sink``."""
    b = _Builder()
    b.build(tree, SOURCE, SINK, "0")
    net = PetriNet(frozenset(b.places), b.transitions, frozenset(b.arcs))
    apn = AcceptingPetriNet(net, Marking({SOURCE: 1}), Marking({SINK: 1}))
    return fuse_silent_series(apn) if reduce else apn
