"""Footprint matrices: the four ordering relations between activities."""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

from ..log import DEFAULT_CLASSIFIER, EventLog
from ..stats import DirectlyFollowsGraph, directly_follows


class Relation(enum.Enum):
    CAUSAL_RIGHT = "->"
    CAUSAL_LEFT = "<-"
    PARALLEL = "||"
    UNRELATED = "#"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class FootprintMatrix:
    alphabet: tuple[str, ...]
    relation: dict[tuple[str, str], Relation]

    def __call__(self, a: str, b: str) -> Relation:
        return self.relation[(a, b)]

    def causal(self, a: str, b: str) -> bool:
        return self.relation[(a, b)] is Relation.CAUSAL_RIGHT

    def unrelated(self, a: str, b: str) -> bool:
        return self.relation[(a, b)] is Relation.UNRELATED

    def to_text(self) -> str:
        width = max([len(a) for a in self.alphabet] + [2])
        head = " " * width + " " + " ".join(a.rjust(width) for a in self.alphabet)
        rows = [head]
        for a in self.alphabet:
            cells = " ".join(str(self.relation[(a, b)]).rjust(width) for b in self.alphabet)
            rows.append(a.rjust(width) + " " + cells)
        return "\n".join(rows)


def footprint_from_dfg(dfg: DirectlyFollowsGraph) -> FootprintMatrix:
    alphabet = tuple(dfg.activities)
    rel = {}
    for a in alphabet:
        for b in alphabet:
            ab, ba = dfg.count(a, b) > 0, dfg.count(b, a) > 0
            if ab and ba:
                rel[(a, b)] = Relation.PARALLEL
            elif ab:
                rel[(a, b)] = Relation.CAUSAL_RIGHT
            elif ba:
                rel[(a, b)] = Relation.CAUSAL_LEFT
            else:
                rel[(a, b)] = Relation.UNRELATED
    return FootprintMatrix(alphabet, rel)


def footprint(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> FootprintMatrix:
    return footprint_from_dfg(directly_follows(log, classifier))
