from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

SOURCE = "source"
SINK = "sink"


class DiscoveryError(ValueError):
    pass


@dataclass(frozen=True)
class MinerParams:
    """Heuristic-miner thresholds. Other miners take no parameters."""

    dependency_threshold: float = 0.5
    and_threshold: float = 0.65
    loop2_threshold: float = 0.5
    all_connected: bool = True

    def __post_init__(self) -> None:
        for name in ("dependency_threshold", "and_threshold", "loop2_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


def tid(label: str) -> str:
    """Id of the visible transition for ``label``. Place ids never start with ``t:``."""
    return "t:" + label


def fmt_set(items: Iterable[str]) -> str:
    return "{" + ",".join(sorted(items)) + "}"


def check_log(seqs: list[tuple[str, ...]]) -> None:
    if not seqs:
        raise DiscoveryError("cannot discover a model from an empty log")
    empty = sum(1 for s in seqs if not s)
    if empty:
        raise DiscoveryError(f"log contains {empty} empty trace(s)")
