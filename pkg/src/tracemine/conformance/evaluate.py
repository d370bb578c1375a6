"""Discover-and-score matrix across miners."""

from __future__ import annotations

import json
import logging
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from ..discovery import (
    MinerParams,
    alpha_miner,
    alpha_plus_miner,
    heuristic_miner,
    heuristic_net_to_petri,
    inductive_miner,
    tree_to_petri,
)
from ..log import DEFAULT_CLASSIFIER, EventLog
from ..petri import AcceptingPetriNet, degree_stats
from .metrics import generalization, precision_escaping_edges, simplicity_arc_degree
from .replay import fitness, token_replay

logger = logging.getLogger(__name__)

MINERS = ("alpha", "alpha-plus", "inductive", "heuristic")
METRICS = ("fitness", "precision", "simplicity", "generalization")


def discover(
    log: EventLog,
    miner: str,
    params: MinerParams | None = None,
    classifier: Sequence[str] = DEFAULT_CLASSIFIER,
) -> AcceptingPetriNet:
    """Run ``miner`` and return its model as an accepting Petri net."""
    if miner == "alpha":
        return alpha_miner(log, classifier)
    if miner == "alpha-plus":
        return alpha_plus_miner(log, classifier)
    if miner == "inductive":
        return tree_to_petri(inductive_miner(log, classifier))
    if miner == "heuristic":
        return heuristic_net_to_petri(heuristic_miner(log, params, classifier))
    raise ValueError(f"unknown miner {miner!r}; choose from {', '.join(MINERS)}")


@dataclass
class EvaluationRow:
    miner: str
    fitness: float | None = None
    precision: float | None = None
    simplicity: float | None = None
    generalization: float | None = None
    places: int | None = None
    transitions: int | None = None
    arcs: int | None = None
    seconds: float | None = None
    error: str | None = None

    def to_dict(self, metrics: Sequence[str] = METRICS, timing: bool = False) -> dict:
        d: dict = {"miner": self.miner}
        for m in metrics:
            d[m] = getattr(self, m)
        d.update(places=self.places, transitions=self.transitions, arcs=self.arcs)
        d["seconds"] = round(self.seconds, 6) if timing and self.seconds is not None else None
        if self.error is not None:
            d["error"] = self.error
        return d


@dataclass
class EvaluationReport:
    rows: list[EvaluationRow] = field(default_factory=list)
    metrics: tuple[str, ...] = METRICS

    def row(self, miner: str) -> EvaluationRow:
        return next(r for r in self.rows if r.miner == miner)

    def to_dict(self, timing: bool = False) -> dict:
        return {"rows": [r.to_dict(self.metrics, timing) for r in self.rows]}

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    def to_text(self, timing: bool = False) -> str:
        head = ["Miner", *(m.capitalize() for m in self.metrics), "Places", "Transitions", "Arcs"]
        if timing:
            head.append("Seconds")
        table = [head]
        for r in self.rows:
            if r.error is not None:
                table.append([r.miner.capitalize(), f"error: {r.error}"])
                continue
            cells = [r.miner.capitalize()]
            cells += ["-" if getattr(r, m) is None else f"{getattr(r, m):.2f}" for m in self.metrics]
            cells += [str(r.places), str(r.transitions), str(r.arcs)]
            if timing:
                cells.append(f"{r.seconds:.3f}")
            table.append(cells)
        widths = [max(len(row[i]) for row in table if i < len(row)) for i in range(len(head))]
        lines = []
        for row in table:
            if len(row) == 2 and row[1].startswith("error:"):
                lines.append(f"{row[0].ljust(widths[0])}  {row[1]}")
            else:
                lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        return "\n".join(lines) + "\n"


def evaluate(
    log: EventLog,
    miners: Iterable[str],
    params: MinerParams | None = None,
    metrics: Iterable[str] = METRICS,
    classifier: Sequence[str] = DEFAULT_CLASSIFIER,
    workers: int | None = None,
) -> EvaluationReport:
    """Discover a model with every requested miner and score it.

    Rows follow the fixed order alpha, alpha-plus, inductive, heuristic. A
    miner or metric failure is stored in that row's ``error``.
    """
    wanted = set(miners)
    unknown = wanted - set(MINERS)
    if unknown:
        raise ValueError(f"unknown miner(s) {sorted(unknown)}; choose from {', '.join(MINERS)}")
    chosen_metrics = tuple(m for m in METRICS if m in set(metrics))
    bad = set(metrics) - set(METRICS)
    if bad:
        raise ValueError(f"unknown metric(s) {sorted(bad)}; choose from {', '.join(METRICS)}")
    report = EvaluationReport(metrics=chosen_metrics)
    for miner in (m for m in MINERS if m in wanted):
        row = EvaluationRow(miner)
        start = time.perf_counter()
        try:
            apn = discover(log, miner, params, classifier)
            stats = degree_stats(apn)
            row.places, row.transitions, row.arcs = stats.num_places, stats.num_transitions, stats.num_arcs
            rr = None
            if "fitness" in chosen_metrics or "generalization" in chosen_metrics:
                rr = token_replay(log, apn, classifier, workers=workers)
            if "fitness" in chosen_metrics:
                row.fitness = fitness(rr)
            if "precision" in chosen_metrics:
                row.precision = precision_escaping_edges(log, apn, classifier)
            if "simplicity" in chosen_metrics:
                row.simplicity = simplicity_arc_degree(apn)
            if "generalization" in chosen_metrics:
                row.generalization = generalization(log, apn, rr, classifier)
        except Exception as exc:  # one miner failing must not sink the report
            logger.warning("miner %s failed: %s", miner, exc)
            row.error = f"{type(exc).__name__}: {exc}"
        row.seconds = time.perf_counter() - start
        report.rows.append(row)
    return report
