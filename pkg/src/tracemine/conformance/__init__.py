from .evaluate import METRICS, MINERS, EvaluationReport, EvaluationRow, discover, evaluate
from .metrics import enabled_labels, generalization, precision_escaping_edges, simplicity_arc_degree
from .replay import (
    Replayer,
    ReplayError,
    ReplayResult,
    TraceReplay,
    fitness,
    replay_variants,
    token_replay,
)

__all__ = [
    "METRICS",
    "MINERS",
    "EvaluationReport",
    "EvaluationRow",
    "ReplayError",
    "ReplayResult",
    "Replayer",
    "TraceReplay",
    "discover",
    "enabled_labels",
    "evaluate",
    "fitness",
    "generalization",
    "precision_escaping_edges",
    "replay_variants",
    "simplicity_arc_degree",
    "token_replay",
]
