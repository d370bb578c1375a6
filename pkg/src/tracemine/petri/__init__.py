from .dot import export_dot
from .net import (
    AcceptingPetriNet,
    DegreeStats,
    Marking,
    NotEnabledError,
    PetriNet,
    PetriNetError,
    WorkflowNetCheck,
    degree_stats,
    enabled_transitions,
    fire,
    is_enabled,
    is_workflow_net,
)
from .pnml import PnmlParseError, export_pnml, import_pnml
from .reduction import fuse_silent_series

__all__ = [
    "AcceptingPetriNet",
    "DegreeStats",
    "Marking",
    "NotEnabledError",
    "PetriNet",
    "PetriNetError",
    "PnmlParseError",
    "WorkflowNetCheck",
    "degree_stats",
    "enabled_transitions",
    "export_dot",
    "export_pnml",
    "fire",
    "fuse_silent_series",
    "import_pnml",
    "is_enabled",
    "is_workflow_net",
]
