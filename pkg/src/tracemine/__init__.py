"""tracemine: event-log analysis, process discovery and conformance checking."""

from .log import (
    DEFAULT_CLASSIFIER,
    Event,
    EventLog,
    EventStream,
    Extension,
    MissingAttributeError,
    Trace,
    XesId,
    XesList,
    activity_label,
    from_event_stream,
    log_from_sequences,
    log_to_json,
    to_event_stream,
)
from .xes import XesParseError, parse_xes, read_xes, serialize_xes, write_xes

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CLASSIFIER",
    "Event",
    "EventLog",
    "EventStream",
    "Extension",
    "MissingAttributeError",
    "Trace",
    "XesId",
    "XesList",
    "XesParseError",
    "activity_label",
    "from_event_stream",
    "log_from_sequences",
    "log_to_json",
    "parse_xes",
    "read_xes",
    "serialize_xes",
    "to_event_stream",
    "write_xes",
]
