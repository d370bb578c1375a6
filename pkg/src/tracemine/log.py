"""In-memory event log model: logs, traces, events, event streams.

Attribute values are plain Python objects. ``str``, ``int``, ``float``,
``bool`` and timezone-aware ``datetime`` map onto the XES scalar types;
:class:`XesId`, :class:`XesList` and ``dict`` (container) cover the rest.
"""

from __future__ import annotations

import json
import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from datetime import datetime
from typing import Any, Union

logger = logging.getLogger(__name__)

CONCEPT_NAME = "concept:name"
CASE_PREFIX = "case:"
CASE_ID = CASE_PREFIX + CONCEPT_NAME
DEFAULT_CLASSIFIER: tuple[str, ...] = (CONCEPT_NAME,)


class XesId(str):
    """A string attribute typed as an XES ``id``."""

    __slots__ = ()

    def __repr__(self) -> str:
        return f"XesId({str.__repr__(self)})"


class XesList(list):
    """An ordered XES ``list`` attribute; items are ``(key, value)`` pairs."""

    def __repr__(self) -> str:
        return f"XesList({list.__repr__(self)})"


AttributeValue = Union[str, int, float, bool, datetime, XesId, XesList, dict]
Attributes = dict[str, Any]


class MissingAttributeError(LookupError):
    def __init__(self, key: str, where: str = "event") -> None:
        super().__init__(f"{where} has no attribute {key!r}")
        self.key = key


@dataclass(frozen=True)
class Extension:
    name: str
    prefix: str
    uri: str


@dataclass(frozen=True)
class Event:
    attributes: Attributes = field(default_factory=dict)

    def __getitem__(self, key: str) -> Any:
        return self.attributes[key]

    def get(self, key: str, default: Any = None) -> Any:
        return self.attributes.get(key, default)


@dataclass(frozen=True)
class Trace:
    attributes: Attributes = field(default_factory=dict)
    events: tuple[Event, ...] = ()

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __getitem__(self, i):
        return self.events[i]

    @property
    def case_id(self) -> Any:
        return self.attributes.get(CONCEPT_NAME)


@dataclass(frozen=True)
class EventLog:
    """A collection of traces plus the log-level XES metadata.

    Instances are treated as immutable; transformations such as variant
    filtering return new logs that share unchanged traces.
    """

    traces: tuple[Trace, ...] = ()
    attributes: Attributes = field(default_factory=dict)
    extensions: tuple[Extension, ...] = ()
    global_trace_attrs: Attributes = field(default_factory=dict)
    global_event_attrs: Attributes = field(default_factory=dict)
    classifiers: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, keys in self.classifiers.items():
            if not keys:
                raise ValueError(f"classifier {name!r} has no keys")

    def __len__(self) -> int:
        return len(self.traces)

    def __iter__(self):
        return iter(self.traces)

    def __getitem__(self, i):
        return self.traces[i]

    @property
    def num_events(self) -> int:
        return sum(len(t.events) for t in self.traces)

    def with_traces(self, traces: Iterable[Trace]) -> EventLog:
        """Same metadata, different traces."""
        return replace(self, traces=tuple(traces))


@dataclass(frozen=True)
class EventStream:
    """A flat event sequence; every event carries ``case:concept:name``."""

    events: tuple[Event, ...] = ()
    attributes: Attributes = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)


def activity_label(event: Event, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> str:
    """Label of ``event`` under ``classifier``, multiple keys joined with ``+``."""
    attrs = event.attributes
    if len(classifier) == 1:
        key = classifier[0]
        try:
            return str(attrs[key])
        except KeyError:
            raise MissingAttributeError(key) from None
    parts = []
    for key in classifier:
        try:
            parts.append(str(attrs[key]))
        except KeyError:
            raise MissingAttributeError(key) from None
    return "+".join(parts)


def trace_labels(trace: Trace, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> tuple[str, ...]:
    return tuple(activity_label(e, classifier) for e in trace.events)


def log_labels(log: EventLog, classifier: Sequence[str] = DEFAULT_CLASSIFIER) -> list[tuple[str, ...]]:
    """Activity sequence of every trace, in log order."""
    return [trace_labels(t, classifier) for t in log.traces]


def log_from_sequences(sequences: Iterable[Sequence[str]], prefix: str = "") -> EventLog:
    """Build a log from label sequences; cases are numbered from 1.

    Handy for fixtures: ``log_from_sequences(["abd"] * 3 + ["acd"] * 2)``.
    """
    traces = []
    for i, seq in enumerate(sequences, start=1):
        events = tuple(Event({CONCEPT_NAME: str(a)}) for a in seq)
        traces.append(Trace({CONCEPT_NAME: f"{prefix}{i}"}, events))
    return EventLog(tuple(traces))


def to_event_stream(log: EventLog) -> EventStream:
    """Flatten ``log`` trace by trace.

    Each event gets the trace attributes copied in under a ``case:`` prefix,
    so the stream can be regrouped with :func:`from_event_stream`.
    """
    events = []
    for idx, trace in enumerate(log.traces):
        if CONCEPT_NAME not in trace.attributes:
            raise MissingAttributeError(CONCEPT_NAME, where=f"trace #{idx}")
        case_attrs = {CASE_PREFIX + k: v for k, v in trace.attributes.items()}
        for event in trace.events:
            attrs = dict(event.attributes)
            attrs.update(case_attrs)
            events.append(Event(attrs))
    return EventStream(tuple(events), dict(log.attributes))


def from_event_stream(stream: EventStream) -> EventLog:
    """Group a stream by ``case:concept:name``; cases appear in order of first event."""
    cases: dict[Any, tuple[Attributes, list[Event]]] = {}
    for i, event in enumerate(stream.events):
        if CASE_ID not in event.attributes:
            raise MissingAttributeError(CASE_ID, where=f"stream event #{i}")
        case_attrs = {}
        event_attrs = {}
        for k, v in event.attributes.items():
            if k.startswith(CASE_PREFIX):
                case_attrs[k[len(CASE_PREFIX):]] = v
            else:
                event_attrs[k] = v
        cid = event.attributes[CASE_ID]
        if cid not in cases:
            cases[cid] = (case_attrs, [])
        cases[cid][1].append(Event(event_attrs))
    traces = tuple(Trace(attrs, tuple(evs)) for attrs, evs in cases.values())
    return EventLog(traces, dict(stream.attributes))


# -- structural JSON dump ---------------------------------------------------

def _type_name(value: Any) -> str:
    # bool before int: bool is an int subclass
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, XesId):
        return "id"
    if isinstance(value, str):
        return "string"
    if isinstance(value, int):
        return "int"
    if isinstance(value, float):
        return "float"
    if isinstance(value, datetime):
        return "date"
    if isinstance(value, XesList):
        return "list"
    if isinstance(value, Mapping):
        return "container"
    raise TypeError(f"unsupported attribute value {value!r}")


def format_timestamp(value: datetime) -> str:
    spec = "milliseconds" if value.microsecond % 1000 == 0 else "microseconds"
    return value.isoformat(timespec=spec)


def _dump_value(value: Any) -> dict:
    kind = _type_name(value)
    if kind == "date":
        payload: Any = format_timestamp(value)
    elif kind == "list":
        payload = [[k, _dump_value(v)] for k, v in value]
    elif kind == "container":
        payload = _dump_attrs(value)
    elif kind == "float" and not math.isfinite(value):
        payload = repr(value)
    else:
        payload = value
    return {"type": kind, "value": payload}


def _dump_attrs(attrs: Mapping[str, Any]) -> dict:
    return {k: _dump_value(v) for k, v in attrs.items()}


def log_to_dict(log: EventLog) -> dict:
    """Type-tagged, order-preserving dict of the whole log."""
    return {
        "attributes": _dump_attrs(log.attributes),
        "extensions": [[e.name, e.prefix, e.uri] for e in log.extensions],
        "global_trace_attrs": _dump_attrs(log.global_trace_attrs),
        "global_event_attrs": _dump_attrs(log.global_event_attrs),
        "classifiers": {k: list(v) for k, v in log.classifiers.items()},
        "traces": [
            {
                "attributes": _dump_attrs(t.attributes),
                "events": [_dump_attrs(e.attributes) for e in t.events],
            }
            for t in log.traces
        ],
    }


def log_to_json(log: EventLog, indent: int | None = None) -> str:
    return json.dumps(log_to_dict(log), indent=indent, ensure_ascii=False, allow_nan=False)
