"""XES (IEEE 1849) import and export.

Parsing is incremental: each ``<trace>`` is converted and dropped from the
element tree as soon as it closes, so memory is bounded by the in-memory
log rather than the XML DOM. Gzip input is detected from its magic bytes.
"""

from __future__ import annotations

import gzip
import io
import logging
import os
import re
import sys
import xml.etree.ElementTree as ET
import zlib
from collections.abc import Mapping
from datetime import datetime, timedelta, timezone
from typing import IO, Any, Union
from xml.sax.saxutils import quoteattr

from .log import (
    CONCEPT_NAME,
    Event,
    EventLog,
    Extension,
    Trace,
    XesId,
    XesList,
    format_timestamp,
)

logger = logging.getLogger(__name__)

GZIP_MAGIC = b"\x1f\x8b"
XES_NAMESPACE = "http://www.xes-standard.org/"
STRICT = "strict"
LENIENT = "lenient"

Source = Union[bytes, bytearray, str, os.PathLike, IO[bytes]]


class XesParseError(ValueError):
    """Raised for malformed XML or, in strict mode, invalid XES content."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


_TS_RE = re.compile(
    r"^(\d{4})-(\d{2})-(\d{2})"
    r"(?:[T ](\d{2}):(\d{2})(?::(\d{2})(?:[.,](\d+))?)?)?"
    r"\s*(Z|[+-]\d{2}(?::?\d{2})?)?$"
)


def parse_timestamp(text: str) -> datetime:
    """Parse an xs:dateTime-style string into an aware datetime.

    A missing offset is read as UTC; the stated offset is kept otherwise.
    """
    s = text.strip()
    if s.endswith("Z"):
        s = s[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(s)
    except ValueError:
        dt = _parse_timestamp_slow(text.strip())
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt


def _parse_timestamp_slow(text: str) -> datetime:
    m = _TS_RE.match(text)
    if not m:
        raise ValueError(f"unparseable timestamp {text!r}")
    year, month, day, hh, mm, ss, frac, off = m.groups()
    micros = int((frac or "0")[:6].ljust(6, "0"))
    tz = timezone.utc
    if off and off != "Z":
        sign = -1 if off[0] == "-" else 1
        digits = off[1:].replace(":", "")
        minutes = int(digits[:2]) * 60 + int(digits[2:4] or 0)
        tz = timezone(sign * timedelta(minutes=minutes))
    return datetime(
        int(year), int(month), int(day), int(hh or 0), int(mm or 0), int(ss or 0), micros, tzinfo=tz
    )


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1] if "}" in tag else tag


def _open_source(source: Source) -> tuple[IO[bytes], IO[bytes] | None]:
    """Return ``(stream, owned)``; ``owned`` is a handle the caller must close."""
    owned = None
    if isinstance(source, (bytes, bytearray)):
        fh: IO[bytes] = io.BytesIO(bytes(source))
    elif isinstance(source, (str, os.PathLike)):
        fh = owned = open(source, "rb")
    else:
        fh = source
    if not hasattr(fh, "peek"):
        fh = io.BufferedReader(fh)  # type: ignore[arg-type]
    if fh.peek(2)[:2] == GZIP_MAGIC:  # type: ignore[attr-defined]
        return gzip.GzipFile(fileobj=fh), owned  # type: ignore[return-value]
    return fh, owned


_CLASSIFIER_KEY_RE = re.compile(r"'([^']*)'|(\S+)")


def split_classifier_keys(text: str) -> tuple[str, ...]:
    return tuple(q or bare for q, bare in _CLASSIFIER_KEY_RE.findall(text))


class _Builder:
    def __init__(self, mode: str, issues: list[str] | None) -> None:
        if mode not in (STRICT, LENIENT):
            raise ValueError(f"mode must be 'strict' or 'lenient', got {mode!r}")
        self.strict = mode == STRICT
        self.issues = issues if issues is not None else []
        self._strings: dict[str, str] = {}

    def intern(self, s: str) -> str:
        return self._strings.setdefault(s, s)

    def problem(self, message: str) -> None:
        if self.strict:
            raise XesParseError(message)
        self.issues.append(message)

    def attribute(self, elem: ET.Element, where: str) -> tuple[str, Any] | None:
        tag = _local(elem.tag)
        key = elem.get("key")
        if key is None:
            self.problem(f"<{tag}> without key in {where}")
            return None
        key = self.intern(key)
        raw = elem.get("value")
        if tag == "string":
            value: Any = self.intern(raw if raw is not None else "")
        elif tag == "container":
            return key, self.attributes(elem, f"{where}/{key}")
        elif tag == "list":
            items = XesList()
            for child in elem:
                if _local(child.tag) == "values":
                    children = list(child)
                else:
                    children = [child]
                for c in children:
                    pair = self.attribute(c, f"{where}/{key}")
                    if pair is not None:
                        items.append(pair)
            return key, items
        elif tag in _SCALAR_PARSERS:
            if raw is None:
                self.problem(f"<{tag} key={key!r}> without value in {where}")
                return None
            try:
                value = _SCALAR_PARSERS[tag](raw)
            except ValueError:
                self.problem(f"bad {tag} value {raw!r} for {key!r} in {where}")
                value = self.intern(raw)
        else:
            self.problem(f"unknown element <{tag}> in {where}")
            return None
        if len(elem):
            self.issues.append(f"meta-attributes of {key!r} in {where} dropped")
        return key, value

    def attributes(self, elem: ET.Element, where: str) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for child in elem:
            pair = self.attribute(child, where)
            if pair is not None:
                out[pair[0]] = pair[1]
        return out

    def trace(self, elem: ET.Element, index: int) -> Trace:
        attrs: dict[str, Any] = {}
        events = []
        where = f"trace #{index}"
        for child in elem:
            tag = _local(child.tag)
            if tag == "event":
                ewhere = f"{where} event #{len(events)}"
                eattrs = self.attributes(child, ewhere)
                if not isinstance(eattrs.get(CONCEPT_NAME), str):
                    self.problem(f"{ewhere} has no text concept:name")
                events.append(Event(eattrs))
            else:
                pair = self.attribute(child, where)
                if pair is not None:
                    attrs[pair[0]] = pair[1]
        return Trace(attrs, tuple(events))


def _parse_bool(raw: str) -> bool:
    v = raw.strip().lower()
    if v == "true":
        return True
    if v == "false":
        return False
    raise ValueError(raw)


_SCALAR_PARSERS = {
    "date": parse_timestamp,
    "int": int,
    "float": float,
    "boolean": _parse_bool,
    "id": XesId,
}


def parse_xes(source: Source, mode: str = STRICT, issues: list[str] | None = None) -> EventLog:
    """Parse an XES document (plain or gzip) into an :class:`EventLog`.

    ``source`` may be bytes, a path, or a binary file object. In lenient
    mode, content problems are appended to ``issues`` instead of raising.
    """
    builder = _Builder(mode, issues)
    fh, owned = _open_source(source)
    extensions: list[Extension] = []
    globals_: dict[str, dict[str, Any]] = {"trace": {}, "event": {}}
    classifiers: dict[str, tuple[str, ...]] = {}
    log_attrs: dict[str, Any] = {}
    traces: list[Trace] = []
    depth = 0
    root = None
    try:
        for kind, elem in ET.iterparse(fh, events=("start", "end")):
            if kind == "start":
                depth += 1
                if depth == 1:
                    root = elem
                    if _local(elem.tag) != "log":
                        raise XesParseError(f"root element is <{_local(elem.tag)}>, expected <log>")
                continue
            depth -= 1
            if depth != 1:
                continue
            tag = _local(elem.tag)
            if tag == "trace":
                traces.append(builder.trace(elem, len(traces)))
            elif tag == "extension":
                extensions.append(
                    Extension(elem.get("name", ""), elem.get("prefix", ""), elem.get("uri", ""))
                )
            elif tag == "global":
                scope = elem.get("scope", "event")
                if scope not in globals_:
                    builder.problem(f"unknown global scope {scope!r}")
                else:
                    globals_[scope].update(builder.attributes(elem, f"global[{scope}]"))
            elif tag == "classifier":
                name = elem.get("name", "")
                keys = split_classifier_keys(elem.get("keys", ""))
                if keys:
                    classifiers[name] = keys
                else:
                    builder.problem(f"classifier {name!r} has no keys")
            else:
                pair = builder.attribute(elem, "log")
                if pair is not None:
                    log_attrs[pair[0]] = pair[1]
            assert root is not None
            root.clear()
    except ET.ParseError as exc:
        line, col = exc.position
        msg = exc.msg.rsplit(": line ", 1)[0]
        raise XesParseError(f"malformed XML: {msg}", line, col) from exc
    except (OSError, EOFError, zlib.error) as exc:
        raise XesParseError(f"cannot read XES input: {exc}") from exc
    finally:
        if owned is not None:
            owned.close()
    if root is None:
        raise XesParseError("empty document")
    if builder.issues:
        logger.warning("%d issue(s) while parsing XES leniently", len(builder.issues))
    return EventLog(
        traces=tuple(traces),
        attributes=log_attrs,
        extensions=tuple(extensions),
        global_trace_attrs=globals_["trace"],
        global_event_attrs=globals_["event"],
        classifiers=classifiers,
    )


def read_xes(path: str | os.PathLike, mode: str = STRICT, issues: list[str] | None = None) -> EventLog:
    return parse_xes(path, mode=mode, issues=issues)


# -- export -------------------------------------------------------------------

_ATTR_ESCAPES = {"\n": "&#10;", "\r": "&#13;", "\t": "&#9;"}


# characters XML 1.0 cannot carry, not even as character references
_ILLEGAL_XML = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ufffe\uffff\ud800-\udfff]")


def _q(value: str) -> str:
    bad = _ILLEGAL_XML.search(value)
    if bad:
        raise ValueError(f"character {bad.group()!r} in {value!r} cannot be written to XML")
    return quoteattr(value, _ATTR_ESCAPES)


def _write_attr(out: list[str], key: str, value: Any, indent: str) -> None:
    k = _q(key)
    if isinstance(value, bool):
        out.append(f'{indent}<boolean key={k} value="{"true" if value else "false"}"/>\n')
    elif isinstance(value, XesId):
        out.append(f"{indent}<id key={k} value={_q(value)}/>\n")
    elif isinstance(value, str):
        out.append(f"{indent}<string key={k} value={_q(value)}/>\n")
    elif isinstance(value, int):
        out.append(f'{indent}<int key={k} value="{value}"/>\n')
    elif isinstance(value, float):
        out.append(f'{indent}<float key={k} value="{value!r}"/>\n')
    elif isinstance(value, datetime):
        out.append(f'{indent}<date key={k} value="{format_timestamp(value)}"/>\n')
    elif isinstance(value, XesList):
        out.append(f"{indent}<list key={k}>\n{indent}  <values>\n")
        for ik, iv in value:
            _write_attr(out, ik, iv, indent + "    ")
        out.append(f"{indent}  </values>\n{indent}</list>\n")
    elif isinstance(value, Mapping):
        out.append(f"{indent}<container key={k}>\n")
        for ck, cv in value.items():
            _write_attr(out, ck, cv, indent + "  ")
        out.append(f"{indent}</container>\n")
    else:
        raise TypeError(f"cannot serialize attribute {key!r}={value!r}")


def _classifier_keys(keys: tuple[str, ...]) -> str:
    return " ".join(f"'{k}'" if any(c.isspace() for c in k) else k for k in keys)


def serialize_xes(log: EventLog, compress: bool = False) -> bytes:
    """Render ``log`` as an XES 1.0 document (optionally gzip-compressed)."""
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        f'<log xes.version="1.0" xes.features="nested-attributes" xmlns="{XES_NAMESPACE}">\n',
    ]
    for ext in log.extensions:
        out.append(f"  <extension name={_q(ext.name)} prefix={_q(ext.prefix)} uri={_q(ext.uri)}/>\n")
    for scope, attrs in (("trace", log.global_trace_attrs), ("event", log.global_event_attrs)):
        if attrs:
            out.append(f'  <global scope="{scope}">\n')
            for k, v in attrs.items():
                _write_attr(out, k, v, "    ")
            out.append("  </global>\n")
    for name, keys in log.classifiers.items():
        out.append(f"  <classifier name={_q(name)} keys={_q(_classifier_keys(keys))}/>\n")
    for k, v in log.attributes.items():
        _write_attr(out, k, v, "  ")
    for trace in log.traces:
        out.append("  <trace>\n")
        for k, v in trace.attributes.items():
            _write_attr(out, k, v, "    ")
        for event in trace.events:
            out.append("    <event>\n")
            for k, v in event.attributes.items():
                _write_attr(out, k, v, "      ")
            out.append("    </event>\n")
        out.append("  </trace>\n")
    out.append("</log>\n")
    data = "".join(out).encode("utf-8")
    if compress:
        # mtime=0 keeps compressed output byte-stable
        return gzip.compress(data, mtime=0)
    return data


def write_xes(log: EventLog, path: str | os.PathLike, compress: bool | None = None) -> None:
    """Write ``log`` to ``path``; gzip is used when the name ends in ``.gz``."""
    if compress is None:
        compress = os.fspath(path).endswith(".gz")
    data = serialize_xes(log, compress=compress)
    if os.fspath(path) == "-":
        sys.stdout.buffer.write(data)
        return
    with open(path, "wb") as fh:
        fh.write(data)


__all__ = [
    "XesParseError",
    "parse_xes",
    "read_xes",
    "serialize_xes",
    "write_xes",
    "parse_timestamp",
]
