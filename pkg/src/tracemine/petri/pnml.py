"""PNML (ISO/IEC 15909-2) place/transition net import and export.

Silent transitions carry the ProM-style ``toolspecific`` marker
``activity="$invisible$"``; final markings go into ``<finalmarkings>``.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .net import AcceptingPetriNet, Marking, PetriNet, PetriNetError

PNML_NET_TYPE = "http://www.pnml.org/version-2009/grammar/pnmlcoremodel"
INVISIBLE = "$invisible$"


class PnmlParseError(PetriNetError):
    pass


def _text(parent: ET.Element, tag: str, value: str) -> None:
    ET.SubElement(ET.SubElement(parent, tag), "text").text = value


def export_pnml(apn: AcceptingPetriNet, name: str = "net") -> bytes:
    net = apn.net
    root = ET.Element("pnml")
    net_el = ET.SubElement(root, "net", id="net1", type=PNML_NET_TYPE)
    _text(net_el, "name", name)
    page = ET.SubElement(net_el, "page", id="n0")
    for p in sorted(net.places):
        el = ET.SubElement(page, "place", id=p)
        _text(el, "name", p)
        if apn.initial.get(p):
            _text(el, "initialMarking", str(apn.initial[p]))
    for t in sorted(net.transitions):
        el = ET.SubElement(page, "transition", id=t)
        label = net.transitions[t]
        _text(el, "name", t if label is None else label)
        if label is None:
            ET.SubElement(
                el, "toolspecific", tool="ProM", version="6.4", activity=INVISIBLE, localNodeID=t
            )
    for i, (src, dst) in enumerate(sorted(net.arcs)):
        ET.SubElement(page, "arc", id=f"arc{i}", source=src, target=dst)
    finals = ET.SubElement(net_el, "finalmarkings")
    marking = ET.SubElement(finals, "marking")
    for p in sorted(apn.final):
        ET.SubElement(ET.SubElement(marking, "place", idref=p), "text").text = str(apn.final[p])
    ET.indent(root)
    return b'<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="utf-8") + b"\n"


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _child(el: ET.Element, tag: str) -> ET.Element | None:
    for c in el:
        if _local(c.tag) == tag:
            return c
    return None


def _child_text(el: ET.Element, tag: str) -> str | None:
    c = _child(el, tag)
    if c is None:
        return None
    t = _child(c, "text")
    return (t.text or "").strip() if t is not None else None


def _count(text: str | None, what: str) -> int:
    try:
        return int(text or "0")
    except ValueError:
        raise PnmlParseError(f"bad token count {text!r} for {what}") from None


def import_pnml(data: bytes) -> AcceptingPetriNet:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, col = exc.position
        raise PnmlParseError(f"malformed PNML: {exc.msg} (line {line}, column {col})") from exc
    if _local(root.tag) != "pnml":
        raise PnmlParseError(f"root element is <{_local(root.tag)}>, expected <pnml>")
    net_el = _child(root, "net")
    if net_el is None:
        raise PnmlParseError("no <net> element")
    places: set[str] = set()
    transitions: dict[str, str | None] = {}
    arcs: set[tuple[str, str]] = set()
    initial: dict[str, int] = {}
    final: dict[str, int] = {}
    for el in net_el.iter():
        tag = _local(el.tag)
        if tag == "place" and el.get("id") is not None and el.get("idref") is None:
            pid = el.get("id")
            places.add(pid)
            n = _count(_child_text(el, "initialMarking"), pid)
            if n:
                initial[pid] = n
        elif tag == "transition":
            tid = el.get("id")
            if tid is None:
                raise PnmlParseError("transition without id")
            invisible = any(
                _local(c.tag) == "toolspecific" and c.get("activity") == INVISIBLE for c in el
            )
            transitions[tid] = None if invisible else (_child_text(el, "name") or tid)
        elif tag == "arc":
            src, dst = el.get("source"), el.get("target")
            if src is None or dst is None:
                raise PnmlParseError(f"arc {el.get('id')!r} lacks source or target")
            weight = _child_text(el, "inscription")
            if weight is not None and _count(weight, f"arc {el.get('id')}") != 1:
                raise PnmlParseError(f"arc {el.get('id')!r} has weight {weight}; only 1 is supported")
            arcs.add((src, dst))
    finals = _child(net_el, "finalmarkings")
    if finals is not None:
        markings = [m for m in finals if _local(m.tag) == "marking"]
        if markings:
            for pl in markings[0]:
                if _local(pl.tag) == "place":
                    t = _child(pl, "text")
                    n = _count(t.text if t is not None else None, pl.get("idref", "?"))
                    if n:
                        final[pl.get("idref")] = n
    try:
        net = PetriNet(frozenset(places), transitions, frozenset(arcs))
        return AcceptingPetriNet(net, Marking(initial), Marking(final))
    except PetriNetError as exc:
        raise PnmlParseError(str(exc)) from exc
