"""Graphviz DOT rendering of accepting Petri nets."""

from __future__ import annotations

from collections.abc import Mapping

from .net import AcceptingPetriNet


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def export_dot(apn: AcceptingPetriNet, annotations: Mapping[str, str] | None = None) -> str:
    """DOT text for ``apn``.

    Places are circles (initial places show their tokens, final places are
    double circles), labelled transitions are boxes, silent ones are small
    filled boxes. ``annotations`` maps node ids to extra label lines.
    """
    net = apn.net
    notes = annotations or {}
    lines = [
        "digraph petrinet {",
        "  rankdir=LR;",
        '  node [fontname="Helvetica"];',
    ]
    for p in sorted(net.places):
        tokens = apn.initial.get(p, 0)
        label = "\u25cf" if tokens == 1 else (str(tokens) if tokens else "")
        if p in notes:
            label = f"{label}\n{notes[p]}" if label else notes[p]
        shape = "doublecircle" if p in apn.final else "circle"
        lines.append(f"  {_quote(p)} [shape={shape}, label={_quote(label)}, xlabel={_quote(p)}];")
    for t in sorted(net.transitions):
        label = net.transitions[t]
        text = "" if label is None else label
        if t in notes:
            text = f"{text}\n{notes[t]}" if text else notes[t]
        if label is None:
            attrs = f'shape=box, style=filled, fillcolor=black, fontcolor=white, width=0.2, label={_quote(text)}'
        else:
            attrs = f"shape=box, label={_quote(text)}"
        lines.append(f"  {_quote(t)} [{attrs}];")
    for src, dst in sorted(net.arcs):
        lines.append(f"  {_quote(src)} -> {_quote(dst)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
