"""Language-preserving removal of routing-only silent transitions."""

from __future__ import annotations

from .net import AcceptingPetriNet, PetriNet


def fuse_silent_series(apn: AcceptingPetriNet) -> AcceptingPetriNet:
    """Remove silent transitions that merely move a token between two places.

    A silent ``t`` with ``pre(t) = {p}`` and ``post(t) = {q}`` is dropped and
    ``q`` folded into ``p`` when ``t`` is the only producer of ``q``, or ``p``
    folded into ``q`` when ``t`` is the only consumer of ``p``. Marked places
    are never folded away, and a fold that would merge two distinct arcs into
    one is skipped.
    """
    net = apn.net
    protected = set(apn.initial) | set(apn.final)
    changed = True
    while changed:
        changed = False
        for t in net.silent_transitions:
            pre, post = net.preset[t], net.postset[t]
            if len(pre) != 1 or len(post) != 1 or pre == post:
                continue
            p, q = pre[0], post[0]
            if (
                net.preset[q] == (t,)
                and q not in protected
                and not set(net.postset[q]) & set(net.postset[p])
            ):
                net = _fold(net, t, drop=q, keep=p)
                changed = True
                break
            if (
                net.postset[p] == (t,)
                and p not in protected
                and not set(net.preset[p]) & set(net.preset[q])
            ):
                net = _fold(net, t, drop=p, keep=q)
                changed = True
                break
    return AcceptingPetriNet(net, apn.initial, apn.final)


def _fold(net: PetriNet, t: str, drop: str, keep: str) -> PetriNet:
    arcs = set()
    for src, dst in net.arcs:
        if t in (src, dst):
            continue
        arcs.add((keep if src == drop else src, keep if dst == drop else dst))
    transitions = {k: v for k, v in net.transitions.items() if k != t}
    return PetriNet(net.places - {drop}, transitions, frozenset(arcs))
