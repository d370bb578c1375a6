"""Slow, obviously-correct reference implementations used as test oracles.

None of these share code with the library beyond the net data structure.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

TOKEN_CAP = 6


def brute_footprint(seqs):
    """Footprint relation by scanning every ordered activity pair against every trace."""
    alphabet = sorted({a for s in seqs for a in s})
    out = {}
    for a in alphabet:
        for b in alphabet:
            ab = any(s[i] == a and s[i + 1] == b for s in seqs for i in range(len(s) - 1))
            ba = any(s[i] == b and s[i + 1] == a for s in seqs for i in range(len(s) - 1))
            if ab and ba:
                out[a, b] = "||"
            elif ab:
                out[a, b] = "->"
            elif ba:
                out[a, b] = "<-"
            else:
                out[a, b] = "#"
    return out


def _arcs(apn):
    pre = {t: [] for t in apn.net.transitions}
    post = {t: [] for t in apn.net.transitions}
    for src, dst in apn.net.arcs:
        if src in pre:
            post[src].append(dst)
        else:
            pre[dst].append(src)
    return pre, post


def _fire(marking, pre, post):
    m = dict(marking)
    for p in pre:
        m[p] -= 1
        if not m[p]:
            del m[p]
    for p in post:
        m[p] = m.get(p, 0) + 1
    return m


def _frozen(m):
    return tuple(sorted(m.items()))


def language(apn, max_len):
    """All visible label sequences of length <= ``max_len`` that reach the final
    marking exactly. Markings exceeding ``TOKEN_CAP`` tokens on a place are pruned."""
    pre, post = _arcs(apn)
    labels = apn.net.transitions
    final = _frozen(dict(apn.final))
    accepted = set()
    start = (_frozen(dict(apn.initial)), ())
    seen = {start}
    stack = [start]
    while stack:
        fm, seq = stack.pop()
        if fm == final:
            accepted.add(seq)
        m = dict(fm)
        for t in labels:
            if all(m.get(p, 0) > 0 for p in pre[t]):
                lab = labels[t]
                nseq = seq if lab is None else seq + (lab,)
                if len(nseq) > max_len:
                    continue
                nm = _fire(m, pre[t], post[t])
                if any(v > TOKEN_CAP for v in nm.values()):
                    continue
                state = (_frozen(nm), nseq)
                if state not in seen:
                    seen.add(state)
                    stack.append(state)
    return accepted


def reference_replay(apn, trace, silent_depth=10):
    """Token replay that tries every resolution of every choice point.

    Choice points are: which enabled transition to fire for an event whose
    label is shared, which silent firing sequence (any, not only the
    shortest) makes some candidate enabled, which candidate receives
    missing tokens when no silent sequence helps, and which silent
    sequence to fire before consuming the final marking. Returns the
    (p, c, m, r) outcome with the fewest missing tokens, then the fewest
    remaining tokens, then the fewest firings.
    """
    pre, post = _arcs(apn)
    silent = sorted(t for t, lab in apn.net.transitions.items() if lab is None)
    by_label = {}
    for t, lab in sorted(apn.net.transitions.items()):
        if lab is not None:
            by_label.setdefault(lab, []).append(t)
    final = dict(apn.final)
    trace = tuple(trace)

    def enabled(m, t):
        return all(m.get(p, 0) > 0 for p in pre[t])

    def silent_runs(m, goal):
        """(marking, produced, consumed) after every silent firing sequence of
        at most ``silent_depth`` steps that ends at its first goal marking."""
        out = []

        def walk(cur, dp, dc, depth, visited):
            if goal(cur):
                out.append((cur, dp, dc))
                return
            if depth == silent_depth:
                return
            for t in silent:
                if enabled(cur, t):
                    nxt = _fire(cur, pre[t], post[t])
                    key = _frozen(nxt)
                    if key not in visited:
                        walk(nxt, dp + len(post[t]), dc + len(pre[t]), depth + 1, visited | {key})

        walk(m, 0, 0, 0, {_frozen(m)})
        return out

    def rank(res):
        p, c, m, r = res
        return (m, r, p + c)

    @lru_cache(maxsize=None)
    def best(i, fm):
        m = dict(fm)
        if i == len(trace):
            options = []
            for cur, dp, dc in _all_runs(m):
                miss = sum(max(0, n - cur.get(p, 0)) for p, n in final.items())
                rem = sum(cur.values()) + miss - sum(final.values())
                options.append((dp, dc + sum(final.values()), miss, rem))
            return min(options, key=rank)
        cands = by_label.get(trace[i])
        if not cands:
            return best(i + 1, fm)
        options = []

        def fire_then(cur, t, dp, dc, dm):
            nm = _fire(cur, pre[t], post[t])
            p_, c_, m_, r_ = best(i + 1, _frozen(nm))
            options.append((p_ + dp + len(post[t]), c_ + dc + len(pre[t]), m_ + dm, r_))

        if any(enabled(m, t) for t in cands):
            for t in cands:
                if enabled(m, t):
                    fire_then(m, t, 0, 0, 0)
            return min(options, key=rank)
        runs = silent_runs(m, lambda cur: any(enabled(cur, t) for t in cands))
        if runs:
            for cur, dp, dc in runs:
                for t in cands:
                    if enabled(cur, t):
                        fire_then(cur, t, dp, dc, 0)
            return min(options, key=rank)
        for t in cands:
            miss = [p for p in pre[t] if m.get(p, 0) == 0]
            cur = dict(m)
            for p in miss:
                cur[p] = 1
            fire_then(cur, t, 0, 0, len(miss))
        return min(options, key=rank)

    def _all_runs(m):
        """Every marking reachable by a silent sequence, with its cost."""
        out = []

        def walk(cur, dp, dc, depth, visited):
            out.append((cur, dp, dc))
            if depth == silent_depth:
                return
            for t in silent:
                if enabled(cur, t):
                    nxt = _fire(cur, pre[t], post[t])
                    key = _frozen(nxt)
                    if key not in visited:
                        walk(nxt, dp + len(post[t]), dc + len(pre[t]), depth + 1, visited | {key})

        walk(m, 0, 0, 0, {_frozen(m)})
        return out

    p, c, m, r = best(0, _frozen(dict(apn.initial)))
    return p + sum(apn.initial.values()), c, m, r


def brute_precision(apn, seqs, silent_depth=10):
    """Escaping-edges precision where the model state after a prefix is the set
    of all markings reachable by any firing sequence explaining that prefix."""
    pre, post = _arcs(apn)
    labels = apn.net.transitions

    def closure(states):
        out = set(states)
        frontier = list(states)
        for _ in range(silent_depth):
            nxt = []
            for fm in frontier:
                m = dict(fm)
                for t, lab in labels.items():
                    if lab is None and all(m.get(p, 0) > 0 for p in pre[t]):
                        s = _frozen(_fire(m, pre[t], post[t]))
                        if s not in out:
                            out.add(s)
                            nxt.append(s)
            frontier = nxt
        return out

    def step(states, label):
        out = set()
        for fm in closure(states):
            m = dict(fm)
            for t, lab in labels.items():
                if lab == label and all(m.get(p, 0) > 0 for p in pre[t]):
                    out.add(_frozen(_fire(m, pre[t], post[t])))
        return out

    freq = Counter()
    follows = {}
    for s in seqs:
        for i in range(len(s) + 1):
            freq[s[:i]] += 1
            if i < len(s):
                follows.setdefault(s[:i], set()).add(s[i])
    esc = tot = 0
    for prefix, n in freq.items():
        states = {_frozen(dict(apn.initial))}
        for lab in prefix:
            states = step(states, lab)
        allowed = set()
        for fm in closure(states):
            m = dict(fm)
            for t, lab in labels.items():
                if lab is not None and all(m.get(p, 0) > 0 for p in pre[t]):
                    allowed.add(lab)
        esc += n * len(allowed - follows.get(prefix, set()))
        tot += n * len(allowed)
    return 1.0 if tot == 0 else 1.0 - esc / tot
