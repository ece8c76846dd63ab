"""Brute-force reference implementations used to cross-check the library.

Everything here works on plain dicts and loops, and imports nothing from
plotkit beyond reading the public fields of a Plot.
"""

from __future__ import annotations

from collections import deque
from itertools import product


def table(P):
    ends = {a.id: (a.src, a.tgt) for a in P.arrows}
    return ends, dict(P.comp)


def profile(P):
    """Literal transcription of the eight associativity clauses."""
    ends, c = table(P)
    ids = list(ends)
    lp = rp = st = asc = ld = rd = True
    for x, y, z in product(ids, repeat=3):
        xy, yz = c.get((x, y)), c.get((y, z))
        both = xy is not None and yz is not None
        xy_z = c.get((xy, z)) if xy is not None else None
        x_yz = c.get((x, yz)) if yz is not None else None
        if both and xy_z is not None and x_yz != xy_z:
            lp = False
        if both and x_yz is not None and xy_z != x_yz:
            rp = False
        if both and xy_z is None:
            st = False
        if xy_z is not None and x_yz is not None and xy_z != x_yz:
            asc = False
        if xy is not None and xy_z is not None and (yz is None or x_yz != xy_z):
            ld = False
        if yz is not None and x_yz is not None and (xy is None or xy_z != x_yz):
            rd = False
    return {
        "left_pre_associative": lp,
        "right_pre_associative": rp,
        "pre_associative": lp and rp,
        "strongly_associative": lp and rp and st,
        "associative": asc,
        "left_dissociative": ld,
        "right_dissociative": rd,
        "dissociative": ld and rd,
    }


def identities(P):
    ends, c = table(P)
    out = {}
    for e, (s, t) in ends.items():
        if s != t:
            continue
        ok = True
        for f, (fs, ft) in ends.items():
            if ft == s and c.get((f, e)) != f:
                ok = False
            if fs == s and c.get((e, f)) != f:
                ok = False
        if ok:
            assert s not in out
            out[s] = e
    return out


def representations(P, f):
    ends, c = table(P)
    s, t = ends[f]
    right = {g: c[(g, f)] for g in ends if (g, f) in c}
    left = {g: c[(f, g)] for g in ends if (f, g) in c}
    into_tgt = {g for g, (_, gt) in ends.items() if gt == t}
    from_src = {g for g, (gs, _) in ends.items() if gs == s}
    return right, left, into_tgt, from_src


def arrow_flags(P, f):
    right, left, into_tgt, from_src = representations(P, f)
    monic = len(set(right.values())) == len(right)
    epic = len(set(left.values())) == len(left)
    rspl = set(right.values()) == into_tgt
    lspl = set(left.values()) == from_src
    return {"monic": monic, "epic": epic, "right_split": rspl, "left_split": lspl}


def strongly_invertible(P, f):
    ends, c = table(P)
    ids = identities(P)
    s, t = ends[f]
    if s not in ids or t not in ids:
        return False
    return any(c.get((f, g)) == ids[s] and c.get((g, f)) == ids[t] for g in ends)


def catalan(n):
    cs = [1]
    for k in range(1, n + 1):
        cs.append(sum(cs[i] * cs[k - 1 - i] for i in range(k)))
    return cs[n]


def connected_bfs(P, M, a, b):
    """Reachability on the doubled digraph: every M-arrow becomes two directed edges.

    Non-empty walks only, so an object with no incident M-arrow is not linked to itself.
    """
    out = {o: [] for o in P.objects}
    for x in P.arrows:
        if x.id in M:
            out[x.src].append(x.tgt)
            out[x.tgt].append(x.src)
    seen = set()
    todo = deque(out[a])
    while todo:
        v = todo.popleft()
        if v in seen:
            continue
        seen.add(v)
        todo.extend(out[v])
    return b in seen


def compose_closure(P, S):
    ends, c = table(P)
    got = set(S)
    while True:
        new = {c[(x, y)] for x in got for y in got if (x, y) in c} - got
        if not new:
            return got
        got |= new
