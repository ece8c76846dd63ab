"""Subplots: the subplot order, generated and relative subplots, restrictions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import Arrow, Plot, UnknownArrow, compute_identities, hom

MODES = ("smallest", "identitive", "relative", "hom", "obj", "wide", "full")


@dataclass(frozen=True)
class SubplotReport:
    is_subplot: bool
    is_wide: bool = False
    is_full: bool = False
    is_identitive: bool = False
    is_proper: bool = False
    witness: Optional[tuple] = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.is_subplot


def is_subplot(Q: Plot, P: Plot) -> SubplotReport:
    """Whether Q ≤ P, with the wide/full/identitive/proper flags.

    Q's composition must agree with P's wherever it is defined and stay inside
    Q's arrows; it may be undefined on pairs where P composes.
    """
    for o in Q.objects:
        if not P.has_object(o):
            return SubplotReport(False, witness=("object", o))
    for a in Q.arrows:
        if not P.has_arrow(a.id):
            return SubplotReport(False, witness=("arrow", a.id))
        if P.arrow(a.id) != a:
            return SubplotReport(False, witness=("endpoints", a.id))
    for (f, g), h in Q.comp.items():
        if P.comp.get((f, g)) != h or not Q.has_arrow(h):
            return SubplotReport(False, witness=("comp", f, g, h))
    wide = set(Q.objects) == set(P.objects)
    full = all(
        set(hom(Q, a, b)) == set(hom(P, a, b)) for a in Q.objects for b in Q.objects
    )
    ids = compute_identities(P)
    identitive = all(Q.has_arrow(ids[o]) for o in Q.objects if o in ids)
    proper = len(Q.objects) + len(Q.arrows) < len(P.objects) + len(P.arrows)
    return SubplotReport(True, wide, full, identitive, proper)


def _assemble(P: Plot, objs: Iterable[str], arrows: set[str]) -> Plot:
    """Subplot on the given arrows with the full restriction of P's composition."""
    keep_obj = {o for o in objs if P.has_object(o)}
    for f in arrows:
        a = P.arrow(f)
        keep_obj.add(a.src)
        keep_obj.add(a.tgt)
    comp = {
        (f, g): h
        for (f, g), h in P.comp.items()
        if f in arrows and g in arrows and h in arrows
    }
    return Plot(
        tuple(o for o in P.objects if o in keep_obj),
        tuple(a for a in P.arrows if a.id in arrows),
        comp,
    )


def closure(P: Plot, arrows: Iterable[str]) -> set[str]:
    """Smallest set of arrows containing ``arrows`` and closed under composition."""
    closed = {f for f in arrows if P.has_arrow(f)}
    work = sorted(closed)
    while work:
        f = work.pop()
        new = []
        for g in P.right_partners[f]:
            if g in closed:
                new.append(P.comp[(f, g)])
        for e in P.left_partners[f]:
            if e in closed:
                new.append(P.comp[(e, f)])
        for h in sorted(new):
            if h not in closed:
                closed.add(h)
                work.append(h)
    return closed


def generated_subplot(P: Plot, objs: Iterable[str], arrs: Iterable[str], mode: str = "smallest") -> Plot:
    """Subplot of P generated by (objs, arrs).

    Modes:
      smallest    close arrs under composition; objects are objs plus endpoints
      identitive  as smallest, after adding the local identities at the
                  endpoints of arrs
      relative    keep exactly arrs, no closure
      hom         smallest on (endpoints of arrs, arrs)
      obj         smallest on (objs, all arrows between objs)
      wide        smallest on (all objects, arrs)
      full        same as obj: the full subplot on objs
    Ids that are not in P are ignored.
    """
    objs = [o for o in objs if P.has_object(o)]
    arrs = [f for f in arrs if P.has_arrow(f)]
    if mode == "smallest":
        return _assemble(P, objs, closure(P, arrs))
    if mode == "identitive":
        ids = compute_identities(P)
        extra = set()
        for f in arrs:
            for o in (P.src(f), P.tgt(f)):
                if o in ids:
                    extra.add(ids[o])
        return _assemble(P, objs, closure(P, set(arrs) | extra))
    if mode == "relative":
        return _assemble(P, objs, set(arrs))
    if mode == "hom":
        ends = [o for f in arrs for o in (P.src(f), P.tgt(f))]
        return generated_subplot(P, ends, arrs, "smallest")
    if mode in ("obj", "full"):
        inside = set(objs)
        between = [a.id for a in P.arrows if a.src in inside and a.tgt in inside]
        return generated_subplot(P, objs, between, "smallest")
    if mode == "wide":
        return generated_subplot(P, P.objects, arrs, "smallest")
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def restrict_to_relation(P: Plot, R: Iterable[tuple[str, str]]) -> Plot:
    """Relative subplot on the arrows occurring in some pair of R."""
    keep: set[str] = set()
    for f, g in R:
        for x in (f, g):
            if not P.has_arrow(x):
                raise UnknownArrow(x)
            keep.add(x)
    return _assemble(P, (), keep)


def is_compositive(P: Plot, M: Iterable[str]) -> tuple[bool, Optional[tuple[str, str]]]:
    """Whether M is closed under composition; otherwise a pair escaping M."""
    M = set(M)
    for (f, g), h in P.comp.items():
        if f in M and g in M and h not in M:
            return False, (f, g)
    return True, None


def underlying_quiver(P: Plot) -> Plot:
    return Plot(P.objects, P.arrows, {})


def underlying_graph(P: Plot) -> list[tuple[str, frozenset[str]]]:
    return [(a.id, frozenset((a.src, a.tgt))) for a in P.arrows]


def full_subplot(P: Plot, objs: Iterable[str]) -> Plot:
    """The full subplot on ``objs`` with every composite that stays inside it."""
    inside = set(objs)
    arrows = {a.id for a in P.arrows if a.src in inside and a.tgt in inside}
    return _assemble(P, inside, arrows)


def relabel(P: Plot, objects: dict[str, str], arrows: dict[str, str]) -> Plot:
    """Rename objects and arrows by the given bijections."""
    return Plot(
        tuple(objects[o] for o in P.objects),
        tuple(Arrow(arrows[a.id], objects[a.src], objects[a.tgt]) for a in P.arrows),
        {(arrows[f], arrows[g]): arrows[h] for (f, g), h in P.comp.items()},
    )
