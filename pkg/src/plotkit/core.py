"""Finite plots: objects, arrows with endpoints, and a partial composition table.

A plot generalises a small category by dropping totality, associativity and
identities. Composition is written in diagrammatic order: ``compose(f, g)`` is
defined only when ``tgt(f) == src(g)`` and the result runs from ``src(f)`` to
``tgt(g)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence


class PlotError(ValueError):
    """Base class for errors raised by plotkit."""


class UnknownObject(PlotError):
    pass


class UnknownArrow(PlotError):
    pass


class LengthMismatch(PlotError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: tuple

    def __str__(self) -> str:
        return f"{self.kind}: {', '.join(map(str, self.detail))}"


class ValidationError(PlotError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Plot:
    """An immutable finite plot.

    ``objects`` and ``arrows`` keep their given order, which every derived
    construction preserves. ``comp`` maps a pair of arrow ids to an arrow id;
    a missing key means the composite is undefined.
    """

    objects: tuple[str, ...] = ()
    arrows: tuple[Arrow, ...] = ()
    comp: Mapping[tuple[str, str], str] = field(default_factory=dict)

    @cached_property
    def _arrow_index(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    @cached_property
    def _object_set(self) -> frozenset[str]:
        return frozenset(self.objects)

    @cached_property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.arrows)

    @cached_property
    def _outgoing(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {o: [] for o in self.objects}
        for a in self.arrows:
            out.setdefault(a.src, []).append(a.id)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _incoming(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {o: [] for o in self.objects}
        for a in self.arrows:
            inc.setdefault(a.tgt, []).append(a.id)
        return {k: tuple(v) for k, v in inc.items()}

    @cached_property
    def right_partners(self) -> dict[str, tuple[str, ...]]:
        """For each arrow f, the arrows g with (f, g) in the composition domain."""
        out: dict[str, list[str]] = {f: [] for f in self.arrow_ids}
        for f, g in self.comp:
            out.setdefault(f, []).append(g)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def left_partners(self) -> dict[str, tuple[str, ...]]:
        """For each arrow g, the arrows f with (f, g) in the composition domain."""
        out: dict[str, list[str]] = {f: [] for f in self.arrow_ids}
        for f, g in self.comp:
            out.setdefault(g, []).append(f)
        return {k: tuple(v) for k, v in out.items()}

    def has_object(self, a: str) -> bool:
        return a in self._object_set

    def has_arrow(self, f: str) -> bool:
        return f in self._arrow_index

    def arrow(self, f: str) -> Arrow:
        try:
            return self._arrow_index[f]
        except KeyError:
            raise UnknownArrow(f) from None

    def src(self, f: str) -> str:
        return self.arrow(f).src

    def tgt(self, f: str) -> str:
        return self.arrow(f).tgt

    def compose(self, f: str, g: str) -> Optional[str]:
        return self.comp.get((f, g))

    def composable(self, f: str, g: str) -> bool:
        return (f, g) in self.comp

    def outgoing(self, a: str) -> tuple[str, ...]:
        if a not in self._object_set:
            raise UnknownObject(a)
        return self._outgoing.get(a, ())

    def incoming(self, a: str) -> tuple[str, ...]:
        if a not in self._object_set:
            raise UnknownObject(a)
        return self._incoming.get(a, ())

    def pullback(self) -> list[tuple[str, str]]:
        """All endpoint-compatible pairs (f, g), i.e. tgt(f) == src(g)."""
        return [(f, g) for f in self.arrow_ids for g in self._outgoing.get(self.tgt(f), ())]

    def comp_triples(self) -> list[tuple[str, str, str]]:
        return [(f, g, h) for (f, g), h in self.comp.items()]


def make_plot(
    objects: Iterable[str],
    arrows: Iterable[tuple[str, str, str] | Arrow],
    comp: Iterable[tuple[str, str, str]] | Mapping[tuple[str, str], str] = (),
) -> Plot:
    """Build a plot without validation. Arrows are (id, src, tgt) triples."""
    arrs = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in arrows)
    if isinstance(comp, Mapping):
        table = dict(comp)
    else:
        table = {(f, g): h for f, g, h in comp}
    return Plot(tuple(objects), arrs, table)


def violations(raw) -> list[Violation]:
    """List every axiom violation of a raw plot description."""
    objects, arrows, triples = _unpack(raw)
    found: list[Violation] = []
    seen_obj: set[str] = set()
    for o in objects:
        if o in seen_obj:
            found.append(Violation("DuplicateId", ("object", o)))
        seen_obj.add(o)
    ends: dict[str, tuple[str, str]] = {}
    for fid, s, t in arrows:
        if fid in ends:
            found.append(Violation("DuplicateId", ("arrow", fid)))
            continue
        ends[fid] = (s, t)
        for side, o in (("src", s), ("tgt", t)):
            if o not in seen_obj:
                found.append(Violation("DanglingEndpoint", (fid, side, o)))
    keys: set[tuple[str, str]] = set()
    for f, g, h in triples:
        if (f, g) in keys:
            found.append(Violation("DuplicateId", ("comp", f, g)))
            continue
        keys.add((f, g))
        missing = [x for x in (f, g, h) if x not in ends]
        if missing:
            found.append(Violation("UnknownArrow", (f, g, h)))
            continue
        if ends[f][1] != ends[g][0]:
            found.append(Violation("CompOutsidePullback", (f, g, h)))
            continue
        if ends[h] != (ends[f][0], ends[g][1]):
            found.append(Violation("CompEndpointMismatch", (f, g, h)))
    return found


def _unpack(raw):
    if isinstance(raw, Plot):
        return (
            list(raw.objects),
            [(a.id, a.src, a.tgt) for a in raw.arrows],
            raw.comp_triples(),
        )
    objects = list(raw.get("objects", []))
    arrows = []
    for a in raw.get("arrows", []):
        if isinstance(a, Arrow):
            arrows.append((a.id, a.src, a.tgt))
        elif isinstance(a, Mapping):
            arrows.append((a["id"], a["src"], a["tgt"]))
        else:
            arrows.append(tuple(a))
    comp = raw.get("comp", [])
    if isinstance(comp, Mapping):
        triples = [(f, g, h) for (f, g), h in comp.items()]
    else:
        triples = [tuple(t) for t in comp]
    return objects, arrows, triples


def validate(raw) -> Plot:
    """Check a raw description (mapping or Plot) and return a Plot.

    Raises ValidationError listing every violation found.
    """
    found = violations(raw)
    if found:
        raise ValidationError(found)
    objects, arrows, triples = _unpack(raw)
    return make_plot(objects, arrows, triples)


# identities


def _is_local_identity(P: Plot, e: str, a: str) -> bool:
    for f in P.incoming(a):
        if P.compose(f, e) != f:
            return False
    for g in P.outgoing(a):
        if P.compose(e, g) != g:
            return False
    return True


def compute_identities(P: Plot) -> dict[str, str]:
    """The maximal identity map: object -> its local identity, where one exists."""
    ids: dict[str, str] = {}
    for a in P.objects:
        found = [e for e in P.outgoing(a) if P.tgt(e) == a and _is_local_identity(P, e, a)]
        # two neutral loops e, e' would give e = e ⋄ e' = e'
        assert len(found) <= 1, f"object {a} has several local identities {found}"
        if found:
            ids[a] = found[0]
    return ids


# associativity


FLAG_NAMES = (
    "left_pre_associative",
    "right_pre_associative",
    "pre_associative",
    "strongly_associative",
    "associative",
    "left_dissociative",
    "right_dissociative",
    "dissociative",
)

MIRROR = {
    "left_pre_associative": "right_pre_associative",
    "right_pre_associative": "left_pre_associative",
    "left_dissociative": "right_dissociative",
    "right_dissociative": "left_dissociative",
}


@dataclass(frozen=True)
class AssociativityProfile:
    left_pre_associative: bool
    right_pre_associative: bool
    pre_associative: bool
    strongly_associative: bool
    associative: bool
    left_dissociative: bool
    right_dissociative: bool
    dissociative: bool
    # flag name -> arrow triple (x, y, z) forming a path x, y, z that breaks it
    witnesses: Mapping[str, tuple[str, str, str]] = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in FLAG_NAMES}


def _first_violation(P: Plot, clause) -> Optional[tuple[str, str, str]]:
    for triple in clause(P):
        return triple
    return None


def _left_pre_failures(P: Plot):
    c = P.comp
    for (x, y), xy in c.items():
        for z in P.right_partners[y]:
            if (xy, z) in c:
                yz = c[(y, z)]
                if (x, yz) not in c or c[(xy, z)] != c[(x, yz)]:
                    yield (x, y, z)


def _right_pre_failures(P: Plot):
    c = P.comp
    for (x, y), xy in c.items():
        for z in P.right_partners[y]:
            yz = c[(y, z)]
            if (x, yz) in c:
                if (xy, z) not in c or c[(xy, z)] != c[(x, yz)]:
                    yield (x, y, z)


def _strong_failures(P: Plot):
    c = P.comp
    for (x, y), xy in c.items():
        for z in P.right_partners[y]:
            if (xy, z) not in c:
                yield (x, y, z)


def _assoc_failures(P: Plot):
    c = P.comp
    for (x, y), xy in c.items():
        for z in P.right_partners[y]:
            yz = c[(y, z)]
            if (xy, z) in c and (x, yz) in c and c[(xy, z)] != c[(x, yz)]:
                yield (x, y, z)


def _left_dis_failures(P: Plot):
    c = P.comp
    for (x, y), xy in c.items():
        for z in P.right_partners[xy]:
            yz = c.get((y, z))
            if yz is None or (x, yz) not in c or c[(x, yz)] != c[(xy, z)]:
                yield (x, y, z)


def _right_dis_failures(P: Plot):
    c = P.comp
    for (y, z), yz in c.items():
        for x in P.left_partners[yz]:
            xy = c.get((x, y))
            if xy is None or (xy, z) not in c or c[(xy, z)] != c[(x, yz)]:
                yield (x, y, z)


def associativity_profile(P: Plot) -> AssociativityProfile:
    """Exhaustively evaluate the eight associativity flags, with witnesses."""
    w: dict[str, tuple[str, str, str]] = {}
    for name, clause in (
        ("left_pre_associative", _left_pre_failures),
        ("right_pre_associative", _right_pre_failures),
        ("associative", _assoc_failures),
        ("left_dissociative", _left_dis_failures),
        ("right_dissociative", _right_dis_failures),
    ):
        t = _first_violation(P, clause)
        if t is not None:
            w[name] = t
    lpa = "left_pre_associative" not in w
    rpa = "right_pre_associative" not in w
    pre = lpa and rpa
    if not pre:
        w["pre_associative"] = w.get("left_pre_associative") or w["right_pre_associative"]
    strong = pre
    if pre:
        t = _first_violation(P, _strong_failures)
        if t is not None:
            strong = False
            w["strongly_associative"] = t
    else:
        w["strongly_associative"] = w["pre_associative"]
    ld = "left_dissociative" not in w
    rd = "right_dissociative" not in w
    if not (ld and rd):
        w["dissociative"] = w.get("left_dissociative") or w["right_dissociative"]
    return AssociativityProfile(
        left_pre_associative=lpa,
        right_pre_associative=rpa,
        pre_associative=pre,
        strongly_associative=strong,
        associative="associative" not in w,
        left_dissociative=ld,
        right_dissociative=rd,
        dissociative=ld and rd,
        witnesses=w,
    )


# classification


@dataclass(frozen=True)
class ClassificationReport:
    is_quiver: bool
    is_monic_posetal: bool
    is_epic: bool
    is_unital: bool
    is_saturated: bool
    is_magmoid: bool
    is_semigroupoid: bool
    is_semicategory: bool
    is_category: bool
    profile: AssociativityProfile
    unital_objects: frozenset[str]
    identity_map: Mapping[str, str]
    witnesses: Mapping[str, tuple] = field(default_factory=dict, compare=False)


def classify(P: Plot) -> ClassificationReport:
    w: dict[str, tuple] = {}
    if P.comp:
        f, g = next(iter(P.comp))
        w["is_quiver"] = (f, g, P.comp[(f, g)])
    seen: dict[tuple[str, str], str] = {}
    for a in P.arrows:
        key = (a.src, a.tgt)
        if key in seen and "is_monic_posetal" not in w:
            w["is_monic_posetal"] = (seen[key], a.id)
        seen.setdefault(key, a.id)
    for o in P.objects:
        if not P.incoming(o) and not P.outgoing(o):
            w["is_epic"] = (o,)
            break
    ids = compute_identities(P)
    for o in P.objects:
        if o not in ids:
            w["is_unital"] = (o,)
            break
    for pair in P.pullback():
        if pair not in P.comp:
            w["is_saturated"] = pair
            break
    profile = associativity_profile(P)
    saturated = "is_saturated" not in w
    unital = "is_unital" not in w
    semicat = saturated and profile.pre_associative
    return ClassificationReport(
        is_quiver="is_quiver" not in w,
        is_monic_posetal="is_monic_posetal" not in w,
        is_epic="is_epic" not in w,
        is_unital=unital,
        is_saturated=saturated,
        is_magmoid=saturated,
        is_semigroupoid=profile.pre_associative,
        is_semicategory=semicat,
        is_category=semicat and unital,
        profile=profile,
        unital_objects=frozenset(ids),
        identity_map=ids,
        witnesses=w,
    )


# duality and hom queries


def dual(P: Plot) -> Plot:
    """Swap sources with targets and reverse the composition order."""
    return Plot(
        P.objects,
        tuple(Arrow(a.id, a.tgt, a.src) for a in P.arrows),
        {(g, f): h for (f, g), h in P.comp.items()},
    )


def hom(P: Plot, source: Optional[str] = None, target: Optional[str] = None) -> tuple[str, ...]:
    """Arrows with the given source and/or target, in plot order."""
    for o in (source, target):
        if o is not None and not P.has_object(o):
            raise UnknownObject(o)
    if source is not None:
        pool = P.outgoing(source)
    elif target is not None:
        pool = P.incoming(target)
    else:
        return P.arrow_ids
    if target is None:
        return pool
    return tuple(f for f in pool if P.tgt(f) == target)


def hom_into_composable(P: Plot, f: str) -> tuple[str, ...]:
    """Arrows g into src(f) with (g, f) composable."""
    return tuple(g for g in P.incoming(P.src(f)) if (g, f) in P.comp)


def hom_from_composable(P: Plot, f: str) -> tuple[str, ...]:
    """Arrows g out of tgt(f) with (f, g) composable."""
    return tuple(g for g in P.outgoing(P.tgt(f)) if (f, g) in P.comp)


def regular_representation(P: Plot, f: str, side: str) -> dict[str, str]:
    """``right``: g -> g⋄f on hom_into_composable; ``left``: g -> f⋄g on hom_from_composable."""
    if side == "right":
        return {g: P.comp[(g, f)] for g in hom_into_composable(P, f)}
    if side == "left":
        return {g: P.comp[(f, g)] for g in hom_from_composable(P, f)}
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def degrees(P: Plot, a: str) -> tuple[int, int, int]:
    """(indegree, outdegree, degree); loops count once on each side."""
    i, o = len(P.incoming(a)), len(P.outgoing(a))
    return i, o, i + o


def class_product(P: Plot, classes: Sequence[Iterable[str]], wp) -> frozenset[str]:
    """Every defined evaluation of ``wp`` with the i-th argument drawn from ``classes[i]``."""
    from .parens import Leaf, length

    classes = [frozenset(c) for c in classes]
    if len(classes) != length(wp):
        raise LengthMismatch(f"{len(classes)} classes for a parenthesization of length {length(wp)}")
    for cls in classes:
        for f in cls:
            P.arrow(f)

    def go(node, offset):
        if isinstance(node, Leaf):
            return classes[offset], offset + 1
        left, mid = go(node.left, offset)
        right, end = go(node.right, mid)
        out = {P.comp[(a, b)] for a, b in product(left, right) if (a, b) in P.comp}
        return frozenset(out), end

    return go(wp, 0)[0]


def tuple_id(parts: Iterable[str]) -> str:
    """Unambiguous string id for a tuple of ids, e.g. ``["f","g"]``."""
    import json

    return json.dumps(list(parts), ensure_ascii=False, separators=(",", ":"))
