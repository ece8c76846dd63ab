"""Punctors: maps of plots that preserve endpoints and defined composites."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional

from .core import Plot, PlotError, compute_identities, dual, hom, make_plot
from .subplots import generated_subplot, is_subplot

DEFAULT_SEARCH_CAP = 10**6


def search_cap() -> int:
    """Global enumeration cap; PLOTKIT_SEARCH_CAP overrides the default."""
    raw = os.environ.get("PLOTKIT_SEARCH_CAP")
    return int(raw) if raw else DEFAULT_SEARCH_CAP


class PunctorError(PlotError):
    def __init__(self, kind: str, detail: tuple = ()):
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind}: {', '.join(map(str, detail))}")


class Overflow(PlotError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"search space exceeds the cap of {cap}")


@dataclass(frozen=True)
class Punctor:
    source: Plot
    target: Plot
    obj_map: Mapping[str, str]
    arrow_map: Mapping[str, str]

    def __call__(self, x: str) -> str:
        if x in self.arrow_map:
            return self.arrow_map[x]
        return self.obj_map[x]


def punctor_violations(F: Punctor) -> list[PunctorError]:
    P, Q = F.source, F.target
    errs: list[PunctorError] = []
    for o in P.objects:
        if o not in F.obj_map:
            errs.append(PunctorError("NotTotal", ("object", o)))
        elif not Q.has_object(F.obj_map[o]):
            errs.append(PunctorError("NotTotal", ("object image", o, F.obj_map[o])))
    for f in P.arrow_ids:
        if f not in F.arrow_map:
            errs.append(PunctorError("NotTotal", ("arrow", f)))
        elif not Q.has_arrow(F.arrow_map[f]):
            errs.append(PunctorError("NotTotal", ("arrow image", f, F.arrow_map[f])))
    if errs:
        return errs
    for a in P.arrows:
        b = Q.arrow(F.arrow_map[a.id])
        if (b.src, b.tgt) != (F.obj_map[a.src], F.obj_map[a.tgt]):
            errs.append(PunctorError("EndpointMismatch", (a.id, b.id)))
    for (f, g), h in P.comp.items():
        if Q.comp.get((F.arrow_map[f], F.arrow_map[g])) != F.arrow_map[h]:
            errs.append(PunctorError("CompositionNotPreserved", (f, g, h)))
    return errs


def validate_punctor(F: Punctor) -> Punctor:
    errs = punctor_violations(F)
    if errs:
        raise errs[0]
    return F


def is_punctor(F: Punctor) -> bool:
    return not punctor_violations(F)


def is_functor(F: Punctor) -> bool:
    """A punctor sending every local identity to the local identity at its image."""
    if not is_punctor(F):
        return False
    ids_q = compute_identities(F.target)
    for a, e in compute_identities(F.source).items():
        if ids_q.get(F.obj_map[a]) != F.arrow_map[e]:
            return False
    return True


def identity_punctor(P: Plot) -> Punctor:
    return Punctor(P, P, {o: o for o in P.objects}, {f: f for f in P.arrow_ids})


def empty_punctor(Q: Plot) -> Punctor:
    return Punctor(Plot(), Q, {}, {})


def inclusion_punctor(Q: Plot, P: Plot) -> Punctor:
    if not is_subplot(Q, P):
        raise PunctorError("NotASubplot")
    return Punctor(Q, P, {o: o for o in Q.objects}, {f: f for f in Q.arrow_ids})


def compose_punctors(F: Punctor, G: Punctor) -> Punctor:
    """G after F."""
    if F.target != G.source:
        raise PunctorError("SourceTargetMismatch")
    return Punctor(
        F.source,
        G.target,
        {o: G.obj_map[F.obj_map[o]] for o in F.source.objects},
        {f: G.arrow_map[F.arrow_map[f]] for f in F.source.arrow_ids},
    )


def dual_punctor(F: Punctor) -> Punctor:
    return Punctor(dual(F.source), dual(F.target), F.obj_map, F.arrow_map)


def image(F: Punctor, sub: Optional[Plot] = None) -> Plot:
    """Relative subplot of the target on the images of ``sub``'s objects and arrows."""
    sub = F.source if sub is None else sub
    if not is_subplot(sub, F.source):
        raise PunctorError("NotASubplot")
    return generated_subplot(
        F.target,
        [F.obj_map[o] for o in sub.objects],
        [F.arrow_map[f] for f in sub.arrow_ids],
        "relative",
    )


def inverse_image(F: Punctor, sub: Plot) -> Plot:
    if not is_subplot(sub, F.target):
        raise PunctorError("NotASubplot")
    return generated_subplot(
        F.source,
        [o for o in F.source.objects if sub.has_object(F.obj_map[o])],
        [f for f in F.source.arrow_ids if sub.has_arrow(F.arrow_map[f])],
        "relative",
    )


def restrict(F: Punctor, sub: Plot) -> Punctor:
    if not is_subplot(sub, F.source):
        raise PunctorError("NotASubplot")
    return Punctor(
        sub,
        F.target,
        {o: F.obj_map[o] for o in sub.objects},
        {f: F.arrow_map[f] for f in sub.arrow_ids},
    )


def corestrict(F: Punctor, sub: Plot) -> Punctor:
    if not is_subplot(sub, F.target):
        raise PunctorError("NotASubplot")
    return validate_punctor(Punctor(F.source, sub, F.obj_map, F.arrow_map))


# enumeration


def enumerate_punctors(
    P: Plot, Q: Plot, cap: Optional[int] = None, functors_only: bool = False
) -> list[Punctor]:
    """Every punctor P → Q, by backtracking; raises Overflow past ``cap`` search nodes."""
    return list(iter_punctors(P, Q, cap, functors_only))


def iter_punctors(
    P: Plot, Q: Plot, cap: Optional[int] = None, functors_only: bool = False
) -> Iterator[Punctor]:
    cap = search_cap() if cap is None else cap
    ids_p = compute_identities(P) if functors_only else {}
    ids_q = compute_identities(Q) if functors_only else {}
    visited = 0
    # every composite pair is checked as soon as its three arrows are assigned
    order = list(P.arrow_ids)
    pos = {f: i for i, f in enumerate(order)}
    checks: dict[int, list[tuple[str, str, str]]] = {}
    for (f, g), h in P.comp.items():
        checks.setdefault(max(pos[f], pos[g], pos[h]), []).append((f, g, h))

    for objs in product(Q.objects, repeat=len(P.objects)):
        visited += 1
        if visited > cap:
            raise Overflow(cap)
        omap = dict(zip(P.objects, objs))
        if functors_only and any(omap[a] not in ids_q for a in ids_p):
            continue
        amap: dict[str, str] = {}

        def assign(i: int) -> Iterator[dict[str, str]]:
            nonlocal visited
            if i == len(order):
                yield amap
                return
            a = P.arrow(order[i])
            if functors_only and ids_p.get(a.src) == a.id:
                cands: Iterable[str] = (ids_q[omap[a.src]],)
            else:
                cands = hom(Q, omap[a.src], omap[a.tgt])
            for b in cands:
                visited += 1
                if visited > cap:
                    raise Overflow(cap)
                amap[a.id] = b
                if all(Q.comp.get((amap[f], amap[g])) == amap[h] for f, g, h in checks.get(i, ())):
                    yield from assign(i + 1)
                del amap[a.id]

        for found in assign(0):
            yield Punctor(P, Q, dict(omap), dict(found))


# classification


@dataclass(frozen=True)
class PunctorClassReport:
    is_unital: bool
    faithful: bool
    full: bool
    fully_faithful: bool
    injective_on_objects: bool
    embedding: bool
    isomorphism: bool
    constant: bool
    coconstant: bool
    m_dense: Optional[bool] = None
    m_equivalence: Optional[bool] = None
    witnesses: Mapping[str, tuple] = field(default_factory=dict, compare=False)


def _hom_blocks(F: Punctor):
    P, Q = F.source, F.target
    for x in P.objects:
        for y in P.objects:
            yield x, y, hom(P, x, y), hom(Q, F.obj_map[x], F.obj_map[y])


def _trivial_monoid_pair() -> Plot:
    return make_plot(
        ["0", "1"],
        [("e0", "0", "0"), ("e1", "1", "1")],
        [("e0", "e0", "e0"), ("e1", "e1", "e1")],
    )


def _is_constant(F: Punctor) -> bool:
    P, Q = F.source, F.target
    if Q.arrows:
        targets = set(F.obj_map.values())
        if len(targets) > 1:
            return False
        images = set(F.arrow_map.values())
        if len(images) > 1:
            return False
        if images:
            b = Q.arrow(next(iter(images)))
            return b.src == b.tgt
        if targets:
            (B,) = targets
            return any(Q.tgt(f) == B for f in Q.outgoing(B))
        return any(a.src == a.tgt for a in Q.arrows)
    # no arrows in Q: probe with functors from a single bare object
    probe = make_plot(["*"], [])
    maps = enumerate_punctors(probe, P, functors_only=True)
    return len({F.obj_map[g.obj_map["*"]] for g in maps}) <= 1


def _is_coconstant(F: Punctor) -> bool:
    # probe with functors into two disjoint one-arrow monoids
    probe = _trivial_monoid_pair()
    maps = enumerate_punctors(F.target, probe, functors_only=True)
    seen = {
        (tuple(sorted(compose_punctors(F, g).obj_map.items())),
         tuple(sorted(compose_punctors(F, g).arrow_map.items())))
        for g in maps
    }
    return len(seen) <= 1


def classify_punctor(F: Punctor, M: Optional[Iterable[str]] = None) -> PunctorClassReport:
    w: dict[str, tuple] = {}
    for x, y, src_hom, tgt_hom in _hom_blocks(F):
        imgs = [F.arrow_map[f] for f in src_hom]
        if "faithful" not in w and len(set(imgs)) != len(imgs):
            dup = next(f for f in src_hom if imgs.count(F.arrow_map[f]) > 1)
            w["faithful"] = (x, y, dup)
        if "full" not in w:
            missing = [g for g in tgt_hom if g not in set(imgs)]
            if missing:
                w["full"] = (x, y, missing[0])
    objs = [F.obj_map[o] for o in F.source.objects]
    injective = len(set(objs)) == len(objs)
    if not injective:
        w["injective_on_objects"] = tuple(
            o for o in F.source.objects if objs.count(F.obj_map[o]) > 1
        )[:2]
    surjective = set(objs) == set(F.target.objects)
    faithful = "faithful" not in w
    full = "full" not in w
    dense = equiv = None
    if M is not None:
        from .connections import m_equivalent

        M = frozenset(M)
        dense = True
        for b in F.target.objects:
            if not any(m_equivalent(F.target, M, a, b) for a in set(objs)):
                dense = False
                w["m_dense"] = (b,)
                break
        equiv = faithful and full and dense
    return PunctorClassReport(
        is_unital=is_functor(F),
        faithful=faithful,
        full=full,
        fully_faithful=faithful and full,
        injective_on_objects=injective,
        embedding=faithful and injective,
        isomorphism=faithful and full and injective and surjective,
        constant=_is_constant(F),
        coconstant=_is_coconstant(F),
        m_dense=dense,
        m_equivalence=equiv,
        witnesses=w,
    )


@dataclass(frozen=True)
class PreserveReflect:
    preserves: bool
    preserve_witness: Optional[str]
    reflects: bool
    reflect_witness: Optional[str]


def preserves_reflects(F: Punctor, M: Iterable[str], N: Iterable[str]) -> PreserveReflect:
    """preserves: f ∈ M ⇒ F(f) ∈ N; reflects: F(f) ∈ N ⇒ f ∈ M."""
    M, N = set(M), set(N)
    pw = next((f for f in F.source.arrow_ids if f in M and F.arrow_map[f] not in N), None)
    rw = next((f for f in F.source.arrow_ids if F.arrow_map[f] in N and f not in M), None)
    return PreserveReflect(pw is None, pw, rw is None, rw)
