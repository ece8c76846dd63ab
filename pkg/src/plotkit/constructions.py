"""Unitization, products, coproducts, augmentation and natural transformations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Mapping, Optional, Sequence

from .core import Arrow, Plot, PlotError, compute_identities, hom, tuple_id
from .punctors import (
    Overflow,
    Punctor,
    PunctorError,
    compose_punctors,
    enumerate_punctors,
    identity_punctor,
    is_functor,
    is_punctor,
    search_cap,
)
from .subplots import generated_subplot


class NotUnital(PlotError):
    pass


class FactorMismatch(PlotError):
    pass


class NotParallel(PlotError):
    pass


# unitization


def fresh_identity_names(P: Plot) -> dict[str, str]:
    """Names ``1@A`` for the adjoined loops, lengthening the prefix on any clash."""
    prefix = "1"
    while any(P.has_arrow(f"{prefix}@{o}") for o in P.objects):
        prefix += "1"
    return {o: f"{prefix}@{o}" for o in P.objects}


def force_unitize(P: Plot) -> Plot:
    """Adjoin a new loop at every object acting as an identity."""
    fresh = fresh_identity_names(P)
    arrows = P.arrows + tuple(Arrow(fresh[o], o, o) for o in P.objects)
    comp = dict(P.comp)
    for o in P.objects:
        u = fresh[o]
        for g in P.outgoing(o):
            comp[(u, g)] = g
        for f in P.incoming(o):
            comp[(f, u)] = f
        comp[(u, u)] = u
    return Plot(P.objects, arrows, comp)


def conditional_unitize(P: Plot) -> Plot:
    """Adjoin a new identity only at objects that lack one."""
    ids = compute_identities(P)
    fresh = fresh_identity_names(P)
    keep = list(P.arrow_ids) + [fresh[o] for o in P.objects if o not in ids]
    return generated_subplot(force_unitize(P), P.objects, keep, "wide")


def deunitize(P: Plot) -> Plot:
    """Drop every local identity and every composition entry that mentions one."""
    gone = set(compute_identities(P).values())
    return Plot(
        P.objects,
        tuple(a for a in P.arrows if a.id not in gone),
        {
            (f, g): h
            for (f, g), h in P.comp.items()
            if f not in gone and g not in gone and h not in gone
        },
    )


def unit_inclusion(P: Plot) -> Punctor:
    """The inclusion P → P♮."""
    return Punctor(P, force_unitize(P), {o: o for o in P.objects}, {f: f for f in P.arrow_ids})


def counit(Q: Plot) -> Punctor:
    """For unital Q, the functor Q♮ → Q fixing Q and sending each new loop to the old identity."""
    ids = compute_identities(Q)
    if len(ids) != len(Q.objects):
        raise NotUnital([o for o in Q.objects if o not in ids])
    fresh = fresh_identity_names(Q)
    amap = {f: f for f in Q.arrow_ids}
    amap.update({fresh[o]: ids[o] for o in Q.objects})
    return Punctor(force_unitize(Q), Q, {o: o for o in Q.objects}, amap)


def unitize_punctor(F: Punctor) -> Punctor:
    """Extend F: P → R to P♮ → R♮, sending the new loop at A to the new loop at F(A)."""
    fp = fresh_identity_names(F.source)
    fr = fresh_identity_names(F.target)
    amap = dict(F.arrow_map)
    amap.update({fp[o]: fr[F.obj_map[o]] for o in F.source.objects})
    return Punctor(force_unitize(F.source), force_unitize(F.target), dict(F.obj_map), amap)


@dataclass(frozen=True)
class AdjunctionCheck:
    ok: bool
    failing: Optional[str] = None


def check_unitization_adjunction(P: Plot, Q: Plot) -> AdjunctionCheck:
    """Check both triangle identities of the unitization adjunction at P and Q."""
    if len(compute_identities(Q)) != len(Q.objects):
        raise NotUnital("the second argument must be unital")
    LP = force_unitize(P)
    eta = unit_inclusion(P)
    L_eta = unitize_punctor(eta)
    eps_LP = counit(LP)
    for name, F in (("eta_P", eta), ("L(eta_P)", L_eta), ("eps_L(P)", eps_LP)):
        if not is_punctor(F):
            return AdjunctionCheck(False, f"{name} is not a punctor")
    if not is_functor(L_eta) or not is_functor(eps_LP):
        return AdjunctionCheck(False, "L(eta_P) or eps_L(P) is not a functor")
    if compose_punctors(L_eta, eps_LP) != identity_punctor(LP):
        return AdjunctionCheck(False, "eps_L(P) . L(eta_P) = 1_L(P)")
    eps_Q = counit(Q)
    eta_Q = unit_inclusion(Q)
    if not is_functor(eps_Q) or not is_punctor(eta_Q):
        return AdjunctionCheck(False, "eps_Q or eta_Q is not well formed")
    if compose_punctors(eta_Q, eps_Q) != identity_punctor(Q):
        return AdjunctionCheck(False, "I(eps_Q) . eta_I(Q) = 1_I(Q)")
    return AdjunctionCheck(True)


# products and coproducts


def product(plots: Sequence[Plot]) -> tuple[Plot, list[Punctor]]:
    """Componentwise product with its projections; no factors gives the empty quiver."""
    if not plots:
        return Plot(), []
    objects = {tuple_id(t): t for t in cartesian(*(P.objects for P in plots))}
    arrows = {}
    for t in cartesian(*(P.arrows for P in plots)):
        arrows[tuple_id(a.id for a in t)] = t
    comp = {}
    for fid, fs in arrows.items():
        for gid, gs in arrows.items():
            hs = []
            for P, f, g in zip(plots, fs, gs):
                h = P.comp.get((f.id, g.id))
                if h is None:
                    break
                hs.append(h)
            else:
                comp[(fid, gid)] = tuple_id(hs)
    prod = Plot(
        tuple(objects),
        tuple(
            Arrow(fid, tuple_id(a.src for a in t), tuple_id(a.tgt for a in t))
            for fid, t in arrows.items()
        ),
        comp,
    )
    projections = [
        Punctor(
            prod,
            P,
            {o: t[i] for o, t in objects.items()},
            {f: t[i].id for f, t in arrows.items()},
        )
        for i, P in enumerate(plots)
    ]
    return prod, projections


def pair_into_product(Fs: Sequence[Punctor]) -> Punctor:
    """The punctor R → ∏ targets whose i-th projection is Fs[i]."""
    if not Fs:
        raise FactorMismatch("at least one punctor is needed to know the source")
    R = Fs[0].source
    if any(F.source != R for F in Fs):
        raise FactorMismatch("the punctors do not share a source")
    prod, _ = product([F.target for F in Fs])
    return Punctor(
        R,
        prod,
        {o: tuple_id(F.obj_map[o] for F in Fs) for o in R.objects},
        {f: tuple_id(F.arrow_map[f] for F in Fs) for f in R.arrow_ids},
    )


def tag(i: int, x: str) -> str:
    return f"{i}:{x}"


def coproduct(plots: Sequence[Plot]) -> tuple[Plot, list[Punctor]]:
    """Disjoint union; ids are tagged ``i:id`` by factor index."""
    co = Plot(
        tuple(tag(i, o) for i, P in enumerate(plots) for o in P.objects),
        tuple(
            Arrow(tag(i, a.id), tag(i, a.src), tag(i, a.tgt))
            for i, P in enumerate(plots)
            for a in P.arrows
        ),
        {
            (tag(i, f), tag(i, g)): tag(i, h)
            for i, P in enumerate(plots)
            for (f, g), h in P.comp.items()
        },
    )
    injections = [
        Punctor(
            P,
            co,
            {o: tag(i, o) for o in P.objects},
            {f: tag(i, f) for f in P.arrow_ids},
        )
        for i, P in enumerate(plots)
    ]
    return co, injections


def copair_from_coproduct(Fs: Sequence[Punctor]) -> Punctor:
    """The punctor ∐ sources → R restricting to Fs[i] on the i-th summand."""
    if not Fs:
        raise FactorMismatch("at least one punctor is needed to know the target")
    R = Fs[0].target
    if any(F.target != R for F in Fs):
        raise FactorMismatch("the punctors do not share a target")
    co, _ = coproduct([F.source for F in Fs])
    omap = {tag(i, o): F.obj_map[o] for i, F in enumerate(Fs) for o in F.source.objects}
    amap = {tag(i, f): F.arrow_map[f] for i, F in enumerate(Fs) for f in F.source.arrow_ids}
    return Punctor(co, R, omap, amap)


# augmentation

BOTTOM = "⊥"


def augment(P: Plot, index_set: Sequence[str], zeta: Mapping[tuple[str, str], str]) -> Plot:
    """Copies (f, i) of every arrow, one per index, with local identities kept single.

    A pair of copies composes when both the arrows and the indices do. Local
    identities carry the index ⊥, which acts neutrally on the index side, so
    the identity class composes the same way whichever copy represents it.
    """
    ids = set(compute_identities(P).values())
    index_set = list(index_set)

    def idx(i: str, j: str) -> Optional[str]:
        if i == BOTTOM:
            return j
        if j == BOTTOM:
            return i
        return zeta.get((i, j))

    copies: dict[str, tuple[str, str]] = {}
    arrows = []
    for a in P.arrows:
        indices = [BOTTOM] if a.id in ids else index_set
        for i in indices:
            cid = tuple_id((a.id, i))
            copies[cid] = (a.id, i)
            arrows.append(Arrow(cid, a.src, a.tgt))
    comp = {}
    for x, (f, i) in copies.items():
        for g in P.right_partners[f]:
            h = P.comp[(f, g)]
            for y in ([tuple_id((g, BOTTOM))] if g in ids else [tuple_id((g, j)) for j in index_set]):
                k = idx(i, copies[y][1])
                if k is None:
                    continue
                if h in ids:
                    k = BOTTOM
                elif k == BOTTOM:
                    continue
                comp[(x, y)] = tuple_id((h, k))
    return Plot(P.objects, tuple(arrows), comp)


# natural transformations


@dataclass(frozen=True)
class NaturalTransformation:
    source: Punctor
    target: Punctor
    components: Mapping[str, str]


def _parallel(F: Punctor, G: Punctor) -> None:
    if F.source != G.source or F.target != G.target:
        raise NotParallel("the punctors must share source and target")


def nt_violations(eps: NaturalTransformation, Qb: Optional[Plot] = None) -> list[tuple]:
    F, G = eps.source, eps.target
    _parallel(F, G)
    Qb = conditional_unitize(F.target) if Qb is None else Qb
    bad: list[tuple] = []
    for a in F.source.objects:
        e = eps.components.get(a)
        if e is None or not Qb.has_arrow(e):
            bad.append(("missing", a))
            continue
        if (Qb.src(e), Qb.tgt(e)) != (F.obj_map[a], G.obj_map[a]):
            bad.append(("component", a, e))
    if bad:
        return bad
    for f in F.source.arrows:
        left = Qb.comp.get((F.arrow_map[f.id], eps.components[f.tgt]))
        right = Qb.comp.get((eps.components[f.src], G.arrow_map[f.id]))
        if left is None or right is None or left != right:
            bad.append(("naturality", f.id))
    return bad


def validate_nt(eps: NaturalTransformation) -> NaturalTransformation:
    bad = nt_violations(eps)
    if bad:
        raise PunctorError("NotNatural", bad[0])
    return eps


def identity_nt(F: Punctor) -> NaturalTransformation:
    Qb = conditional_unitize(F.target)
    ids = compute_identities(Qb)
    return NaturalTransformation(F, F, {a: ids[F.obj_map[a]] for a in F.source.objects})


def compose_nt(
    eps: NaturalTransformation, eta: NaturalTransformation, Qb: Optional[Plot] = None
) -> Optional[NaturalTransformation]:
    """Componentwise composite in the conditional unitization, or None when undefined."""
    if eps.target != eta.source:
        raise NotParallel("the first transformation must end where the second starts")
    Qb = conditional_unitize(eps.source.target) if Qb is None else Qb
    comps = {}
    for a in eps.source.source.objects:
        h = Qb.comp.get((eps.components[a], eta.components[a]))
        if h is None:
            return None
        comps[a] = h
    out = NaturalTransformation(eps.source, eta.target, comps)
    return out if not nt_violations(out, Qb) else None


def natural_transformations(
    F: Punctor, G: Punctor, Qb: Optional[Plot] = None, cap: Optional[int] = None
) -> list[NaturalTransformation]:
    _parallel(F, G)
    Qb = conditional_unitize(F.target) if Qb is None else Qb
    cap = search_cap() if cap is None else cap
    objs = F.source.objects
    choices = [hom(Qb, F.obj_map[a], G.obj_map[a]) for a in objs]
    size = 1
    for c in choices:
        size *= len(c)
    if size > cap:
        raise Overflow(cap)
    out = []
    for comps in cartesian(*choices):
        eps = NaturalTransformation(F, G, dict(zip(objs, comps)))
        if not nt_violations(eps, Qb):
            out.append(eps)
    return out


@dataclass(frozen=True)
class PunctorPlot:
    plot: Plot
    punctors: Mapping[str, Punctor]
    transformations: Mapping[str, NaturalTransformation]


def punctor_plot_data(
    P: Plot, Q: Plot, punctors: Optional[Sequence[Punctor]] = None, cap: Optional[int] = None
) -> PunctorPlot:
    """Punctors P → Q as objects, natural transformations as arrows."""
    if punctors is None:
        punctors = enumerate_punctors(P, Q, cap)
    Qb = conditional_unitize(Q)
    names = {f"F{i}": F for i, F in enumerate(punctors)}
    nts: dict[str, NaturalTransformation] = {}
    arrows = []
    for fn, F in names.items():
        for gn, G in names.items():
            for eps in natural_transformations(F, G, Qb, cap):
                nid = tuple_id([fn, gn, *(eps.components[a] for a in P.objects)])
                nts[nid] = eps
                arrows.append(Arrow(nid, fn, gn))
    comp = {}
    for a in arrows:
        for b in arrows:
            if a.tgt != b.src:
                continue
            c = compose_nt(nts[a.id], nts[b.id], Qb)
            if c is not None:
                comp[(a.id, b.id)] = tuple_id([a.src, b.tgt, *(c.components[o] for o in P.objects)])
    return PunctorPlot(Plot(tuple(names), tuple(arrows), comp), names, nts)


def punctor_plot(P: Plot, Q: Plot, punctors: Optional[Sequence[Punctor]] = None) -> Plot:
    return punctor_plot_data(P, Q, punctors).plot
