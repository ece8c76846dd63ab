"""Per-arrow classification through the two regular representations.

``ρ(f)``: g ↦ g⋄f and ``λ(f)``: g ↦ f⋄g. Injectivity gives monic/epic,
surjectivity gives right/left split, bijectivity of both gives iso.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .core import Plot, PlotError, compute_identities, hom, regular_representation
from .subplots import restrict_to_relation


class NotEndomorphism(PlotError):
    pass


@dataclass(frozen=True)
class ArrowFlags:
    monic: bool
    epic: bool
    cancellative: bool
    left_split: bool
    right_split: bool
    split: bool
    left_invertible: bool
    right_invertible: bool
    invertible: bool
    strongly_invertible: bool
    left_iso: bool
    right_iso: bool
    iso: bool
    automorphism: bool
    left_neutral: bool
    right_neutral: bool
    neutral: bool
    left_identity: bool
    right_identity: bool
    local_identity: bool
    constant: bool
    coconstant: bool
    opaque: bool
    transparent: bool
    singular: bool
    regular: bool
    endomorphism: bool
    left_inverses: frozenset[str]
    right_inverses: frozenset[str]
    strong_inverse: Optional[str]

    def flags(self) -> dict[str, bool]:
        return {k: v for k, v in asdict(self).items() if isinstance(v, bool)}


# flag name -> its name in the dual plot
FLAG_MIRROR = {
    "monic": "epic",
    "epic": "monic",
    "left_split": "right_split",
    "right_split": "left_split",
    "left_invertible": "right_invertible",
    "right_invertible": "left_invertible",
    "left_iso": "right_iso",
    "right_iso": "left_iso",
    "left_neutral": "right_neutral",
    "right_neutral": "left_neutral",
    "left_identity": "right_identity",
    "right_identity": "left_identity",
    "constant": "coconstant",
    "coconstant": "constant",
}

# short class names used by derived plots and the command line
CLASS_FLAGS = {
    "mono": "monic",
    "epi": "epic",
    "canc": "cancellative",
    "lspl": "left_split",
    "rspl": "right_split",
    "spl": "split",
    "linv": "left_invertible",
    "rinv": "right_invertible",
    "inv": "invertible",
    "sinv": "strongly_invertible",
    "liso": "left_iso",
    "riso": "right_iso",
    "iso": "iso",
    "aut": "automorphism",
    "opa": "opaque",
    "sng": "singular",
    "end": "endomorphism",
    "const": "constant",
    "coconst": "coconstant",
    "id": "local_identity",
}


@dataclass(frozen=True)
class InverseReport:
    left_inverses: frozenset[str]
    right_inverses: frozenset[str]
    strong_inverse: Optional[str]


def inverses(P: Plot, f: str, ids: Optional[dict[str, str]] = None) -> InverseReport:
    """Right inverses g have f⋄g = id(src f); left inverses have g⋄f = id(tgt f)."""
    a = P.arrow(f)
    if ids is None:
        ids = compute_identities(P)
    right: set[str] = set()
    left: set[str] = set()
    if a.src in ids:
        e = ids[a.src]
        right = {g for g in P.right_partners[f] if P.comp[(f, g)] == e}
    if a.tgt in ids:
        e = ids[a.tgt]
        left = {g for g in P.left_partners[f] if P.comp[(g, f)] == e}
    strong = None
    if len(left) == 1 and left == right:
        strong = next(iter(left))
    return InverseReport(frozenset(left), frozenset(right), strong)


def _injective(m: dict[str, str]) -> bool:
    return len(set(m.values())) == len(m)


def _constant(m: dict[str, str]) -> bool:
    return len(set(m.values())) <= 1


def arrow_flags(P: Plot, f: str, ids: Optional[dict[str, str]] = None) -> ArrowFlags:
    if ids is None:
        ids = compute_identities(P)
    a = P.arrow(f)
    rho = regular_representation(P, f, "right")
    lam = regular_representation(P, f, "left")
    monic = _injective(rho)
    epic = _injective(lam)
    right_split = set(rho.values()) == set(hom(P, None, a.tgt))
    left_split = set(lam.values()) == set(hom(P, a.src, None))
    inv = inverses(P, f, ids)
    loop = a.src == a.tgt
    left_neutral = loop and all(v == g for g, v in lam.items())
    right_neutral = loop and all(v == g for g, v in rho.items())
    left_identity = left_neutral and len(lam) == len(P.outgoing(a.src))
    right_identity = right_neutral and len(rho) == len(P.incoming(a.tgt))
    right_iso = monic and right_split
    left_iso = epic and left_split
    iso = left_iso and right_iso
    opaque = not monic and not epic
    singular = not left_split and not right_split
    return ArrowFlags(
        monic=monic,
        epic=epic,
        cancellative=monic and epic,
        left_split=left_split,
        right_split=right_split,
        split=left_split and right_split,
        left_invertible=bool(inv.left_inverses),
        right_invertible=bool(inv.right_inverses),
        invertible=bool(inv.left_inverses) and bool(inv.right_inverses),
        strongly_invertible=inv.strong_inverse is not None,
        left_iso=left_iso,
        right_iso=right_iso,
        iso=iso,
        automorphism=iso and loop,
        left_neutral=left_neutral,
        right_neutral=right_neutral,
        neutral=left_neutral and right_neutral,
        left_identity=left_identity,
        right_identity=right_identity,
        local_identity=ids.get(a.src) == f,
        constant=_constant(rho),
        coconstant=_constant(lam),
        opaque=opaque,
        transparent=not opaque,
        singular=singular,
        regular=not singular,
        endomorphism=loop,
        left_inverses=inv.left_inverses,
        right_inverses=inv.right_inverses,
        strong_inverse=inv.strong_inverse,
    )


def classify_arrows(P: Plot) -> dict[str, ArrowFlags]:
    ids = compute_identities(P)
    return {f: arrow_flags(P, f, ids) for f in P.arrow_ids}


def arrow_class(P: Plot, name: str, report: Optional[dict[str, ArrowFlags]] = None) -> frozenset[str]:
    """Arrows in the named class ("mono", "iso", ... or a flag name), or "hom" for all."""
    if name == "hom":
        return frozenset(P.arrow_ids)
    flag = CLASS_FLAGS.get(name, name)
    if report is None:
        report = classify_arrows(P)
    if not report:
        if flag not in ArrowFlags.__dataclass_fields__:
            raise ValueError(f"unknown arrow class {name!r}")
        return frozenset()
    sample = next(iter(report.values()))
    if not isinstance(getattr(sample, flag, None), bool):
        raise ValueError(f"unknown arrow class {name!r}")
    return frozenset(f for f, flags in report.items() if getattr(flags, flag))


DERIVED_PLOTS = {
    "Mono": "mono",
    "Epi": "epi",
    "Canc": "canc",
    "Lspl": "lspl",
    "Rspl": "rspl",
    "Spl": "spl",
    "Linv": "linv",
    "Rinv": "rinv",
    "Inv": "inv",
    "Liso": "liso",
    "Riso": "riso",
    "Iso": "iso",
    "Opa": "opa",
    "Sng": "sng",
    "End": "end",
}


def derived_arrow_plot(P: Plot, which: str) -> Plot:
    """Restriction of P to S × S for the arrow class S named by ``which``."""
    S = arrow_class(P, DERIVED_PLOTS.get(which, which))
    return restrict_to_relation(P, [(f, g) for f in S for g in S])


# periodicity


@dataclass(frozen=True)
class NotPeriodicWithinBounds:
    max_n: int
    max_p: int


def powers(P: Plot, f: str, n: int) -> list[frozenset[str]]:
    """``out[k-1]`` holds every value of f^k over all parenthesizations, k = 1..n."""
    out: list[frozenset[str]] = [frozenset({f})]
    for k in range(2, n + 1):
        vals = set()
        for i in range(1, k):
            for a in out[i - 1]:
                for b in out[k - i - 1]:
                    h = P.comp.get((a, b))
                    if h is not None:
                        vals.add(h)
        out.append(frozenset(vals))
    return out


def order_of(P: Plot, f: str, max_n: Optional[int] = None, max_p: Optional[int] = None):
    """(index, period, order) of an endomorphism, or NotPeriodicWithinBounds.

    Index is the least n for which some power f^n absorbs some power f^p on
    the right; period is the least such p for that n.
    """
    a = P.arrow(f)
    if a.src != a.tgt:
        raise NotEndomorphism(f)
    default = len(P.arrows) + 1
    max_n = default if max_n is None else max_n
    max_p = default if max_p is None else max_p
    pw = powers(P, f, max(max_n, max_p))
    for n in range(1, max_n + 1):
        for p in range(1, max_p + 1):
            if any(P.comp.get((x, y)) == x for x in pw[n - 1] for y in pw[p - 1]):
                return n, p, n + p - 1
    return NotPeriodicWithinBounds(max_n, max_p)
