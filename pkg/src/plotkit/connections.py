"""Connections, paths and factorizations over an arrow class M, and limits over diagrams.

M-connectivity between objects is decided by reachability in the undirected
graph whose edges are the arrows of M. ``is_m_connection`` keeps the literal
recursive predicate on arrow sequences for conformance checks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .constructions import conditional_unitize
from .core import Plot, PlotError, dual, hom, tuple_id
from .parens import Node, Paren, enumerate_parens, eval_paren, format_paren
from .punctors import Overflow, Punctor, dual_punctor, is_punctor, search_cap
from .subplots import closure, full_subplot


@dataclass(frozen=True)
class Contiguity:
    left: bool
    right: bool
    either: bool


def contiguous(P: Plot, f: str, g: str) -> Contiguity:
    a, b = P.arrow(f), P.arrow(g)
    left = a.src == b.src or a.tgt == b.src
    right = a.tgt == b.tgt or a.src == b.tgt
    return Contiguity(left, right, left or right)


def is_m_connection(P: Plot, M: Iterable[str], seq: Sequence[str]) -> bool:
    """Literal recursive test: every edge in M and, for n > 1, some reordering
    of the first n-1 edges is a connection that starts where ``seq`` starts and
    ends next to the last edge."""
    M = frozenset(M)
    if not seq or any(f not in M for f in seq):
        return False
    return _connection(P, tuple(seq))


def _connection(P: Plot, seq: tuple[str, ...]) -> bool:
    if len(seq) == 1:
        return True
    head, last = seq[:-1], seq[-1]
    start = P.src(seq[0])
    seen = set()
    for perm in permutations(head):
        if perm in seen:
            continue
        seen.add(perm)
        if P.src(perm[0]) != start or not contiguous(P, perm[-1], last).either:
            continue
        if _connection(P, perm):
            return True
    return False


def _components(P: Plot, M: frozenset[str]) -> dict[str, int]:
    comp: dict[str, int] = {}
    adj: dict[str, list[str]] = {o: [] for o in P.objects}
    for a in P.arrows:
        if a.id in M:
            adj[a.src].append(a.tgt)
            adj[a.tgt].append(a.src)
    label = 0
    for o in P.objects:
        if o in comp:
            continue
        comp[o] = label
        queue = deque([o])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in comp:
                    comp[y] = label
                    queue.append(y)
        label += 1
    return comp


def m_connected(P: Plot, M: Iterable[str], a: str, b: str) -> bool:
    """A non-empty undirected walk of M-arrows joins a and b."""
    M = frozenset(f for f in M if P.has_arrow(f))
    touched = {x for f in M for x in (P.src(f), P.tgt(f))}
    if a not in touched or b not in touched:
        return False
    comp = _components(P, M)
    return comp[a] == comp[b]


def m_equivalent(P: Plot, M: Iterable[str], a: str, b: str) -> bool:
    if not (P.has_object(a) and P.has_object(b)):
        raise PlotError(f"unknown object {a if not P.has_object(a) else b}")
    return a == b or m_connected(P, M, a, b)


def m_components(P: Plot, M: Iterable[str]) -> list[tuple[tuple[str, ...], Plot]]:
    """Equivalence classes of objects with the full subplots on them."""
    comp = _components(P, frozenset(f for f in M if P.has_arrow(f)))
    classes: dict[int, list[str]] = {}
    for o in P.objects:
        classes.setdefault(comp[o], []).append(o)
    return [(tuple(objs), full_subplot(P, objs)) for objs in classes.values()]


def skeleton(P: Plot, M: Iterable[str]) -> Plot:
    """Full subplot on the least object id of every M-equivalence class."""
    reps = [min(objs) for objs, _ in m_components(P, M)]
    return full_subplot(P, reps)


def is_m_skeletal(P: Plot, M: Iterable[str]) -> bool:
    return all(len(objs) == 1 for objs, _ in m_components(P, M))


# paths and factorizations


@dataclass(frozen=True)
class MFactorization:
    path: tuple[str, ...]
    wp: Paren

    @property
    def id(self) -> str:
        return tuple_id([*self.path, format_paren(self.wp)])


def m_paths(P: Plot, M: Iterable[str], start: str, n: int) -> Iterator[tuple[str, ...]]:
    """M-paths of length n starting at ``start``, in plot order."""
    M = frozenset(M)

    def go(obj: str, k: int) -> Iterator[tuple[str, ...]]:
        if k == 0:
            yield ()
            return
        for f in P.outgoing(obj):
            if f in M:
                for rest in go(P.tgt(f), k - 1):
                    yield (f,) + rest

    yield from go(start, n)


def longer_path_exists(P: Plot, M: Iterable[str], a: str, b: str, bound: int) -> bool:
    """Whether some M-path from a to b has length greater than ``bound``."""
    M = frozenset(M)
    cap = bound + 1
    seen = set()
    queue = deque()
    for f in P.outgoing(a):
        if f in M:
            state = (P.tgt(f), 1)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    while queue:
        obj, k = queue.popleft()
        for f in P.outgoing(obj):
            if f in M:
                state = (P.tgt(f), min(k + 1, cap))
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
    return (b, cap) in seen


def factorizations(P: Plot, M: Iterable[str], a: str, b: str, n: int) -> Iterator[MFactorization]:
    """M-factorizations of length n from a to b, paths first then parenthesizations."""
    for path in m_paths(P, M, a, n):
        if P.tgt(path[-1]) != b:
            continue
        for wp in enumerate_parens(n):
            if eval_paren(P, wp, path) is not None:
                yield MFactorization(path, wp)


@dataclass(frozen=True)
class MorphicResult:
    found: bool
    witness: Optional[MFactorization] = None
    inconclusive: bool = False


def m_morphic(P: Plot, M: Iterable[str], a: str, b: str, max_len: int) -> MorphicResult:
    """Search factorizations up to ``max_len``. When none is found, the result
    is inconclusive exactly if a longer one exists: evaluations of
    M-factorizations are the composition closure of M."""
    M = frozenset(M)
    for n in range(1, max_len + 1):
        for phi in factorizations(P, M, a, b, n):
            return MorphicResult(True, phi)
    longer = any(P.src(v) == a and P.tgt(v) == b for v in closure(P, M))
    return MorphicResult(False, None, longer)


def bounded_path_plot(P: Plot, M: Iterable[str], max_len: int) -> Plot:
    """M-paths of length ≤ max_len, composed by concatenation within the bound."""
    from .core import Arrow

    M = frozenset(M)
    paths = [p for n in range(1, max_len + 1) for o in P.objects for p in m_paths(P, M, o, n)]
    ids = {p: tuple_id(p) for p in paths}
    arrows = tuple(Arrow(ids[p], P.src(p[0]), P.tgt(p[-1])) for p in paths)
    comp = {}
    for p in paths:
        for q in paths:
            if len(p) + len(q) <= max_len and P.tgt(p[-1]) == P.src(q[0]):
                comp[(ids[p], ids[q])] = ids[p + q]
    return Plot(P.objects, arrows, comp)


@dataclass(frozen=True)
class FactPlot:
    plot: Plot
    factorizations: Mapping[str, MFactorization]
    evaluation: Punctor


def bounded_fact_data(P: Plot, M: Iterable[str], max_len: int) -> FactPlot:
    from .core import Arrow

    M = frozenset(M)
    facts: dict[str, MFactorization] = {}
    values: dict[str, str] = {}
    for n in range(1, max_len + 1):
        for o in P.objects:
            for path in m_paths(P, M, o, n):
                for wp in enumerate_parens(n):
                    v = eval_paren(P, wp, path)
                    if v is not None:
                        phi = MFactorization(path, wp)
                        facts[phi.id] = phi
                        values[phi.id] = v
    arrows = tuple(
        Arrow(i, P.src(phi.path[0]), P.tgt(phi.path[-1])) for i, phi in facts.items()
    )
    comp = {}
    for i, x in facts.items():
        for j, y in facts.items():
            if len(x.path) + len(y.path) > max_len or P.tgt(x.path[-1]) != P.src(y.path[0]):
                continue
            if (values[i], values[j]) in P.comp:
                comp[(i, j)] = MFactorization(x.path + y.path, Node(x.wp, y.wp)).id
    fact = Plot(P.objects, arrows, comp)
    ev = Punctor(fact, P, {o: o for o in P.objects}, values)
    return FactPlot(fact, facts, ev)


def bounded_fact_plot(P: Plot, M: Iterable[str], max_len: int) -> Plot:
    return bounded_fact_data(P, M, max_len).plot


def evaluation_punctor(P: Plot, M: Iterable[str], max_len: int) -> Punctor:
    return bounded_fact_data(P, M, max_len).evaluation


# diagrams, cones, limits

LIMIT_LABELS = ("strong", "weak_only", "sublimit_only", "weak_and_sub", "none", "inconclusive")


class InvalidCone(PlotError):
    pass


@dataclass(frozen=True)
class Diagram:
    shape: Plot
    functor: Punctor

    @property
    def into(self) -> Plot:
        return self.functor.target

    def __post_init__(self):
        if self.shape.comp:
            raise PlotError("a diagram shape must be a quiver")
        if self.functor.source != self.shape or not is_punctor(self.functor):
            raise PlotError("the diagram map is not a punctor from its shape")


def dual_diagram(D: Diagram) -> Diagram:
    return Diagram(dual(D.shape), dual_punctor(D.functor))


@dataclass(frozen=True)
class Cone:
    apex: str
    legs: Mapping[str, str]


@dataclass(frozen=True)
class ConeCheck:
    valid: bool
    witness: Optional[tuple] = None
    uses_adjoined_identity: bool = False


def check_cone(D: Diagram, cone: Cone, Pb: Optional[Plot] = None) -> ConeCheck:
    """Legs live in the conditional unitization and commute with every shape arrow there."""
    P = D.into
    Pb = conditional_unitize(P) if Pb is None else Pb
    if not P.has_object(cone.apex):
        return ConeCheck(False, ("apex", cone.apex))
    for x in D.shape.objects:
        leg = cone.legs.get(x)
        if leg is None or not Pb.has_arrow(leg):
            return ConeCheck(False, ("leg", x))
        if (Pb.src(leg), Pb.tgt(leg)) != (cone.apex, D.functor.obj_map[x]):
            return ConeCheck(False, ("leg", x, leg))
    for f in D.shape.arrows:
        got = Pb.comp.get((cone.legs[f.src], D.functor.arrow_map[f.id]))
        if got != cone.legs[f.tgt]:
            return ConeCheck(False, ("commute", f.id))
    adjoined = any(not P.has_arrow(cone.legs[x]) for x in D.shape.objects)
    return ConeCheck(True, None, adjoined)


def enumerate_cones(D: Diagram, Pb: Optional[Plot] = None, cap: Optional[int] = None) -> list[Cone]:
    P = D.into
    Pb = conditional_unitize(P) if Pb is None else Pb
    cap = search_cap() if cap is None else cap
    xs = D.shape.objects
    cones = []
    budget = 0
    for apex in P.objects:
        choices = [hom(Pb, apex, D.functor.obj_map[x]) for x in xs]
        size = 1
        for c in choices:
            size *= len(c)
        budget += size
        if budget > cap:
            raise Overflow(cap)
        for legs in product(*choices):
            cone = Cone(apex, dict(zip(xs, legs)))
            if check_cone(D, cone, Pb).valid:
                cones.append(cone)
    return cones


@dataclass(frozen=True)
class CompetitorResult:
    competitor: Cone
    length: Optional[int]
    count: Optional[int]  # 0, 1 or 2 (meaning at least two); None if unresolved
    witnesses: tuple[MFactorization, ...] = ()


@dataclass(frozen=True)
class LimitResult:
    label: str
    weak: Optional[bool]
    sublimit: Optional[bool]
    competitors: tuple[CompetitorResult, ...] = field(default=(), compare=False)


def mediating_factorizations(
    D: Diagram, cone: Cone, other: Cone, M: frozenset[str], max_len: int, Pb: Plot
) -> CompetitorResult:
    """Minimal-length factorizations Φ from other.apex to cone.apex with
    ψ_X = Ev(Φ) ⋄ φ_X for every shape object X (counted up to two)."""
    xs = D.shape.objects
    for n in range(1, max_len + 1):
        found = []
        for phi in factorizations(Pb, M, other.apex, cone.apex, n):
            v = eval_paren(Pb, phi.wp, phi.path)
            if all(Pb.comp.get((v, cone.legs[x])) == other.legs[x] for x in xs):
                found.append(phi)
                if len(found) == 2:
                    break
        if found:
            return CompetitorResult(other, n, len(found), tuple(found))
    # every evaluation lies in the composition closure of M, and every member
    # of that closure is an evaluation; no mediating member means no mediator
    reachable = closure(Pb, M)
    mediating = any(
        Pb.src(v) == other.apex
        and Pb.tgt(v) == cone.apex
        and all(Pb.comp.get((v, cone.legs[x])) == other.legs[x] for x in xs)
        for v in reachable
    )
    if mediating and longer_path_exists(Pb, M, other.apex, cone.apex, max_len):
        return CompetitorResult(other, None, None)
    return CompetitorResult(other, None, 0)


def classify_limit(
    D: Diagram, cone: Cone, M: Optional[Iterable[str]] = None, max_len: int = 1
) -> LimitResult:
    """Label a cone by how its competitors factor through it.

    Every cone over D, the given one included, is a competitor. For each, the
    mediating factorizations of least length are counted. ``weak`` asks for at
    least one per competitor and ``sublimit`` for at most one; ``strong`` is
    both. An unresolved competitor (none found within ``max_len`` while longer
    paths exist) makes an undecided side ``None``; the label is then
    ``inconclusive`` unless the other side already rules it out.
    """
    Pb = conditional_unitize(D.into)
    check = check_cone(D, cone, Pb)
    if not check.valid:
        raise InvalidCone(check.witness)
    M = frozenset(Pb.arrow_ids) if M is None else frozenset(M)
    results = tuple(
        mediating_factorizations(D, cone, other, M, max_len, Pb)
        for other in enumerate_cones(D, Pb)
    )
    counts = [r.count for r in results]
    if any(c == 0 for c in counts):
        weak: Optional[bool] = False
    elif any(c is None for c in counts):
        weak = None
    else:
        weak = True
    if any(c is not None and c >= 2 for c in counts):
        sub: Optional[bool] = False
    elif any(c is None for c in counts):
        sub = None
    else:
        sub = True
    label = {
        (True, True): "strong",
        (True, False): "weak_only",
        (False, True): "sublimit_only",
        (False, False): "none",
    }.get((weak, sub), "inconclusive")
    return LimitResult(label, weak, sub, results)


def classify_colimit(
    D: Diagram, cocone: Cone, M: Optional[Iterable[str]] = None, max_len: int = 1
) -> LimitResult:
    """The same classification run on the dual plot with the dual diagram."""
    return classify_limit(dual_diagram(D), cocone, M, max_len)
