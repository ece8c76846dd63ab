import random

import pytest
from hypothesis import given

import gen
import oracles
from plotkit.arrows import (
    DERIVED_PLOTS,
    FLAG_MIRROR,
    NotEndomorphism,
    NotPeriodicWithinBounds,
    arrow_class,
    classify_arrows,
    derived_arrow_plot,
    inverses,
    order_of,
)
from plotkit.core import UnknownArrow, associativity_profile, compute_identities, dual, make_plot
from plotkit.subplots import is_subplot


def cyclic_group(n):
    ids = [str(i) for i in range(n)]
    return make_plot(["*"], [(i, "*", "*") for i in ids],
                     {(str(i), str(j)): str((i + j) % n) for i in range(n) for j in range(n)})


def left_zero(n):
    ids = [str(i) for i in range(n)]
    return make_plot(["*"], [(i, "*", "*") for i in ids], {(x, y): x for x in ids for y in ids})


def null_magma(n):
    ids = [str(i) for i in range(n)]
    return make_plot(["*"], [(i, "*", "*") for i in ids], {(x, y): "0" for x in ids for y in ids})


def test_cayley_arrow_classes(cayley):
    r = classify_arrows(cayley)
    one, zero, two = r["1"], r["0"], r["2"]
    assert one.cancellative and one.split and one.iso
    assert not (zero.monic or zero.epic or zero.left_split or zero.right_split)
    assert zero.opaque and zero.singular
    assert two.monic and not two.epic
    assert two.right_split and not two.left_split
    assert arrow_class(cayley, "mono") == {"1", "2"}
    assert arrow_class(cayley, "epi") == {"1"}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_left_zero_magma(n):
    P = left_zero(n)
    assert arrow_class(P, "mono") == set(P.arrow_ids)
    assert arrow_class(P, "epi") == set()


def test_inverse_examples():
    Z3 = cyclic_group(3)
    assert inverses(Z3, "0").strong_inverse == "0"
    assert inverses(Z3, "1").strong_inverse == "2"
    inv = inverses(left_zero(3), "1")
    assert inv.left_inverses == inv.right_inverses == frozenset()
    with pytest.raises(UnknownArrow):
        inverses(Z3, "9")


def test_unknown_class_name(cayley):
    with pytest.raises(ValueError):
        arrow_class(cayley, "sideways")
    assert arrow_class(cayley, "hom") == {"0", "1", "2"}


@given(gen.any_plots)
def test_flags_match_oracle_and_invariants(P):
    report = classify_arrows(P)
    for f, fl in report.items():
        assert {k: getattr(fl, k) for k in ("monic", "epic", "right_split", "left_split")} == oracles.arrow_flags(P, f)
        assert fl.cancellative == (fl.monic and fl.epic)
        assert fl.split == (fl.left_split and fl.right_split)
        assert fl.iso == (fl.cancellative and fl.split)
        assert fl.opaque == (not fl.monic and not fl.epic) and fl.transparent == (not fl.opaque)
        assert fl.singular == (not fl.left_split and not fl.right_split)
        if fl.local_identity:
            assert fl.iso and fl.cancellative and fl.split
        assert fl.strongly_invertible == oracles.strongly_invertible(P, f)


@given(gen.any_plots)
def test_mirror_law(P):
    a, b = classify_arrows(P), classify_arrows(dual(P))
    for f in P.arrow_ids:
        fa, fb = a[f].flags(), b[f].flags()
        for name, value in fa.items():
            assert fb[FLAG_MIRROR.get(name, name)] == value, (f, name)
        assert a[f].left_inverses == b[f].right_inverses


def test_derived_plots():
    Z3 = cyclic_group(3)
    assert derived_arrow_plot(Z3, "Iso") == derived_arrow_plot(Z3, "Inv") == Z3
    N = null_magma(3)
    assert derived_arrow_plot(N, "Opa") == N
    for which in DERIVED_PLOTS:
        assert is_subplot(derived_arrow_plot(N, which), N)


def test_singular_plot_drops_identities():
    rng = random.Random(2)
    for _ in range(30):
        C = gen.random_category(rng)
        ids = set(compute_identities(C).values())
        assert not ids & set(derived_arrow_plot(C, "Sng").arrow_ids)


def test_order_examples(cayley):
    Z2, Z4 = cyclic_group(2), cyclic_group(4)
    assert order_of(Z2, "0") == (1, 1, 1)
    assert order_of(Z4, "1") == (1, 4, 4)
    assert order_of(Z4, "2") == (1, 2, 2)
    P = make_plot(["A", "B"], [("f", "A", "B")])
    with pytest.raises(NotEndomorphism):
        order_of(P, "f")
    # a loop that never composes
    Q = make_plot(["A"], [("f", "A", "A")])
    assert order_of(Q, "f", 3, 3) == NotPeriodicWithinBounds(3, 3)


def _order_oracle(P, f, max_n, max_p):
    """Enumerate bracketings as text and evaluate each one separately."""
    def trees(n):
        if n == 1:
            return ["•"]
        return [f"({a}{b})" for k in range(1, n) for a in trees(k) for b in trees(n - k)]

    def ev(s, i):
        if s[i] == "•":
            return f, i + 1
        a, j = ev(s, i + 1)
        b, k = ev(s, j)
        v = None if a is None or b is None else P.comp.get((a, b))
        return v, k + 1

    vals = {n: {ev(t, 0)[0] for t in trees(n)} - {None} for n in range(1, max(max_n, max_p) + 1)}
    for n in range(1, max_n + 1):
        for p in range(1, max_p + 1):
            if any(P.comp.get((x, y)) == x for x in vals[n] for y in vals[p]):
                return n, p, n + p - 1
    return None


def test_cayley_orders(cayley):
    # frozen from the text-enumeration oracle
    expected = {"0": (2, 1, 2), "1": (1, 2, 2), "2": (1, 2, 2)}
    for f in "012":
        assert _order_oracle(cayley, f, 4, 4) == expected[f]
        assert order_of(cayley, f, 4, 4) == expected[f]


@given(gen.magmas(3))
def test_order_matches_oracle(P):
    for f in P.arrow_ids:
        got = order_of(P, f, 4, 4)
        want = _order_oracle(P, f, 4, 4)
        if want is None:
            assert got == NotPeriodicWithinBounds(4, 4)
        else:
            assert got == want


# composition laws


def _pairs(P, flag):
    r = classify_arrows(P)
    for (f, g), h in P.comp.items():
        if getattr(r[f], flag) and getattr(r[g], flag):
            yield f, g, getattr(r[h], flag)


@given(gen.any_plots)
def test_monos_compose_under_right_dissociativity(P):
    if associativity_profile(P).right_dissociative:
        assert all(ok for _, _, ok in _pairs(P, "monic"))


@given(gen.any_plots)
def test_epis_compose_under_left_dissociativity(P):
    if associativity_profile(P).left_dissociative:
        assert all(ok for _, _, ok in _pairs(P, "epic"))


def test_monos_need_not_compose_under_left_dissociativity():
    P = make_plot(["*"], [("0", "*", "*"), ("1", "*", "*")],
                  {("0", "0"): "0", ("1", "0"): "0", ("1", "1"): "0"})
    assert associativity_profile(P).left_dissociative
    r = classify_arrows(P)
    assert r["1"].monic and not r["0"].monic


@given(gen.any_plots)
def test_strong_associativity_cancellation(P):
    if not associativity_profile(P).strongly_associative:
        return
    r = classify_arrows(P)
    for (f, g), h in P.comp.items():
        if r[h].monic:
            assert r[f].monic
        if r[h].epic:
            assert r[g].epic


@given(gen.any_plots)
def test_splits_compose(P):
    prof = associativity_profile(P)
    if prof.left_pre_associative:
        assert all(ok for _, _, ok in _pairs(P, "right_split"))
    if prof.right_pre_associative:
        assert all(ok for _, _, ok in _pairs(P, "left_split"))


def test_categories_iso_equals_strongly_invertible():
    rng = random.Random(4)
    for _ in range(40):
        C = gen.random_category(rng)
        for f, fl in classify_arrows(C).items():
            assert fl.iso == fl.strongly_invertible == fl.invertible
            assert fl.right_iso == fl.iso == fl.left_iso


def _nonempty_subset(rng, xs):
    xs = sorted(xs)
    return set(rng.sample(xs, rng.randint(1, len(xs))))


def test_translation_invariance():
    from itertools import product

    from plotkit.core import class_product
    from plotkit.parens import enumerate_parens, eval_paren
    from plotkit.subplots import is_compositive

    rng = random.Random(8)
    hits = {"mono": 0, "epi": 0, "canc": 0}
    for _ in range(3000):
        P = gen.mixed_plot(rng)
        if not P.arrows:
            continue
        clause = rng.choice(list(hits))
        cls = arrow_class(P, clause)
        if not cls:
            continue
        M = _nonempty_subset(rng, cls)
        if not is_compositive(P, M)[0]:
            continue
        n = rng.randint(1, 3)
        wp = rng.choice(enumerate_parens(n))
        if clause == "mono":
            Xs = [_nonempty_subset(rng, P.arrow_ids)] + [_nonempty_subset(rng, M) for _ in range(n - 1)]
        elif clause == "epi":
            Xs = [_nonempty_subset(rng, M) for _ in range(n - 1)] + [_nonempty_subset(rng, P.arrow_ids)]
        else:
            Xs = [_nonempty_subset(rng, M) for _ in range(n)]
        if any(eval_paren(P, wp, fs) is None for fs in product(*Xs)):
            continue
        size = len(class_product(P, Xs, wp))
        bound = {"mono": len(Xs[0]), "epi": len(Xs[-1]), "canc": max(map(len, Xs))}[clause]
        assert bound <= size
        hits[clause] += 1
    assert min(hits.values()) >= 30, hits
