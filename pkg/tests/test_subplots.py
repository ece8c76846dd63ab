import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import gen
import oracles
from plotkit.arrows import arrow_class
from plotkit.core import UnknownArrow, associativity_profile, classify, compute_identities, make_plot
from plotkit.subplots import (
    MODES,
    closure,
    full_subplot,
    generated_subplot,
    is_compositive,
    is_subplot,
    restrict_to_relation,
    underlying_graph,
    underlying_quiver,
)

EMPTY = make_plot([], [])


def random_subset(rng, xs):
    return [x for x in xs if rng.random() < 0.5]


def test_reflexive_not_proper(cayley):
    r = is_subplot(cayley, cayley)
    assert r and not r.is_proper and r.is_wide and r.is_full and r.is_identitive


def test_quiver_is_fully_wide(cayley):
    r = is_subplot(underlying_quiver(cayley), cayley)
    assert r and r.is_wide and r.is_full


def test_extra_comp_triple_is_rejected():
    P = make_plot(["A"], [("f", "A", "A"), ("g", "A", "A")])
    Q = make_plot(["A"], [("f", "A", "A"), ("g", "A", "A")], {("f", "f"): "g"})
    r = is_subplot(Q, P)
    assert not r and r.witness == ("comp", "f", "f", "g")


def test_missing_object_and_endpoint_mismatch():
    P = make_plot(["A", "B"], [("f", "A", "B")])
    assert not is_subplot(make_plot(["C"], []), P)
    assert not is_subplot(make_plot(["A", "B"], [("f", "B", "A")]), P)


def test_smallest_generated_examples(cayley):
    assert generated_subplot(cayley, [], [], "smallest") == EMPTY
    Q = generated_subplot(cayley, [], ["1"], "smallest")
    assert set(Q.arrow_ids) == {"0", "1"} == oracles.compose_closure(cayley, {"1"})
    everything = generated_subplot(cayley, [], cayley.arrow_ids, "smallest")
    assert everything == generated_subplot(cayley, [], cayley.arrow_ids, "relative") == cayley


def test_ids_outside_plot_are_ignored(cayley):
    Q = generated_subplot(cayley, ["nowhere"], ["1", "zzz"], "relative")
    assert Q.arrow_ids == ("1",)


def test_unknown_mode(cayley):
    with pytest.raises(ValueError):
        generated_subplot(cayley, [], [], "sideways")


@given(gen.any_plots, st.randoms(use_true_random=False))
def test_generated_modes(P, rng):
    objs = random_subset(rng, P.objects)
    arrs = random_subset(rng, P.arrow_ids)
    for mode in MODES:
        assert is_subplot(generated_subplot(P, objs, arrs, mode), P), mode
    rel = generated_subplot(P, objs, arrs, "relative")
    small = generated_subplot(P, objs, arrs, "smallest")
    assert is_subplot(rel, small)
    assert (rel == small) == is_compositive(P, arrs)[0]
    assert set(small.arrow_ids) == oracles.compose_closure(P, arrs)
    wide = generated_subplot(P, objs, arrs, "wide")
    assert is_subplot(wide, P).is_wide
    full = generated_subplot(P, objs, arrs, "full")
    assert set(full.objects) == set(objs)
    ids = compute_identities(P)
    ident = generated_subplot(P, objs, arrs, "identitive")
    for f in arrs:
        for o in (P.src(f), P.tgt(f)):
            if o in ids:
                assert ident.has_arrow(ids[o])
    if not ids:
        assert ident == small


@given(gen.any_plots, st.randoms(use_true_random=False))
def test_smallest_is_minimal(P, rng):
    arrs = set(random_subset(rng, P.arrow_ids))
    cl = closure(P, arrs)
    for h in cl - arrs:
        rest = cl - {h}
        assert not is_compositive(P, rest)[0]


@given(gen.any_plots, st.randoms(use_true_random=False))
def test_full_implies_identitive(P, rng):
    Q = full_subplot(P, random_subset(rng, P.objects))
    r = is_subplot(Q, P)
    assert r.is_full and r.is_identitive


def test_restrict_examples(cayley):
    assert restrict_to_relation(cayley, []) == EMPTY
    mono = arrow_class(cayley, "mono")
    Q = restrict_to_relation(cayley, [(x, y) for x in mono for y in mono])
    assert set(Q.arrow_ids) == {"1", "2"}
    expected = {k: v for k, v in cayley.comp.items() if set(k) | {v} <= {"1", "2"}}
    assert Q.comp == expected == {("1", "2"): "2", ("2", "1"): "2", ("2", "2"): "1"}
    with pytest.raises(UnknownArrow):
        restrict_to_relation(cayley, [("1", "x")])


@given(gen.any_plots)
def test_restrict_to_composition_domain(P):
    Q = restrict_to_relation(P, P.comp.keys())
    used = {x for pair in P.comp for x in pair}
    assert set(Q.arrow_ids) == used
    assert set(Q.objects) == {o for f in used for o in (P.src(f), P.tgt(f))}
    assert classify(Q).is_epic
    assert is_subplot(Q, P)


def test_compositive_examples(cayley):
    assert is_compositive(cayley, cayley.arrow_ids) == (True, None)
    assert is_compositive(cayley, {"1"}) == (False, ("1", "1"))
    Z2 = make_plot(["A"], [("0", "A", "A"), ("1", "A", "A")],
                   {("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1", ("1", "1"): "0"})
    assert is_compositive(Z2, compute_identities(Z2).values())[0]


def test_quiver_and_graph():
    q = make_plot(["A", "B"], [("f", "A", "B")])
    assert underlying_quiver(q) == q
    assert underlying_graph(make_plot(["A"], [("f", "A", "A")])) == [("f", frozenset({"A"}))]


@given(gen.any_plots)
def test_quiver_shares_graph(P):
    assert underlying_graph(underlying_quiver(P)) == underlying_graph(P)


@given(gen.any_plots, st.randoms(use_true_random=False))
def test_subplot_order_laws(P, rng):
    R = generated_subplot(P, random_subset(rng, P.objects), random_subset(rng, P.arrow_ids), "relative")
    Q = generated_subplot(R, random_subset(rng, R.objects), random_subset(rng, R.arrow_ids), "relative")
    assert is_subplot(Q, R) and is_subplot(R, P) and is_subplot(Q, P)
    if is_subplot(P, R):
        assert set(P.arrow_ids) == set(R.arrow_ids) and P.comp == R.comp


def test_saturated_subplots_of_pre_associative_plots():
    rng = random.Random(5)
    checked = 0
    for _ in range(600):
        P = gen.mixed_plot(rng)
        if not associativity_profile(P).pre_associative:
            continue
        Q = generated_subplot(P, random_subset(rng, P.objects), random_subset(rng, P.arrow_ids), "relative")
        Q = type(Q)(Q.objects, Q.arrows, {k: v for k, v in Q.comp.items() if rng.random() < 0.8})
        if classify(Q).is_saturated:
            checked += 1
            assert associativity_profile(Q).strongly_associative
    assert checked >= 50
