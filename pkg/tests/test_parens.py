import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import gen
import oracles
from plotkit.core import UnknownArrow, classify
from plotkit.parens import (
    LEAF,
    ArityMismatch,
    Leaf,
    Node,
    ParenSyntaxError,
    ZeroLength,
    enumerate_parens,
    eval_paren,
    format_paren,
    length,
    parse_paren,
    split,
    substitute,
)
from plotkit.subplots import is_compositive


@st.composite
def trees(draw, max_leaves=6):
    n = draw(st.integers(1, max_leaves))
    return draw(st.sampled_from(enumerate_parens(n)))


def brute_trees(n):
    """Every full binary tree with n leaves, built by inserting leaves."""
    if n == 1:
        return {"•"}
    out = set()
    for k in range(1, n):
        for a in brute_trees(k):
            for b in brute_trees(n - k):
                out.add(f"({a}{b})")
    return out


def test_enumerate_small_cases():
    assert enumerate_parens(1) == [LEAF]
    assert [format_paren(t) for t in enumerate_parens(3)] == ["(•(••))", "((••)•)"]
    assert len(enumerate_parens(5)) == 14
    with pytest.raises(ZeroLength):
        enumerate_parens(0)


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_counts_and_distinctness(n):
    got = enumerate_parens(n)
    assert len(got) == oracles.catalan(n - 1)
    assert {format_paren(t) for t in got} == brute_trees(n)
    assert all(length(t) == n for t in got)


def test_enumeration_order_is_by_left_length():
    lefts = [length(split(t)[0]) for t in enumerate_parens(5)]
    assert lefts == sorted(lefts)


@given(trees())
def test_format_parse_round_trip(t):
    assert parse_paren(format_paren(t)) == t


@pytest.mark.parametrize("bad", ["", "(", "(•)", "(••", "••", "x", "(•••)"])
def test_parse_errors(bad):
    with pytest.raises(ParenSyntaxError):
        parse_paren(bad)


def test_substitute_examples():
    t = Node(LEAF, LEAF)
    assert substitute(LEAF, [t]) == t
    assert format_paren(substitute(t, [LEAF, t])) == "(•(••))"
    with pytest.raises(ArityMismatch):
        substitute(t, [LEAF])


@given(trees(), st.data())
def test_substitute_length_and_units(wp, data):
    inner = [data.draw(trees(4)) for _ in range(length(wp))]
    assert length(substitute(wp, inner)) == sum(length(i) for i in inner)
    assert substitute(wp, [LEAF] * length(wp)) == wp


def test_eval_examples(cayley):
    assert eval_paren(cayley, LEAF, ["2"]) == "2"
    assert eval_paren(cayley, parse_paren("((••)•)"), ["1", "1", "1"]) == "1"
    with pytest.raises(ArityMismatch):
        eval_paren(cayley, LEAF, ["1", "1"])
    with pytest.raises(UnknownArrow):
        eval_paren(cayley, LEAF, ["7"])


def ref_eval(P, s, fs):
    """Evaluate from the text form by splitting on the outer parentheses."""
    if s == "•":
        return fs[0]
    body, depth = s[1:-1], 0
    for i, ch in enumerate(body):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0:
            left, right = body[: i + 1], body[i + 1:]
            break
    k = left.count("•")
    a, b = ref_eval(P, left, fs[:k]), ref_eval(P, right, fs[k:])
    if a is None or b is None:
        return None
    return P.comp.get((a, b))


@given(gen.magmas(3), trees(5), st.data())
def test_eval_matches_reference(P, wp, data):
    fs = [data.draw(st.sampled_from(P.arrow_ids)) for _ in range(length(wp))]
    assert eval_paren(P, wp, fs) == ref_eval(P, format_paren(wp), fs)


@given(gen.magmas(3), trees(3), st.data())
def test_eval_commutes_with_substitution(P, wp, data):
    inner = [data.draw(trees(3)) for _ in range(length(wp))]
    args = [[data.draw(st.sampled_from(P.arrow_ids)) for _ in range(length(t))] for t in inner]
    values = [eval_paren(P, t, a) for t, a in zip(inner, args)]
    if any(v is None for v in values):
        return
    rhs = eval_paren(P, wp, values)
    if rhs is not None:
        flat = [f for a in args for f in a]
        assert eval_paren(P, substitute(wp, inner), flat) == rhs


def test_associative_saturated_evaluation_ignores_brackets():
    rng = random.Random(3)
    for t in gen.semigroup_tables(3)[::5]:
        P = gen.make_plot(["*"], [(str(i), "*", "*") for i in range(3)],
                          {(str(i), str(j)): str(v) for (i, j), v in t.items()})
        r = classify(P)
        assert r.is_saturated and r.profile.associative
        for n in range(1, 6):
            fs = [rng.choice(P.arrow_ids) for _ in range(n)]
            assert len({eval_paren(P, wp, fs) for wp in enumerate_parens(n)}) == 1


@given(gen.magmas(3), st.data())
def test_compositive_classes_are_closed_under_evaluation(P, data):
    M = set(data.draw(st.sets(st.sampled_from(P.arrow_ids))))
    if not is_compositive(P, M)[0] or not M:
        return
    n = data.draw(st.integers(1, 5))
    fs = [data.draw(st.sampled_from(sorted(M))) for _ in range(n)]
    for wp in enumerate_parens(n):
        v = eval_paren(P, wp, fs)
        assert v is None or v in M


def test_leaf_has_no_split():
    with pytest.raises(ValueError):
        split(LEAF)
    assert isinstance(split(Node(LEAF, LEAF))[0], Leaf)
