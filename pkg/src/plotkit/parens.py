"""Parenthesizations as full binary trees.

Text syntax: a leaf is ``•`` and a node is ``(`` left right ``)``, so the two
trees with three leaves are ``(•(••))`` and ``((••)•)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from .core import LengthMismatch, PlotError, Plot

LEAF_CHAR = "•"


class ZeroLength(PlotError):
    pass


class ArityMismatch(LengthMismatch):
    pass


class ParenSyntaxError(PlotError):
    pass


@dataclass(frozen=True)
class Leaf:
    def __str__(self) -> str:
        return LEAF_CHAR


@dataclass(frozen=True)
class Node:
    left: "Paren"
    right: "Paren"

    def __str__(self) -> str:
        return f"({self.left}{self.right})"


Paren = Union[Leaf, Node]
LEAF = Leaf()


def length(wp: Paren) -> int:
    if isinstance(wp, Leaf):
        return 1
    return length(wp.left) + length(wp.right)


def split(wp: Paren) -> tuple[Paren, Paren]:
    if isinstance(wp, Leaf):
        raise ValueError("a leaf has no splitting")
    return wp.left, wp.right


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Paren, ...]:
    if n == 1:
        return (LEAF,)
    out = []
    for k in range(1, n):
        for left in _enumerate(k):
            for right in _enumerate(n - k):
                out.append(Node(left, right))
    return tuple(out)


def enumerate_parens(n: int) -> list[Paren]:
    """All trees with ``n`` leaves, shorter left halves first."""
    if n < 1:
        raise ZeroLength(n)
    return list(_enumerate(n))


def format_paren(wp: Paren) -> str:
    return str(wp)


def parse_paren(text: str) -> Paren:
    text = text.strip()
    pos = 0

    def parse() -> Paren:
        nonlocal pos
        if pos >= len(text):
            raise ParenSyntaxError(f"unexpected end of input at column {pos + 1}")
        ch = text[pos]
        if ch == LEAF_CHAR:
            pos += 1
            return LEAF
        if ch == "(":
            pos += 1
            left = parse()
            right = parse()
            if pos >= len(text) or text[pos] != ")":
                raise ParenSyntaxError(f"expected ')' at column {pos + 1}")
            pos += 1
            return Node(left, right)
        raise ParenSyntaxError(f"unexpected {ch!r} at column {pos + 1}")

    tree = parse()
    if pos != len(text):
        raise ParenSyntaxError(f"trailing input at column {pos + 1}")
    return tree


def substitute(wp: Paren, inner: Sequence[Paren]) -> Paren:
    """Graft ``inner[i]`` onto the i-th leaf of ``wp``."""
    if len(inner) != length(wp):
        raise ArityMismatch(f"{len(inner)} trees for {length(wp)} leaves")
    it = iter(inner)

    def go(node: Paren) -> Paren:
        if isinstance(node, Leaf):
            return next(it)
        return Node(go(node.left), go(node.right))

    return go(wp)


def eval_paren(P: Plot, wp: Paren, fs: Sequence[str]) -> Optional[str]:
    """Evaluate ``wp`` on ``fs`` in ``P``; None when undefined."""
    if len(fs) != length(wp):
        raise ArityMismatch(f"{len(fs)} arrows for {length(wp)} leaves")
    for f in fs:
        P.arrow(f)
    return _eval(P, wp, tuple(fs), 0)[0]


def _eval(P: Plot, node: Paren, fs: tuple[str, ...], i: int) -> tuple[Optional[str], int]:
    if isinstance(node, Leaf):
        return fs[i], i + 1
    a, j = _eval(P, node.left, fs, i)
    if a is None:
        return None, j + length(node.right)
    b, k = _eval(P, node.right, fs, j)
    if b is None:
        return None, k
    return P.comp.get((a, b)), k
