"""Values of the relational model.

Every element carries a precomputed sort key and grade, so comparisons,
hashing and the lexicographic witness tie-break stay cheap for nested bags.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable


class Element:
    __slots__ = ("key", "grade", "_hash")

    def _init(self, key, grade):
        self.key = key
        self.grade = grade
        self._hash = hash(key)

    def __eq__(self, other):
        return isinstance(other, Element) and self.key == other.key

    def __hash__(self):
        return self._hash

    # order used everywhere: by grade, then structurally
    def order(self):
        return (self.grade, self.key)

    def __lt__(self, other):
        return self.order() < other.order()

    def __reduce__(self):
        return (_rebuild, (self.key,))


class Pt(Element):
    __slots__ = ("label",)

    def __init__(self, label: str):
        self.label = label
        self._init(("p", label), 1)

    def __repr__(self):
        return self.label


class Star(Element):
    __slots__ = ()

    def __init__(self):
        self._init(("s",), 1)

    def __repr__(self):
        return "*"


class InL(Element):
    __slots__ = ("inner",)

    def __init__(self, inner: Element):
        self.inner = inner
        self._init(("l", inner.key), 1 + inner.grade)

    def __repr__(self):
        return f"inl({self.inner!r})"


class InR(Element):
    __slots__ = ("inner",)

    def __init__(self, inner: Element):
        self.inner = inner
        self._init(("r", inner.key), 1 + inner.grade)

    def __repr__(self):
        return f"inr({self.inner!r})"


class PairT(Element):
    __slots__ = ("left", "right")

    def __init__(self, left: Element, right: Element):
        self.left, self.right = left, right
        self._init(("t", left.key, right.key), left.grade + right.grade)

    def __repr__(self):
        return f"({self.left!r}, {self.right!r})"


class Bag(Element):
    """Finite multiset, members kept in canonical sorted order."""
    __slots__ = ("items",)

    def __init__(self, items: Iterable[Element] = ()):
        its = tuple(sorted(items, key=Element.order))
        self.items = its
        self._init(("b",) + tuple(x.key for x in its), 1 + sum(x.grade for x in its))

    def __len__(self):
        return len(self.items)

    def counts(self) -> Counter:
        return Counter(self.items)

    def plus(self, other: "Bag") -> "Bag":
        return Bag(self.items + other.items)

    def add(self, x: Element) -> "Bag":
        return Bag(self.items + (x,))

    def __repr__(self):
        return "{" + ", ".join(repr(x) for x in self.items) + "}"


def _rebuild(key):
    tag = key[0]
    if tag == "p":
        return Pt(key[1])
    if tag == "s":
        return Star()
    if tag == "l":
        return InL(_rebuild(key[1]))
    if tag == "r":
        return InR(_rebuild(key[1]))
    if tag == "t":
        return PairT(_rebuild(key[1]), _rebuild(key[2]))
    return Bag(_rebuild(k) for k in key[1:])


def to_json(x: Element):
    """Plain JSON-able form, used in reports."""
    if isinstance(x, Pt):
        return x.label
    if isinstance(x, Star):
        return "*"
    if isinstance(x, InL):
        return {"inl": to_json(x.inner)}
    if isinstance(x, InR):
        return {"inr": to_json(x.inner)}
    if isinstance(x, PairT):
        return [to_json(x.left), to_json(x.right)]
    return {"bag": [to_json(y) for y in x.items]}


def bag_minus(m: Bag, sub: Iterable[Element]):
    """m minus sub as a bag, or None when sub is not contained in m."""
    c = m.counts()
    c.subtract(Counter(sub))
    if any(v < 0 for v in c.values()):
        return None
    return Bag(c.elements())


def sub_bags(m: Bag):
    """All (m1, m2) with m1 + m2 = m, each split listed once."""
    items = sorted(m.counts().items(), key=lambda kv: kv[0].order())
    out = []

    def go(i, left, right):
        if i == len(items):
            out.append((Bag(left), Bag(right)))
            return
        x, n = items[i]
        for k in range(n + 1):
            go(i + 1, left + [x] * k, right + [x] * (n - k))

    go(0, [], [])
    return out
