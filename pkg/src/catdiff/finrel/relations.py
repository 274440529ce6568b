"""Compiled relation nodes.

Each node knows whether its forward images (x -> ys) and backward images
(y -> xs) are finite. Composite membership uses those to pick a search
direction, so intermediates are generated from a known endpoint instead of
being enumerated blindly. Only when neither side bounds an intermediate do
we fall back to a grade-capped enumeration (counted in ``Env.fallbacks``).
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Optional

from .elements import Bag, Element, InL, InR, PairT


class Env:
    """Shared evaluation context for one compiled relation tree."""

    def __init__(self, enumerate_fn, fallback_cap: int, check_grades: bool = False):
        self.enumerate = enumerate_fn
        self.fallback_cap = fallback_cap
        self.check_grades = check_grades
        self.fallbacks = 0


class GradeViolation(AssertionError):
    pass


class Rel:
    fwd_finite = True
    bwd_finite = True
    card_preserving = False   # bags in, bags of the same size out

    def __init__(self, dom, cod, env: Env):
        self.dom, self.cod, self.env = dom, cod, env
        self._mem: dict = {}
        self._fwd: dict = {}
        self._bwd: dict = {}

    def member(self, x, y) -> bool:
        k = (x, y)
        r = self._mem.get(k)
        if r is None:
            r = self._member(x, y)
            self._mem[k] = r
        return r

    def forward(self, x) -> tuple:
        r = self._fwd.get(x)
        if r is None:
            r = tuple(dict.fromkeys(self._forward(x)))
            self._fwd[x] = r
        return r

    def backward(self, y) -> tuple:
        r = self._bwd.get(y)
        if r is None:
            r = tuple(dict.fromkeys(self._backward(y)))
            self._bwd[y] = r
        return r

    # defaults in terms of each other
    def _member(self, x, y):
        if self.fwd_finite:
            return y in self.forward(x)
        if self.bwd_finite:
            return x in self.backward(y)
        raise NotImplementedError

    def _forward(self, x):
        raise NotImplementedError

    def _backward(self, y):
        raise NotImplementedError

    # relations with infinite forward images may still enumerate outputs
    # that are bags of a given size
    forward_card: Optional[Callable] = None


class Prim(Rel):
    """Primitive given by forward/backward generators."""

    def __init__(self, name, dom, cod, env, fwd=None, bwd=None, member=None,
                 grade_ok=None, fwd_card=None, card_preserving=False):
        super().__init__(dom, cod, env)
        self.name = name
        self._f, self._b, self._m = fwd, bwd, member
        self.fwd_finite = fwd is not None
        self.bwd_finite = bwd is not None
        self.grade_ok = grade_ok
        self.card_preserving = card_preserving
        if fwd_card is not None:
            self.forward_card = fwd_card

    def _forward(self, x):
        return self._f(x)

    def _backward(self, y):
        return self._b(y)

    def _member(self, x, y):
        if self._m is not None:
            r = self._m(x, y)
        else:
            r = super()._member(x, y)
        if r and self.env.check_grades and self.grade_ok is not None and not self.grade_ok(x, y):
            raise GradeViolation(f"{self.name}: {x!r} -> {y!r} breaks the declared grade bound")
        return r


class Empty(Rel):
    def _member(self, x, y):
        return False

    def _forward(self, x):
        return ()

    def _backward(self, y):
        return ()


class Identity(Rel):
    card_preserving = True

    def _member(self, x, y):
        return x == y

    def _forward(self, x):
        return (x,)

    def _backward(self, y):
        return (y,)


class Proj(Rel):
    def __init__(self, dom, cod, env, side):
        super().__init__(dom, cod, env)
        self.tag = InL if side == 0 else InR

    def _forward(self, x):
        return (x.inner,) if isinstance(x, self.tag) else ()

    def _backward(self, y):
        return (self.tag(y),)


class PairRel(Rel):
    def __init__(self, dom, cod, env, f: Rel, g: Rel):
        super().__init__(dom, cod, env)
        self.f, self.g = f, g
        self.fwd_finite = f.fwd_finite and g.fwd_finite
        self.bwd_finite = f.bwd_finite and g.bwd_finite

    def _member(self, x, y):
        if isinstance(y, InL):
            return self.f.member(x, y.inner)
        if isinstance(y, InR):
            return self.g.member(x, y.inner)
        return False

    def _forward(self, x):
        return [InL(y) for y in self.f.forward(x)] + [InR(y) for y in self.g.forward(x)]

    def _backward(self, y):
        if isinstance(y, InL):
            return self.f.backward(y.inner)
        if isinstance(y, InR):
            return self.g.backward(y.inner)
        return ()


class Union(Rel):
    def __init__(self, dom, cod, env, f: Rel, g: Rel):
        super().__init__(dom, cod, env)
        self.f, self.g = f, g
        self.fwd_finite = f.fwd_finite and g.fwd_finite
        self.bwd_finite = f.bwd_finite and g.bwd_finite
        self.card_preserving = f.card_preserving and g.card_preserving

    def _member(self, x, y):
        return self.f.member(x, y) or self.g.member(x, y)

    def _forward(self, x):
        return self.f.forward(x) + self.g.forward(x)

    def _backward(self, y):
        return self.f.backward(y) + self.g.backward(y)


class TensorRel(Rel):
    def __init__(self, dom, cod, env, f: Rel, g: Rel):
        super().__init__(dom, cod, env)
        self.f, self.g = f, g
        self.fwd_finite = f.fwd_finite and g.fwd_finite
        self.bwd_finite = f.bwd_finite and g.bwd_finite

    def _member(self, x, y):
        return self.f.member(x.left, y.left) and self.g.member(x.right, y.right)

    def _forward(self, x):
        return [PairT(a, b) for a in self.f.forward(x.left) for b in self.g.forward(x.right)]

    def _backward(self, y):
        return [PairT(a, b) for a in self.f.backward(y.left) for b in self.g.backward(y.right)]


def _matchings(xs: tuple, ys: tuple, rel_member) -> bool:
    """Is there a bijection xs -> ys with every pair related?"""
    if not xs:
        return not ys
    x, rest = xs[0], xs[1:]
    tried = set()
    for j, y in enumerate(ys):
        if y in tried:
            continue
        tried.add(y)
        if rel_member(x, y) and _matchings(rest, ys[:j] + ys[j + 1:], rel_member):
            return True
    return False


def _bags_from_choices(choices: list) -> list:
    if any(len(c) == 0 for c in choices):
        return []
    return [Bag(combo) for combo in product(*choices)]


class BangRel(Rel):
    """S(f): bags related by some matching of their members."""
    card_preserving = True

    def __init__(self, dom, cod, env, f: Rel):
        super().__init__(dom, cod, env)
        self.f = f
        self.fwd_finite = f.fwd_finite
        self.bwd_finite = f.bwd_finite

    def _member(self, x, y):
        if len(x) != len(y):
            return False
        return _matchings(x.items, y.items, self.f.member)

    def _forward(self, x):
        return _bags_from_choices([self.f.forward(a) for a in x.items])

    def _backward(self, y):
        return _bags_from_choices([self.f.backward(b) for b in y.items])


class Chain(Rel):
    """Flattened composite r1 ; r2 ; ... ; rn."""

    def __init__(self, dom, cod, env, nodes: list):
        super().__init__(dom, cod, env)
        self.nodes = nodes
        self.fwd_finite = all(n.fwd_finite for n in nodes)
        self.bwd_finite = all(n.bwd_finite for n in nodes)
        self.card_preserving = all(n.card_preserving for n in nodes)
        self._seg: dict = {}

    def _forward(self, x):
        cur = {x: None}
        for n in self.nodes:
            nxt = {}
            for z in cur:
                for w in n.forward(z):
                    nxt[w] = None
            cur = nxt
        return cur

    def _backward(self, y):
        cur = {y: None}
        for n in reversed(self.nodes):
            nxt = {}
            for z in cur:
                for w in n.backward(z):
                    nxt[w] = None
            cur = nxt
        return cur

    def _member(self, x, y):
        return self.seg(0, len(self.nodes) - 1, x, y)

    def seg(self, i, j, x, y) -> bool:
        if i == j:
            return self.nodes[i].member(x, y)
        key = (i, j, x, y)
        r = self._seg.get(key)
        if r is not None:
            return r
        r = self._seg_search(i, j, x, y)
        self._seg[key] = r
        return r

    def _seg_search(self, i, j, x, y):
        nodes = self.nodes
        if nodes[j].bwd_finite:
            return any(self.seg(i, j - 1, x, z) for z in nodes[j].backward(y))
        if nodes[i].fwd_finite:
            return any(self.seg(i + 1, j, z, y) for z in nodes[i].forward(x))
        if (nodes[i].forward_card is not None and isinstance(y, Bag)
                and all(n.card_preserving for n in nodes[i + 1:j + 1])):
            return any(self.seg(i + 1, j, z, y) for z in nodes[i].forward_card(x, len(y)))
        # nothing bounds the intermediate: capped enumeration, flagged
        self.env.fallbacks += 1
        return any(self.nodes[i].member(x, z) and self.seg(i + 1, j, z, y)
                   for z in self.env.enumerate(nodes[i].cod, self.env.fallback_cap))
