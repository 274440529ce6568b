"""Per-model structure used by suite templates.

A kit knows the fixture objects, how to state linearity in its model and how
to generate seeded random maps. ``gen`` extends the kit's model in place, so
read ``kit.model`` after building a suite's equations.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .. import expr as E
from ..expr import Bang, Base, BangHom, Comp, Id, Pair, Prim, Prod, Proj0, Proj1, Zero, comp, prod_hom
from ..finrel import Bag, InL, InR, TableRel
from ..polydiff import Poly, PolyMap
from ..constructions import formulas as D

A, B, C = Base("A"), Base("B"), Base("C")


class Kit:
    level = "abstract"

    def __init__(self, model, seed: int = 0):
        self.model = model
        self.seed = seed
        self.A, self.B, self.C = A, B, C

    def rng(self, name):
        return random.Random(f"{self.seed}:{name}")

    def gen(self, name, dom, cod, kind="any"):
        raise NotImplementedError

    # linearity statements (storage sense by default)
    def linear_eq(self, f):
        x, y = E.typecheck(f)
        return Comp(D.eps(x), f), Comp(BangHom(f), D.eps(y))

    def linear2_eq(self, f):
        d, y = E.typecheck(f)
        a, x = d.left, d.right
        return (Comp(prod_hom(Id(a), D.eps(x)), f),
                comp(D.theta(a, x), BangHom(f), D.eps(y)))

    def linear1_eq(self, f):
        d, y = E.typecheck(f)
        a, x = d.left, d.right
        return (Comp(prod_hom(D.eps(a), Id(x)), f),
                comp(D.theta_prime(a, x), BangHom(f), D.eps(y)))

    # storage-level comonad data
    def eps(self, a):
        return D.eps(a)

    def delta(self, a):
        return D.delta(a)

    def psi(self, a, x):
        return D.psi_storage(a, x)

    def c_x(self, a, b):
        return D.c_x(a, b)

    def a_x(self, a, b, c):
        return D.a_x(a, b, c)


def _pick(rng, xs, ys, density):
    return [(x, y) for x in xs for y in ys if rng.random() < density]


class BaseKit(Kit):
    """FinRel at the base level: maps are relations."""
    level = "base"

    def gen(self, name, dom, cod, kind="any", density=0.35):
        rng = self.rng(name)
        xs = self.model.enumerate(dom, 2)
        ys = self.model.enumerate(cod, 2)
        t = TableRel(pairs=_pick(rng, xs, ys, density))
        self.model = self.model.extend({name: (dom, cod, t)})
        return Prim(name, dom, cod)

    def eps(self, a):
        return D.b_eps(a)

    def delta(self, a):
        return D.b_delta(a)

    def psi(self, a, x):
        return D.psi_monoidal(a, x)

    def c_x(self, a, b):
        return Prim("c_x", Prod(a, b), Prod(b, a))

    def a_x(self, a, b, c):
        return Prim("a_x", Prod(a, Prod(b, c)), Prod(Prod(a, b), c))


def _side_counts(m):
    return (sum(1 for z in m.items if isinstance(z, InL)),
            sum(1 for z in m.items if isinstance(z, InR)))


class StorageKit(Kit):
    """coKleisli(FinRel): maps A -> B are relations S(A) -> B.

    kinds: any; linear (eps ; h); linear2 (A x X -> Y, every related bag has
    exactly one X part); bilinear (exactly one part on each side)."""
    level = "storage"

    def gen(self, name, dom, cod, kind="any", density=0.3):
        rng = self.rng(name)
        base = self.model.base
        if kind == "linear":
            xs = base.enumerate(dom, 2)
            ys = base.enumerate(cod, 2)
            t = TableRel(pairs=_pick(rng, xs, ys, density))
            m = self.model.extend_base({name + "_h": (dom, cod, t)})
            self.model, p = m.lift(name, Prim(name + "_h", dom, cod))
            return p
        # bags with a part on both sides start at grade 5 (biproduct injections)
        cap = {"any": 3, "linear2": 5, "bilinear": 5}.get(kind, 7)
        xs = base.enumerate(Bang(dom), cap)
        if kind == "linear2":
            xs = [x for x in xs if _side_counts(x)[1] == 1]
        elif kind == "bilinear":
            xs = [x for x in xs if _side_counts(x) == (1, 1)]
        elif kind == "linear2_ctx":
            xs = [x for x in xs if _inner_counts(x)[1] == 1]
        elif kind == "bilinear_ctx":
            xs = [x for x in xs if _inner_counts(x) == (1, 1)]
        ys = base.enumerate(cod, 2)
        t = TableRel(pairs=_pick(rng, xs, ys, density))
        self.model = self.model.extend(generated={name: (dom, cod, t)})
        return Prim(name, dom, cod)


def _inner_counts(m):
    # for a bag over C x (X x Y): how many X parts and Y parts
    inner = [z.inner for z in m.items if isinstance(z, InR)]
    return (sum(1 for z in inner if isinstance(z, InL)),
            sum(1 for z in inner if isinstance(z, InR)))


def _rand_coeff(rng):
    return Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))


def block_poly(rng, blocks, degs, n_terms):
    """Random polynomial in variables split into blocks; degs[i] fixes the
    total degree in block i (None = anything up to 3)."""
    n = sum(blocks)
    terms = {}
    for _ in range(n_terms):
        e = [0] * n
        off = 0
        for size, deg in zip(blocks, degs):
            k = rng.randint(0, 3) if deg is None else deg
            for _ in range(k if size else 0):
                e[off + rng.randrange(size)] += 1
            off += size
        if any(deg and not size for size, deg in zip(blocks, degs)):
            continue
        key = tuple(e)
        terms[key] = terms.get(key, 0) + _rand_coeff(rng)
    return Poly(n, terms)


class PolyKit(Kit):
    level = "poly"

    def gen(self, name, dom, cod, kind="any", max_terms=4):
        rng = self.rng(name)
        m = self.model
        if kind in ("linear2", "bilinear"):
            blocks = [m.dim(dom.left), m.dim(dom.right)]
            degs = [None, 1] if kind == "linear2" else [1, 1]
        elif kind in ("linear2_ctx", "bilinear_ctx"):
            blocks = [m.dim(dom.left), m.dim(dom.right.left), m.dim(dom.right.right)]
            degs = [None, None, 1] if kind == "linear2_ctx" else [None, 1, 1]
        else:
            blocks = [m.dim(dom)]
            degs = [1] if kind == "linear" else [None]
        comps = tuple(block_poly(rng, blocks, degs, rng.randint(1, max_terms))
                      for _ in range(m.dim(cod)))
        self.model = m.extend({name: PolyMap(sum(blocks), m.dim(cod), comps)})
        return Prim(name, dom, cod)

    def linear_eq(self, f):
        x, _ = E.typecheck(f)
        return E.DiffD(f), Comp(Proj0(x, x), f)

    def linear2_eq(self, f):
        d, _ = E.typecheck(f)
        a, x = d.left, d.right
        return diff_in_second(f), Comp(prod_hom(Id(a), Proj0(x, x)), f)

    def linear1_eq(self, f):
        d, _ = E.typecheck(f)
        a, x = d.left, d.right
        return diff_in_first(f), Comp(prod_hom(Proj0(a, a), Id(x)), f)


def diff_in_second(f):
    """Partial derivative in the second argument: A x (X x X) -> Y."""
    d, _ = E.typecheck(f)
    a, x = d.left, d.right
    xx = Prod(x, x)
    q0, q1 = Proj0(a, xx), Proj1(a, xx)
    tangent = Pair(Zero(Prod(a, xx), a), Comp(q1, Proj0(x, x)))
    point = Pair(q0, Comp(q1, Proj1(x, x)))
    return Comp(Pair(tangent, point), E.DiffD(f))


def diff_in_first(f):
    """Partial derivative in the first argument: (A x A) x X -> Y."""
    d, _ = E.typecheck(f)
    a, x = d.left, d.right
    aa = Prod(a, a)
    q0, q1 = Proj0(aa, x), Proj1(aa, x)
    tangent = Pair(Comp(q0, Proj0(a, a)), Zero(Prod(aa, x), x))
    point = Pair(Comp(q0, Proj1(a, a)), q1)
    return Comp(Pair(tangent, point), E.DiffD(f))


class SliceKit(Kit):
    """Generated slice maps X -> Y are underlying maps ctx x X -> Y; a
    slice-linear map is one linear in its second argument."""

    def __init__(self, model, seed=0):
        super().__init__(model, seed)
        self.inner = model.under.kit()
        self.inner.seed = seed
        self.level = "slice-" + self.inner.level

    def gen(self, name, dom, cod, kind="any"):
        inner_kind = {"linear": "linear2", "any": "any", "linear2": "linear2_ctx",
                      "bilinear": "bilinear_ctx"}.get(kind)
        if inner_kind is None:
            raise ValueError(f"slice kit cannot generate {kind} maps")
        self.inner.model = self.model.under
        g = self.inner.gen(name + "_u", Prod(self.model.ctx, dom), cod, inner_kind)
        m = self.model.with_under(self.inner.model)
        self.model, p = m.register(name, dom, cod, g)
        return p

    # in a differential slice, linearity is stated with D as in the under model
    def linear_eq(self, f):
        if self.inner.level == "poly":
            return PolyKit.linear_eq(self, f)
        return super().linear_eq(f)

    def linear2_eq(self, f):
        if self.inner.level == "poly":
            return PolyKit.linear2_eq(self, f)
        return super().linear2_eq(f)

    def linear1_eq(self, f):
        if self.inner.level == "poly":
            return PolyKit.linear1_eq(self, f)
        return super().linear1_eq(f)


class SplitKit(Kit):
    def __init__(self, model, seed=0):
        super().__init__(model, seed)
        self.inner = model.under.kit()
        self.inner.seed = seed
        self.level = "split-" + self.inner.level

    def gen(self, name, dom, cod, kind="any"):
        m = self.model
        self.inner.model = m.under
        g = self.inner.gen(name + "_u", m.U(dom), m.U(cod), kind)
        m = m.with_under(self.inner.model)
        f = comp(m.E(dom), g, m.E(cod))
        self.model, p = m.add_map(name, dom, cod, f)
        return p
