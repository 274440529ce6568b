"""FinRel: finite sets and relations with the bag exponential."""
from __future__ import annotations

from typing import Callable, Optional

from .. import expr as E
from ..expr import Bang, Base, ObjExpr, Prod, Tensor, TensorUnit, Terminal
from ..model import Budget, RelationalModel, UnsupportedConstruct
from . import relations as R
from .elements import Bag, Element, InL, InR, PairT, Star, bag_minus, sub_bags
from .enum import Enumerator, partitions_with_k_parts

DEFAULT_CARRIERS = {"A": ["a", "b"], "B": ["b0"], "C": ["c0", "c1"]}

DELTA_VARIANTS = ("standard", "no-empty-parts")


# ------------------------------------------------------------ signatures

def _is(o, cls):
    return isinstance(o, cls)


def _sig_eps(d, c):
    return _is(d, Bang) and d.inner == c


def _sig_delta(d, c):
    return _is(d, Bang) and c == Bang(d)


def _sig_Delta(d, c):
    return _is(d, Bang) and c == Tensor(d, d)


def _sig_e(d, c):
    return _is(d, Bang) and _is(c, TensorUnit)


def _sig_dt(d, c):
    return _is(d, Tensor) and _is(c, Bang) and d.right == c and d.left == c.inner


def _sig_s2(d, c):
    return (_is(d, Bang) and _is(d.inner, Prod) and
            c == Tensor(Bang(d.inner.left), Bang(d.inner.right)))


def _sig_s0(d, c):
    return d == Bang(Terminal()) and _is(c, TensorUnit)


def _sig_sing(d, c):
    return c == Bang(d)


def _flip(sig):
    return lambda d, c: sig(c, d)


def _sig_ax(d, c):
    # A x (B x C) -> (A x B) x C
    return (_is(d, Prod) and _is(d.right, Prod) and
            c == Prod(Prod(d.left, d.right.left), d.right.right))


def _sig_cx(d, c):
    return _is(d, Prod) and c == Prod(d.right, d.left)


def _sig_diag(d, c):
    return c == Prod(d, d)


def _sig_codiag(d, c):
    return d == Prod(c, c)


def _sig_inl(d, c):
    return _is(c, Prod) and c.left == d


def _sig_inr(d, c):
    return _is(c, Prod) and c.right == d


def _sig_at(d, c):
    return (_is(d, Tensor) and _is(d.right, Tensor) and
            c == Tensor(Tensor(d.left, d.right.left), d.right.right))


def _sig_ct(d, c):
    return _is(d, Tensor) and c == Tensor(d.right, d.left)


def _sig_uL(d, c):
    return d == Tensor(TensorUnit(), c)


def _sig_uR(d, c):
    return d == Tensor(c, TensorUnit())


# ------------------------------------------------------------ behaviours

def _one(fn):
    """Wrap a partial function into a generator of 0 or 1 results."""
    def g(x):
        y = fn(x)
        return () if y is None else (y,)
    return g


def _ax(x):
    if isinstance(x, InL):
        return InL(InL(x.inner))
    i = x.inner
    return InL(InR(i.inner)) if isinstance(i, InL) else InR(i.inner)


def _ax_inv(y):
    if isinstance(y, InR):
        return InR(InR(y.inner))
    i = y.inner
    return InL(i.inner) if isinstance(i, InL) else InR(InL(i.inner))


def _cx(x):
    return InR(x.inner) if isinstance(x, InL) else InL(x.inner)


def _at(x):
    return PairT(PairT(x.left, x.right.left), x.right.right)


def _at_inv(y):
    return PairT(y.left.left, PairT(y.left.right, y.right))


def _ct(x):
    return PairT(x.right, x.left)


def _s2(m):
    return PairT(Bag(z.inner for z in m.items if isinstance(z, InL)),
                 Bag(z.inner for z in m.items if isinstance(z, InR)))


def _s2_inv(p):
    return Bag([InL(a) for a in p.left.items] + [InR(b) for b in p.right.items])


def _eps(m):
    return m.items[0] if len(m) == 1 else None


def _union(M):
    out = []
    for part in M.items:
        out.extend(part.items)
    return Bag(out)


def _dt_bwd(m):
    return [PairT(a, bag_minus(m, [a])) for a in dict.fromkeys(m.items)]


def _dgrade(diff):
    return lambda x, y: y.grade - x.grade == diff


def _prim_table(variant: str) -> dict:
    allow_empty = variant == "standard"

    def delta_member(m, M):
        if not all(isinstance(p, Bag) for p in M.items):
            return False
        if not allow_empty and any(len(p) == 0 for p in M.items):
            return False
        return _union(M) == m

    def delta_bwd(M):
        if not allow_empty and any(len(p) == 0 for p in M.items):
            return ()
        return (_union(M),)

    def delta_card(m, k):
        return partitions_with_k_parts(m, k, allow_empty)

    # name -> (signature, kwargs for relations.Prim)
    return {
        "eps": (_sig_eps, dict(fwd=_one(_eps), bwd=lambda a: (Bag([a]),), grade_ok=_dgrade(-1))),
        "delta": (_sig_delta, dict(member=delta_member, bwd=delta_bwd, fwd_card=delta_card,
                                   grade_ok=lambda x, y: y.grade == x.grade + len(y))),
        "Delta": (_sig_Delta, dict(fwd=lambda m: tuple(PairT(l, r) for l, r in sub_bags(m)), bwd=lambda p: (p.left.plus(p.right),),
                                   grade_ok=_dgrade(1))),
        "e": (_sig_e, dict(fwd=lambda m: (Star(),) if len(m) == 0 else (),
                           bwd=lambda s: (Bag(),), grade_ok=_dgrade(0))),
        "d_tensor": (_sig_dt, dict(fwd=lambda p: (p.right.add(p.left),), bwd=_dt_bwd,
                                   grade_ok=_dgrade(0))),
        "s2": (_sig_s2, dict(fwd=_one(_s2), bwd=_one(_s2_inv),
                             grade_ok=lambda x, y: y.grade == x.grade + 1 - len(x))),
        "s2inv": (_flip(_sig_s2), dict(fwd=_one(_s2_inv), bwd=_one(_s2),
                                       grade_ok=lambda x, y: x.grade == y.grade + 1 - len(y))),
        "s0": (_sig_s0, dict(fwd=lambda m: (Star(),), bwd=lambda s: (Bag(),), grade_ok=_dgrade(0))),
        "s0inv": (_flip(_sig_s0), dict(fwd=lambda s: (Bag(),), bwd=lambda m: (Star(),),
                                       grade_ok=_dgrade(0))),
        "sing": (_sig_sing, dict(fwd=lambda a: (Bag([a]),), bwd=_one(_eps), grade_ok=_dgrade(1))),
        "a_x": (_sig_ax, dict(fwd=_one(_ax), bwd=_one(_ax_inv),
                              grade_ok=lambda x, y: abs(y.grade - x.grade) <= 1)),
        "a_x_inv": (_flip(_sig_ax), dict(fwd=_one(_ax_inv), bwd=_one(_ax),
                                         grade_ok=lambda x, y: abs(y.grade - x.grade) <= 1)),
        "c_x": (_sig_cx, dict(fwd=_one(_cx), bwd=_one(_cx), grade_ok=_dgrade(0))),
        "diag": (_sig_diag, dict(fwd=lambda a: (InL(a), InR(a)), bwd=lambda y: (y.inner,),
                                 grade_ok=_dgrade(1))),
        "codiag": (_sig_codiag, dict(fwd=lambda y: (y.inner,), bwd=lambda a: (InL(a), InR(a)),
                                     grade_ok=_dgrade(-1))),
        "inl": (_sig_inl, dict(fwd=lambda a: (InL(a),),
                               bwd=lambda y: (y.inner,) if isinstance(y, InL) else (),
                               grade_ok=_dgrade(1))),
        "inr": (_sig_inr, dict(fwd=lambda a: (InR(a),),
                               bwd=lambda y: (y.inner,) if isinstance(y, InR) else (),
                               grade_ok=_dgrade(1))),
        "a_tensor": (_sig_at, dict(fwd=_one(_at), bwd=_one(_at_inv), grade_ok=_dgrade(0))),
        "a_tensor_inv": (_flip(_sig_at), dict(fwd=_one(_at_inv), bwd=_one(_at), grade_ok=_dgrade(0))),
        "c_tensor": (_sig_ct, dict(fwd=_one(_ct), bwd=_one(_ct), grade_ok=_dgrade(0))),
        "uL": (_sig_uL, dict(fwd=lambda p: (p.right,), bwd=lambda a: (PairT(Star(), a),),
                             grade_ok=_dgrade(-1))),
        "uR": (_sig_uR, dict(fwd=lambda p: (p.left,), bwd=lambda a: (PairT(a, Star()),),
                             grade_ok=_dgrade(-1))),
        "uL_inv": (_flip(_sig_uL), dict(fwd=lambda a: (PairT(Star(), a),), bwd=lambda p: (p.right,),
                                        grade_ok=_dgrade(1))),
        "uR_inv": (_flip(_sig_uR), dict(fwd=lambda a: (PairT(a, Star()),), bwd=lambda p: (p.left,),
                                        grade_ok=_dgrade(1))),
    }


STRUCTURAL = ("a_x", "a_x_inv", "c_x", "diag", "codiag", "inl", "inr", "sing",
              "a_tensor", "a_tensor_inv", "c_tensor", "uL", "uR", "uL_inv", "uR_inv",
              "eps", "delta", "Delta", "e", "d_tensor", "s2", "s2inv", "s0", "s0inv")


class TableRel:
    """A generated relation given by an explicit finite set of pairs, or by
    a predicate (then backward images may be infinite)."""

    def __init__(self, pairs=None, predicate=None, fwd=None, bwd=None):
        self.pairs = frozenset(pairs) if pairs is not None else None
        self.predicate = predicate
        self.fwd, self.bwd = fwd, bwd
        if self.pairs is not None:
            f, b = {}, {}
            for x, y in sorted(self.pairs, key=lambda p: (p[0].order(), p[1].order())):
                f.setdefault(x, []).append(y)
                b.setdefault(y, []).append(x)
            self.fwd = lambda x: f.get(x, ())
            self.bwd = lambda y: b.get(y, ())

    def kwargs(self):
        kw = dict(fwd=self.fwd, bwd=self.bwd)
        if self.pairs is not None:
            pairs = self.pairs
            kw["member"] = lambda x, y: (x, y) in pairs
        elif self.predicate is not None:
            kw["member"] = self.predicate
        return kw


class FinRel(RelationalModel):
    name = "finrel"
    capabilities = frozenset({"cartesian", "additive", "modality", "coalgebra", "tensor",
                              "tensor-differential", "force"})

    def __init__(self, carriers: Optional[dict] = None, delta_variant: str = "standard",
                 check_grades: bool = False, _shared=None):
        if delta_variant not in DELTA_VARIANTS:
            raise ValueError(f"unknown delta variant {delta_variant!r}")
        self.carriers = dict(carriers or DEFAULT_CARRIERS)
        self.delta_variant = delta_variant
        self.check_grades = check_grades
        self.enumerate = _shared or Enumerator(self.carriers)
        self.table = _prim_table(delta_variant)
        self.generated: dict[str, tuple] = {}
        self._compiled: dict = {}
        self._envs: dict = {}
        if delta_variant != "standard":
            self.name = f"finrel[{delta_variant}]"

    # -------------------------------------------------------- registry
    def extend(self, generated: dict) -> "FinRel":
        """Copy sharing enumeration caches, with extra generated relations
        (name -> (dom, cod, TableRel))."""
        m = FinRel(self.carriers, self.delta_variant, self.check_grades, _shared=self.enumerate)
        m.name = self.name
        m.generated = {**self.generated, **generated}
        return m

    def knows(self, name, dom, cod):
        if name in self.generated:
            d, c, _ = self.generated[name]
            return (d, c) == (dom, cod)
        entry = self.table.get(name)
        return entry is not None and entry[0](dom, cod) and self._objects_ok(dom) and self._objects_ok(cod)

    def _objects_ok(self, o):
        if isinstance(o, Base):
            return o.name in self.carriers
        if isinstance(o, (Prod, Tensor)):
            return self._objects_ok(o.left) and self._objects_ok(o.right)
        if isinstance(o, Bang):
            return self._objects_ok(o.inner)
        return True

    # -------------------------------------------------------- elements
    def dom_elements(self, o, cap):
        return self.enumerate(o, cap)

    def cod_elements(self, o, cap):
        return self.enumerate(o, cap)

    # -------------------------------------------------------- relations
    def _env(self, budget: Budget) -> R.Env:
        cap = budget.fallback_cap()
        env = self._envs.get(cap)
        if env is None:
            env = R.Env(self.enumerate, cap, self.check_grades)
            self._envs[cap] = env
            self._compiled[cap] = {}
        return env

    def fallback_hits(self):
        return sum(env.fallbacks for env in self._envs.values())

    def relation(self, e: E.MorExpr, budget: Budget):
        env = self._env(budget)
        return self._compile(e, env, self._compiled[budget.fallback_cap()])

    def _compile(self, e, env, cache):
        r = cache.get(e)
        if r is not None:
            return r
        d, c = E.typecheck(e)
        if isinstance(e, E.Comp):
            nodes = []
            for part in _flatten(e):
                sub = self._compile(part, env, cache)
                if isinstance(sub, R.Chain):
                    nodes.extend(sub.nodes)
                else:
                    nodes.append(sub)
            r = R.Chain(d, c, env, nodes)
        elif isinstance(e, E.Id):
            r = R.Identity(d, c, env)
        elif isinstance(e, (E.Zero, E.ToTerminal)):
            r = R.Empty(d, c, env)
        elif isinstance(e, E.Proj0):
            r = R.Proj(d, c, env, 0)
        elif isinstance(e, E.Proj1):
            r = R.Proj(d, c, env, 1)
        elif isinstance(e, E.Pair):
            r = R.PairRel(d, c, env, self._compile(e.f, env, cache), self._compile(e.g, env, cache))
        elif isinstance(e, E.Plus):
            r = R.Union(d, c, env, self._compile(e.f, env, cache), self._compile(e.g, env, cache))
        elif isinstance(e, E.TensorHom):
            r = R.TensorRel(d, c, env, self._compile(e.f, env, cache), self._compile(e.g, env, cache))
        elif isinstance(e, E.BangHom):
            r = R.BangRel(d, c, env, self._compile(e.f, env, cache))
        elif isinstance(e, E.DiffD):
            raise UnsupportedConstruct("finrel has no differential combinator at the base level")
        elif isinstance(e, E.Prim):
            if e.name in self.generated:
                r = R.Prim(e.name, d, c, env, **self.generated[e.name][2].kwargs())
            elif e.name in self.table and self.table[e.name][0](d, c):
                r = R.Prim(e.name, d, c, env, **self.table[e.name][1])
            else:
                raise UnsupportedConstruct(f"unknown primitive {e.name}")
        else:
            raise TypeError(e)
        cache[e] = r
        return r

    def kit(self):
        from ..suites.kits import BaseKit
        return BaseKit(self)


def _flatten(e):
    if isinstance(e, E.Comp):
        return _flatten(e.f) + _flatten(e.g)
    return [e]


def member_prim(model: FinRel, name: str, x: Element, y: Element, dom: ObjExpr, cod: ObjExpr) -> bool:
    return model.member(E.Prim(name, dom, cod), x, y)
