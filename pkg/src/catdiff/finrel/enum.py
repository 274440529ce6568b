"""Graded enumeration of relational objects and multiset partitions."""
from __future__ import annotations

from functools import lru_cache

from ..expr import Base, Bang, ObjExpr, Prod, Tensor, TensorUnit, Terminal
from .elements import Bag, Element, InL, InR, PairT, Pt, Star


class UnknownBase(KeyError):
    pass


class Enumerator:
    def __init__(self, carriers: dict[str, list[str]]):
        self.carriers = {k: tuple(v) for k, v in carriers.items()}
        self._memo: dict = {}

    def __call__(self, o: ObjExpr, cap: int) -> list[Element]:
        key = (o, cap)
        got = self._memo.get(key)
        if got is None:
            got = sorted(set(self._gen(o, cap)), key=Element.order)
            self._memo[key] = got
        return got

    def _gen(self, o, cap):
        if cap < 1:
            return []
        if isinstance(o, Base):
            if o.name not in self.carriers:
                raise UnknownBase(o.name)
            return [Pt(lab) for lab in self.carriers[o.name]]
        if isinstance(o, Terminal):
            return []
        if isinstance(o, TensorUnit):
            return [Star()]
        if isinstance(o, Prod):
            return ([InL(x) for x in self(o.left, cap - 1)]
                    + [InR(x) for x in self(o.right, cap - 1)])
        if isinstance(o, Tensor):
            out = []
            for x in self(o.left, cap - 1):
                for y in self(o.right, cap - x.grade):
                    out.append(PairT(x, y))
            return out
        if isinstance(o, Bang):
            inner = self(o.inner, cap - 1)
            out = []

            def go(start, chosen, budget):
                out.append(Bag(chosen))
                for i in range(start, len(inner)):
                    g = inner[i].grade
                    if g <= budget:
                        go(i, chosen + [inner[i]], budget - g)

            go(0, [], cap - 1)
            return out
        raise TypeError(o)


@lru_cache(maxsize=None)
def nonempty_partitions(m: Bag) -> tuple:
    """All multisets of non-empty bags whose union is m, as tuples of parts."""
    if len(m) == 0:
        return ((),)
    first, rest = m.items[0], Bag(m.items[1:])
    from .elements import bag_minus, sub_bags
    seen = set()
    out = []
    for with_first, _ in sub_bags(rest):
        part = with_first.add(first)
        remaining = bag_minus(rest, with_first.items)
        for tail in nonempty_partitions(remaining):
            parts = tuple(sorted((part,) + tail, key=Element.order))
            if parts not in seen:
                seen.add(parts)
                out.append(parts)
    return tuple(out)


def partitions_with_k_parts(m: Bag, k: int, allow_empty: bool = True) -> list[Bag]:
    """Bags M of exactly k bags with union m."""
    out = []
    for parts in nonempty_partitions(m):
        if len(parts) == k or (allow_empty and len(parts) < k):
            out.append(Bag(parts + (Bag(),) * (k - len(parts))))
    return out
