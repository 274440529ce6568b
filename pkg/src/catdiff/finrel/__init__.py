"""Finite relations with the multiset exponential."""
from .elements import Bag, Element, InL, InR, PairT, Pt, Star, to_json
from .enum import Enumerator, UnknownBase, nonempty_partitions, partitions_with_k_parts
from .model import DEFAULT_CARRIERS, DELTA_VARIANTS, FinRel, TableRel, member_prim

__all__ = ["Bag", "Element", "InL", "InR", "PairT", "Pt", "Star", "to_json", "Enumerator",
           "UnknownBase", "nonempty_partitions", "partitions_with_k_parts", "DEFAULT_CARRIERS",
           "DELTA_VARIANTS", "FinRel", "TableRel", "member_prim"]
