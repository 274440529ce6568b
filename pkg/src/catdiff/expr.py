"""Object and morphism expressions shared by every model.

Composition is stored in diagram order: ``Comp(f, g)`` is "f then g".
The textual grammar used by :func:`pretty` and :func:`parse` is documented
in ``docs/grammar.md``.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, fields
from typing import Callable, Iterator, Optional


class ExprError(Exception):
    pass


class DomainMismatch(ExprError):
    def __init__(self, sub, expected, found):
        self.sub, self.expected, self.found = sub, expected, found
        super().__init__(f"in {pretty(sub)}: expected {pretty_obj(expected)}, found {pretty_obj(found)}")


class UnknownPrimitive(ExprError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown primitive {name!r}")


class ParseError(ExprError):
    pass


class _Node:
    """Immutable tree node with a cached structural key.

    Equality and hashing go through the key so that deep trees are cheap
    to use as dictionary keys.
    """

    def _key(self):
        k = self.__dict__.get("_k")
        if k is None:
            k = (type(self).__name__,) + tuple(getattr(self, f.name) for f in fields(self))
            object.__setattr__(self, "_k", k)
            object.__setattr__(self, "_h", hash(k))
        return k

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, _Node):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            self._key()
            h = self.__dict__["_h"]
        return h

    def __repr__(self):
        return pretty_obj(self) if isinstance(self, ObjExpr) else pretty(self, typed=True)


# ---------------------------------------------------------------- objects

class ObjExpr(_Node):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class Base(ObjExpr):
    name: str


@dataclass(frozen=True, eq=False, repr=False)
class Terminal(ObjExpr):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class Prod(ObjExpr):
    left: ObjExpr
    right: ObjExpr


@dataclass(frozen=True, eq=False, repr=False)
class TensorUnit(ObjExpr):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class Tensor(ObjExpr):
    left: ObjExpr
    right: ObjExpr


@dataclass(frozen=True, eq=False, repr=False)
class Bang(ObjExpr):
    inner: ObjExpr


# -------------------------------------------------------------- morphisms

class MorExpr(_Node):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class Id(MorExpr):
    o: ObjExpr


@dataclass(frozen=True, eq=False, repr=False)
class Comp(MorExpr):
    f: MorExpr
    g: MorExpr


@dataclass(frozen=True, eq=False, repr=False)
class Pair(MorExpr):
    f: MorExpr
    g: MorExpr


@dataclass(frozen=True, eq=False, repr=False)
class Proj0(MorExpr):
    a: ObjExpr
    b: ObjExpr


@dataclass(frozen=True, eq=False, repr=False)
class Proj1(MorExpr):
    a: ObjExpr
    b: ObjExpr


@dataclass(frozen=True, eq=False, repr=False)
class ToTerminal(MorExpr):
    o: ObjExpr


@dataclass(frozen=True, eq=False, repr=False)
class Zero(MorExpr):
    dom: ObjExpr
    cod: ObjExpr


@dataclass(frozen=True, eq=False, repr=False)
class Plus(MorExpr):
    f: MorExpr
    g: MorExpr


@dataclass(frozen=True, eq=False, repr=False)
class DiffD(MorExpr):
    f: MorExpr


@dataclass(frozen=True, eq=False, repr=False)
class BangHom(MorExpr):
    f: MorExpr


@dataclass(frozen=True, eq=False, repr=False)
class TensorHom(MorExpr):
    f: MorExpr
    g: MorExpr


@dataclass(frozen=True, eq=False, repr=False)
class Prim(MorExpr):
    name: str
    dom: ObjExpr
    cod: ObjExpr


# ----------------------------------------------------------------- typing

def _typ(e: MorExpr) -> tuple[ObjExpr, ObjExpr]:
    t = e.__dict__.get("_t")
    if t is not None:
        return t
    if isinstance(e, Id):
        t = (e.o, e.o)
    elif isinstance(e, Comp):
        (a, b), (c, d) = _typ(e.f), _typ(e.g)
        if b != c:
            raise DomainMismatch(e, b, c)
        t = (a, d)
    elif isinstance(e, Pair):
        (a, b), (c, d) = _typ(e.f), _typ(e.g)
        if a != c:
            raise DomainMismatch(e, a, c)
        t = (a, Prod(b, d))
    elif isinstance(e, Proj0):
        t = (Prod(e.a, e.b), e.a)
    elif isinstance(e, Proj1):
        t = (Prod(e.a, e.b), e.b)
    elif isinstance(e, ToTerminal):
        t = (e.o, Terminal())
    elif isinstance(e, Zero):
        t = (e.dom, e.cod)
    elif isinstance(e, Plus):
        tf, tg = _typ(e.f), _typ(e.g)
        if tf[0] != tg[0]:
            raise DomainMismatch(e, tf[0], tg[0])
        if tf[1] != tg[1]:
            raise DomainMismatch(e, tf[1], tg[1])
        t = tf
    elif isinstance(e, DiffD):
        a, b = _typ(e.f)
        t = (Prod(a, a), b)
    elif isinstance(e, BangHom):
        a, b = _typ(e.f)
        t = (Bang(a), Bang(b))
    elif isinstance(e, TensorHom):
        (a, b), (c, d) = _typ(e.f), _typ(e.g)
        t = (Tensor(a, c), Tensor(b, d))
    elif isinstance(e, Prim):
        t = (e.dom, e.cod)
    else:
        raise TypeError(f"not a morphism expression: {e!r}")
    object.__setattr__(e, "_t", t)
    return t


def prims(e: MorExpr) -> Iterator[Prim]:
    """Every Prim node of ``e`` (with repetition, pre-order)."""
    stack = [e]
    while stack:
        n = stack.pop()
        if isinstance(n, Prim):
            yield n
        elif isinstance(n, (Comp, Pair, Plus, TensorHom)):
            stack.append(n.g)
            stack.append(n.f)
        elif isinstance(n, (DiffD, BangHom)):
            stack.append(n.f)


def typecheck(e: MorExpr, known: Optional[Callable[[str, ObjExpr, ObjExpr], bool]] = None):
    """Return ``(dom, cod)`` of ``e``.

    ``known`` is the model registry test for primitives; when given, an
    unregistered primitive raises UnknownPrimitive.
    """
    if known is not None:
        for p in prims(e):
            if not known(p.name, p.dom, p.cod):
                raise UnknownPrimitive(p.name)
    return _typ(e)


def dom(e: MorExpr) -> ObjExpr:
    return _typ(e)[0]


def cod(e: MorExpr) -> ObjExpr:
    return _typ(e)[1]


# ---------------------------------------------------------- convenience

def comp(*fs: MorExpr) -> MorExpr:
    """Left-nested diagram-order composite of one or more maps."""
    out = fs[0]
    for f in fs[1:]:
        out = Comp(out, f)
    return out


def prod_hom(f: MorExpr, g: MorExpr) -> MorExpr:
    """f x g written as <p0;f, p1;g>."""
    a, b = dom(f), dom(g)
    return Pair(Comp(Proj0(a, b), f), Comp(Proj1(a, b), g))


# ---------------------------------------------------------- printing

def pretty_obj(o: ObjExpr) -> str:
    if isinstance(o, Base):
        return o.name
    if isinstance(o, Terminal):
        return "1"
    if isinstance(o, TensorUnit):
        return "T"
    if isinstance(o, Prod):
        return f"({pretty_obj(o.left)} x {pretty_obj(o.right)})"
    if isinstance(o, Tensor):
        return f"({pretty_obj(o.left)} ox {pretty_obj(o.right)})"
    if isinstance(o, Bang):
        return f"S({pretty_obj(o.inner)})"
    raise TypeError(o)


def pretty(e: MorExpr, typed: bool = False) -> str:
    """Render ``e``. With ``typed=True`` primitives carry their types and
    the output parses back to ``e``."""
    p = lambda x: pretty(x, typed)  # noqa: E731
    if isinstance(e, Id):
        return "id_" + pretty_obj(e.o)
    if isinstance(e, Comp):
        right = p(e.g)
        if isinstance(e.g, Comp):
            right = f"({right})"
        return f"{p(e.f)} ; {right}"
    if isinstance(e, Pair):
        return f"<{p(e.f)}, {p(e.g)}>"
    if isinstance(e, Proj0):
        return f"p0[{pretty_obj(e.a)}, {pretty_obj(e.b)}]"
    if isinstance(e, Proj1):
        return f"p1[{pretty_obj(e.a)}, {pretty_obj(e.b)}]"
    if isinstance(e, ToTerminal):
        return f"![{pretty_obj(e.o)}]"
    if isinstance(e, Zero):
        return f"0[{pretty_obj(e.dom)}, {pretty_obj(e.cod)}]"
    if isinstance(e, Plus):
        return f"({p(e.f)} + {p(e.g)})"
    if isinstance(e, DiffD):
        return f"D[{p(e.f)}]"
    if isinstance(e, BangHom):
        return f"S({p(e.f)})"
    if isinstance(e, TensorHom):
        return f"({p(e.f)} ox {p(e.g)})"
    if isinstance(e, Prim):
        if typed:
            return f"{e.name}{{{pretty_obj(e.dom)} -> {pretty_obj(e.cod)}}}"
        return e.name
    raise TypeError(e)


def structural_hash(e: _Node) -> int:
    """64-bit blake2b digest of the typed rendering; stable across runs."""
    h = e.__dict__.get("_sh")
    if h is None:
        text = pretty_obj(e) if isinstance(e, ObjExpr) else "M:" + pretty(e, typed=True)
        h = int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")
        object.__setattr__(e, "_sh", h)
    return h


# ---------------------------------------------------------- parsing

_TOK = re.compile(r"\s*(->|id_|[;,<>()\[\]{}+!]|[A-Za-z0-9_][A-Za-z0-9_'#.]*)")
_RESERVED = {"x", "ox", "S", "T", "D", "p0", "p1", "1", "0"}


def _tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise ParseError(f"bad character at {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, prim_types):
        self.toks = _tokens(text)
        self.i = 0
        self.prim_types = prim_types or {}

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, want=None):
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise ParseError(f"expected {want!r}, got {t!r}")
        self.i += 1
        return t

    def obj(self) -> ObjExpr:
        t = self.peek()
        if t == "(":
            self.take()
            left = self.obj()
            op = self.take()
            right = self.obj()
            self.take(")")
            if op == "x":
                return Prod(left, right)
            if op == "ox":
                return Tensor(left, right)
            raise ParseError(f"unknown object operator {op!r}")
        if t == "S" and self.peek(1) == "(":
            self.take()
            self.take("(")
            inner = self.obj()
            self.take(")")
            return Bang(inner)
        if t == "1":
            self.take()
            return Terminal()
        if t == "T":
            self.take()
            return TensorUnit()
        if t is None or t in _RESERVED or not re.match(r"[A-Za-z_]", t):
            raise ParseError(f"expected object, got {t!r}")
        self.take()
        return Base(t)

    def two_objs(self):
        self.take("[")
        a = self.obj()
        self.take(",")
        b = self.obj()
        self.take("]")
        return a, b

    def expr(self) -> MorExpr:
        out = self.atom()
        while self.peek() == ";":
            self.take()
            out = Comp(out, self.atom())
        return out

    def atom(self) -> MorExpr:
        t = self.peek()
        if t == "id_":
            self.take()
            return Id(self.obj())
        if t == "<":
            self.take()
            f = self.expr()
            self.take(",")
            g = self.expr()
            self.take(">")
            return Pair(f, g)
        if t in ("p0", "p1"):
            self.take()
            a, b = self.two_objs()
            return Proj0(a, b) if t == "p0" else Proj1(a, b)
        if t == "!":
            self.take()
            self.take("[")
            o = self.obj()
            self.take("]")
            return ToTerminal(o)
        if t == "0":
            self.take()
            a, b = self.two_objs()
            return Zero(a, b)
        if t == "D" and self.peek(1) == "[":
            self.take()
            self.take("[")
            f = self.expr()
            self.take("]")
            return DiffD(f)
        if t == "S" and self.peek(1) == "(":
            self.take()
            self.take("(")
            f = self.expr()
            self.take(")")
            return BangHom(f)
        if t == "(":
            self.take()
            f = self.expr()
            op = self.peek()
            if op == ")":
                self.take()
                return f
            self.take()
            g = self.expr()
            self.take(")")
            if op == "+":
                return Plus(f, g)
            if op == "ox":
                return TensorHom(f, g)
            raise ParseError(f"unknown operator {op!r}")
        if t is None or t in _RESERVED:
            raise ParseError(f"unexpected {t!r}")
        name = self.take()
        if self.peek() == "{":
            self.take()
            a = self.obj()
            self.take("->")
            b = self.obj()
            self.take("}")
            return Prim(name, a, b)
        if name in self.prim_types:
            a, b = self.prim_types[name]
            return Prim(name, a, b)
        raise ParseError(f"primitive {name!r} has no type annotation")


def parse(text: str, prim_types: Optional[dict] = None) -> MorExpr:
    """Inverse of ``pretty(e, typed=True)``. Untyped primitive names are
    resolved through ``prim_types`` (name -> (dom, cod))."""
    p = _Parser(text, prim_types)
    e = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input at token {p.peek()!r}")
    return e


def parse_obj(text: str) -> ObjExpr:
    p = _Parser(text, None)
    o = p.obj()
    if p.peek() is not None:
        raise ParseError(f"trailing input at token {p.peek()!r}")
    return o
