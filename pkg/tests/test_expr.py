import pytest
from hypothesis import given, settings

from catdiff.expr import (Bang, BangHom, Base, Comp, DiffD, DomainMismatch, Id, Pair, ParseError,
                          Prim, Prod, Proj0, Proj1, Tensor, TensorUnit, Terminal, UnknownPrimitive,
                          Zero, comp, parse, parse_obj, pretty, pretty_obj, prod_hom,
                          structural_hash, typecheck)

from strategies import morphisms, objects

A, B, C = Base("A"), Base("B"), Base("C")
phi = Prim("phi", A, Bang(A))


def test_comp_typing():
    assert typecheck(Comp(Proj0(A, B), phi)) == (Prod(A, B), Bang(A))


def test_comp_mismatch():
    with pytest.raises(DomainMismatch):
        typecheck(Comp(phi, phi))


def test_pair_needs_same_domain():
    with pytest.raises(DomainMismatch):
        typecheck(Pair(Id(A), Id(B)))


def test_diff_and_bang_types():
    f = Prim("f", A, B)
    assert typecheck(DiffD(f)) == (Prod(A, A), B)
    assert typecheck(BangHom(f)) == (Bang(A), Bang(B))


def test_unknown_primitive():
    with pytest.raises(UnknownPrimitive):
        typecheck(phi, lambda n, d, c: False)


def test_prod_hom():
    f, g = Prim("f", A, B), Prim("g", B, C)
    assert typecheck(prod_hom(f, g)) == (Prod(A, B), Prod(B, C))


def test_comp_is_left_nested():
    f, g, h = Id(A), Id(A), Id(A)
    assert comp(f, g, h) == Comp(Comp(f, g), h)


def test_pretty_examples():
    assert pretty(Comp(phi, Prim("eps", Bang(A), A))) == "phi ; eps"
    assert pretty_obj(Prod(A, Bang(Tensor(B, TensorUnit())))) == "(A x S((B ox T)))"
    assert pretty(Zero(A, Terminal())) == "0[A, 1]"


def test_parse_untyped_with_registry():
    e = parse("phi ; eps", {"phi": (A, Bang(A)), "eps": (Bang(A), A)})
    assert typecheck(e) == (A, A)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("phi ; ")
    with pytest.raises(ParseError):
        parse("mystery")
    with pytest.raises(ParseError):
        parse_obj("(A x")


def test_right_nested_comp_roundtrips():
    f, g, h = Prim("f", A, A), Prim("g", A, A), Prim("h", A, A)
    e = Comp(f, Comp(g, h))
    assert parse(pretty(e, typed=True)) == e


@settings(max_examples=200, deadline=None)
@given(objects())
def test_obj_roundtrip(o):
    assert parse_obj(pretty_obj(o)) == o


@settings(max_examples=300, deadline=None)
@given(morphisms())
def test_typed_roundtrip(e):
    typecheck(e)
    back = parse(pretty(e, typed=True))
    assert back == e
    assert structural_hash(back) == structural_hash(e)
    assert hash(back) == hash(e)


@settings(max_examples=100, deadline=None)
@given(morphisms(), morphisms())
def test_hash_distinguishes_renderings(e1, e2):
    if pretty(e1, typed=True) != pretty(e2, typed=True):
        assert e1 != e2


def test_grammar_doc_examples_parse():
    from pathlib import Path
    from catdiff.expr import parse, typecheck
    doc = Path(__file__).resolve().parents[1] / "docs" / "grammar.md"
    block = doc.read_text().split("Morphism examples:")[1].split("```")[1]
    for text in block.strip().splitlines():
        typecheck(parse(text))
