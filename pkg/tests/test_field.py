from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fewdist.errors import MixedRadicands, ParseError
from fewdist.field import QuadExt, arith, format_decimal, is_integer, parse, render, sign_of, squarefree_split

SQ5 = QuadExt.sqrt(5)
fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
radicands = st.sampled_from([2, 3, 5, 13])


@st.composite
def quads(draw, m=None):
    m = draw(radicands) if m is None else m
    return QuadExt(draw(fractions), draw(fractions), m)


def test_conjugate_product():
    assert arith(1 + SQ5, 1 - SQ5, "mul") == -4


def test_conjugate_sum():
    assert arith((5 - SQ5) / 2, (5 + SQ5) / 2, "add") == 5


def test_rationalized_division():
    q = arith((5 + SQ5) / 2, SQ5, "div")
    assert q == (1 + SQ5) / 2
    assert q * SQ5 == (5 + SQ5) / 2


@pytest.mark.parametrize(
    "x, expected",
    [(3 - 2 * QuadExt.sqrt(2), 1), (QuadExt(0), 0), (1 - SQ5, -1), (QuadExt(-7, 3, 5), -1), (QuadExt(7, -3, 5), 1)],
)
def test_sign(x, expected):
    assert sign_of(x) == expected


def test_sign_close_call():
    # 99 - 70*sqrt(2) ~ 0.00505
    assert sign_of(QuadExt(99, -70, 2)) == 1
    assert sign_of(QuadExt(-99, 70, 2)) == -1


@pytest.mark.parametrize("x, expected", [(QuadExt(Fraction(4, 2)), True), ((1 + SQ5) / 2, False), (QuadExt(-3), True), (QuadExt(Fraction(1, 3)), False)])
def test_is_integer(x, expected):
    assert is_integer(x) is expected


def test_radicand_normalization():
    assert QuadExt.sqrt(8) == 2 * QuadExt.sqrt(2)
    assert QuadExt.sqrt(9) == 3 and QuadExt.sqrt(9).is_rational()
    assert QuadExt(1, 0, 5).m == 0
    assert squarefree_split(72) == (6, 2)


def test_mixed_radicands_rejected():
    with pytest.raises(MixedRadicands):
        QuadExt.sqrt(2) + QuadExt.sqrt(5)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        SQ5 / QuadExt(0)


def test_render_parse_examples():
    assert render(QuadExt(Fraction(3, 4))) == "3/4"
    assert render((5 - SQ5) / 2) == {"a": "5/2", "b": "-1/2", "m": 5}
    assert parse({"a": "5/2", "b": "-1/2", "m": 5}) == (5 - SQ5) / 2
    assert parse(7) == 7
    with pytest.raises(ParseError):
        parse("1/0")
    with pytest.raises(ParseError):
        parse(True)
    with pytest.raises(MixedRadicands):
        parse({"a": "0", "b": "1", "m": 2}, m=5)


def test_str_and_decimal():
    assert str((1 + SQ5) / 2) == "1/2+1/2*sqrt(5)"
    assert str(-SQ5) == "-sqrt(5)"
    assert format_decimal((1 + SQ5) / 2) == "1.61803398875"
    assert abs(float(SQ5) - 5**0.5) < 1e-15


@given(radicands.flatmap(lambda m: st.tuples(quads(m), quads(m), quads(m))))
def test_field_axioms(xyz):
    x, y, z = xyz
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1


@given(radicands.flatmap(lambda m: st.tuples(quads(m), quads(m))))
def test_sign_multiplicative_and_order(xy):
    x, y = xy
    assert sign_of(x * y) == sign_of(x) * sign_of(y)
    fx, fy = float(x), float(y)
    if abs(fx - fy) > 1e-9:
        assert (x < y) == (fx < fy)


@given(quads())
def test_render_roundtrip(x):
    assert parse(render(x)) == x
    assert hash(parse(render(x))) == hash(x)


@given(fractions)
def test_rational_hash_matches_fraction(f):
    assert QuadExt(f) == f
    assert hash(QuadExt(f)) == hash(f)
