from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a4painleve.symfield import (
    DivisionByZeroFunction,
    FractionalPowerUnresolvable,
    GeneratorSet,
    NegativeBaseFractionalPower,
    ParseError,
    RationalFunction,
    UnknownSymbol,
    equals,
    eval_numeric,
    eval_rational,
    parse,
    substitute,
    to_text,
)

G = GeneratorSet(("a0", "a1", "b3"), "test")
a0, a1, b3 = G.syms("a0", "a1", "b3")
NAMES = G.names

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def laurent(draw, quarter=True, max_terms=3):
    """Small Laurent polynomial; exponents in (1/4)Z when quarter."""
    n = draw(st.integers(1, max_terms))
    out = G.zero()
    for _ in range(n):
        c = draw(coeffs)
        exps = {}
        for name in NAMES:
            if quarter:
                exps[name] = Fraction(draw(st.integers(-4, 8)), 4)
            else:
                exps[name] = draw(st.integers(-1, 2))
        out = out + G.monomial(c, exps)
    return out


@st.composite
def rational(draw, quarter=True):
    num = draw(laurent(quarter))
    den = draw(laurent(quarter, max_terms=2))
    if den.is_zero():
        den = G.one()
    return num / den


@settings(max_examples=100, deadline=None)
@given(rational(), rational(), rational())
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == G.zero()
    assert equals((f + g) * (f - g), f * f - g * g)


@settings(max_examples=100, deadline=None)
@given(rational())
def test_canonical_form_is_idempotent(f):
    again = RationalFunction(G, f.num, f.den)
    assert again.num == f.num and again.den == f.den
    assert f.den.leading_coefficient() == 1


@settings(max_examples=50, deadline=None)
@given(rational(quarter=False), rational(quarter=False), st.lists(rational(), min_size=3, max_size=3))
def test_substitute_is_a_homomorphism(f, g, images):
    assign = dict(zip(NAMES, images))
    try:
        sf, sg = substitute(f, assign), substitute(g, assign)
    except DivisionByZeroFunction:
        return
    assert substitute(f * g, assign) == sf * sg
    assert substitute(f + g, assign) == sf + sg


@settings(max_examples=50, deadline=None)
@given(rational(), st.lists(coeffs.filter(lambda c: c != 0), min_size=3, max_size=3),
       st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_substitute_monomials_into_fractional_powers(f, cs, ks):
    # signed-monomial images with exponents in 4Z keep every power exact
    images = {n: G.monomial(c * c * c * c, {m: 4 * k for m in NAMES[:1]}) for n, c, k in zip(NAMES, cs, ks)}
    assign = {n: images[n] * G.sym(n) for n in NAMES}
    g = f * f + f
    assert substitute(g, assign) == substitute(f, assign) ** 2 + substitute(f, assign)


@settings(max_examples=40, deadline=None)
@given(rational(), rational())
def test_exact_and_probabilistic_equality_agree(f, g):
    assert equals(f, g, "exact") == equals(f, g, "prob", trials=20, seed=1)
    assert equals(f * g, g * f, "prob")


@settings(max_examples=50, deadline=None)
@given(rational())
def test_text_round_trip(f):
    assert parse(G, to_text(f)) == f


@settings(max_examples=30, deadline=None)
@given(rational(), st.lists(st.integers(1, 9), min_size=6, max_size=6))
def test_exact_and_numeric_evaluation_agree(f, ints):
    # fourth powers so that every quarter power is rational
    point = {n: Fraction(ints[2 * i], ints[2 * i + 1]) ** 4 for i, n in enumerate(NAMES)}
    try:
        exact = eval_rational(f, point)
    except ZeroDivisionError:
        return
    num = eval_numeric(f, point, 30)
    assert abs(num - exact.numerator / exact.denominator) <= 1e-25 * max(1, abs(num))


def test_binomial():
    assert (a0 + a1) ** 2 == a0 ** 2 + 2 * a0 * a1 + a1 ** 2
    assert equals((a0 + a1) ** 2, a0 ** 2 + 2 * a0 * a1 + a1 ** 2)
    assert not equals(a0, a1)


def test_division_and_quarter_exponents():
    assert a0 / a0 == G.one()
    h = b3 ** Fraction(1, 2)
    assert h * h == b3
    assert to_text(G.parse("3/2*a0^(1/2)*a1^-1")) == "3/2*a0^(1/2)*a1^-1"


def test_substitute_examples():
    q = G.parse("7")
    assert substitute(a0 * a1, {"a0": q * a0, "a1": a1 / q}) == a0 * a1
    # s0 s0 = 1 on a0 with s0(a0) = 1/a0
    s0 = {"a0": 1 / a0, "a1": a0 * a1}
    assert substitute(substitute(a0, s0), s0) == a0
    assert substitute(substitute(a1, s0), s0) == a1


def test_errors():
    with pytest.raises(DivisionByZeroFunction):
        a0 / (a0 - a0)
    with pytest.raises(FractionalPowerUnresolvable):
        substitute(b3 ** Fraction(1, 2), {"b3": a0 + a1})
    with pytest.raises(NegativeBaseFractionalPower):
        eval_numeric(b3 ** Fraction(1, 2), {"b3": -4}, 20)
    with pytest.raises(UnknownSymbol):
        G.sym("zz")
    with pytest.raises(ParseError):
        G.parse("a0 +* a1")


def test_numeric_examples():
    assert abs(eval_numeric(a0 / a1, {"a0": 2, "a1": 3}, 30) - Fraction(2, 3).numerator / 3) < 1e-25
    assert eval_numeric(b3 ** Fraction(1, 2), {"b3": 4}, 30) == 2
    assert eval_rational(b3 ** Fraction(1, 2), {"b3": Fraction(9, 4)}) == Fraction(3, 2)


def test_laurent_degree_helpers():
    f = G.parse("3/2*a0^(1/2)*a1^-1 + a1^2*a0")
    assert f.degree_range("a1") == (-1, 2)
    assert f.coefficient_in("a1", -1) == G.parse("3/2*a0^(1/2)")
    assert f.coefficient_in("a1", 2) == a0
    assert G.parse("1/(a0+a1)").degree_range("a1") is None


def test_generator_sets_are_interned():
    assert GeneratorSet(("a0", "a1", "b3"), "test") is G
    with pytest.raises(ValueError):
        GeneratorSet(("x", "x"), "dup")
