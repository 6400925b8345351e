from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a4painleve import weyl_a2a1 as A2
from a4painleve.symfield import eval_numeric, substitute

P = A2.GS.parse
FP = A2.FGS.parse


def test_explicit_parameter_examples():
    w2 = A2.generator_action_a2a1("w2")
    assert (w2.action["b0"], w2.action["b1"]) == (A2.b(1), A2.b(0))
    r0 = A2.generator_action_a2a1("r0")
    assert r0.action["b3"] == 1 / A2.b(3) and r0.action["p"] == 1 / A2.sym("p")
    assert all(A2.generator_action_a2a1(g).action[n].is_signed_monomial()
               for g in A2.GENERATORS for n in A2.B_NAMES)


@pytest.mark.parametrize("g", A2.GENERATORS)
def test_explicit_generators_match_the_a4_words(g):
    assert all(A2.cross_check(g).values())


def test_rho_examples():
    r1 = A2.rho(1)
    assert r1.action["b0"] == P("p*b0") and r1.action["b3"] == 1 / A2.b(3)
    assert A2.word_action(["rho1", "rho2", "rho3", "rho4"]).is_identity()
    assert A2.compose(A2.rho(4), A2.rho(4)) == A2.time_evolution("T13")


def test_time_evolution_examples():
    t0 = A2.time_evolution("T0")
    assert (t0.action["b0"], t0.action["b1"]) == (P("p*b0"), P("p*b1"))
    assert A2.f_action(("R13",))["f1"] == A2.eliminate_f2(A2.FGS.sym("f1"), A2.FGS.sym("f3"))
    r0 = A2.time_evolution("R0")
    assert A2.compose(r0, r0) == t0
    with pytest.raises(KeyError):
        A2.time_evolution("T7")


def test_f_coordinates():
    ft = A2.f_coordinates()
    assert ft.f3 == A2.omega(2, 3) / A2.omega(1, 3)
    assert ft.relation().is_zero()
    assert A2.generator_action_a2a1("r0")(ft.f3) == A2.sym("om1_1") / A2.sym("om3_1")


def test_eliminated_f2():
    f1, f3 = A2.FGS.sym("f1"), A2.FGS.sym("f3")
    f2 = A2.eliminate_f2(f1, f3)
    assert A2.f_relation(f1, f2, f3, gs=A2.FGS).is_zero()
    fo = A2.f_in_omega()
    assert substitute(f2, {"f1": fo["f1"], "f3": fo["f3"]}, target=A2.GS) == fo["f2"]
    with pytest.raises(A2.DegenerateElimination):
        A2.eliminate_f2(A2.FGS.zero(), f3)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(1, 2 ** 16), min_size=18, max_size=18))
def test_f_relation_vanishes_numerically(ints):
    point = {n: Fraction(ints[2 * k], ints[2 * k + 1]) for k, n in enumerate(A2.GS.names)}
    ft = A2.f_coordinates()
    lhs = A2.f_relation(A2.FRAW.sym("f1"), A2.FRAW.sym("f2"), A2.FRAW.sym("f3"), gs=A2.FRAW)
    with mpmath.workdps(40):
        vals = {k: eval_numeric(getattr(ft, k), point, 40) for k in ("f1", "f2", "f3")}
        vals.update({n: point[n] for n in A2.B_NAMES})
        terms = ("b1*b2*b3", "p*b1^3*b2*f1", "p^2*b0^3*b3^(3/2)*f3", "p^2*b0*b1^4*b3^(3/2)*f1*f2*f3")
        scale = max(abs(eval_numeric(A2.FRAW.parse(t), vals, 40)) for t in terms)
        assert abs(eval_numeric(lhs, vals, 40)) < 1e-25 * scale


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from(A2.GENERATORS), min_size=1, max_size=4), st.sampled_from(A2.OMEGA_NAMES))
def test_composed_word_equals_stepwise_application(word, name):
    f = A2.omega(int(name[2]), int(name[4]))
    assert A2.word_action(list(word))(f) == A2.apply_word(list(word), f)


@pytest.mark.parametrize("g", A2.GENERATORS)
def test_generators_preserve_the_omega_constraints(g):
    t = A2.generator_action_a2a1(g)
    for n in A2.DERIVED:
        assert t(A2.DERIVED[n]) == A2.explicit_image(g, n)


def test_r0_r1_has_infinite_order_on_parameters():
    assert not any(A2.parameter_word(["r0", "r1"] * n).is_identity() for n in range(1, 9))


def test_lattice_word():
    assert A2.lattice_word((1, -2, 0, 1)) == ["rho1", "rho2^-1", "rho2^-1", "rho4"]
