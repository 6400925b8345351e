from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a4painleve import weyl_a4 as W
from a4painleve.symfield import equals, eval_rational, to_text

a = W.a
GENS = list(W.GENERATORS)


def test_parameter_action_examples():
    s0 = W.generator_action("s0")
    assert s0.action["a0"] == 1 / a(0)
    assert s0.action["a1"] == a(0) * a(1)
    sigma = W.generator_action("sigma")
    assert sigma.action["a4"] == a(0)
    assert all(sigma.action[f"tau1_{j}"] == W.tau(1, j + 1) for j in range(1, 6))
    assert W.generator_action("iota").action["a2"] == 1 / a(3)


def test_parameter_images_are_signed_monomials():
    for g in GENS:
        t = W.generator_action(g)
        assert all(t.action[p].is_signed_monomial() for p in W.PARAMS), g


def test_composition_examples():
    assert W.compose(W.generator_action("s0"), W.generator_action("s0")).is_identity()
    t0 = W.translation(0)
    q = W.q_param()
    assert [t0.action[f"a{i}"] for i in range(5)] == [q * a(0), a(1) / q, a(2), a(3), a(4)]
    assert W.word_action(["T0", "T1", "T2", "T3", "T4"]).is_identity()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(GENS), min_size=1, max_size=4))
def test_word_times_inverse_is_identity(word):
    assert W.word_action(list(word) + W.inverse_word(word)).is_identity()


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(GENS), st.lists(st.integers(1, 50), min_size=24, max_size=24))
def test_generators_preserve_tau_constraints_at_rational_points(g, ints):
    # evaluate the derived tau2 at the image point and compare with the image of tau2
    point = {n: Fraction(ints[2 * k], ints[2 * k + 1]) for k, n in enumerate(W.NAMES)}
    t = W.generator_action(g)
    try:
        image_point = {n: eval_rational(t.action[n], point) for n in W.NAMES}
        for j in (1, 2, 4):
            lhs = eval_rational(W.tau(2, j), image_point)
            rhs = eval_rational(W.direct_image(g, 2, j), point)
            assert lhs == rhs
    except ZeroDivisionError:
        pass


def test_f_variables():
    f11 = W.f1(1)
    assert f11 == W.tau(1, 2) * W.tau(2, 1) / (W.tau(1, 1) * W.tau(1, 3))
    lhs, rhs = W.f_relation(2)
    assert lhs == rhs
    assert W.f2(1) == W.generator_action("s3")(W.f1(1))


def test_omega_variables():
    w = W.omega
    assert w(1, 5) * w(1, 1) * w(1, 2) * w(1, 3) * w(1, 4) == 1
    assert W.f1(3) == w(2, 3) / w(1, 3)
    assert w(3, 1) == W.tau(1, 5) / W.tau(2, 5)
    for name, lhs, rhs in W.omega_relations():
        assert lhs == rhs, name


def test_exact_and_probabilistic_agree_on_relations():
    pairs = [W.f_relation(j) for j in range(1, 6)] + [(l, r) for _, l, r in W.omega_relations()]
    for lhs, rhs in pairs:
        assert equals(lhs, rhs, "exact") and equals(lhs, rhs, "prob", trials=20, seed=3)
    assert not equals(W.f1(1), W.f1(2), "prob", trials=20)


@pytest.mark.parametrize("tag", W.TAGS)
def test_derivations_are_verified(tag):
    ds = W.derive_painleve(tag)
    assert ds.verified, [c for c in ds.checks if not c["pass"]]
    d = ds.to_dict()
    assert d["verified"] and d["word"]


def test_parameter_motions_as_explicit():
    assert W.derive_painleve("qPV").motion_text() == "(qa0, q^{-1}a1, a2, a3, a4)"
    assert W.derive_painleve("qP3D7").motion_text() == "(q^{1/2}a0, q^{-1/2}a1, a2, a3, a4)"


def test_numeric_spot_check_qpv():
    assert W.numeric_spot_check("qPV", (2, 3, 5, 7, Fraction(11, 2310)), seed=0, digits=30) < 1e-25


def test_quads_and_mutation_control():
    assert W.a4_quad_check("H3_T0T2")
    assert W.a4_quad_check("D4_1")
    assert not W.a4_quad_check("H3_T0T2", perturb=True)


def test_transformation_serializes():
    d = W.generator_action("s1").to_dict()
    assert d["action"]["a1"] == to_text(1 / a(1))
