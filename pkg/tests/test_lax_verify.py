from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest

from a4painleve import lax_verify as LV
from a4painleve import pde_sim as PS
from a4painleve.symfield import eval_numeric

P = LV.P


@pytest.fixture(scope="module")
def A():
    return LV.spectral_matrix()


def test_factor_shapes(A):
    assert A.shape_ok()
    first = A.factors[0]
    assert not first[1][0].is_zero() and first[1][1].is_zero()
    assert LV.x_degree(first[0][0]) == 1 and LV.x_degree(first[0][1]) == 0
    for tag in LV.TAGS:
        assert LV.deformation_matrix(tag).shape_ok(), tag


def test_determinant_degrees(A):
    assert A.factor_det_degrees() == [0, 2, 2, 2]
    assert LV.x_degree(LV.mdet(A.matrix)) == 6


def test_numeric_product_matches_product_of_factors(A):
    rng = random.Random(4)
    point = {n: Fraction(rng.randint(1, 2 ** 16), rng.randint(1, 2 ** 16)) for n in LV.FGS.names}
    with mpmath.workdps(40):
        facs = [mpmath.matrix(f) for f in A.evaluate(point, 40)]
        prod = facs[0] * facs[1] * facs[2] * facs[3]
        whole = [[eval_numeric(e, point, 40) for e in row] for row in A.matrix]
        scale = max(abs(whole[i][j]) for i in range(2) for j in range(2))
        assert max(abs(prod[i, j] - whole[i][j]) for i in range(2) for j in range(2)) < 1e-25 * scale


def test_deformation_examples(A):
    b = LV.deformation_matrix("R13").matrix
    assert b[0][1] == P("1/b3") and b[1][1].is_zero()
    assert LV.deformation_matrix("R0").matrix == A.factors[3]
    assert LV.deformation_matrix("T0").matrix == LV.mmul(A.factors[2], A.factors[3])


def test_b_t13_is_r13_applied_twice():
    br = LV.deformation_matrix("R13").matrix
    r13 = LV.evolution_map("R13")
    twice = LV.mmul(LV.mmap(br, lambda e: LV.substitute(e, r13)), br)
    assert twice == LV.deformation_matrix("T13").matrix


def test_degenerate_state():
    with pytest.raises(LV.DegenerateElimination):
        LV.spectral_matrix({"f1": LV.FGS.zero(), "f3": LV.FGS.sym("f3")})


@pytest.mark.parametrize("tag", LV.TAGS)
def test_compatibility_holds(tag):
    r = LV.compatibility_residual(tag)
    assert r.is_zero and r.cleared_denominators_nonzero()
    assert r.summary() == f"{tag}: residual = 0"


@pytest.mark.parametrize("tag", LV.TAGS)
@pytest.mark.parametrize("which", [1, 2])
def test_perturbed_evolution_breaks_compatibility(tag, which):
    assert not LV.compatibility_residual(tag, perturb=2, which=which).is_zero


@pytest.mark.parametrize("tag", LV.TAGS)
def test_evolution_matches_weyl_words(tag):
    assert all(LV.cross_check_evolution(tag).values())


def test_full_report_in_both_modes():
    assert LV.verify_lax(mode="exact").passed
    assert LV.verify_lax(("R0", "T0"), mode="prob", trials=10).passed


def test_to_text_lists_every_entry(A):
    text = A.to_text()
    assert text.startswith("A: 4 factor(s)") and text.count("\n") == 16
    assert "F1[2,2] = 0" in text


# numeric wave matrices

PAR = PS.Params4D("3/2", "2/3", "5/4", "7/3", "9/4", "5/3")


def test_direction_4_psi_matrix():
    u = {(0, 0, 0, 0): mpmath.mpf(2), (0, 0, 0, 1): mpmath.mpf(3)}
    m = LV.wave_matrices_pde(4, (0, 0, 0, 0), u, mpmath.mpf(1), PAR, "psi")
    assert m[1, 1] == 0 and m[1, 0] == mpmath.mpf(1) / 2 and m[0, 1] == -3


def test_direction_1_phiomega_entry():
    with mpmath.workdps(40):
        l = (1, 2, 0, -1)
        om = {l: mpmath.mpf("1.3"), (2, 2, 0, -1): mpmath.mpf("0.8")}
        mu = mpmath.mpf("0.6")
        m = LV.wave_matrices_pde(1, l, om, mu, PAR, "phiomega")
        x = mu / PAR.gamma(0)
        expect = -PAR.p ** (-1 + 2 + 0 - 1) * PAR.b1 / PAR.b0 * (om[(2, 2, 0, -1)] / om[l]) * x
        assert abs(m[0, 0] - expect) < mpmath.mpf(10) ** -35


def test_missing_field_value():
    with pytest.raises(LV.MissingFieldValue):
        LV.wave_matrices_pde(2, (0, 0, 0, 0), {(0, 0, 0, 0): 1}, 1, PAR)
