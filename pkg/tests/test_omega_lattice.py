from __future__ import annotations

import csv
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a4painleve import omega_lattice as L
from a4painleve import weyl_a2a1 as A2

P = A2.GS.parse
points = st.tuples(*[st.integers(-4, 4)] * 4)
positive = st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=50)


@pytest.fixture(scope="module")
def sym2():
    return L.propagate(region_pts=2, check=False)


@settings(max_examples=100, deadline=None)
@given(points, st.integers(-5, 5))
def test_shift_invariance_of_embedding_and_canonical_key(l, k):
    m = tuple(x + k for x in l)
    assert L.embed(l) == L.embed(m)
    assert L.canonical(l) == L.canonical(m)
    assert L.radius(l) == L.radius(m)
    assert sum(map(abs, L.shortest(l))) == L.radius(l)


@settings(max_examples=50, deadline=None)
@given(points)
def test_dodecahedron_has_14_distinct_neighbours(l):
    emb = {L.embed(m) for m in L.dodecahedron(l)}
    assert len(emb) == 14 and L.embed(l) not in emb


def test_quad_equation_12_at_origin():
    q = L.quad_equation((1, 2), (0, 0, 0, 0))
    c = q.coefficients(L.LatticeParams.symbolic())
    assert c["C"] == P("p*b1^2*b3") and c["K"] == P("b0^2/b1^2")
    X, A, B, Z = (A2.GS.sym(n) for n in ("om3_1", "b0", "b1", "b2"))
    lhs, rhs = q.sides({"X": X, "A": A, "B": B, "Z": Z}, c)
    assert rhs == P("p*b1^2*b3") * (A - P("b0^4/b1^4") * B) / (P("b0^2/b1^2") * B - A)
    with pytest.raises(KeyError):
        L.quad_equation((1, 1), (0, 0, 0, 0))


def test_lambda_parity():
    S = L.LatticeParams.symbolic()
    assert L.lam(S, 1) == 1 / A2.b(3)
    assert L.lam(S, 2) == A2.b(3)
    assert L.lam(S, 1, half=True) == A2.b(3) ** Fraction(-1, 2)


def test_pair_34_at_origin_is_the_omega_constraint(sym2):
    q = L.quad_equation((3, 4), (0, 0, 0, 0))
    assert L.residual(q, sym2.values, L.LatticeParams.symbolic()).is_zero()
    assert sym2[(1, 1, 0, 1)] == A2.DERIVED["om3_3"]


def test_propagated_value_at_0100(sym2):
    expect = P("b1^2*om1_3*(p*b1^2*b3*om3_1 + om1_1)/(b0^2*(p*b0^2*b3*om3_1 + om1_1))")
    assert sym2[(0, 1, 0, 0)] == expect


@pytest.mark.parametrize("l", [(1, 1, 0, 0), (2, 1, 1, 0), (1, 1, 1, 0)])
def test_weyl_cross_check_examples(sym2, l):
    assert L.weyl_cross_check(l, sym2)


def test_initial_points_carry_their_symbols(sym2):
    for pt, name in zip(L.INITIAL_POINTS, L.INITIAL_SYMBOLS):
        assert sym2[pt] == A2.sym(name) == L.rho_value(pt)


def test_symbolic_consistency_and_mutation(sym2):
    rep = L.check_consistency(sym2, L.vbar())
    assert rep.passed and rep.checks
    bad = L.OmegaAssignment(dict(sym2.values), sym2.params, "symbolic")
    bad.values[(0, 1, 0, 0)] = 2 * bad.values[(0, 1, 0, 0)]
    assert not L.check_consistency(bad).passed


@settings(max_examples=8, deadline=None)
@given(st.lists(positive, min_size=9, max_size=9))
def test_exact_propagation_is_path_independent(vals):
    b0, b1, b2, s, p = vals[:5]
    if p == 1:
        return
    P_ = L.LatticeParams.from_values(b0, b1, b2, s * s, p)
    init = L.initial_values("exact", vals[5:])
    try:
        one = L.propagate(init, 2, P_, order="shells", check=False)
        two = L.propagate(init, 2, P_, order="d4", check=False)
    except ZeroDivisionError:
        return
    assert one.values == two.values
    assert L.check_consistency(one).passed


def test_numeric_propagation_radius_2():
    with mpmath.workdps(40):
        P_ = L.LatticeParams.from_values("1.3", "0.7", "2.1", "1.9", "1.6", exact=False)
        init = L.initial_values("numeric", [mpmath.mpf(x) for x in ("0.4", "1.7", "2.2", "0.9")])
        assign = L.propagate(init, 2, P_, check=False, precision=40)
        rep = L.check_consistency(assign, precision=40)
    assert rep.passed and rep.max_residual < mpmath.mpf(10) ** -30


def test_unreachable_region():
    with pytest.raises(L.UnreachablePoint):
        L.propagate(region_pts=L.region(2), check=False)


def test_schedule_takes_the_shell_steps_first():
    steps = L.schedule(L.INITIAL_POINTS, 2, "shells")
    first = [(q.pair, q.base, q.corners[r]) for q, r in steps[:len(L.SHELL_STEPS)]]
    assert first == [(pr, b, L.canonical(t)) for pr, b, t in L.SHELL_STEPS]


def test_r0_zigzag():
    assert L.r0_zigzag_check(L.region(1)).passed


def test_dodecahedron_report():
    assert L.dodecahedron_check().passed


def test_cross_check_small_region_by_evaluation():
    rep = L.weyl_cross_check_region(2, trials=1, seed=5)
    assert rep.passed and len(rep.checks) == len(L.region(2))


def test_csv_export(sym2, tmp_path):
    path = tmp_path / "omega.csv"
    sym2.export_csv(path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["l1", "l2", "l3", "l4", "embed_x", "embed_y", "embed_z", "value"]
    assert len(rows) == len(sym2.values) + 1
    first = rows[1]
    assert first[:4] == ["0", "0", "0", "0"] and first[-1] == "om3_1"
