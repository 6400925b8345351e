from __future__ import annotations

import mpmath
import pytest

from a4painleve import omega_lattice as OL
from a4painleve import pde_sim as PS

PAR = PS.Params4D("3/2", "2/3", "5/4", "7/3", "9/4", "5/3")
BOX = ((0, 1),) * 4
TOL = mpmath.mpf(10) ** -35


@pytest.fixture(scope="module")
def fu():
    return PS.solve_box(PS.random_skeleton(BOX, seed=3), BOX, PAR, 40)


@pytest.fixture(scope="module")
def fU():
    with mpmath.workdps(40):
        init = [mpmath.mpf(x) for x in ("1.4", "0.7", "2.3", "1.1")]
    return PS.solve_periodic_U(init, PAR, radius=2, precision=40)


def test_params_sequences():
    with mpmath.workdps(40):
        assert PAR.lam(3) * PAR.lam(4) == 1
        assert abs(PAR.alpha(5) * PAR.p ** 5 - PAR.alpha0) < TOL
        assert PAR.b0 == PAR.gamma0 / PAR.alpha0 and PAR.b2 == PAR.gamma0 * PAR.K0


def test_unit_box_faces(fu):
    rep = PS.face_report(fu)
    assert len(rep.checks) == 24
    assert rep.passed and rep.max_residual < TOL


def test_corner_value_from_the_12_face(fu):
    with mpmath.workdps(40):
        a, b = PAR.alpha(0), PAR.beta(0)
        u0, u1, u2 = fu[(0, 0, 0, 0)], fu[(1, 0, 0, 0)], fu[(0, 1, 0, 0)]
        expect = -u0 * (a * u1 - b * u2) / (a * u2 - b * u1)
        assert abs(fu[(1, 1, 0, 0)] - expect) < TOL * abs(expect)


def test_two_path_corner(fu):
    rep = PS.cube_consistency(fu)
    assert rep.passed and rep.max_residual < TOL
    assert any(c["check"] == "cube (1, 2, 3)@(0, 0, 0, 0)" for c in rep.checks)


def test_bigger_box_is_consistent():
    box = ((-1, 1), (0, 2), (0, 1), (-1, 1))
    f = PS.solve_box(PS.random_skeleton(box, seed=1, complex_values=True), box, PAR, 40)
    assert PS.face_report(f).passed and PS.cube_consistency(f).passed


def test_gauge_maps_solutions_to_solutions(fu):
    U = PS.U_from_u(fu)
    assert PS.face_report(U).passed
    back = PS.u_from_U(U)
    assert all(abs(back[l] - fu[l]) < TOL * abs(fu[l]) for l in fu.values)
    assert PS.gauge_matrix_check(U).passed


def test_wave_paths(fu):
    with mpmath.workdps(40):
        a = PS.wave_propagate((1, 2), [1, 2], "7/5", fu)
        b = PS.wave_propagate((1, 2), [2, 1], "7/5", fu)
        assert max(abs(a[k] - b[k]) for k in range(2)) < mpmath.mpf(10) ** -30
        one = PS.wave_propagate((mpmath.mpf(3), 5), [4], "7/5", fu)
        assert abs(one[1] - 3 / fu[(0, 0, 0, 0)]) < TOL
        z = PS.wave_propagate((1, 0), [1], 0, fu)
        assert z[0] == 0
        zz = PS.wave_propagate((1, 0), [1, -1], 0, fu)
        assert abs(zz[0] - 1) < TOL and abs(zz[1]) < TOL
    assert PS.path_independence(PS.solve_box(PS.random_skeleton(((0, 2),) * 4), ((0, 2),) * 4, PAR), 6).passed


def test_h_gauge_at_origin():
    with mpmath.workdps(40):
        h = PS.H_gauge((0, 0, 0, 0), PS.Params4D(1, 1, 1, 1, 1, 2))
        assert abs(h - mpmath.mpf(2) ** (mpmath.mpf(9) / 16)) < mpmath.mpf(10) ** -35
    assert abs(float(h.real) - 1.476826146) < 1e-9


def test_branch_cut_is_rejected():
    with pytest.raises(PS.BranchAmbiguity):
        PS.H_gauge((0, 0, 0, 0), PS.Params4D(-1, 1, 1, 1, 1, 2))


def test_reduction(fU):
    rep = PS.reduce_to_omega(fU)
    assert rep.passed and rep.max_residual < mpmath.mpf(10) ** -30
    with mpmath.workdps(40):
        om = PS.omega_values(fU, PS.face_corners((1, 2), (0, 0, 0, 0)).values())
        r = PS.omega_quad_residual(OL.QuadEquation((1, 2), (0, 0, 0, 0)), om, PAR)
    assert r < mpmath.mpf(10) ** -30
    assert fU[(1, 1, 1, 1)] == fU[(0, 0, 0, 0)]


def test_omega_gauge_matrices(fU):
    assert PS.omega_gauge_check(fU).passed


def test_periodicity_violation(fu):
    bad = PS.Field4D(dict(fu.values), "U", PAR, False, BOX, 40)
    bad.values[(1, 1, 1, 1)] = bad.values[(0, 0, 0, 0)] + 1
    with pytest.raises(PS.PeriodicityViolated):
        PS.reduce_to_omega(bad)


def test_quotient_lattice():
    rep = PS.quotient_check()
    assert rep.passed, rep.failures()


def test_singular_data():
    init = {l: mpmath.mpf(1) for l in PS.skeleton(BOX)}
    with pytest.raises(PS.SingularityEncountered):
        PS.solve_box(init, BOX, PS.Params4D(1, 1, 1, 1, 1, 2), 40)
    with pytest.raises(PS.MissingFieldValue):
        PS.solve_box({}, BOX, PAR)


def test_csv_round_trip(fu, tmp_path):
    path = tmp_path / "u.csv"
    fu.export_csv(path, digits=40)
    back = PS.Field4D.import_csv(path, params=PAR)
    assert set(back.values) == set(fu.values)
    assert all(abs(back[l] - fu[l]) < TOL for l in fu.values)


def test_simulate_and_reduction_reports():
    assert PS.simulate(PAR, size=2, pairs=4).passed
    assert PS.reduction(PAR).passed
