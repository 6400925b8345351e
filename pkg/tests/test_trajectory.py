from __future__ import annotations

import csv
from fractions import Fraction

import mpmath
import pytest

from a4painleve import trajectory as T
from a4painleve.symfield import eval_rational


@pytest.mark.parametrize("tag", T.TAGS)
def test_direct_equals_symbolic_exactly(tag):
    init, consts = T.random_initial(tag, seed=2)
    out = T.cross_check(tag, init, consts, steps=4, exact=True)
    assert out["agree"], out["max_deviation"]
    assert len(out["direct"].rows) == 5


@pytest.mark.parametrize("tag", T.TAGS)
def test_direct_equals_symbolic_numerically(tag):
    # seed 1 has |q| > 1 for the q-tags; with |q| < 1, t -> 0 and the two
    # recursions lose digits to cancellation long before 8 steps
    init, consts = T.random_initial(tag, seed=1)
    out = T.cross_check(tag, init, consts, steps=8, exact=False, digits=40)
    assert out["max_deviation"] < mpmath.mpf(10) ** -30


def test_qp3d7_step_is_the_r0_word_map():
    init, consts = T.random_initial("qP3D7", seed=1)
    traj = T.iterate("qP3D7", init, consts, steps=3)
    sym = T.symbolic_step("qP3D7")
    for before, after in zip(traj.rows, traj.rows[1:]):
        point = dict(consts, **before)
        assert all(eval_rational(sym[k], point) == after[k] for k in T.state_names("qP3D7"))
    assert traj.column("t")[1] == consts["p"] * init["t"]


def test_exact_and_numeric_runs_agree():
    init, consts = T.random_initial("qP4", seed=5)
    ex = T.iterate("qP4", init, consts, steps=6)
    nu = T.iterate("qP4", init, consts, steps=6, exact=False)
    with mpmath.workdps(40):
        for a, b in zip(ex.rows, nu.rows):
            for k in a:
                x = mpmath.mpf(a[k].numerator) / a[k].denominator
                assert abs(x - b[k]) <= mpmath.mpf(10) ** -30 * max(abs(x), 1)


def test_projective_interleaving():
    init, consts = T.random_initial("qP3D7", seed=3)
    with mpmath.workdps(40):
        out = T.projective_interleaving(init, consts["c1"], consts["p"], steps=6)
        assert out["max_deviation"] < mpmath.mpf(10) ** -30


def test_singular_start():
    init, consts = T.random_initial("qP3D7")
    init = dict(init, G=Fraction(0))
    with pytest.raises(T.IterationSingular):
        T.iterate("qP3D7", init, consts, steps=3)


def test_unknown_tag():
    with pytest.raises(KeyError):
        T.iterate("qP6", {}, {})


def test_trajectory_csv(tmp_path):
    init, consts = T.random_initial("qPV")
    traj = T.iterate("qPV", init, consts, steps=2)
    traj.write_csv(tmp_path / "t.csv")
    rows = list(csv.reader(open(tmp_path / "t.csv")))
    assert rows[0] == ["n", "t", "F", "G"] and len(rows) == 4
    assert Fraction(rows[1][1]) == init["t"]


def test_interleaving_needs_the_specialization():
    # with c3 = 2 instead of 1 the qPV F-sequence leaves the qP3D7 sequence
    init, consts = T.random_initial("qP3D7", seed=1)
    with mpmath.workdps(40):
        p = mpmath.mpmathify(consts["p"])
        pv = T.iterate("qPV", {"t": init["t"], "F": init["Gdown"], "G": init["G"]},
                       {"c1": consts["c1"], "c2": 1 / p, "c3": 2, "q": p ** 2}, 3, "direct", False)
        d7 = T.iterate("qP3D7", init, {"c1": consts["c1"], "p": p}, 6, "direct", False)
        assert abs(pv.rows[1]["F"] - d7.rows[2]["Gdown"]) > 1e-3
