from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

import pytest

from a4painleve import cli, lax_verify, weyl_a4
from a4painleve.lattice_linear import Report

GOLDEN = Path(__file__).parent / "golden"


def run(tmp_path, *argv, config: str | None = None):
    args = list(argv) + ["--out", str(tmp_path / "out")]
    if config is not None:
        cfg = tmp_path / "run.cfg"
        cfg.write_text(config)
        args += ["--config", str(cfg)]
    return cli.main(args)


def report(tmp_path) -> dict:
    return json.loads((tmp_path / "out" / "report.json").read_text())


def test_verify_linear(tmp_path, capsys):
    assert run(tmp_path, "verify-linear") == 0
    assert "PASS" in capsys.readouterr().out
    doc = report(tmp_path)
    assert doc["passed"] and doc["config"]["command"] == "verify-linear"
    assert (tmp_path / "out" / "report.txt").read_text().startswith("a4painleve verify-linear: PASS")


def test_derive_qpv_prints_the_motion(tmp_path, capsys):
    assert run(tmp_path, "derive-qp", "qPV") == 0
    out = capsys.readouterr().out
    assert "(qa0, q^{-1}a1, a2, a3, a4)" in out
    assert "(qa0, q^{-1}a1, a2, a3, a4)" in json.dumps(report(tmp_path))


def test_verify_lax_all(tmp_path, capsys):
    assert run(tmp_path, "verify-lax", "all") == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if "residual = 0" in l]
    assert len(lines) == 4


def test_iterate_qp3d7_matches_symbolic_map(tmp_path):
    cfg = "t = 4/9\nc1 = 3/2\nG = 5/7\nGdown = 2\np = 9/4\nsteps = 20\n"
    assert run(tmp_path, "iterate", "qP3D7", config=cfg) == 0
    rows = list(csv.DictReader(open(tmp_path / "out" / "trajectory_qP3D7.csv")))
    assert len(rows) == 21
    from a4painleve import trajectory as T
    from a4painleve.symfield import eval_rational
    sym = T.symbolic_step("qP3D7")
    for a, b in zip(rows[:5], rows[1:6]):
        point = {"c1": Fraction(3, 2), "p": Fraction(9, 4)}
        point.update({k: Fraction(a[k]) for k in ("t", "Gdown", "G")})
        assert all(eval_rational(sym[k], point) == Fraction(b[k]) for k in ("t", "Gdown", "G"))


def test_iterate_qpv_numeric_interleaving(tmp_path):
    assert run(tmp_path, "iterate", "qPV", "--mode", "numeric", "--seed", "1") == 0
    doc = report(tmp_path)
    names = [c["check"] for s in doc["suites"] for c in s["checks"]]
    assert any(n.startswith("projective reduction") for n in names)
    assert (tmp_path / "out" / "interleave_qP3D7.csv").exists()


def test_propagate_modes(tmp_path):
    assert run(tmp_path, "propagate", config="radius = 1\n") == 0
    assert run(tmp_path, "propagate", "--mode", "numeric",
               config="b0 = 1.3\nb1 = 0.7\nb2 = 2.1\nb3 = 1.9\np = 1.6\nom1_1 = 0.4\nom3_1 = 1.7\n"
                      "om1_3 = 2.2\nom2_3 = 0.9\n") == 0
    rows = list(csv.reader(open(tmp_path / "out" / "omega.csv")))
    assert rows[0][:4] == ["l1", "l2", "l3", "l4"]


def test_simulate_pde_is_deterministic(tmp_path):
    cfg = "alpha0 = 3/2\nbeta0 = 2/3\ngamma0 = 5/4\nK0 = 7/3\nlam0 = 9/4\np = 5/3\nsize = 2\npairs = 3\n"
    assert run(tmp_path, "simulate-pde", "--seed", "4", config=cfg) == 0
    first = {p.name: p.read_bytes() for p in (tmp_path / "out").iterdir()}
    assert run(tmp_path, "simulate-pde", "--seed", "4", config=cfg) == 0
    second = {p.name: p.read_bytes() for p in (tmp_path / "out").iterdir()}
    assert first == second
    assert {"field_u.csv", "field_U.csv", "manifest.txt", "report.json"} <= set(first)


def test_reduce(tmp_path):
    cfg = "alpha0 = 3/2\nbeta0 = 2/3\ngamma0 = 5/4\nK0 = 7/3\nlam0 = 9/4\np = 5/3\n"
    assert run(tmp_path, "reduce", config=cfg) == 0
    assert {"field_U_periodic.csv", "omega_from_U.csv"} <= set(report(tmp_path)["artifacts"])


def test_reduce_with_degenerate_parameters_fails_cleanly(tmp_path, capsys):
    # alpha0 = beta0 makes the (1,2) face singular on the diagonal; H(0) is still reported
    assert run(tmp_path, "reduce", config="alpha0 = 1\nbeta0 = 1\ngamma0 = 1\nK0 = 1\nlam0 = 1\np = 2\n") == 1
    assert report(tmp_path)["data"]["H(0)"].startswith("1.47682614")
    assert "singular" in capsys.readouterr().out


@pytest.mark.parametrize("cfg,argv", [
    ("bogus = 1\n", ["verify-linear"]),
    ("t = abc\n", ["iterate", "qP4"]),
    ("no equals sign\n", ["verify-linear"]),
    ("alpha0 = -1\n", ["simulate-pde"]),
    ("t = 0.5\n", ["iterate", "qP4"]),
    ("", ["iterate", "qP4", "--mode", "prob"]),
    ("", ["verify-linear", "--precision", "3"]),
])
def test_configuration_errors_exit_2(tmp_path, cfg, argv):
    assert run(tmp_path, *argv, config=cfg) == 2


def test_missing_config_file(tmp_path):
    assert cli.main(["verify-linear", "--config", str(tmp_path / "nope.cfg"), "--out", str(tmp_path)]) == 2


def test_failed_verification_exits_1(tmp_path, monkeypatch, capsys):
    def failing(cfg):
        rep = Report("deliberate")
        rep.add("x = y", False, "mutated")
        return cli.Result([rep])
    monkeypatch.setitem(cli.RUNNERS, "verify-linear", failing)
    assert run(tmp_path, "verify-linear") == 1
    out = capsys.readouterr().out
    assert "FAIL deliberate" in out and "x = y" in out
    assert not report(tmp_path)["passed"]


def test_config_values_round_trip(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text("# header\nb0 = 3/7   # trailing\np = 0.125\nn = 12\norder = d4\n")
    vals = cli.read_config(str(path))
    assert vals == {"b0": Fraction(3, 7), "p": "0.125", "n": Fraction(12), "order": "d4"}
    assert all(cli.parse_value(cli._show(v)) == v for k, v in vals.items() if k != "order")


@pytest.mark.parametrize("name", ["spectral_A"] + [f"deformation_{t}" for t in lax_verify.TAGS])
def test_matrix_dumps_match_golden_files(name):
    m = lax_verify.spectral_matrix() if name == "spectral_A" else lax_verify.deformation_matrix(name.split("_")[1])
    assert m.to_text() + "\n" == (GOLDEN / f"{name}.txt").read_text()


def test_evolutions_match_golden_file():
    gold = json.loads((GOLDEN / "evolutions.json").read_text())
    for tag in weyl_a4.TAGS:
        d = weyl_a4.derive_painleve(tag).to_dict()
        now = json.loads(json.dumps({k: d[k] for k in gold[tag]}, default=str))
        assert now == gold[tag], tag
