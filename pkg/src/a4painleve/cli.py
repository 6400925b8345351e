"""Command-line front end: verification suites, derivations, lattice
propagation, the Z^4 simulator and trajectory iteration.

Every run writes report.json and report.txt (plus CSVs) to --out.  Exit
code 0 when every check passes, 1 on a failed check, 2 on a bad config.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import lattice_linear, lax_verify, omega_lattice, pde_sim, trajectory, weyl_a2a1, weyl_a4
from .lattice_linear import Report

log = logging.getLogger("a4painleve")

COMMANDS = ("verify-linear", "verify-weyl-a4", "verify-weyl-a2a1", "derive-qp", "verify-quads", "verify-lax",
            "propagate", "simulate-pde", "reduce", "iterate")
MODES = ("exact", "prob", "numeric")


class ConfigError(ValueError):
    pass


# ------------------------------------------------------------------ config

def parse_value(text: str):
    """Integers and num/den become Fractions; decimals stay strings so the
    numeric code can read them at full precision."""
    text = text.strip()
    if not text:
        raise ConfigError("empty value")
    if "." in text or "e" in text.lower():
        try:
            mpmath.mpf(text)
        except (ValueError, TypeError):
            raise ConfigError(f"not a number: {text!r}") from None
        return text
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a number: {text!r}") from None


def read_config(path: str) -> dict:
    values = {}
    try:
        fh = open(path)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    with fh:
        for n, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{n}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            if not k:
                raise ConfigError(f"{path}:{n}: empty key")
            if k in ("order",):
                values[k] = v
            else:
                try:
                    values[k] = parse_value(v)
                except ConfigError as exc:
                    raise ConfigError(f"{path}:{n}: {exc}") from None
    return values


def _show(v) -> str:
    return str(v)


def _mp(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpmathify(v)


@dataclass
class RunConfig:
    command: str
    target: str | None = None
    values: dict = field(default_factory=dict)
    precision: int = 40
    seed: int = 0
    mode: str = "exact"
    trials: int = 20
    jobs: int = 1
    out: str = "a4painleve-out"

    def get(self, key, default=None):
        return self.values.get(key, default)

    def integer(self, key, default: int) -> int:
        v = self.values.get(key, default)
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        if isinstance(v, int):
            return v
        raise ConfigError(f"{key} must be an integer, got {v}")

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "target": self.target,
            "mode": self.mode,
            "precision": self.precision,
            "seed": self.seed,
            "trials": self.trials,
            "values": {k: _show(v) for k, v in sorted(self.values.items())},
        }


ALLOWED = {
    "verify-linear": set(),
    "verify-weyl-a4": {"quick"},
    "verify-weyl-a2a1": {"quick"},
    "derive-qp": set(),
    "verify-quads": {"radius_prop", "cross_radius"},
    "verify-lax": set(),
    "propagate": {"radius", "order", "b0", "b1", "b2", "b3", "p"} | set(omega_lattice.INITIAL_SYMBOLS),
    "simulate-pde": {"alpha0", "beta0", "gamma0", "K0", "lam0", "p", "size", "pairs"},
    "reduce": {"alpha0", "beta0", "gamma0", "K0", "lam0", "p", "radius"},
    "iterate": {"t", "F", "G", "Gdown", "c1", "c2", "c3", "q", "p", "steps"},
}


def _check_keys(cfg: RunConfig):
    extra = sorted(set(cfg.values) - ALLOWED[cfg.command])
    if extra:
        raise ConfigError(f"unknown config keys for {cfg.command}: {', '.join(extra)}")


# ----------------------------------------------------------------- results

@dataclass
class Result:
    suites: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    highlights: list = field(default_factory=list)
    artifacts: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.suites) and all(s.passed for s in self.suites)


def _suite_dict(rep: Report) -> dict:
    # timings are left out so identical runs give identical files
    return {"title": rep.title, "passed": rep.passed, "checks": rep.checks}


def write_reports(cfg: RunConfig, res: Result):
    os.makedirs(cfg.out, exist_ok=True)
    doc = {
        "config": cfg.to_dict(),
        "passed": res.passed,
        "highlights": res.highlights,
        "data": res.data,
        "suites": [_suite_dict(s) for s in res.suites],
        "artifacts": sorted(set(res.artifacts) | {"report.json", "report.txt"}),
    }
    with open(os.path.join(cfg.out, "report.json"), "w") as fh:
        json.dump(doc, fh, indent=2, default=str)
        fh.write("\n")
    lines = [f"a4painleve {cfg.command}" + (f" {cfg.target}" if cfg.target else "") + f": {'PASS' if res.passed else 'FAIL'}"]
    lines += res.highlights
    for s in res.suites:
        lines.append(s.to_text())
    with open(os.path.join(cfg.out, "report.txt"), "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _artifact(cfg: RunConfig, res: Result, name: str) -> str:
    os.makedirs(cfg.out, exist_ok=True)
    res.artifacts.append(name)
    return os.path.join(cfg.out, name)


# ---------------------------------------------------------------- commands

def run_verify_linear(cfg: RunConfig) -> Result:
    return Result([lattice_linear.verify_linear_relations()])


def run_verify_weyl_a4(cfg: RunConfig) -> Result:
    return Result([weyl_a4.verify_birational(quick=bool(cfg.get("quick", 0)))])


def run_verify_weyl_a2a1(cfg: RunConfig) -> Result:
    return Result([weyl_a2a1.verify_a2a1(quick=bool(cfg.get("quick", 0)))])


def _derive(tag: str) -> dict:
    return weyl_a4.derive_painleve(tag).to_dict()


def _parallel(fn, items, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def run_derive_qp(cfg: RunConfig) -> Result:
    tags = list(weyl_a4.TAGS) if cfg.target == "all" else [cfg.target]
    res = Result()
    for tag, d in zip(tags, _parallel(_derive, tags, cfg.jobs)):
        rep = Report(f"derivation of {tag}")
        rep.checks = d.pop("checks")
        if cfg.mode in ("prob", "numeric"):
            dev = weyl_a4.numeric_spot_check(tag, seed=cfg.seed, digits=cfg.precision)
            rep.add("numeric spot check of the explicit equations", dev < 10.0 ** (5 - cfg.precision), f"{dev:.3g}")
        res.suites.append(rep)
        res.data[tag] = d
        res.highlights.append(f"{tag}: word {d['word']}, parameter motion {d['parameter_motion']}")
    return res


def run_verify_quads(cfg: RunConfig) -> Result:
    res = Result([weyl_a4.verify_quads(cfg.mode if cfg.mode != "numeric" else "prob")])
    res.suites.append(omega_lattice.verify_lattice(radius_prop=cfg.integer("radius_prop", 2),
                                                   cross_radius=cfg.integer("cross_radius", 4), seed=cfg.seed))
    return res


def _lax(tag: str, mode: str, trials: int, seed: int) -> Report:
    return lax_verify.verify_lax([tag], mode, trials, seed)


def _lax_job(args):
    return _lax(*args)


def run_verify_lax(cfg: RunConfig) -> Result:
    tags = list(lax_verify.TAGS) if cfg.target == "all" else [cfg.target]
    mode = "prob" if cfg.mode == "numeric" else cfg.mode
    if cfg.jobs > 1 and len(tags) > 1:
        reps = _parallel(_lax_job, [(t, mode, cfg.trials, cfg.seed) for t in tags], cfg.jobs)
    else:
        reps = [lax_verify.verify_lax(tags, mode, cfg.trials, cfg.seed)]
    res = Result(reps)
    for rep in reps:
        for c in rep.checks:
            if c["check"].endswith(": residual = 0"):
                res.highlights.append(c["detail"])
    return res


def run_propagate(cfg: RunConfig) -> Result:
    radius = cfg.integer("radius", 2)
    order = cfg.get("order", "shells")
    if order not in ("shells", "h3", "d4"):
        raise ConfigError(f"order must be shells, h3 or d4, not {order}")
    pkeys = ("b0", "b1", "b2", "b3", "p")
    given = [k for k in pkeys + omega_lattice.INITIAL_SYMBOLS if k in cfg.values]
    res = Result()
    if not given:
        assign = omega_lattice.propagate(region_pts=radius, order=order, check=False)
        rep = omega_lattice.check_consistency(assign)
        res.suites.append(rep)
        cross = Report("propagated values against rho words")
        for l in omega_lattice.region(radius):
            cross.add(f"weyl cross check {l}", omega_lattice.weyl_cross_check(l, assign))
        res.suites.append(cross)
    else:
        import random

        rng = random.Random(cfg.seed)
        exact = cfg.mode != "numeric"

        def val(k):
            v = cfg.values.get(k)
            if v is None:
                v = Fraction(rng.randint(1, 2 ** 16), rng.randint(1, 2 ** 16))
            if exact:
                try:
                    return Fraction(v)
                except ValueError:
                    raise ConfigError(f"{k}={v} is not exact; use --mode numeric") from None
            return mpmath.mpmathify(v)

        with mpmath.workdps(cfg.precision):
            pv = {k: val(k) for k in pkeys}
            if exact and "b3" not in cfg.values:
                pv["b3"] = pv["b3"] ** 2
            try:
                P = omega_lattice.LatticeParams.from_values(pv["b0"], pv["b1"], pv["b2"], pv["b3"], pv["p"], exact=exact)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            init = {pt: val(n) for pt, n in zip(omega_lattice.INITIAL_POINTS, omega_lattice.INITIAL_SYMBOLS)}
            init = {pt: init[pt] for pt in omega_lattice.INITIAL_POINTS}
            assign = omega_lattice.propagate(init, radius, P, order=order, check=False, precision=cfg.precision)
            res.suites.append(omega_lattice.check_consistency(assign, precision=cfg.precision))
    assign.export_csv(_artifact(cfg, res, "omega.csv"), digits=cfg.precision)
    res.data["points"] = len(assign.values)
    res.data["mode"] = assign.mode
    res.highlights.append(f"{len(assign.values)} points filled ({assign.mode})")
    return res


def _params4d(cfg: RunConfig) -> pde_sim.Params4D:
    with mpmath.workdps(cfg.precision):
        vals = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in cfg.values.items()
                if k in ("alpha0", "beta0", "gamma0", "K0", "lam0", "p")}
        P = pde_sim.Params4D.from_mapping(vals)
    for k, v in P.to_dict().items():
        if not mpmath.mpf(v) > 0:
            raise ConfigError(f"{k} must be positive (principal branches are only unambiguous there)")
    return P


def _num(z, digits: int = 20) -> str:
    z = mpmath.mpmathify(z)
    return mpmath.nstr(z.real if mpmath.im(z) == 0 else z, digits)


def _singular(title: str, exc: Exception) -> Result:
    # degenerate parameters (e.g. alpha0 = beta0 kills the (1,2) face on l1 = l2)
    rep = Report(title)
    rep.add("solve stays off singular faces", False, str(exc))
    return Result([rep])


def run_simulate_pde(cfg: RunConfig) -> Result:
    P = _params4d(cfg)
    fields = {}
    with mpmath.workdps(cfg.precision):
        try:
            rep = pde_sim.simulate(P, size=cfg.integer("size", 3), precision=cfg.precision, seed=cfg.seed,
                                   pairs=cfg.integer("pairs", 10), fields=fields)
        except pde_sim.SingularityEncountered as exc:
            return _singular("Z^4 system", exc)
        res = Result([rep])
        fields["u"].export_csv(_artifact(cfg, res, "field_u.csv"))
        fields["U"].export_csv(_artifact(cfg, res, "field_U.csv"))
    pde_sim.write_manifest(_artifact(cfg, res, "manifest.txt"), P, cfg.precision, cfg.seed)
    res.data["points"] = len(fields["u"].values)
    return res


def run_reduce(cfg: RunConfig) -> Result:
    P = _params4d(cfg)
    fields = {}
    radius = cfg.integer("radius", 2)
    with mpmath.workdps(cfg.precision):
        try:
            rep = pde_sim.reduction(P, precision=cfg.precision, seed=cfg.seed, radius=radius, fields=fields)
        except pde_sim.SingularityEncountered as exc:
            res = _singular("(1,1,1,1)-periodic reduction", exc)
            res.data["H(0)"] = _num(pde_sim.H_gauge((0, 0, 0, 0), P))
            return res
        res = Result([rep])
        fU = fields["U"]
        fU.export_csv(_artifact(cfg, res, "field_U_periodic.csv"))
        om = pde_sim.omega_values(fU, sorted(fU.values))
        path = _artifact(cfg, res, "omega_from_U.csv")
        with open(path, "w") as fh:
            fh.write("l1,l2,l3,l4,re,im\n")
            for l, v in om.items():
                v = mpmath.mpc(v)
                fh.write(",".join(map(str, l)) + f",{mpmath.nstr(v.real, 30)},{mpmath.nstr(v.imag, 30)}\n")
        res.data["H(0)"] = _num(pde_sim.H_gauge((0, 0, 0, 0), P))
    pde_sim.write_manifest(_artifact(cfg, res, "manifest.txt"), P, cfg.precision, cfg.seed, {"radius": radius})
    return res


def run_iterate(cfg: RunConfig) -> Result:
    tag = cfg.target
    if cfg.mode == "prob":
        raise ConfigError("iterate runs in exact or numeric mode")
    exact = cfg.mode == "exact"
    init, consts = trajectory.random_initial(tag, cfg.seed)
    names = trajectory.state_names(tag)
    for k in list(cfg.values):
        if k == "steps":
            continue
        if k in names:
            init[k] = cfg.values[k]
        elif k in trajectory.CONSTANTS[tag]:
            consts[k] = cfg.values[k]
        else:
            raise ConfigError(f"{k} is not a variable or constant of {tag}")
    if exact and not all(isinstance(v, Fraction) for v in list(init.values()) + list(consts.values())):
        raise ConfigError("exact iteration needs rational data; use --mode numeric for decimals")
    steps = cfg.integer("steps", 20)
    try:
        cc = trajectory.cross_check(tag, init, consts, steps, exact=exact, digits=cfg.precision)
    except trajectory.IterationSingular as exc:
        rep = Report(f"{tag} trajectory")
        rep.add("iteration stays off singular values", False, str(exc))
        return Result([rep])
    except ValueError as exc:
        # fractional powers with no exact rational value
        raise ConfigError(str(exc)) from None
    rep = Report(f"{tag} trajectory, {steps} steps, {cfg.mode}")
    if exact:
        rep.add("direct recursion = symbolic map evaluation (exact)", cc["agree"])
    else:
        tol = mpmath.mpf(10) ** (5 - cfg.precision)
        rep.add("direct recursion = symbolic map evaluation (numeric)", cc["max_deviation"] <= tol,
                mpmath.nstr(cc["max_deviation"], 3))
    res = Result([rep])
    cc["direct"].write_csv(_artifact(cfg, res, f"trajectory_{tag}.csv"), digits=cfg.precision)
    if tag in ("qPV", "qP3D7"):
        # the qPV data is read as qP3D7 data: F plays G(t/p) and p = q^(1/2)
        with mpmath.workdps(cfg.precision):
            start = {"t": _mp(init["t"]), "Gdown": _mp(init["Gdown" if tag == "qP3D7" else "F"]), "G": _mp(init["G"])}
            p = _mp(consts["p"]) if tag == "qP3D7" else mpmath.sqrt(_mp(consts["q"]))
            inter = trajectory.projective_interleaving(start, _mp(consts["c1"]), p, steps=max(steps // 2, 1),
                                                       digits=cfg.precision)
            tol = mpmath.mpf(10) ** (5 - cfg.precision)
            rep.add("projective reduction: qPV at c2=1/p, c3=1, q=p^2 interleaves qP3D7",
                    inter["max_deviation"] <= tol, mpmath.nstr(inter["max_deviation"], 3))
        inter["qPV"].write_csv(_artifact(cfg, res, "interleave_qPV.csv"), digits=cfg.precision)
        inter["qP3D7"].write_csv(_artifact(cfg, res, "interleave_qP3D7.csv"), digits=cfg.precision)
    res.data["initial"] = {k: str(v) for k, v in init.items()}
    res.data["constants"] = {k: str(v) for k, v in consts.items()}
    res.data["steps"] = steps
    return res


RUNNERS = {
    "verify-linear": run_verify_linear,
    "verify-weyl-a4": run_verify_weyl_a4,
    "verify-weyl-a2a1": run_verify_weyl_a2a1,
    "derive-qp": run_derive_qp,
    "verify-quads": run_verify_quads,
    "verify-lax": run_verify_lax,
    "propagate": run_propagate,
    "simulate-pde": run_simulate_pde,
    "reduce": run_reduce,
    "iterate": run_iterate,
}


# --------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file, '#' comments, rationals as num/den")
    common.add_argument("--precision", type=int, default=40, help="decimal digits for numeric work (default 40)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--mode", choices=MODES, default="exact")
    common.add_argument("--out", default="a4painleve-out", help="output directory")
    common.add_argument("--trials", type=int, default=20, help="random points for prob mode")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for multi-suite runs")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="a4painleve", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "derive-qp":
            sp.add_argument("target", choices=list(weyl_a4.TAGS) + ["all"])
        elif name == "verify-lax":
            sp.add_argument("target", choices=list(lax_verify.TAGS) + ["all"])
        elif name == "iterate":
            sp.add_argument("target", choices=list(trajectory.TAGS))
    return ap


def make_config(ns: argparse.Namespace) -> RunConfig:
    if ns.precision < 10:
        raise ConfigError("precision must be at least 10 digits")
    if ns.trials < 1:
        raise ConfigError("trials must be positive")
    values = read_config(ns.config) if ns.config else {}
    cfg = RunConfig(ns.command, getattr(ns, "target", None), values, ns.precision, ns.seed, ns.mode, ns.trials,
                    ns.jobs, ns.out)
    _check_keys(cfg)
    return cfg


def main(argv=None) -> int:
    sys.set_int_max_str_digits(0)
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = make_config(ns)
        t0 = time.perf_counter()
        res = RUNNERS[cfg.command](cfg)
        write_reports(cfg, res)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    log.info("%s finished in %.1f s", cfg.command, time.perf_counter() - t0)
    for line in res.highlights:
        print(line)
    for s in res.suites:
        status = "PASS" if s.passed else "FAIL"
        print(f"{status} {s.title} ({len(s.checks)} checks)")
        for c in s.failures():
            print(f"  failed: {c['check']} {c['detail']}".rstrip())
    return 0 if res.passed else 1


if __name__ == "__main__":
    sys.exit(main())
