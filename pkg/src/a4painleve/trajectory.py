"""Numeric and exact iteration of the four q-Painleve equations.

Two independent recursions are compared step by step:

* direct: each explicit two-sided equation solved for its forward value;
* symbolic: the A2+A1 word action on (b, f) pulled back to (t, c, F, G)
  through the correspondences.

For qP3D7 and qP4 the parameter constraints read b3 = 1 (and b1^2 = p b0^2
for qP3D7) in b-form.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import mpmath

from . import weyl_a2a1 as A2
from .symfield import GeneratorSet, RationalFunction, eval_numeric, eval_rational, substitute
from .weyl_a4 import PV_GS, TAGS, painleve_equations

WORD = {"qPV": ("T0",), "qPVstar": ("T13",), "qP3D7": ("R0",), "qP4": ("R13",)}
# shift symbol and state variables (current, lagging)
STEP = {"qPV": "q", "qPVstar": "q", "qP3D7": "p", "qP4": "p"}
CONSTANTS = {
    "qPV": ("c1", "c2", "c3", "q"),
    "qPVstar": ("c1", "c2", "c3", "q"),
    "qP3D7": ("c1", "p"),
    "qP4": ("c1", "c2", "p"),
}

P = PV_GS.parse


class IterationSingular(ZeroDivisionError):
    pass


def _affine_solve(eq: RationalFunction, name: str) -> RationalFunction:
    """Root of eq (affine in name)."""
    z = substitute(eq, {name: PV_GS.zero()})
    o = substitute(eq, {name: PV_GS.one()})
    return -z / (o - z)


@lru_cache(maxsize=None)
def direct_stages(tag: str) -> tuple:
    """Ordered (name, expression) pairs realizing one step of the explicit
    equations; later stages may use earlier values (Fup).

    qPV/qPVstar: state (t, F, G) -> (qt, Fbar, Gbar).
    qP3D7/qP4:   state (t, Gdown, G) -> (pt, G, Gup).
    """
    eqs = painleve_equations(tag)
    s = STEP[tag]
    t = PV_GS.sym("t")
    if tag in ("qPV", "qPVstar"):
        (_, l1, r1), (_, l2, r2) = eqs
        fbar = _affine_solve(l1 - r1, "Fup")
        # second equation one step later: t -> qt, F -> Fbar, G -> Gup, Gdown -> G
        shifted = substitute(l2 - r2, {"t": PV_GS.sym(s) * t, "F": PV_GS.sym("Fup"), "G": PV_GS.sym("Gup"),
                                       "Gdown": PV_GS.sym("G")})
        return (("Fup", fbar), ("Gup", _affine_solve(shifted, "Gup")), ("t", PV_GS.sym(s) * t),
                ("F", PV_GS.sym("Fup")), ("G", PV_GS.sym("Gup")))
    (_, l, r), = eqs
    return (("Gup", _affine_solve(l - r, "Gup")), ("t", PV_GS.sym(s) * t), ("Gdown", PV_GS.sym("G")),
            ("G", PV_GS.sym("Gup")))


@lru_cache(maxsize=None)
def direct_step(tag: str) -> dict:
    """The composed one-step map of the explicit equations."""
    env: dict = {}
    for name, expr in direct_stages(tag):
        env[name] = substitute(expr, env) if env else expr
    return {k: env[k] for k in state_names(tag)}


# ---------------------------------------------------------- symbolic map

def _pv_to_b(tag: str) -> dict:
    """FGS symbols (b, f1, f3) as PV_GS expressions on the tag's slice."""
    m = {}
    g = PV_GS.parse
    if tag == "qPV":
        m = {"p": g("q^(1/2)"), "b3": g("c2*q^(1/2)"), "b1": g("t^(1/2)"),
             "b0": g("c3^(1/2)*t^(1/2)*q^(-1/2)*c2^(-1/2)"), "b2": g("-c1*q^(3/4)*c3^(-1/2)")}
        m["f1"], m["f3"] = g("G"), g("F")
        return m
    if tag == "qPVstar":
        m = {"p": g("q^(1/2)"), "b2": g("t*q^(-1/4)"), "b1": g("c2^(1/2)*c3^(-1/2)"),
             "b0": g("-c1*c2/c3"), "b3": g("c2^-1*c3^-1*q^(-1/2)")}
        pref = m["b0"] / m["b1"] ** 2  # f = -(b0/b1^2) * variable
        m["f1"], m["f2"] = -pref * g("F"), -pref * g("G")
        return m
    if tag == "qP3D7":
        m = {"p": g("p"), "b3": PV_GS.one(), "b1": g("t^(1/2)"), "b0": g("t^(1/2)*p^(-1/2)"),
             "b2": g("-c1*p^(3/2)")}
        m["f1"], m["f3"] = g("G"), g("Gdown")
        return m
    if tag == "qP4":
        m = {"p": g("p"), "b3": PV_GS.one(), "b1": g("c2*p^(1/2)"), "b0": g("-c1*c2^2*p"),
             "b2": g("t*p^(-1/2)")}
        pref = m["b0"] / m["b1"] ** 2
        m["f1"], m["f2"] = -pref * g("Gdown"), -pref * g("G")
        return m
    raise KeyError(tag)


def _f3_from(m: dict) -> RationalFunction:
    """f3 from the f-relation, given f1 and f2 on the slice."""
    rel = A2.f_relation(A2.FRAW.sym("f1"), A2.FRAW.sym("f2"), A2.FRAW.sym("f3"), A2.FRAW)
    sub = {k: m[k] for k in A2.B_NAMES}
    sub.update(f1=m["f1"], f2=m["f2"])
    # affine in f3
    z = substitute(rel, dict(sub, f3=PV_GS.zero()), target=PV_GS)
    o = substitute(rel, dict(sub, f3=PV_GS.one()), target=PV_GS)
    return -z / (o - z)


@lru_cache(maxsize=None)
def symbolic_step(tag: str) -> dict:
    """The Weyl word action written in the tag's PV coordinates."""
    img = A2.f_action(WORD[tag])
    m = _pv_to_b(tag)
    if tag in ("qPVstar", "qP4"):
        m["f3"] = _f3_from(m)
    sub = {n: m[n] for n in A2.B_NAMES}
    sub.update(f1=m["f1"], f3=m["f3"], x=PV_GS.zero())

    def pull(e):
        return substitute(e, sub, target=PV_GS)

    b = {n: pull(img[n]) for n in A2.B_NAMES}
    f1, f2, f3 = pull(img["f1"]), pull(img["f2"]), pull(img["f3"])
    if tag == "qPV":
        t_new = b["b1"] ** 2
        return {"t": t_new, "F": f3, "G": f1}
    if tag == "qPVstar":
        pref = -(b["b1"] ** 2) / b["b0"]
        return {"t": b["b2"] * b["p"] ** Fraction(1, 2), "F": pref * f1, "G": pref * f2}
    if tag == "qP3D7":
        return {"t": b["b1"] ** 2, "Gdown": f3, "G": f1}
    pref = -(b["b1"] ** 2) / b["b0"]
    return {"t": b["b2"] * b["p"] ** Fraction(1, 2), "Gdown": pref * f1, "G": pref * f2}


# ---------------------------------------------------------- iteration

def state_names(tag: str) -> tuple:
    return ("t", "F", "G") if tag in ("qPV", "qPVstar") else ("t", "Gdown", "G")


@dataclass
class Trajectory:
    tag: str
    constants: dict
    rows: list = field(default_factory=list)  # list of dicts of state values

    def column(self, name: str) -> list:
        return [r[name] for r in self.rows]

    def write_csv(self, path, digits: int = 30):
        names = state_names(self.tag)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n"] + list(names))
            for n, r in enumerate(self.rows):
                w.writerow([n] + [_fmt(r[k], digits) for k in names])


def _fmt(v, digits):
    if isinstance(v, Fraction):
        return str(v)
    return mpmath.nstr(v, digits)


def _eval(f: RationalFunction, point: Mapping, exact: bool, digits: int):
    try:
        if exact:
            return eval_rational(f, point)
        return eval_numeric(f, point, digits)
    except ZeroDivisionError as exc:
        raise IterationSingular(str(exc)) from None


def iterate(tag: str, initial: Mapping, constants: Mapping, steps: int = 20, method: str = "direct",
            exact: bool = True, digits: int = 40) -> Trajectory:
    if tag not in TAGS:
        raise KeyError(tag)
    if method == "direct":
        stages = direct_stages(tag)
    else:
        stages = tuple(symbolic_step(tag).items())
    names = state_names(tag)
    conv = Fraction if exact else mpmath.mpmathify
    with mpmath.workdps(digits):
        consts = {k: conv(v) for k, v in constants.items()}
        state = {k: conv(initial[k]) for k in names}
    traj = Trajectory(tag, consts, [dict(state)])
    with mpmath.workdps(digits):
        for _ in range(steps):
            point = dict(consts)
            point.update(state)
            new = {}
            for name, expr in stages:
                new[name] = _eval(expr, point, exact, digits)
                if name not in names:
                    point[name] = new[name]
            state = {k: new[k] for k in names}
            traj.rows.append(dict(state))
    return traj


def random_initial(tag: str, seed: int = 0) -> tuple[dict, dict]:
    """Rational data with the square roots the symbolic slice needs."""
    rng = random.Random(seed)

    def r():
        return Fraction(rng.randint(1, 9), rng.randint(1, 9))

    def sq():
        return r() ** 2
    if tag == "qPV":
        c = {"c1": r(), "c2": sq(), "c3": sq(), "q": sq() ** 2}
        return {"t": sq(), "F": r(), "G": r()}, c
    if tag == "qPVstar":
        c = {"c1": r(), "c2": sq(), "c3": sq(), "q": sq() ** 2}
        return {"t": r(), "F": r(), "G": r()}, c
    if tag == "qP3D7":
        c = {"c1": r(), "p": sq()}
        return {"t": sq(), "Gdown": r(), "G": r()}, c
    c = {"c1": r(), "c2": r(), "p": sq()}
    return {"t": r(), "Gdown": r(), "G": r()}, c


def cross_check(tag: str, initial: Mapping, constants: Mapping, steps: int = 20, exact: bool = True,
                digits: int = 40) -> dict:
    """Direct recursion versus the symbolic map; returns max deviation."""
    a = iterate(tag, initial, constants, steps, "direct", exact, digits)
    b = iterate(tag, initial, constants, steps, "symbolic", exact, digits)
    worst = 0
    with mpmath.workdps(digits):
        for ra, rb in zip(a.rows, b.rows):
            for k in state_names(tag):
                if exact:
                    if ra[k] != rb[k]:
                        worst = max(worst, 1)
                else:
                    worst = max(worst, abs(ra[k] - rb[k]) / max(abs(ra[k]), 1))
    return {"direct": a, "symbolic": b, "max_deviation": worst, "agree": worst == 0 if exact else None}


def projective_interleaving(initial: Mapping, c1, p, steps: int = 10, digits: int = 40) -> dict:
    """qPV at c2 = 1/p, c3 = 1, q = p^2 with F0 = G(t0/p) against qP3D7:
    F_n = G(p^(2n-1) t0) and G_n = G(p^(2n) t0)."""
    with mpmath.workdps(digits):
        p = mpmath.mpmathify(p)
        pv = iterate("qPV", {"t": initial["t"], "F": initial["Gdown"], "G": initial["G"]},
                     {"c1": c1, "c2": 1 / p, "c3": 1, "q": p ** 2}, steps, "direct", False, digits)
        d7 = iterate("qP3D7", initial, {"c1": c1, "p": p}, 2 * steps, "direct", False, digits)
        gseq = [d7.rows[0]["Gdown"]] + d7.column("G")  # gseq[k + 1] = G(p^k t0)
        worst = mpmath.mpf(0)
        for n, row in enumerate(pv.rows):
            worst = max(worst, abs(row["F"] - gseq[2 * n]) / max(abs(row["F"]), 1),
                        abs(row["G"] - gseq[2 * n + 1]) / max(abs(row["G"]), 1),
                        abs(row["t"] - d7.rows[2 * n]["t"]) / max(abs(row["t"]), 1))
    return {"qPV": pv, "qP3D7": d7, "max_deviation": worst}
