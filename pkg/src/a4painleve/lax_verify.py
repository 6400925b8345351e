"""Spectral and deformation matrices of the shared linear problem and the
exact check of their compatibility conditions.

Everything lives in the generator set ``FGS`` = (b0..b3, p, f1, f3, x):
f1 = f1^(1), f3 = f1^(3), and f1^(2) is always eliminated through the
f-relation, so identities are tested in a free field.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import mpmath

from .lattice_linear import Report
from .symfield import RationalFunction, equals, substitute, to_text
from .weyl_a2a1 import (
    B_NAMES,
    FGS,
    FRAW,
    DegenerateElimination,
    eliminate_f2,
    f_action,
)

TAGS = ("T0", "T13", "R0", "R13")

P = FGS.parse
X = FGS.sym("x")

Matrix = tuple  # ((a, b), (c, d))


class MissingFieldValue(KeyError):
    pass


# ------------------------------------------------------------ 2x2 helpers

def mat(a, b, c, d) -> Matrix:
    return ((a, b), (c, d))


def mmul(m: Matrix, n: Matrix) -> Matrix:
    return tuple(tuple(m[i][0] * n[0][j] + m[i][1] * n[1][j] for j in range(2)) for i in range(2))


def msub(m: Matrix, n: Matrix) -> Matrix:
    return tuple(tuple(m[i][j] - n[i][j] for j in range(2)) for i in range(2))


def mdet(m: Matrix):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mmap(m: Matrix, fn) -> Matrix:
    return tuple(tuple(fn(e) for e in row) for row in m)


def is_zero_matrix(m: Matrix) -> bool:
    return all(e.is_zero() for row in m for e in row)


def product(factors: Sequence[Matrix]) -> Matrix:
    out = factors[0]
    for f in factors[1:]:
        out = mmul(out, f)
    return out


# --------------------------------------------------------------- shapes

# "x": degree exactly one in x, no constant term; "c": free of x; "0": zero
SHAPE_FULL = (("x", "c"), ("c", "x"))
SHAPE_CORNER = (("x", "c"), ("c", "0"))


def entry_kind(e: RationalFunction) -> str | None:
    if e.is_zero():
        return "0"
    rng = e.degree_range("x")
    if rng is None:
        return None
    if rng == (0, 0):
        return "c"
    if rng == (1, 1):
        return "x"
    return None


def shape_of(m: Matrix):
    return tuple(tuple(entry_kind(e) for e in row) for row in m)


def x_degree(e: RationalFunction):
    rng = e.degree_range("x")
    return None if rng is None else int(rng[1])


# ---------------------------------------------------------- LaxMatrix

@dataclass
class LaxMatrix:
    factors: list
    shapes: list = field(default_factory=list)
    label: str = ""
    _product: Matrix | None = field(default=None, repr=False)

    @property
    def matrix(self) -> Matrix:
        if self._product is None:
            self._product = product(self.factors)
        return self._product

    def shape_ok(self) -> bool:
        return all(shape_of(f) == s for f, s in zip(self.factors, self.shapes))

    def factor_det_degrees(self) -> list:
        return [int(x_degree(mdet(f))) for f in self.factors]

    def to_text(self) -> str:
        lines = [f"{self.label}: {len(self.factors)} factor(s)"]
        for k, f in enumerate(self.factors, start=1):
            for i in range(2):
                for j in range(2):
                    lines.append(f"  F{k}[{i + 1},{j + 1}] = {to_text(f[i][j])}")
        return "\n".join(lines)

    def evaluate(self, point: Mapping[str, object], digits: int = 30):
        from .symfield import eval_numeric
        return [mmap(f, lambda e: eval_numeric(e, point, digits)) for f in self.factors]


def _f2() -> RationalFunction:
    return eliminate_f2(FGS.sym("f1"), FGS.sym("f3"))


# the explicit factors; f2 only appears through the eliminated expression
_A_FACTORS = [
    ("b2/p*x", "b3",
     "-b3^(1/2)*(p^2*b0^3*b3^(1/2)*f3 - b1*b2)*(b0*b2*b3^(1/2) + p*b0^3*b2*b3^(3/2)*f3 - p*b1^3*f1)"
     "/(p^3*b0^3*b1^3*f1*f3)",
     "0"),
    ("-p*b0*b1*x",
     "-p^3*b0^4*b1*b3^(1/2)*f3/(b0*b2*b3^(1/2) + p*b0^3*b2*b3^(3/2)*f3 - p*b1^3*f1)",
     "b1*(p*b1^3*f1 - b0*b2*b3^(1/2))/(p*b0^2*b3^(5/2)*f3)",
     "p*b0*b1*(p*b1^3*f1 - b0*b2*b3^(1/2))/(b0*b2*b3^(5/2) + p*b0^3*b2*b3^(7/2)*f3 - p*b1^3*b3^2*f1)*x"),
    ("-b0/b1*x",
     "p*b0^2*b3^(3/2)/(b1*(p*b1^3*f1 - b0*b2*b3^(1/2)))",
     "b3^(1/2)*f1",
     "p*b0*b1^2*b3^2*f1/(b0*b2*b3^(1/2) - p*b1^3*f1)*x"),
    ("-b1/(p*b0)*x",
     "b1^2/(b0*b3*(p^2*b0^3*b3^(1/2)*f3 - b1*b2))",
     "f3/b3^(1/2)",
     "-p*b0^2*b1*f3/(b3^(3/2)*(p^2*b0^3*b3^(1/2)*f3 - b1*b2))*x"),
]
_A_SHAPES = [SHAPE_CORNER, SHAPE_FULL, SHAPE_FULL, SHAPE_FULL]


def _parse_factor(texts, extra: Mapping[str, RationalFunction] | None = None) -> Matrix:
    out = []
    for t in texts:
        e = P(t)
        if extra:
            e = substitute(e, extra)
        out.append(e)
    return mat(*out)


def _check_elimination(state: Mapping[str, RationalFunction] | None):
    if state is None:
        return
    if state["f1"].is_zero() or state["f3"].is_zero():
        raise DegenerateElimination("f1^(1) or f1^(3) vanishes identically")


def _at_state(m: Matrix, state) -> Matrix:
    if state is None:
        return m
    return mmap(m, lambda e: substitute(e, state))


@lru_cache(maxsize=None)
def _spectral_generic() -> LaxMatrix:
    fac = [_parse_factor(t) for t in _A_FACTORS]
    return LaxMatrix(fac, list(_A_SHAPES), "A")


def spectral_matrix(state: Mapping[str, RationalFunction] | None = None) -> LaxMatrix:
    """A as the explicit four-factor product.  ``state`` optionally assigns
    FGS-valued expressions to the FGS symbols (used to apply an evolution)."""
    _check_elimination(state)
    gen = _spectral_generic()
    if state is None:
        return gen
    return LaxMatrix([_at_state(f, state) for f in gen.factors], list(gen.shapes), "A")


# ------------------------------------------------------ evolution maps

K_TEXT = "b0^2/b1^4"
T0_F3_RHS = ("b1*(b3 + p*b1^2*f1)*(-b0*b2*b3^(1/2) + p*b1^3*f1)"
             "/(p^4*b0^4*b3^2*(p*b0^2*b3 + b1^2*f1))")
T0INV_F1_RHS = ("p*b0*(1/b3 + p*b0^2*f3)*(-b1*b2*b3^(-1/2)/p + p*b0^3*f3)"
                "/(b1^4*b3^-2*(b1^2/b3 + p*b0^2*f3))")
T13_F1_RHS = ("b0^2*b2^2*(p*b0^2 + b1^2*b3*f2)*(1 + p*b1^2*b3*f2)"
              "/(p*b1^7*b3^(1/2)*(-b0*b2 + b1^3*b3^(1/2)*f2))")
T13INV_F2_RHS = ("b0^2*b2^2*(p*b0^2*b3 + b1^2*f1)*(b3 + p*b1^2*f1)"
                 "/(p^2*b1^7*b3*(-b0*b2*b3^(1/2) + p*b1^3*f1))")

PARAM_TEXT = {
    "T0": ("p*b0", "p*b1", "b2", "b3", "p"),
    "T13": ("b0", "b1", "p^2*b2", "b3", "p"),
    "R0": ("b1", "p*b0", "b2", "1/b3", "p"),
    "R13": ("b0", "b1", "p*b2", "1/b3", "p"),
}


def _expr(text: str, subs: Mapping[str, RationalFunction]) -> RationalFunction:
    return substitute(FRAW.parse(text), subs, target=FGS)


def _subs(params: Mapping[str, RationalFunction], **fs) -> dict:
    d = dict(params)
    d.update(fs)
    return d


def parameter_map(tag: str) -> dict:
    return {n: P(t) for n, t in zip(B_NAMES, PARAM_TEXT[tag])}


def _solve_f3(bmap: Mapping[str, RationalFunction], f1, f2) -> RationalFunction:
    """f3 from the f-relation with parameters bmap (it is linear in f3)."""
    c0 = _expr("b1*b2*b3 + p*b1^3*b2*f1", _subs(bmap, f1=f1, f2=f2, f3=FGS.zero()))
    c3 = _expr("p^2*b0^3*b3^(3/2) - p^2*b0*b1^4*b3^(3/2)*f1*f2", _subs(bmap, f1=f1, f2=f2, f3=FGS.zero()))
    return c0 / c3


@lru_cache(maxsize=None)
def evolution_map(tag: str, perturb: int = 1, which: int = 1) -> dict:
    """Images of b, p, f1, f3 in FGS under a deformation, built from the
    explicit evolution equations.  ``perturb`` multiplies the right-hand
    side of explicit equation number ``which`` (1 or 2)."""
    ident = {n: FGS.sym(n) for n in B_NAMES}
    f1, f3 = FGS.sym("f1"), FGS.sym("f3")
    f2 = _f2()
    here = _subs(ident, f1=f1, f2=f2, f3=f3)
    bmap = parameter_map(tag)
    k = P(K_TEXT)
    c1, c2 = (perturb, 1) if which == 1 else (1, perturb)
    out = dict(bmap)
    if tag == "T0":
        nf3 = c1 * _expr(T0_F3_RHS, here) / f3
        # the second equation, pushed forward by T0
        nf1 = c2 * _expr(T0INV_F1_RHS, _subs(bmap, f1=FGS.zero(), f2=FGS.zero(), f3=nf3)) / f1
    elif tag == "R0":
        nf3 = c1 * f1
        nf1 = c2 * _expr(T0_F3_RHS, here) / f3
    elif tag == "R13":
        nf1 = c1 * f2
        r13f2 = (c2 * _expr(T13_F1_RHS, here) / (f1 * f2 - k) + k) / f2
        nf3 = _solve_f3(bmap, nf1, r13f2)
    elif tag == "T13":
        nf1 = (c1 * _expr(T13_F1_RHS, here) / (f1 * f2 - k) + k) / f2
        g = c2 * _expr(T13INV_F2_RHS, _subs(bmap, f1=nf1, f2=FGS.zero(), f3=FGS.zero()))
        t13f2 = (g / (nf1 * f2 - k) + k) / nf1
        nf3 = _solve_f3(bmap, nf1, t13f2)
    else:
        raise KeyError(tag)
    out["f1"], out["f3"], out["x"] = nf1, nf3, X
    return out


def mapped_f2(tag: str, perturb: int = 1) -> RationalFunction:
    """Image of f1^(2) under the evolution, via elimination in the image
    parameters."""
    m = evolution_map(tag, perturb)
    e = eliminate_f2(FGS.sym("f1"), FGS.sym("f3"))
    return substitute(e, m)


WORD_OF = {"T0": ("T0",), "T13": ("T13",), "R0": ("R0",), "R13": ("R13",)}


def cross_check_evolution(tag: str) -> dict:
    """Explicit evolution map versus the Weyl-group word action."""
    m = evolution_map(tag)
    w = f_action(WORD_OF[tag])
    return {n: m[n] == w[n] for n in B_NAMES + ("f1", "f3")}


# ------------------------------------------------------ deformations

_B_R0 = _A_FACTORS[3]
_B_T0 = (_A_FACTORS[2], _A_FACTORS[3])


def _r13_f3() -> RationalFunction:
    return evolution_map("R13")["f3"]


def _t13_f3() -> RationalFunction:
    return evolution_map("T13")["f3"]


def deformation_matrix(tag: str, state: Mapping[str, RationalFunction] | None = None) -> LaxMatrix:
    _check_elimination(state)
    f2 = _f2()
    if tag == "T0":
        lm = LaxMatrix([_parse_factor(t) for t in _B_T0], [SHAPE_FULL, SHAPE_FULL], "B_T0")
    elif tag == "R0":
        lm = LaxMatrix([_parse_factor(_B_R0)], [SHAPE_FULL], "B_R0")
    elif tag == "R13":
        fac = mat(P("b2/p*x"), P("1/b3"),
                  P("p*b0*f3/(b1^2*b3)") * (P("p*b0^3") * _r13_f3() - P("b1*b2*b3^(1/2)")),
                  FGS.zero())
        lm = LaxMatrix([fac], [SHAPE_CORNER], "B_R13")
    elif tag == "T13":
        s = FRAW
        subs = {"f1": FGS.sym("f1"), "f2": f2, "f3": FGS.sym("f3")}
        subs.update({n: FGS.sym(n) for n in B_NAMES})

        def E(t):
            return substitute(s.parse(t), subs, target=FGS)
        lower1 = (E("p*b1*b3^(1/2)*f1*(b1^3*b3^(1/2)*f2 - b0*b2)/(b0^2*(p^2*b0^3*b3^(1/2)*f3 - b1*b2))")
                  * (P("p*b0^3*b3^(1/2)") * _t13_f3() - P("p*b1*b2")))
        lower2 = E("p*b0*f3/(b1*b3)*(p*b1^2*f1*(b0*b2 - b1^3*b3^(1/2)*f2)/(b1*b2 - p^2*b0^3*b3^(1/2)*f3)"
                   " - b2*b3^(1/2))")
        fac1 = mat(P("b2*x"), P("b3"), lower1, FGS.zero())
        fac2 = mat(P("b2/p*x"), P("1/b3"), lower2, FGS.zero())
        lm = LaxMatrix([fac1, fac2], [SHAPE_CORNER, SHAPE_CORNER], "B_T13")
    else:
        raise KeyError(tag)
    if state is not None:
        lm = LaxMatrix([_at_state(f, state) for f in lm.factors], lm.shapes, lm.label)
    return lm


# ------------------------------------------------------ compatibility

@dataclass
class CompatibilityResidual:
    tag: str
    matrix: Matrix
    perturb: int = 1

    @property
    def is_zero(self) -> bool:
        return is_zero_matrix(self.matrix)

    def numerators(self):
        return [[e.num for e in row] for row in self.matrix]

    def cleared_denominators_nonzero(self) -> bool:
        return all(not e.den.is_zero() for row in self.matrix for e in row)

    def summary(self) -> str:
        if self.is_zero:
            return f"{self.tag}: residual = 0"
        sizes = [e.size() for row in self.matrix for e in row]
        return f"{self.tag}: residual nonzero (entry sizes {sizes})"


def _px(m: Matrix) -> Matrix:
    return mmap(m, lambda e: substitute(e, {"x": P("p*x")}))


def compatibility_residual(tag: str, perturb: int = 1, which: int = 1) -> CompatibilityResidual:
    """W(A).B - B(px).A with W acting through the explicit evolution."""
    wmap = evolution_map(tag, perturb, which)
    A = spectral_matrix().matrix
    WA = product([mmap(f, lambda e: substitute(e, wmap)) for f in spectral_matrix().factors])
    B = deformation_matrix(tag).matrix
    res = msub(mmul(WA, B), mmul(_px(B), A))
    return CompatibilityResidual(tag, res, perturb)


# ------------------------------------------------------ verification

def verify_lax(tags: Sequence[str] = TAGS, mode: str = "exact", trials: int = 20, seed: int = 0) -> Report:
    t0 = time.perf_counter()
    rep = Report("Lax pair compatibility")
    A = spectral_matrix()
    rep.add("A factor shapes", A.shape_ok(), str([shape_of(f) for f in A.factors]))
    degs = A.factor_det_degrees()
    rep.add("A factor det x-degrees", degs == [0, 2, 2, 2], str(degs))
    rep.add("det A x-degree 6", x_degree(mdet(A.matrix)) == 6)
    full = A.factors[0][1][0].is_zero() is False and A.factors[0][1][1].is_zero()
    rep.add("A factor 1: (2,1) nonzero, (2,2) zero", full)
    for tag in tags:
        B = deformation_matrix(tag)
        rep.add(f"B_{tag} shapes", B.shape_ok(), str([shape_of(f) for f in B.factors]))
    if "R0" in tags:
        rep.add("B_R0 = fourth factor of A", deformation_matrix("R0").matrix == A.factors[3])
    if "T0" in tags:
        rep.add("B_T0 = third.fourth factors of A",
                deformation_matrix("T0").matrix == mmul(A.factors[2], A.factors[3]))
    if "T13" in tags or "R13" in tags:
        br = deformation_matrix("R13").matrix
        r13 = evolution_map("R13")
        lhs = mmul(mmap(br, lambda e: substitute(e, r13)), br)
        rep.add("B_T13 = R13(B_R13).B_R13", lhs == deformation_matrix("T13").matrix)
        b = deformation_matrix("R13").matrix
        rep.add("B_R13 (1,2) = 1/b3 and (2,2) = 0", b[0][1] == P("1/b3") and b[1][1].is_zero())
    for tag in tags:
        cc = cross_check_evolution(tag)
        rep.add(f"{tag} explicit evolution = Weyl word action", all(cc.values()),
                ",".join(k for k, v in cc.items() if not v))
        rep.add(f"{tag} image satisfies f-relation", _relation_in_image(tag))
        r = compatibility_residual(tag)
        if mode == "exact":
            ok = r.is_zero and r.cleared_denominators_nonzero()
        else:
            ok = all(equals(e, FGS.zero(), mode="prob", trials=trials, seed=seed) for row in r.matrix for e in row)
        rep.add(f"{tag}: residual = 0", ok, r.summary())
        for which in (1, 2):
            rp = compatibility_residual(tag, perturb=2, which=which)
            rep.add(f"{tag}: equation {which} doubled gives nonzero residual", not rp.is_zero)
    rep.seconds = time.perf_counter() - t0
    return rep


def _relation_in_image(tag: str) -> bool:
    m = evolution_map(tag)
    f2 = mapped_f2(tag)
    rel = FGS.parse("b1*b2*b3 + p*b1^3*b2*f1 - p^2*b0^3*b3^(3/2)*f3")
    val = (substitute(rel, m)
           + substitute(P("p^2*b0*b1^4*b3^(3/2)"), m) * m["f1"] * f2 * m["f3"])
    return val.is_zero()


# ------------------------------------------------------ numeric wave matrices

GAUGES = ("psi", "phiU", "phiomega")


def _get(field_values: Mapping, l, direction=None):
    key = tuple(l)
    if key not in field_values:
        raise MissingFieldValue(key)
    return field_values[key]


def _shift(l, i):
    l = list(l)
    l[i - 1] += 1
    return tuple(l)


def wave_matrices_pde(direction: int, l, field_values: Mapping, mu, params, gauge: str = "psi"):
    """Coefficient matrix of one lattice step of the wave function, as an
    mpmath matrix.  ``field_values`` holds u (psi gauge), U (phiU) or
    omega (phiomega); ``params`` supplies alpha(n), beta(n), gamma(n), K(n),
    lam(n), p and b0, b1, b2."""
    l = tuple(l)
    if direction not in (1, 2, 3, 4):
        raise ValueError(direction)
    here = _get(field_values, l)
    there = _get(field_values, _shift(l, direction))
    mu = mpmath.mpmathify(mu)
    I = mpmath.mpc(0, 1)
    l1, l2, l3, l4 = l
    if gauge == "psi":
        if direction == 4:
            return mpmath.matrix([[-mu * params.K(l4), -there], [1 / here, 0]])
        c = params.coupling(direction, l)
        return mpmath.matrix([[mu / c, -there], [1 / here, -(mu / c) * there / here]])
    lam = params.lam(sum(l))
    if gauge == "phiU":
        if direction == 4:
            return mpmath.matrix([[-I * mu * params.K(l4) * there / here, lam], [1 / lam, 0]])
        c = params.coupling(direction, l)
        sq = mpmath.sqrt(lam)
        return mpmath.matrix([[I * mu / c * there / here, 1 / sq], [sq, -I * mu / c * here / there]])
    if gauge == "phiomega":
        p, b0, b1, b2 = params.p, params.b0, params.b1, params.b2
        x = mu / params.gamma(0)
        r = there / here
        if direction == 4:
            return mpmath.matrix([[p ** l4 * b2 * r * x, lam], [1 / lam, 0]])
        sq = mpmath.sqrt(lam)
        if direction == 1:
            a = -p ** (-l1 + l2 + l3 - 1) * b1 / b0 * r * x
            d = -p ** (3 * l1 - l2 - l3 + 1) * b0 ** 3 / b1 / r * x
        elif direction == 2:
            a = -p ** (l1 - l2 + l3 - 1) * b0 / b1 * r * x
            d = -p ** (-l1 + 3 * l2 - l3 + 1) * b1 ** 3 / b0 / r * x
        else:
            a = -p ** (l1 + l2 - l3 - 1) * b0 * b1 * r * x
            d = -p ** (-l1 - l2 + 3 * l3 + 1) / (b0 * b1) / r * x
        return mpmath.matrix([[a, 1 / sq], [sq, d]])
    raise ValueError(gauge)


def gauge_psi_to_phi(direction: int, l, U: Mapping, mu, params):
    """The psi-gauge matrix conjugated by the diagonal gauge that links
    Psi and phi, with u written through U."""
    l = tuple(l)
    lp = _shift(l, direction)
    I = mpmath.mpc(0, 1)

    def u_of(m):
        return params.lam(sum(m)) ** (mpmath.mpf(m[0] + m[1] + m[2] - 2 * m[3]) / 2) / _get(U, m)

    def D(m):
        return mpmath.matrix([[1 / _get(U, m), 0],
                              [0, I * params.lam(sum(m)) ** (mpmath.mpf(m[0] + m[1] + m[2] - 2 * m[3]) / 2)]])

    def s(m):
        return -m[0] - m[1] - m[2] + 3 * m[3]

    u = {l: u_of(l), lp: u_of(lp)}
    M = wave_matrices_pde(direction, l, u, mu, params, "psi")
    return I ** (s(l) - s(lp)) * (mpmath.inverse(D(lp)) * M * D(l))
