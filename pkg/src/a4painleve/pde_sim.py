"""Numeric solver for the quad-equation system on Z^4, its consistency and
Lax checks, and the (1,1,1,1)-periodic reduction onto the omega-lattice.

Two gauges are supported: ``u`` (the ABS-type system) and ``U`` with
u(l) = lambda_{|l|}^{(l1+l2+l3-2 l4)/2} / U(l).  Parameters follow
alpha_n = p^-n alpha0 (same for beta, gamma), K_n = p^n K0 and
lambda_n = lambda0^((-1)^n).
"""

from __future__ import annotations

import csv
import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import mpmath

from . import omega_lattice as OL
from .lattice_linear import Report
from .lax_verify import MissingFieldValue, gauge_psi_to_phi, wave_matrices_pde

PAIRS = OL.PAIRS
H3_PAIRS = OL.H3_PAIRS
DIAG = (1, 1, 1, 1)


class SingularityEncountered(ArithmeticError):
    pass


class PeriodicityViolated(ValueError):
    pass


class BranchAmbiguity(ValueError):
    pass


def _mp(x):
    # parsed well above any working precision: mpf keeps its mantissa, so
    # later arithmetic rounds to the caller's precision, not to this one
    with mpmath.workdps(PARSE_DIGITS):
        if isinstance(x, str) and "/" in x:
            n, d = x.split("/")
            return mpmath.mpf(n.strip()) / mpmath.mpf(d.strip())
        return mpmath.mpmathify(x)


PARSE_DIGITS = 200


def _add(l, m):
    return tuple(a + b for a, b in zip(l, m))


def _unit(i):
    return OL.unit(i)


# ------------------------------------------------------------------ params

@dataclass
class Params4D:
    alpha0: object = 1
    beta0: object = 1
    gamma0: object = 1
    K0: object = 1
    lam0: object = 1
    p: object = 2

    def __post_init__(self):
        for name in ("alpha0", "beta0", "gamma0", "K0", "lam0", "p"):
            setattr(self, name, _mp(getattr(self, name)))

    @classmethod
    def from_mapping(cls, m: Mapping) -> "Params4D":
        keys = ("alpha0", "beta0", "gamma0", "K0", "lam0", "p")
        return cls(**{k: m[k] for k in keys if k in m})

    def to_dict(self, digits: int = 20) -> dict:
        return {k: mpmath.nstr(getattr(self, k), digits)
                for k in ("alpha0", "beta0", "gamma0", "K0", "lam0", "p")}

    def alpha(self, n):
        return self.p ** (-n) * self.alpha0

    def beta(self, n):
        return self.p ** (-n) * self.beta0

    def gamma(self, n):
        return self.p ** (-n) * self.gamma0

    def K(self, n):
        return self.p ** n * self.K0

    def lam(self, n):
        return self.lam0 if n % 2 == 0 else 1 / self.lam0

    def coupling(self, direction: int, l) -> object:
        """alpha_{l1}, beta_{l2} or gamma_{l3}."""
        return (self.alpha, self.beta, self.gamma)[direction - 1](l[direction - 1])

    # the omega-lattice dictionary
    @property
    def b0(self):
        return self.gamma0 / self.alpha0

    @property
    def b1(self):
        return self.gamma0 / self.beta0

    @property
    def b2(self):
        return self.gamma0 * self.K0

    @property
    def b3(self):
        return self.lam0

    def lattice_params(self) -> OL.LatticeParams:
        return OL.LatticeParams(self.b0, self.b1, self.b2, self.p, mpmath.sqrt(self.lam0))


# ------------------------------------------------------------------ fields

@dataclass
class Field4D:
    values: dict
    gauge: str = "u"
    params: Params4D | None = None
    periodic: bool = False
    box: tuple | None = None
    precision: int = 40

    def key(self, l):
        l = tuple(l)
        if self.periodic:
            return OL.canonical(l)
        return l

    def __getitem__(self, l):
        k = self.key(l)
        if k not in self.values:
            raise MissingFieldValue(tuple(l))
        return self.values[k]

    def __contains__(self, l):
        return self.key(l) in self.values

    def lookup(self) -> "_Lookup":
        return _Lookup(self)

    def export_csv(self, path, digits: int = 30):
        with mpmath.workdps(max(self.precision, digits)), open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["l1", "l2", "l3", "l4", "re", "im"])
            for l in sorted(self.values):
                v = mpmath.mpc(self.values[l])
                w.writerow(list(l) + [mpmath.nstr(v.real, digits), mpmath.nstr(v.imag, digits)])

    @classmethod
    def import_csv(cls, path, gauge: str = "u", params: Params4D | None = None, periodic: bool = False,
                   precision: int = 40) -> "Field4D":
        vals = {}
        with mpmath.workdps(precision), open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                l = tuple(int(row[f"l{i}"]) for i in range(1, 5))
                vals[l] = mpmath.mpc(mpmath.mpf(row["re"]), mpmath.mpf(row["im"]))
        return cls(vals, gauge, params, periodic, None, precision)


class _Lookup(dict):
    """Mapping view used by the wave-matrix code (keys are 4-tuples)."""

    def __init__(self, f: Field4D):
        super().__init__()
        self.f = f

    def __contains__(self, l):
        return l in self.f

    def __getitem__(self, l):
        return self.f[l]


# ------------------------------------------------------------ equations

def _lam_half(P: Params4D, n: int):
    return mpmath.sqrt(P.lam(n))


def face_polynomial(pair, base, v: Mapping[str, object], P: Params4D, gauge: str):
    """Cleared face equation, affine in each of X = f(l), A = f(l+e_i),
    B = f(l+e_j), Z = f(l+e_i+e_j)."""
    i, j = pair
    X, A, B, Z = v["X"], v["A"], v["B"], v["Z"]
    ci = P.coupling(i, base)
    n = sum(base)
    if j != 4:
        cj = P.coupling(j, base)
        lam = P.lam(n) if gauge == "U" else 1
        return Z * (ci * B - cj * A) + lam * X * (ci * A - cj * B)
    K = P.K(base[3])
    if gauge == "u":
        return Z * A + B * X + ci * K * X * A
    lam = P.lam(n)
    return X * B + lam ** 2 * A * Z + ci * K * _lam_half(P, n) * Z * B


def face_sides(pair, base, v, P: Params4D, gauge: str):
    """The equation in its explicit ratio form (lhs, rhs)."""
    i, j = pair
    X, A, B, Z = v["X"], v["A"], v["B"], v["Z"]
    ci = P.coupling(i, base)
    n = sum(base)
    if j != 4:
        cj = P.coupling(j, base)
        lam = P.lam(n) if gauge == "U" else 1
        return Z / X, -lam * (ci * A - cj * B) / (ci * B - cj * A)
    K = P.K(base[3])
    if gauge == "u":
        return Z / X + B / A, -ci * K
    lam = P.lam(n)
    return X / Z + lam ** 2 * A / B, -ci * K * _lam_half(P, n)


def face_corners(pair, base) -> dict:
    i, j = pair
    return {"X": tuple(base), "A": _add(base, _unit(i)), "B": _add(base, _unit(j)),
            "Z": _add(_add(base, _unit(i)), _unit(j))}


def face_residual(pair, base, field_: Field4D) -> object:
    c = face_corners(pair, base)
    v = {r: field_[pt] for r, pt in c.items()}
    lhs, rhs = face_sides(pair, base, v, field_.params, field_.gauge)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1)


def _solve_corner(pair, base, role, v, P, gauge, threshold):
    v0 = dict(v)
    v0[role] = 0
    beta = face_polynomial(pair, base, v0, P, gauge)
    v0[role] = 1
    alpha = face_polynomial(pair, base, v0, P, gauge) - beta
    if abs(alpha) < threshold:
        raise SingularityEncountered(f"face {pair} at {tuple(base)}: corner {role} undetermined")
    return -beta / alpha


# ------------------------------------------------------------ box solver

def box_points(box: Sequence[Sequence[int]]) -> list[tuple]:
    return list(itertools.product(*[range(lo, hi + 1) for lo, hi in box]))


def skeleton(box) -> list[tuple]:
    return [l for l in box_points(box) if sum(1 for x in l if x != 0) <= 1]


def random_skeleton(box, seed: int = 0, precision: int = 40, complex_values: bool = False) -> dict:
    rng = random.Random(seed)
    out = {}
    with mpmath.workdps(precision):
        for l in skeleton(box):
            re = mpmath.mpf(rng.randint(1, 10**6)) / 10**6 + mpmath.mpf(1) / 2
            out[l] = mpmath.mpc(re, mpmath.mpf(rng.randint(1, 10**6)) / 10**6) if complex_values else re
    return out


def solve_box(initial: Mapping, box: Sequence[Sequence[int]], params: Params4D, precision: int = 40,
              gauge: str = "u") -> Field4D:
    """Fill the box from values on the coordinate-axes skeleton.  Each point
    with two or more nonzero coordinates comes from the face spanned by its
    first two nonzero directions, towards the origin."""
    box = tuple(tuple(b) for b in box)
    for lo, hi in box:
        if not lo <= 0 <= hi:
            raise ValueError("box must contain the origin")
    missing = [l for l in skeleton(box) if l not in initial]
    if missing:
        raise MissingFieldValue(missing[0])
    with mpmath.workdps(precision):
        vals = {tuple(k): mpmath.mpmathify(v) for k, v in initial.items()}
        for v in vals.values():
            if v == 0:
                raise SingularityEncountered("zero initial value")
        threshold = mpmath.mpf(10) ** (-precision + 5)
        pts = sorted(box_points(box), key=lambda l: (sum(map(abs, l)), l))
        for m in pts:
            if m in vals:
                continue
            nz = [k for k in range(4) if m[k] != 0]
            i, j = nz[0], nz[1]
            si, sj = (1 if m[i] > 0 else -1), (1 if m[j] > 0 else -1)
            base = list(m)
            if si > 0:
                base[i] -= 1
            if sj > 0:
                base[j] -= 1
            base = tuple(base)
            pair = (i + 1, j + 1)
            corners = face_corners(pair, base)
            role = next(r for r, pt in corners.items() if pt == m)
            v = {r: vals[pt] for r, pt in corners.items() if r != role}
            val = _solve_corner(pair, base, role, v, params, gauge, threshold)
            if abs(val) < threshold:
                raise SingularityEncountered(f"vanishing value at {m}")
            vals[m] = val
    return Field4D(vals, gauge, params, False, box, precision)


def faces_in(field_: Field4D) -> list:
    """(pair, base) for every face whose corners are all defined."""
    out = []
    keys = list(field_.values)
    for base in keys:
        for pair in PAIRS:
            if all(pt in field_ for pt in face_corners(pair, base).values()):
                out.append((pair, base))
    return out


def face_report(field_: Field4D, tol=None) -> Report:
    t0 = time.perf_counter()
    rep = Report(f"face residuals ({field_.gauge})")
    worst = mpmath.mpf(0)
    with mpmath.workdps(field_.precision):
        if tol is None:
            tol = mpmath.mpf(10) ** (5 - field_.precision)
        for pair, base in faces_in(field_):
            r = face_residual(pair, base, field_)
            worst = max(worst, r)
            rep.add(f"{pair}@{base}", r < tol, mpmath.nstr(r, 3))
    rep.max_residual = worst
    rep.seconds = time.perf_counter() - t0
    return rep


def cube_consistency(field_: Field4D, tol=None) -> Report:
    """For every 3-cube of the box: the far corner from the three top faces."""
    rep = Report(f"3-cube consistency ({field_.gauge})")
    P, g = field_.params, field_.gauge
    worst = mpmath.mpf(0)
    with mpmath.workdps(field_.precision):
        if tol is None:
            tol = mpmath.mpf(10) ** (5 - field_.precision)
        threshold = mpmath.mpf(10) ** (-field_.precision + 5)
        for base in list(field_.values):
            for i, j, k in itertools.combinations(range(1, 5), 3):
                far = _add(_add(_add(base, _unit(i)), _unit(j)), _unit(k))
                if far not in field_:
                    continue
                ei, ej, ek = _unit(i), _unit(j), _unit(k)
                f = field_
                bottom = {"": f[base], "i": f[_add(base, ei)], "j": f[_add(base, ej)], "k": f[_add(base, ek)]}

                def corner(a, b, sa, sb, at):
                    # face (a, b) at base `at`; corner values from bottom data
                    return _solve_corner((a, b), at, "Z", {"X": bottom[""], "A": bottom[sa], "B": bottom[sb]},
                                         P, g, threshold)
                uij = corner(i, j, "i", "j", base)
                ujk = corner(j, k, "j", "k", base)
                uik = corner(i, k, "i", "k", base)
                vals = [
                    _solve_corner((i, j), _add(base, ek), "Z", {"X": bottom["k"], "A": uik, "B": ujk}, P, g, threshold),
                    _solve_corner((j, k), _add(base, ei), "Z", {"X": bottom["i"], "A": uij, "B": uik}, P, g, threshold),
                    _solve_corner((i, k), _add(base, ej), "Z", {"X": bottom["j"], "A": uij, "B": ujk}, P, g, threshold),
                ]
                spread = max(abs(a - b) for a in vals for b in vals) / max(abs(vals[0]), 1)
                spread = max(spread, abs(vals[0] - f[far]) / max(abs(vals[0]), 1))
                worst = max(worst, spread)
                rep.add(f"cube {(i, j, k)}@{base}", spread < tol, mpmath.nstr(spread, 3))
    rep.max_residual = worst
    return rep


# ------------------------------------------------------------ gauges

def exponent(l) -> object:
    return mpmath.mpf(l[0] + l[1] + l[2] - 2 * l[3]) / 2


def U_from_u(field_: Field4D) -> Field4D:
    P = field_.params
    with mpmath.workdps(field_.precision):
        vals = {l: P.lam(sum(l)) ** exponent(l) / v for l, v in field_.values.items()}
    return Field4D(vals, "U", P, field_.periodic, field_.box, field_.precision)


def u_from_U(field_: Field4D) -> Field4D:
    P = field_.params
    with mpmath.workdps(field_.precision):
        vals = {l: P.lam(sum(l)) ** exponent(l) / v for l, v in field_.values.items()}
    return Field4D(vals, "u", P, field_.periodic, field_.box, field_.precision)


def H_gauge(l, P: Params4D, check_branch: bool = True):
    """The gauge factor linking U and omega (principal branches)."""
    l1, l2, l3, l4 = l
    al, be, ga, K = P.alpha(l1), P.beta(l2), P.gamma(l3), P.K(l4)
    p = P.p
    if check_branch:
        for name, z in (("alpha", al), ("beta", be), ("gamma", ga), ("K", K), ("p", p)):
            z = mpmath.mpmathify(z)
            if mpmath.im(z) == 0 and mpmath.re(z) <= 0:
                raise BranchAmbiguity(f"{name}_l = {z} lies on the branch cut of log")
    I = mpmath.mpc(0, 1)
    lp = mpmath.log(p)
    e1 = mpmath.log(al * be * ga * K ** 3) / lp
    t1 = mpmath.log(p ** 3 * al ** 2 * be ** 2 / ga ** 4)
    t2 = mpmath.log(al / be)
    return (mpmath.exp(e1 * mpmath.log(I))
            * mpmath.exp((t1 ** 2 + 12 * t2 ** 2) / (16 * lp))
            * (ga / (mpmath.sqrt(al) * mpmath.sqrt(be))) ** mpmath.mpf(1.5))


# ------------------------------------------------------------ periodic solve

def solve_periodic_U(initial: Sequence, params: Params4D, radius: int = 2, precision: int = 40) -> Field4D:
    """U on the quotient lattice from four values at 0, e1, e1+e2, e1+e2+e3,
    using the U-system at every base (its coefficients are invariant under
    the diagonal shift).  Every equation in the region is then checked."""
    init_pts = ((0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0))
    pts = set(OL.ball(radius))
    eqs = OL.equations_in(pts)
    with mpmath.workdps(precision):
        threshold = mpmath.mpf(10) ** (-precision + 5)
        known = {pt: mpmath.mpmathify(v) for pt, v in zip(init_pts, initial)}
        progress = True
        while progress and len(known) < len(pts):
            progress = False
            for q in eqs:
                corners = q.corners
                miss = [r for r, pt in corners.items() if pt not in known]
                if len(miss) != 1:
                    continue
                role = miss[0]
                v = {r: known[pt] for r, pt in corners.items() if r != role}
                known[corners[role]] = _solve_corner(q.pair, q.base, role, v, params, "U", threshold)
                progress = True
        if len(known) < len(pts):
            raise OL.UnreachablePoint(f"{len(pts) - len(known)} points unreachable")
    return Field4D(known, "U", params, True, None, precision)


def check_periodic(field_: Field4D, tol=None):
    """Raise PeriodicityViolated when a non-periodic field differs on l and
    l + (1,1,1,1)."""
    if field_.periodic:
        return
    with mpmath.workdps(field_.precision):
        tol = tol or mpmath.mpf(10) ** (5 - field_.precision)
        for l, v in field_.values.items():
            m = _add(l, DIAG)
            if m in field_.values and abs(field_.values[m] - v) > tol * max(abs(v), 1):
                raise PeriodicityViolated(f"U{l} != U{m}")


def omega_values(field_: Field4D, points: Iterable) -> dict:
    P = field_.params
    return {tuple(l): H_gauge(tuple(l), P) * field_[l] for l in points}


def omega_quad_residual(q: OL.QuadEquation, omega: Mapping, P: Params4D):
    """Explicit omega quad at the 4D base of q, corners taken as 4D points."""
    i, j = q.pair
    base = q.base
    c4 = face_corners(q.pair, base)
    v = {r: omega[pt] for r, pt in c4.items()}
    co = q.coefficients(P.lattice_params())
    lhs, rhs = q.sides(v, co)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1)


def reduce_to_omega(fieldU: Field4D, params: Params4D | None = None, bases: Iterable | None = None,
                    tol=None) -> Report:
    """omega_l = H_l U(l) on 4D points; all six omega quads are checked at
    every base whose 4D corners are available."""
    t0 = time.perf_counter()
    P = params or fieldU.params
    check_periodic(fieldU)
    rep = Report("geometric reduction to the omega-lattice")
    with mpmath.workdps(fieldU.precision):
        if tol is None:
            tol = mpmath.mpf(10) ** (15 - fieldU.precision)
        if bases is None:
            bases = [l for l in itertools.product((-1, 0, 1), repeat=4)]
        worst = mpmath.mpf(0)
        for base in bases:
            base = tuple(base)
            for pair in PAIRS:
                c4 = face_corners(pair, base)
                if not all(pt in fieldU for pt in c4.values()):
                    continue
                om = omega_values(fieldU, c4.values())
                r = omega_quad_residual(OL.QuadEquation(pair, base), om, P)
                worst = max(worst, r)
                rep.add(f"omega {pair}@{base}", r < tol, mpmath.nstr(r, 3))
        # the identification l ~ l + (1,1,1,1)
        for l in [(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (0, 1, 0, -1)]:
            m = _add(l, DIAG)
            ratio = H_gauge(m, P) / H_gauge(l, P)
            lhs = H_gauge(m, P) * fieldU[m]
            rhs = ratio * H_gauge(l, P) * fieldU[l]
            rep.add(f"omega_{m} / omega_{l} = H ratio", abs(lhs - rhs) <= tol * abs(lhs))
    rep.max_residual = worst
    rep.seconds = time.perf_counter() - t0
    return rep


# ------------------------------------------------------------ quotient

def quotient_check() -> Report:
    """Z^4 / Z(1,1,1,1): adjacency and faces of the unit 4-cube versus the
    closed rhombic dodecahedron and the omega-lattice quad stencils."""
    rep = Report("quotient lattice")
    cube = list(itertools.product((0, 1), repeat=4))
    image = {OL.canonical(l) for l in cube}
    rep.add("4-cube collapses onto the closed dodecahedron", image == set(OL.vbar()), f"{len(image)} points")
    emb = {OL.embed(l) for l in cube}
    rep.add("embedding is well defined on the quotient", len(emb) == 15)
    # neighbours of the origin: unit steps and face diagonals of Z^4
    nb = set()
    for l in itertools.product((-1, 0, 1), repeat=4):
        if l == (0,) * 4:
            continue
        s = sorted(l)
        if (s.count(0) == 3) or (s.count(0) == 2 and s.count(1) == 2) or (s.count(0) == 2 and s.count(-1) == 2):
            nb.add(OL.canonical(l))
    rep.add("quotient neighbourhood = 14-point dodecahedron", nb == {OL.canonical(m) for m in OL.dodecahedron()},
            f"{len(nb)} points")
    faces = set()
    for pair in PAIRS:
        for base in cube:
            c = face_corners(pair, base)
            if all(pt in set(cube) for pt in c.values()):
                faces.add(frozenset(OL.canonical(pt) for pt in c.values()))
    stencils = {frozenset(q.corners.values()) for q in OL.equations_in(OL.vbar())}
    rep.add("4-cube faces = omega quad stencils inside the dodecahedron", faces == stencils,
            f"{len(faces)} faces, {len(stencils)} stencils")
    return rep


# ------------------------------------------------------------ waves

def wave_propagate(initial, path: Sequence[int], mu, field_: Field4D, gauge: str | None = None,
                   start=(0, 0, 0, 0)):
    """Apply the step matrices along ``path`` (signed directions +-1..+-4)."""
    gauge = gauge or {"u": "psi", "U": "phiU", "omega": "phiomega"}[field_.gauge]
    P = field_.params
    look = field_.lookup()
    with mpmath.workdps(field_.precision):
        vec = mpmath.matrix([[initial[0]], [initial[1]]])
        l = tuple(start)
        for step in path:
            d = abs(step)
            if step > 0:
                M = wave_matrices_pde(d, l, look, mu, P, gauge)
                l = _add(l, _unit(d))
                vec = M * vec
            else:
                back = tuple(x - (1 if k == d - 1 else 0) for k, x in enumerate(l))
                M = wave_matrices_pde(d, back, look, mu, P, gauge)
                vec = mpmath.inverse(M) * vec
                l = back
        return vec


def random_path_pairs(box, n: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    his = [hi for lo, hi in box]
    out = []
    while len(out) < n:
        target = [rng.randint(0, h) for h in his]
        steps = [d + 1 for d in range(4) for _ in range(target[d])]
        if len(set(steps)) < 2:
            continue
        a, b = steps[:], steps[:]
        rng.shuffle(a)
        rng.shuffle(b)
        if a != b:
            out.append((a, b))
    return out


def path_independence(field_: Field4D, n: int = 10, mu="7/5", seed: int = 0, tol=None) -> Report:
    rep = Report(f"wave-function path independence ({field_.gauge})")
    worst = mpmath.mpf(0)
    with mpmath.workdps(field_.precision):
        if tol is None:
            tol = mpmath.mpf(10) ** (10 - field_.precision)
        mu = _mp(mu)
        for a, b in random_path_pairs(field_.box, n, seed):
            va = wave_propagate((1, mpmath.mpf(1) / 3), a, mu, field_)
            vb = wave_propagate((1, mpmath.mpf(1) / 3), b, mu, field_)
            d = max(abs(va[k] - vb[k]) for k in range(2)) / max(abs(va[0]), abs(va[1]), 1)
            worst = max(worst, d)
            rep.add(f"{a} vs {b}", d < tol, mpmath.nstr(d, 3))
    rep.max_residual = worst
    return rep


def gauge_matrix_check(fieldU: Field4D, mu="7/5", points=None, tol=None) -> Report:
    """psi-gauge step matrices conjugated by the diagonal gauge equal the
    phiU matrices."""
    rep = Report("psi -> phiU gauge")
    P = fieldU.params
    look = fieldU.lookup()
    with mpmath.workdps(fieldU.precision):
        tol = tol or mpmath.mpf(10) ** (15 - fieldU.precision)
        mu = _mp(mu)
        points = points or [(0, 0, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1)]
        for l in points:
            for d in range(1, 5):
                try:
                    A = gauge_psi_to_phi(d, l, look, mu, P)
                    B = wave_matrices_pde(d, l, look, mu, P, "phiU")
                except MissingFieldValue:
                    continue
                diff = max(abs(A[i, j] - B[i, j]) for i in range(2) for j in range(2))
                rep.add(f"direction {d} at {l}", diff < tol, mpmath.nstr(diff, 3))
    return rep


def omega_gauge_check(fieldU: Field4D, mu="7/5", points=None, tol=None) -> Report:
    """phiU step matrices on U agree with the phiomega matrices on H U."""
    rep = Report("phiU -> phiomega gauge")
    P = fieldU.params
    look = fieldU.lookup()
    with mpmath.workdps(fieldU.precision):
        tol = tol or mpmath.mpf(10) ** (15 - fieldU.precision)
        mu = _mp(mu)
        points = points or [(0, 0, 0, 0), (0, 1, 0, 0), (1, 0, 1, 0), (0, 0, 1, 1)]
        for l in points:
            for d in range(1, 5):
                near = [l, _add(l, _unit(d))]
                if not all(pt in fieldU for pt in near):
                    continue
                om = omega_values(fieldU, near)
                A = wave_matrices_pde(d, l, look, mu, P, "phiU")
                B = wave_matrices_pde(d, l, om, mu, P, "phiomega")
                diff = max(abs(A[i, j] - B[i, j]) for i in range(2) for j in range(2))
                rep.add(f"direction {d} at {l}", diff < tol, mpmath.nstr(diff, 3))
    return rep


# ------------------------------------------------------------ reports

def simulate(params: Params4D, size: int = 3, precision: int = 40, seed: int = 0, pairs: int = 10,
             fields: dict | None = None) -> Report:
    """Box solve in the u gauge plus every numeric check; ``fields`` receives
    the solved u and U fields when given."""
    t0 = time.perf_counter()
    box = tuple((0, size - 1) for _ in range(4))
    init = random_skeleton(box, seed, precision)
    fu = solve_box(init, box, params, precision, "u")
    rep = Report(f"Z^4 system on a {size}^4 box")
    fr = face_report(fu)
    rep.add("all face residuals of the u-system", fr.passed, f"{len(fr.checks)} faces, max {mpmath.nstr(fr.max_residual, 3)}")
    cc = cube_consistency(fu)
    rep.add("3-cube consistency", cc.passed, f"{len(cc.checks)} cubes, max {mpmath.nstr(cc.max_residual, 3)}")
    fU = U_from_u(fu)
    if fields is not None:
        fields.update(u=fu, U=fU)
    frU = face_report(fU)
    rep.add("u -> U maps to solutions of the U-system", frU.passed, f"max {mpmath.nstr(frU.max_residual, 3)}")
    back = u_from_U(fU)
    rep.add("U -> u round trip", all(abs(back.values[l] - fu.values[l]) <= mpmath.mpf(10) ** (5 - precision) * abs(fu.values[l])
                                      for l in fu.values))
    pu = path_independence(fu, pairs, seed=seed)
    rep.add("path independence, psi gauge", pu.passed, f"max {mpmath.nstr(pu.max_residual, 3)}")
    pU = path_independence(fU, pairs, seed=seed + 1)
    rep.add("path independence, phiU gauge", pU.passed, f"max {mpmath.nstr(pU.max_residual, 3)}")
    rep.checks += gauge_matrix_check(fU).checks
    rep.seconds = time.perf_counter() - t0
    return rep


def reduction(params: Params4D, precision: int = 40, seed: int = 0, radius: int = 2, tol=None,
              fields: dict | None = None) -> Report:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    with mpmath.workdps(precision):
        init = [mpmath.mpf(rng.randint(1, 10**6)) / 10**6 + 1 for _ in range(4)]
    fU = solve_periodic_U(init, params, radius, precision)
    if fields is not None:
        fields["U"] = fU
    rep = Report("(1,1,1,1)-periodic reduction")
    with mpmath.workdps(precision):
        worst = mpmath.mpf(0)
        for q in OL.equations_in(fU.values.keys()):
            c = face_corners(q.pair, q.base)
            v = {r: fU[pt] for r, pt in c.items()}
            lhs, rhs = face_sides(q.pair, q.base, v, params, "U")
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1))
        rep.add("periodic U-system is consistent", worst < mpmath.mpf(10) ** (5 - precision),
                f"max {mpmath.nstr(worst, 3)}")
    red = reduce_to_omega(fU, params, tol=tol)
    rep.add("omega = H U satisfies the six omega quads", red.passed, f"{len(red.checks)} checks, max {mpmath.nstr(red.max_residual, 3)}")
    og = omega_gauge_check(fU)
    rep.add("phiU matrices = phiomega matrices with omega = H U", og.passed, f"{len(og.checks)} steps")
    rep.checks += quotient_check().checks
    rep.seconds = time.perf_counter() - t0
    return rep


def write_json(rep: Report, path):
    with open(path, "w") as fh:
        json.dump(rep.to_dict(), fh, indent=2, default=str)


def write_manifest(path, params: Params4D, precision: int, seed: int, extra: Mapping | None = None):
    lines = [f"{k}={v}" for k, v in params.to_dict().items()]
    lines += [f"precision={precision}", f"seed={seed}"]
    for k, v in (extra or {}).items():
        lines.append(f"{k}={v}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
