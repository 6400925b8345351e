"""Integer model of Pic(X) = Zh1 + Zh2 + Ze1 + ... + Ze8.

Vectors are 10-tuples in the basis (h1, h2, e1, ..., e8).  Generators act on
the right; a word ``w1 w2 ... wn`` sends ``v`` to ``(...(v.w1).w2 ...).wn``,
so its matrix is ``M(wn) ... M(w1)`` acting on column vectors.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

DIM = 10
BASIS = ("h1", "h2") + tuple(f"e{i}" for i in range(1, 9))


class UnknownGenerator(KeyError):
    pass


class NonIntegerReflection(ValueError):
    pass


Vec = tuple
Mat = tuple


def vec(**coords) -> Vec:
    v = [0] * DIM
    for k, c in coords.items():
        v[BASIS.index(k)] = c
    return tuple(v)


def add(*vs: Vec) -> Vec:
    return tuple(sum(c) for c in zip(*vs))


def scale(k, v: Vec) -> Vec:
    return tuple(k * c for c in v)


def sub(v: Vec, w: Vec) -> Vec:
    return tuple(a - b for a, b in zip(v, w))


def combo(coeffs: Sequence[int], vs: Sequence[Vec]) -> Vec:
    return add(*(scale(c, v) for c, v in zip(coeffs, vs)))


GRAM = tuple(
    tuple((1 if {i, j} == {0, 1} else 0) if i < 2 and j < 2 else (-1 if i == j else 0) for j in range(DIM))
    for i in range(DIM)
)


def intersection(v: Vec, w: Vec) -> int:
    return v[0] * w[1] + v[1] * w[0] - sum(a * b for a, b in zip(v[2:], w[2:]))


def reflect(v: Vec, root: Vec) -> Vec:
    rr = intersection(root, root)
    if rr == 0:
        raise ValueError("isotropic root")
    k = Fraction(2 * intersection(v, root), rr)
    if k.denominator != 1:
        raise NonIntegerReflection(f"reflection coefficient {k} is not an integer")
    return sub(v, scale(int(k), root))


def reflection_coefficient_vector(v: Vec, root: Vec):
    """2(v|root)/(root|root) * root with rational entries (no integrality check)."""
    k = Fraction(2 * intersection(v, root), intersection(root, root))
    return k, tuple(k * c for c in root)


# simple roots
D = (
    add(vec(h1=1), vec(e6=-1, e8=-1)),
    vec(e8=1, e7=-1),
    vec(h2=1, e3=-1, e8=-1),
    vec(h1=1, e4=-1, e5=-1),
    vec(h2=1, e1=-1, e2=-1),
)
ALPHA = (
    vec(h1=1, h2=1, e1=-1, e4=-1, e7=-1, e8=-1),
    vec(e1=1, e2=-1),
    vec(h1=1, e1=-1, e3=-1),
    vec(h2=1, e4=-1, e6=-1),
    vec(e4=1, e5=-1),
)
DELTA = vec(h1=2, h2=2, **{f"e{i}": -1 for i in range(1, 9)})
BETA = (ALPHA[0], add(ALPHA[1], ALPHA[2]), add(ALPHA[3], ALPHA[4]))
GAMMA = (
    combo((0, 2, -1, 1, -2), ALPHA),
    combo((1, -1, 2, 0, 3), ALPHA),
)

# column j is the image of basis vector j
SIGMA_COLUMNS = (
    (1, 1, 1, 0, 0, 0, 0, 0, 0, 1),
    (1, 1, 1, 0, 0, 1, 0, 0, 0, 0),
    (0, -1, -1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
    (-1, -1, -1, 0, 0, -1, 0, 0, 0, -1),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 0, 0, 0, 0),
    (-1, 0, -1, 0, 0, 0, 0, 0, 0, 0),
)
IOTA_ROWS = (
    (0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
)
# the explicit sigma display is the matrix itself (rows of the explicit grid)
SIGMA_ROWS = SIGMA_COLUMNS


def identity() -> Mat:
    return tuple(tuple(int(i == j) for j in range(DIM)) for i in range(DIM))


def matmul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(m: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def determinant(m: Mat) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            k = a[r][c] / a[c][c]
            if k:
                a[r] = [x - k * y for x, y in zip(a[r], a[c])]
    return int(det)


def reflection_matrix(root: Vec) -> Mat:
    cols = [reflect(tuple(int(i == j) for i in range(DIM)), root) for j in range(DIM)]
    return transpose(tuple(cols))


@dataclass(frozen=True)
class PicMap:
    matrix: Mat
    name: str = ""

    def __call__(self, v: Vec) -> Vec:
        return matvec(self.matrix, v)

    def then(self, other: "PicMap") -> "PicMap":
        """self followed by other (right-action product)."""
        return PicMap(matmul(other.matrix, self.matrix), f"{self.name}{other.name}")

    def __eq__(self, other):
        return isinstance(other, PicMap) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


GENERATORS: dict[str, PicMap] = {f"s{i}": PicMap(reflection_matrix(ALPHA[i]), f"s{i}") for i in range(5)}
GENERATORS["sigma"] = PicMap(SIGMA_ROWS, "sigma")
GENERATORS["iota"] = PicMap(IOTA_ROWS, "iota")

# A2+A1 generators and translations as words in the A4 generators
A2A1_WORDS = {
    "w0": ["s0"],
    "w1": ["s1", "s2", "s1"],
    "w2": ["s3", "s4", "s3"],
    "r0": ["iota"],
    "r1": ["sigma", "iota", "s2", "s4"],
    "pi": ["sigma"] * 3 + ["iota", "s4"],
}
T_WORDS = {
    0: ["sigma", "s4", "s3", "s2", "s1"],
    1: ["sigma", "s0", "s4", "s3", "s2"],
    2: ["sigma", "s1", "s0", "s4", "s3"],
    3: ["sigma", "s2", "s1", "s0", "s4"],
    4: ["sigma", "s3", "s2", "s1", "s0"],
}
INVERSE = {f"s{i}": [f"s{i}"] for i in range(5)}
INVERSE.update({"sigma": ["sigma"] * 4, "iota": ["iota"]})


def expand(word: Iterable[str]) -> list[str]:
    """Rewrite A2+A1 labels and T_i labels into A4 generator names."""
    out = []
    for g in word:
        if g in GENERATORS:
            out.append(g)
        elif g in A2A1_WORDS:
            out.extend(A2A1_WORDS[g])
        elif g.startswith("T") and g[1:].isdigit():
            out.extend(T_WORDS[int(g[1:])])
        elif g.startswith("T") and g.endswith("^-1") and g[1:-3].isdigit():
            out.extend(inverse_word(T_WORDS[int(g[1:-3])]))
        elif g in RHO_WORDS:
            out.extend(expand(RHO_WORDS[g]))
        else:
            raise UnknownGenerator(g)
    return out


RHO_WORDS = {
    "rho1": ["pi", "r0", "w1", "w2"],
    "rho2": ["pi", "r0", "w0", "w1"],
    "rho3": ["pi", "r0", "w2", "w0"],
    "rho4": ["pi", "r1", "r0", "r1"],
}


def inverse_word(word: Sequence[str]) -> list[str]:
    out = []
    for g in reversed(list(word)):
        out.extend(INVERSE[g])
    return out


def word_map(word: Iterable[str]) -> PicMap:
    m = identity()
    names = expand(word)
    for g in names:
        m = matmul(GENERATORS[g].matrix, m)
    return PicMap(m, "".join(word) if not isinstance(word, str) else word)


def apply_pic_word(word: Iterable[str], v: Vec) -> Vec:
    try:
        return word_map(word)(v)
    except KeyError as exc:
        raise UnknownGenerator(str(exc)) from None


def cartan(roots: Sequence[Vec]) -> list[list[int]]:
    out = []
    for ri in roots:
        row = []
        for rj in roots:
            k = Fraction(2 * intersection(ri, rj), intersection(rj, rj))
            row.append(int(k) if k.denominator == 1 else k)
        out.append(row)
    return out


CARTAN_A4 = [[2, -1, 0, 0, -1], [-1, 2, -1, 0, 0], [0, -1, 2, -1, 0], [0, 0, -1, 2, -1], [-1, 0, 0, -1, 2]]
CARTAN_A2 = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
CARTAN_A1 = [[2, -2], [-2, 2]]


def preserves_form(m: Mat) -> bool:
    return matmul(matmul(transpose(m), GRAM), m) == GRAM


def fixes_canonical(m: Mat) -> bool:
    return matvec(m, DELTA) == DELTA


def in_basis(v: Vec, basis: Sequence[Vec]):
    """Coordinates of v in a linearly independent list, or None."""
    n = len(basis)
    rows = [[Fraction(b[i]) for b in basis] + [Fraction(v[i])] for i in range(DIM)]
    piv_rows = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, DIM) if rows[i][c] != 0), None)
        if p is None:
            return None
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(DIM):
            if i != r and rows[i][c] != 0:
                k = rows[i][c]
                rows[i] = [x - k * y for x, y in zip(rows[i], rows[r])]
        piv_rows.append(r)
        r += 1
    if any(rows[i][n] != 0 for i in range(r, DIM)):
        return None
    return [rows[i][n] for i in range(n)]


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append({"check": name, "pass": bool(ok), "detail": detail})

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c["pass"]]

    def to_dict(self):
        return {"title": self.title, "passed": self.passed, "seconds": round(self.seconds, 3), "checks": self.checks}

    def to_text(self):
        lines = [f"== {self.title}: {'PASS' if self.passed else 'FAIL'} ({len(self.checks)} checks)"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c['pass'] else 'FAIL'}] {c['check']}" + (f"  {c['detail']}" if c["detail"] else ""))
        return "\n".join(lines)


def _eq_words(w1, w2) -> bool:
    return word_map(w1) == word_map(w2)


def _is_identity(word) -> bool:
    return word_map(word).matrix == identity()


def _power(word, n):
    return list(word) * n


def verify_linear_relations() -> Report:
    t0 = time.perf_counter()
    rep = Report("linear Picard-lattice relations")
    s = [f"s{i}" for i in range(5)]
    for i in range(5):
        rep.add(f"s{i}^2 = 1", _is_identity([s[i], s[i]]))
        for j in range(5):
            if j <= i:
                continue
            order = 3 if (j - i) % 5 in (1, 4) else 2
            rep.add(f"(s{i} s{j})^{order} = 1", _is_identity(_power([s[i], s[j]], order)))
    rep.add("sigma^5 = 1", _is_identity(["sigma"] * 5))
    rep.add("iota^2 = 1", _is_identity(["iota"] * 2))
    for i in range(5):
        rep.add(f"sigma s{i} = s{(i + 1) % 5} sigma", _eq_words(["sigma", s[i]], [s[(i + 1) % 5], "sigma"]))
        rep.add(f"iota s{i} = s{(-i) % 5} iota", _eq_words(["iota", s[i]], [s[(-i) % 5], "iota"]))
    rep.add("sigma iota = iota sigma^-1", _eq_words(["sigma", "iota"], ["iota"] + ["sigma"] * 4))

    for name, g in GENERATORS.items():
        rep.add(f"{name} preserves the intersection form", preserves_form(g.matrix))
        rep.add(f"{name} fixes delta", fixes_canonical(g.matrix))
        rep.add(f"det {name} = +-1", abs(determinant(g.matrix)) == 1)

    # explicit images of d and alpha under sigma and iota
    sd = [D[k] for k in (2, 3, 4, 0, 1)]
    sa = [ALPHA[k] for k in (4, 0, 1, 2, 3)]
    rep.add("(d).sigma as tabulated", [GENERATORS["sigma"](x) for x in D] == sd)
    rep.add("(alpha).sigma as tabulated", [GENERATORS["sigma"](x) for x in ALPHA] == sa)
    idd = [D[k] for k in (2, 1, 0, 4, 3)]
    ia = [ALPHA[k] for k in (0, 4, 3, 2, 1)]
    rep.add("(d).iota as tabulated", [GENERATORS["iota"](x) for x in D] == idd)
    rep.add("(alpha).iota as tabulated", [GENERATORS["iota"](x) for x in ALPHA] == ia)

    rep.add("(delta|delta) = 0", intersection(DELTA, DELTA) == 0)
    rep.add("delta = sum d_i", add(*D) == DELTA)
    rep.add("delta = sum alpha_i", add(*ALPHA) == DELTA)
    rep.add("delta = beta0+beta1+beta2", add(*BETA) == DELTA)
    rep.add("delta = gamma0+gamma1", add(*GAMMA) == DELTA)
    rep.add("(d_i|alpha_j) = 0", all(intersection(x, y) == 0 for x in D for y in ALPHA))
    rep.add("Cartan(d) is A4^(1)", cartan(D) == CARTAN_A4)
    rep.add("Cartan(alpha) is A4^(1)", cartan(ALPHA) == CARTAN_A4)
    rep.add("Cartan(beta) is A2^(1)", cartan(BETA) == CARTAN_A2)
    rep.add("Cartan(gamma) is A1^(1)", cartan(GAMMA) == CARTAN_A1)

    ident = word_map([])
    tmaps = {i: word_map(T_WORDS[i]) for i in range(5)}
    for i in range(5):
        m = tmaps[i]
        rep.add(f"alpha{i}.T{i} = alpha{i} - delta", m(ALPHA[i]) == sub(ALPHA[i], DELTA))
        rep.add(f"alpha{(i + 1) % 5}.T{i} = alpha{(i + 1) % 5} + delta",
                m(ALPHA[(i + 1) % 5]) == add(ALPHA[(i + 1) % 5], DELTA))
        others = [k for k in range(5) if k not in (i, (i + 1) % 5)]
        rep.add(f"T{i} fixes the other alphas", all(m(ALPHA[k]) == ALPHA[k] for k in others))
    rep.add("T_i commute", all(tmaps[i].then(tmaps[j]) == tmaps[j].then(tmaps[i]) for i in range(5) for j in range(5)))
    prod = ident
    for i in range(5):
        prod = prod.then(tmaps[i])
    rep.add("T0 T1 T2 T3 T4 = 1", prod == ident)

    # checks on the (beta, gamma) sublattice
    bg = list(BETA) + list(GAMMA)
    expected = {
        "w0": [scale(-1, BETA[0]), add(BETA[1], BETA[0]), add(BETA[2], BETA[0]), GAMMA[0], GAMMA[1]],
        "w1": [add(BETA[0], BETA[1]), scale(-1, BETA[1]), add(BETA[2], BETA[1]), GAMMA[0], GAMMA[1]],
        "w2": [add(BETA[0], BETA[2]), add(BETA[1], BETA[2]), scale(-1, BETA[2]), GAMMA[0], GAMMA[1]],
        "r0": [BETA[0], BETA[2], BETA[1], scale(-1, GAMMA[0]), add(GAMMA[1], scale(2, GAMMA[0]))],
        "r1": [BETA[1], BETA[0], BETA[2], add(GAMMA[0], scale(2, GAMMA[1])), scale(-1, GAMMA[1])],
        "pi": [BETA[2], BETA[1], BETA[0], GAMMA[1], GAMMA[0]],
    }
    for g, imgs in expected.items():
        m = word_map([g])
        rep.add(f"(beta,gamma).{g} as tabulated", [m(x) for x in bg] == imgs)
        rep.add(f"{g} preserves the form", preserves_form(m.matrix) and fixes_canonical(m.matrix))
    for i in range(3):
        m = word_map([f"w{i}"])
        rep.add(f"w{i} is the reflection in beta{i}", all(m(x) == reflect(x, BETA[i]) for x in bg + list(ALPHA)))
    w = [f"w{i}" for i in range(3)]
    for i in range(3):
        rep.add(f"w{i}^2 = 1", _is_identity([w[i]] * 2))
        rep.add(f"(w{i} w{(i + 1) % 3})^3 = 1", _is_identity(_power([w[i], w[(i + 1) % 3]], 3)))
        rep.add(f"r0 w{i} = w{(-i) % 3} r0", _eq_words(["r0", w[i]], [w[(-i) % 3], "r0"]))
        rep.add(f"r1 w{i} = w{(1 - i) % 3} r1", _eq_words(["r1", w[i]], [w[(1 - i) % 3], "r1"]))
        rep.add(f"pi w{i} = w{(2 - i) % 3} pi", _eq_words(["pi", w[i]], [w[(2 - i) % 3], "pi"]))
    for g in ("r0", "r1", "pi"):
        rep.add(f"{g}^2 = 1", _is_identity([g, g]))
    rep.add("pi r0 = r1 pi", _eq_words(["pi", "r0"], ["r1", "pi"]))
    rep.add("r0 r1 has no finite order up to 12", not any(_is_identity(_power(["r0", "r1"], n)) for n in range(1, 13)))
    pd = [D[k] for k in (1, 0, 4, 3, 2)]
    rep.add("(d).pi as tabulated", [word_map(["pi"])(x) for x in D] == pd)

    shifts = {"rho1": (-1, 0, 1, 1, -1), "rho2": (0, 1, -1, 1, -1), "rho3": (1, -1, 0, 1, -1), "rho4": (0, 0, 0, -3, 3)}
    rmaps = {}
    for r, sh in shifts.items():
        m = word_map([r])
        rmaps[r] = m
        rep.add(f"(beta,gamma).{r} shift {sh} delta", [m(x) for x in bg] == [add(x, scale(k, DELTA)) for x, k in zip(bg, sh)])
    a = ALPHA
    dl = DELTA
    alpha_images = {
        "rho1": [sub(a[0], dl), add(a[1], a[2], a[3]), scale(-1, a[3]), add(scale(-1, a[2]), dl), add(a[2], a[3], a[4])],
        "rho2": [a[0], add(a[1], a[2], a[3]), add(scale(-1, a[3]), dl), scale(-1, a[2]), scale(-1, add(a[0], a[1]))],
        "rho3": [add(a[0], dl), scale(-1, add(a[0], a[4])), scale(-1, a[3]), add(scale(-1, a[2]), dl), scale(-1, add(a[0], a[1]))],
        "rho4": [a[0], scale(-1, add(a[0], a[4])), add(scale(-1, a[3]), dl), scale(-1, a[2]), add(a[2], a[3], a[4])],
    }
    for r, imgs in alpha_images.items():
        rep.add(f"(alpha).{r} as tabulated", [rmaps[r](x) for x in ALPHA] == imgs)
    rep.add("rho_i commute", all(rmaps[x].then(rmaps[y]) == rmaps[y].then(rmaps[x]) for x in rmaps for y in rmaps))
    rep.add("rho1 rho2 rho3 rho4 = 1", _is_identity(["rho1", "rho2", "rho3", "rho4"]))
    squares = {
        "rho1": ["T0", "T2", "T4^-1"],
        "rho2": ["T0", "T2^-1", "T4"],
        "rho3": ["T0^-1", "T2", "T4"],
        "rho4": ["T1", "T3"],
    }
    for r, w in squares.items():
        rep.add(f"{r}^2 = {' '.join(w)}", _eq_words([r, r], w))
    for i, gm in enumerate(GAMMA):
        k, v = reflection_coefficient_vector(vec(h1=1), gm)
        integral = all(Fraction(c).denominator == 1 for c in v)
        rep.add(f"2(h1|gamma{i})/(gamma{i}|gamma{i}) = -1/15, not in Pic", k == Fraction(-1, 15) and not integral, f"coefficient {k}")
    rep.seconds = time.perf_counter() - t0
    return rep
