"""Exact Laurent rational functions over Q with quarter-integer exponents.

Every symbol ``s`` of a :class:`GeneratorSet` is backed by an internal
polynomial variable standing for ``s^(1/4)``.  Stored exponents are therefore
four times the true ones, and ``b3^(1/2) * b3^(1/2)`` is exponent 2 + 2 = 4.
Numerator and denominator are ``flint.fmpq_mpoly`` objects; the canonical form
cancels their full gcd and makes the denominator monic under deglex.
"""
from __future__ import annotations

import ast
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import flint
import mpmath

QUARTER = 4


class SymfieldError(Exception):
    pass


class DivisionByZeroFunction(SymfieldError, ZeroDivisionError):
    pass


class FractionalPowerUnresolvable(SymfieldError):
    pass


class DenominatorVanishes(SymfieldError, ZeroDivisionError):
    pass


class NegativeBaseFractionalPower(SymfieldError):
    pass


class UnknownSymbol(SymfieldError, KeyError):
    pass


class ParseError(SymfieldError, ValueError):
    pass


_SETS: dict[tuple, "GeneratorSet"] = {}


class GeneratorSet:
    """Ordered symbol alphabet with a shared polynomial context.

    Instances are interned: asking twice for the same names returns the
    same object, so values built independently stay compatible.
    """

    def __new__(cls, names: Iterable[str], tag: str = "shared"):
        names = tuple(names)
        key = (names, tag)
        hit = _SETS.get(key)
        if hit is not None:
            return hit
        if len(set(names)) != len(names):
            raise ValueError("duplicate symbol names")
        self = super().__new__(cls)
        self.names = names
        self.tag = tag
        self._index = {n: i for i, n in enumerate(names)}
        self.ctx = flint.fmpq_mpoly_ctx.get(tuple(f"_{n}" for n in names), "deglex")
        self._gens = self.ctx.gens()
        self._one = self.ctx.from_dict({(0,) * len(names): 1})
        self._zero = self.ctx.from_dict({})
        _SETS[key] = self
        return self

    def __reduce__(self):
        return (GeneratorSet, (self.names, self.tag))

    def __repr__(self):
        return f"GeneratorSet({self.tag}, {len(self.names)} symbols)"

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def sym(self, name: str) -> "RationalFunction":
        g = self._gens[self.index(name)] ** QUARTER
        return RationalFunction(self, g, self._one, _canonical=True)

    def syms(self, *names: str):
        return tuple(self.sym(n) for n in names)

    def const(self, c) -> "RationalFunction":
        c = Fraction(c)
        num = self.ctx.from_dict({(0,) * len(self.names): flint.fmpq(c.numerator, c.denominator)}) if c else self._zero
        return RationalFunction(self, num, self._one, _canonical=True)

    def one(self) -> "RationalFunction":
        return self.const(1)

    def zero(self) -> "RationalFunction":
        return self.const(0)

    def monomial(self, coeff, exponents: Mapping[str, Fraction | int]) -> "RationalFunction":
        """c * prod(name^e) with e in (1/4)Z, possibly negative."""
        up = [0] * len(self.names)
        down = [0] * len(self.names)
        for name, e in exponents.items():
            q = Fraction(e) * QUARTER
            if q.denominator != 1:
                raise FractionalPowerUnresolvable(f"{name}^{e} leaves the quarter lattice")
            k = int(q)
            if k >= 0:
                up[self.index(name)] += k
            else:
                down[self.index(name)] -= k
        c = Fraction(coeff)
        num = self.ctx.from_dict({tuple(up): flint.fmpq(c.numerator, c.denominator)})
        den = self.ctx.from_dict({tuple(down): 1})
        return RationalFunction(self, num, den, _canonical=True) if c else self.zero()

    def parse(self, text: str) -> "RationalFunction":
        return parse(self, text)


def _degrees(poly) -> list[int]:
    return [int(d) for d in poly.degrees()]


def _monoms(poly) -> list[tuple[int, ...]]:
    return [tuple(int(k) for k in m) for m in poly.monoms()]


def _terms(poly):
    return [(tuple(int(k) for k in m), c) for m, c in poly.terms()]


def _as_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _to_fraction(c) -> Fraction:
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


def _exact_root(c: Fraction, k: int) -> Fraction | None:
    if k == 1:
        return c
    if c < 0:
        if k % 2 == 0:
            return None
        r = _exact_root(-c, k)
        return None if r is None else -r
    out = []
    for part in (c.numerator, c.denominator):
        r = round(part ** (1.0 / k)) if part < 2**50 else _iroot(part, k)
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**k == part:
                out.append(cand)
                break
        else:
            r = _iroot(part, k)
            if r**k != part:
                return None
            out.append(r)
    return Fraction(out[0], out[1])


def _iroot(n: int, k: int) -> int:
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """num/den over a GeneratorSet; immutable, canonical on construction."""

    gs: GeneratorSet
    num: object
    den: object
    _canonical: bool = field(default=False, repr=False)

    def __post_init__(self):
        if self._canonical:
            return
        num, den = self.num, self.den
        if den.is_zero():
            raise DivisionByZeroFunction("zero denominator")
        if num.is_zero():
            num, den = self.gs._zero, self.gs._one
        else:
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_canonical", True)

    # construction helpers
    def _new(self, num, den, canonical=False):
        return RationalFunction(self.gs, num, den, _canonical=canonical)

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.gs is not self.gs:
                raise TypeError(f"mixing {self.gs} and {other.gs}")
            return other
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return self.gs.const(Fraction(int(other.p), int(other.q)) if isinstance(other, flint.fmpq) else other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self._new(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            # coprime monic denominators: only num/den cancellation is possible
            return self._new(self.num * other.den + other.num * self.den, self.den * other.den)
        d1 = self.den / g
        d2 = other.den / g
        return self._new(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.num, self.den, True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return self.gs.zero()
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num, other.den) if g1.is_one() else (self.num / g1, other.den / g1)
        n2, d1 = (other.num, self.den) if g2.is_one() else (other.num / g2, self.den / g2)
        num = n1 * n2
        den = d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return self._new(num, den, True)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZeroFunction("inverse of zero")
        num, den = self.den, self.num
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return self._new(num, den, True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise DivisionByZeroFunction("division by the zero function")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if isinstance(k, Fraction) and k.denominator != 1:
            return self.fractional_power(k)
        if not isinstance(k, int):
            k = int(k)
        if k == 0:
            return self.gs.one()
        if k < 0:
            return self.inverse() ** (-k)
        return self._new(self.num**k, self.den**k, True)

    def fractional_power(self, e: Fraction) -> "RationalFunction":
        """self^e for a signed monomial self, staying in the quarter lattice."""
        e = Fraction(e)
        if e.denominator == 1:
            return self ** int(e)
        mono = self.as_monomial()
        if mono is None:
            raise FractionalPowerUnresolvable("fractional power of a non-monomial value")
        c, exps = mono
        r = _exact_root(c, e.denominator)
        if r is None:
            raise FractionalPowerUnresolvable(f"coefficient {c} has no exact root of order {e.denominator}")
        c_out = r ** e.numerator
        out = {}
        for name, k in exps.items():
            val = k * e
            if (val * QUARTER).denominator != 1:
                raise FractionalPowerUnresolvable(f"{name}^{val} leaves the quarter lattice")
            out[name] = val
        return self.gs.monomial(c_out, out)

    # inspection
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return _to_fraction(self.num.leading_coefficient()) if not self.num.is_zero() else Fraction(0)

    def as_monomial(self):
        """(coeff, {name: true exponent}) if self is c*monomial, else None."""
        if len(self.num) != 1 or len(self.den) != 1:
            return None
        (en, c), = _terms(self.num)
        (ed, cd), = _terms(self.den)
        exps = {}
        for i, name in enumerate(self.gs.names):
            k = en[i] - ed[i]
            if k:
                exps[name] = Fraction(k, QUARTER)
        return _to_fraction(c) / _to_fraction(cd), exps

    def is_signed_monomial(self) -> bool:
        m = self.as_monomial()
        return m is not None and abs(m[0]) == 1

    def symbols(self) -> set[str]:
        used = set()
        for poly in (self.num, self.den):
            for i, d in enumerate(_degrees(poly)):
                if d > 0:
                    used.add(self.gs.names[i])
        return used

    def degree_range(self, name: str):
        """(min, max) true degree of name, when self is a Laurent polynomial
        in name (the denominator involves name only through a monomial
        factor); None otherwise."""
        i = self.gs.index(name)
        shift = {m[i] for m in _monoms(self.den)}
        if len(shift) != 1:
            return None
        if self.num.is_zero():
            return (0, 0)
        e = shift.pop()
        ds = [m[i] - e for m in _monoms(self.num)]
        return (Fraction(min(ds), QUARTER), Fraction(max(ds), QUARTER))

    def coefficient_in(self, name: str, degree: int) -> "RationalFunction":
        """Coefficient of name^degree when self is Laurent-polynomial in name."""
        i = self.gs.index(name)
        shift = {m[i] for m in _monoms(self.den)}
        if len(shift) != 1:
            raise ValueError(f"denominator depends on {name} beyond a monomial factor")
        e = shift.pop()
        target = int(Fraction(degree) * QUARTER) + e
        terms = {}
        for m, c in _terms(self.num):
            if m[i] == target:
                m2 = list(m)
                m2[i] = 0
                terms[tuple(m2)] = c
        den = self.den
        if e:
            dm = [0] * len(self.gs.names)
            dm[i] = e
            den = den / self.gs.ctx.from_dict({tuple(dm): 1})
        return self._new(self.gs.ctx.from_dict(terms), den)

    def size(self) -> int:
        return len(self.num) + len(self.den)

    # identity testing
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.gs.const(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if other.gs is not self.gs:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.gs.names, str(self.num), str(self.den)))

    def __repr__(self):
        return f"RF({to_text(self)})"

    def __str__(self):
        return to_text(self)


# ---------------------------------------------------------------- equality

def equals(f: RationalFunction, g: RationalFunction, mode: str = "exact", trials: int = 20, seed: int = 0) -> bool:
    if f.gs is not g.gs:
        raise TypeError("different generator sets")
    if mode == "exact":
        return (f.num * g.den - g.num * f.den).is_zero()
    if mode in ("prob", "probabilistic"):
        return probabilistic_equals(f, g, trials=trials, seed=seed)
    raise ValueError(f"unknown mode {mode!r}")


def random_point(gs: GeneratorSet, rng: random.Random, bound: int = 2**16):
    return [flint.fmpq(rng.randint(1, bound), rng.randint(1, bound)) for _ in gs.names]


def probabilistic_equals(f: RationalFunction, g: RationalFunction, trials: int = 20, seed: int = 0) -> bool:
    """Compare at random rational values of the internal quarter-root variables."""
    rng = random.Random(seed)
    done = 0
    misses = 0
    while done < trials:
        pt = random_point(f.gs, rng)
        df, dg = f.den(*pt), g.den(*pt)
        if df == 0 or dg == 0:
            misses += 1
            if misses > 100 * trials:
                raise DenominatorVanishes("could not avoid denominator zeros")
            continue
        if f.num(*pt) * dg != g.num(*pt) * df:
            return False
        done += 1
    return True


# ------------------------------------------------------------ substitution

def _value_power(v: RationalFunction, stride: int) -> RationalFunction:
    """Image of the internal variable power u^stride when the symbol maps to v."""
    e = Fraction(stride, QUARTER)
    if e.denominator == 1:
        return v ** int(e)
    try:
        return v.fractional_power(e)
    except FractionalPowerUnresolvable as exc:
        raise FractionalPowerUnresolvable(f"cannot take power {e} of {to_text(v)}: {exc}") from None


def substitute(f: RationalFunction, assignment: Mapping[str, RationalFunction],
               target: GeneratorSet | None = None) -> RationalFunction:
    """Simultaneous substitution; unmapped symbols map to themselves in target."""
    src = f.gs
    tgt = target
    if tgt is None:
        tgt = next((v.gs for v in assignment.values() if isinstance(v, RationalFunction)), src)
    if f.is_constant():
        return tgt.const(f.constant_value())
    n = len(src.names)
    strides = [0] * n
    for poly in (f.num, f.den):
        for m in _monoms(poly):
            for i in range(n):
                if m[i]:
                    strides[i] = math.gcd(strides[i], m[i])
    # values of each internal variable raised to its stride
    vals = []
    for i, name in enumerate(src.names):
        if not strides[i]:
            vals.append(None)
            continue
        if name in assignment:
            v = assignment[name]
            if not isinstance(v, RationalFunction):
                v = tgt.const(v)
            elif v.gs is not tgt:
                raise TypeError(f"value for {name} lives in {v.gs}, expected {tgt}")
        else:
            if tgt is src:
                v = None
            else:
                v = tgt.sym(name)
        if v is None:
            vals.append("id")
        else:
            vals.append(_value_power(v, strides[i]))
    defl = [s if s else 1 for s in strides]
    num = f.num.deflate(defl) if any(s > 1 for s in defl) else f.num
    den = f.den.deflate(defl) if any(s > 1 for s in defl) else f.den
    # identity entries keep the internal variable at its stride
    for i in range(n):
        if vals[i] == "id":
            g = tgt._gens[i] ** strides[i]
            vals[i] = RationalFunction(tgt, g, tgt._one, _canonical=True)
    # homogenize: variables whose image has nontrivial denominator
    heavy = [i for i in range(n) if vals[i] is not None and not vals[i].den.is_one()]
    dn, dd = _degrees(num), _degrees(den)
    maxdeg = {i: max(dn[i], dd[i]) for i in heavy}
    k = len(heavy)
    if k == 0:
        polys = [vals[i].num if vals[i] is not None else tgt._zero for i in range(n)]
        return RationalFunction(tgt, num.compose(*polys, ctx=tgt.ctx), den.compose(*polys, ctx=tgt.ctx))
    hctx = flint.fmpq_mpoly_ctx.get(tuple(f"_y{i}" for i in range(n)) + tuple(f"_z{j}" for j in range(k)), "deglex")

    def lift(poly):
        out = {}
        for m, c in _terms(poly):
            ext = m + tuple(maxdeg[i] - m[i] for i in heavy)
            out[ext] = c
        return hctx.from_dict(out)

    polys = [vals[i].num if vals[i] is not None else tgt._zero for i in range(n)]
    polys += [vals[i].den for i in heavy]
    return RationalFunction(tgt, lift(num).compose(*polys, ctx=tgt.ctx), lift(den).compose(*polys, ctx=tgt.ctx))


# -------------------------------------------------------------- evaluation

def _point_values(f: RationalFunction, point: Mapping[str, object]):
    out = {}
    for name in f.symbols():
        if name not in point:
            raise UnknownSymbol(f"no value for {name}")
        out[name] = point[name]
    return out


def eval_numeric(f: RationalFunction, point: Mapping[str, object], precision_digits: int = 30):
    """Evaluate with mpmath using principal branches for fractional powers."""
    vals = _point_values(f, point)
    names = f.gs.names
    with mpmath.workdps(precision_digits + 10):
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            hit = cache.get(key)
            if hit is not None:
                return hit
            x = mpmath.mpmathify(vals[names[i]])
            if k % QUARTER == 0:
                r = x ** (k // QUARTER)
            else:
                if mpmath.im(x) == 0 and mpmath.re(x) < 0:
                    raise NegativeBaseFractionalPower(f"{names[i]}^({Fraction(k, QUARTER)}) at a negative base")
                r = mpmath.power(x, mpmath.mpf(k) / QUARTER)
            cache[key] = r
            return r

        def ev(poly):
            total = mpmath.mpf(0)
            for m, c in _terms(poly):
                term = mpmath.mpf(int(c.p)) / int(c.q)
                for i, k in enumerate(m):
                    if k:
                        term *= power(i, k)
                total += term
            return total

        d = ev(f.den)
        if d == 0 or abs(d) < mpmath.mpf(10) ** (-(precision_digits + 5)) * max(1, _scale(f.den, power)):
            raise DenominatorVanishes(f"denominator vanishes: {to_text(f)}")
        r = ev(f.num) / d
    return +r


def _scale(poly, power):
    s = mpmath.mpf(0)
    for m, c in _terms(poly):
        term = abs(mpmath.mpf(int(c.p)) / int(c.q))
        for i, k in enumerate(m):
            if k:
                term *= abs(power(i, k))
        s += term
    return s


def eval_rational(f: RationalFunction, point: Mapping[str, object]) -> Fraction:
    """Exact evaluation; fractional exponents need exact rational roots."""
    vals = _point_values(f, point)
    n = len(f.gs.names)
    strides = [0] * n
    for poly in (f.num, f.den):
        for m in _monoms(poly):
            for i in range(n):
                if m[i]:
                    strides[i] = math.gcd(strides[i], m[i])
    args = []
    for i, name in enumerate(f.gs.names):
        if not strides[i]:
            args.append(flint.fmpq(0))
            continue
        x = Fraction(vals[name])
        e = Fraction(strides[i], QUARTER)
        if x == 0 and e < 0:
            raise DenominatorVanishes(f"{name} = 0 under a negative power")
        r = _exact_root(x, e.denominator)
        if r is None:
            raise FractionalPowerUnresolvable(f"{name}={x} has no exact root of order {e.denominator}")
        args.append(_as_fmpq(r ** e.numerator))
    defl = [s if s else 1 for s in strides]
    num = f.num.deflate(defl)
    den = f.den.deflate(defl)
    # homogenized integer evaluation: no rational gcds inside the sums
    tops = [max(a, b) for a, b in zip(_degrees(num), _degrees(den))]
    pw = _PowerTable(args, tops)
    d = _scaled_value(den, pw)
    if d == 0:
        raise DenominatorVanishes(f"denominator vanishes: {to_text(f)}")
    return _to_fraction(_scaled_value(num, pw) / d)


class _PowerTable:
    """Cached a_i^k b_i^(D_i - k) for x_i = a_i / b_i."""

    def __init__(self, args, tops):
        self.a = [flint.fmpz(x.p) for x in args]
        self.b = [flint.fmpz(x.q) for x in args]
        self.tops = tops
        self.cache = {}

    def __call__(self, i, k):
        key = (i, k)
        hit = self.cache.get(key)
        if hit is None:
            hit = self.cache[key] = self.a[i] ** k * self.b[i] ** (self.tops[i] - k)
        return hit


def _scaled_value(poly, pw: _PowerTable) -> flint.fmpq:
    """poly(x) * prod b_i^D_i, as an exact rational."""
    terms = list(zip(poly.monoms(), poly.coeffs()))
    if not terms:
        return flint.fmpq(0)
    den = flint.fmpz(1)
    for _, c in terms:
        q = c.q
        if q != 1:
            den = den * q // den.gcd(q)
    total = flint.fmpz(0)
    for m, c in terms:
        t = c.p * (den // c.q)
        for i, k in enumerate(m):
            if pw.tops[i]:
                t *= pw(i, k)
        total += t
    return flint.fmpq(total, den)


# -------------------------------------------------------------- text form

def _fmt_exp(k: int) -> str:
    e = Fraction(k, QUARTER)
    if e == 1:
        return ""
    if e.denominator == 1:
        return f"^{e.numerator}"
    return f"^({e.numerator}/{e.denominator})"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_text(gs: GeneratorSet, terms) -> str:
    if not terms:
        return "0"
    parts = []
    for m, c in terms:
        factors = [f"{gs.names[i]}{_fmt_exp(k)}" for i, k in enumerate(m) if k]
        if not factors:
            s = _fmt_coeff(c)
        elif c == 1:
            s = "*".join(factors)
        elif c == -1:
            s = "-" + "*".join(factors)
        else:
            s = _fmt_coeff(c) + "*" + "*".join(factors)
        parts.append(s)
    out = parts[0]
    for s in parts[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


def to_text(f: RationalFunction) -> str:
    """Canonical text: deglex-sorted terms, quarter exponents as rationals."""
    num = [(m, _to_fraction(c)) for m, c in _terms(f.num)]
    den_terms = _terms(f.den)
    if len(den_terms) == 1:
        (dm, dc), = den_terms
        shifted = [(tuple(a - b for a, b in zip(m, dm)), c / _to_fraction(dc)) for m, c in num]
        return _poly_text(f.gs, shifted)
    den = [(m, _to_fraction(c)) for m, c in den_terms]
    return f"({_poly_text(f.gs, num)})/({_poly_text(f.gs, den)})"


# ----------------------------------------------------------------- parser

def _const_fraction(node) -> Fraction:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _const_fraction(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Div, ast.Mult, ast.Add, ast.Sub)):
        a, b = _const_fraction(node.left), _const_fraction(node.right)
        if isinstance(node.op, ast.Div):
            return a / b
        if isinstance(node.op, ast.Mult):
            return a * b
        return a + b if isinstance(node.op, ast.Add) else a - b
    raise ParseError("exponent must be a rational constant")


def parse(gs: GeneratorSet, text: str) -> RationalFunction:
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(str(exc)) from None

    def walk(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return gs.const(node.value)
        if isinstance(node, ast.Name):
            return gs.sym(node.id)
        if isinstance(node, ast.UnaryOp):
            v = walk(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = walk(node.left)
                e = _const_fraction(node.right)
                return base ** int(e) if e.denominator == 1 else base.fractional_power(e)
            a, b = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ParseError(f"unsupported syntax: {ast.dump(node)}")

    return walk(tree.body)
