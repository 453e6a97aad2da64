"""Exact univariate polynomials and rational functions over Q, with Sturm
sequences for real-root counting, isolation and refinement.

Coefficients are ``fractions.Fraction`` and are stored lowest degree first.
Heavy operations (gcd, Sturm chains, sign evaluation) run on primitive
integer images of the polynomials, which keeps coefficient growth in check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

Rat = Fraction
Number = Union[int, Fraction]

DEFAULT_REFINE_WIDTH = Fraction(1, 10**12)


class PoleAtSample(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


def as_rat(x) -> Fraction:
    """Exact conversion of ints, Fractions and decimal/``p/q`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("binary floats are not accepted as exact input")
    # gmpy2.mpq and friends expose numerator/denominator
    return Fraction(int(x.numerator), int(x.denominator))


def _content(ints: Sequence[int]) -> int:
    return math.gcd(*ints) if ints else 0


class Poly:
    """Immutable univariate polynomial with rational coefficients."""

    __slots__ = ("coeffs", "__dict__")

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction helpers
    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def from_ints(cls, ints: Sequence[int]) -> "Poly":
        p = cls.__new__(cls)
        cs = list(ints)
        while cs and cs[-1] == 0:
            cs.pop()
        p.coeffs = tuple(Fraction(c) for c in cs)
        return p

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @cached_property
    def prim(self) -> tuple[int, ...]:
        """Primitive integer polynomial with positive leading coefficient and
        the same roots (may differ from ``self`` by a negative factor)."""
        if not self.coeffs:
            return ()
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
        g = _content(ints)
        if ints[-1] < 0:
            g = -g
        return tuple(i // g for i in ints)

    @cached_property
    def _scaled(self) -> tuple[tuple[int, ...], int]:
        """Integer coefficients and a positive scale with self = ints / scale."""
        den = math.lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
        return tuple(c.numerator * (den // c.denominator) for c in self.coeffs), den

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if i == 0 else f"{c}*t" if i == 1 else f"{c}*t^{i}")
        return "Poly(" + " + ".join(terms) + ")"

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    # arithmetic
    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = Poly.__new__(Poly)
        p.coeffs = tuple(-c for c in self.coeffs)
        return p

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        # integer convolution, rescaled once
        ai, ad = self._scaled
        bi, bd = other._scaled
        out = [0] * (len(ai) + len(bi) - 1)
        for i, x in enumerate(ai):
            if x:
                for j, y in enumerate(bi):
                    out[i + j] += x * y
        den = ad * bd
        return Poly(Fraction(c, den) for c in out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Poly(), self
        q = [Fraction(0)] * (len(rem) - db)
        inv = 1 / other.lc
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            q[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * bc[j]
        return Poly(q), Poly(rem[:db])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, t: Number) -> Fraction:
        """Exact evaluation at a rational point."""
        t = as_rat(t)
        ints, den = self._scaled
        if not ints:
            return Fraction(0)
        a, b = t.numerator, t.denominator
        # homogeneous Horner: sum c_i a^i b^(n-i)
        acc = 0
        bpow = 1
        for c in reversed(ints):
            acc = acc * a + c * bpow
            bpow *= b
        n = len(ints) - 1
        return Fraction(acc, den * b**n)

    def sign_at(self, t: Number) -> int:
        """Sign of self(t), computed in integers without building a Fraction."""
        ints = self._scaled[0]
        if not ints:
            return 0
        t = as_rat(t)
        a, b = t.numerator, t.denominator
        acc = 0
        bpow = 1
        for c in reversed(ints):
            acc = acc * a + c * bpow
            bpow *= b
        return (acc > 0) - (acc < 0)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * (1 / self.lc)

    def compose(self, other: "Poly") -> "Poly":
        """self(other(t))."""
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * other + Poly.const(c)
        return out


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.const(as_rat(x))


T = Poly.x()


# ---------------------------------------------------------------------------
# integer polynomial kernels


def _ipoly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _iprem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        r.pop()
        _ipoly_trim(r)
        delta -= 1
    if delta > 0:
        f = lb**delta
        r = [x * f for x in r]
    return r


def _iprimitive(a: list[int]) -> list[int]:
    if not a:
        return a
    g = _content(a)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


@lru_cache(maxsize=4096)
def _igcd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Primitive gcd of two primitive integer polynomials (primitive PRS)."""
    x, y = list(a), list(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _iprimitive(_ipoly_trim(_iprem(x, y)))
        x, y = y, r
    return tuple(_iprimitive(x))


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return Poly.const(1)
    return Poly.from_ints(_igcd(a.prim, b.prim)).monic()


def squarefree_part(a: Poly) -> Poly:
    """a / gcd(a, a') made monic."""
    if a.degree <= 1:
        return a.monic()
    g = gcd(a, a.derivative())
    return a.exact_div(g).monic()


# ---------------------------------------------------------------------------
# rational functions


class RatFn:
    """Reduced quotient num/den with monic denominator."""

    __slots__ = ("num", "den", "__dict__")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = _coerce(num)
        den = Poly.const(1) if den is None else _coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.const(1)
            elif not den.is_const():
                g = gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            inv = 1 / den.lc
            if inv != 1:
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c: Number) -> "RatFn":
        return cls(Poly.const(c), _reduced=True)

    def __repr__(self) -> str:
        return f"RatFn({self.num!r} / {self.den!r})"

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def __eq__(self, other) -> bool:
        """Identity as rational functions (cross-multiplication test)."""
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFn(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self) -> int:
        return hash(("RatFn", self.num.coeffs, self.den.coeffs))

    def __add__(self, other) -> "RatFn":
        other = _rcoerce(other)
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        if other.den.is_const():
            return RatFn(self.num + other.num * self.den, self.den, _reduced=True)
        if self.den.is_const():
            return RatFn(self.num * other.den + other.num, other.den, _reduced=True)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFn":
        return RatFn(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RatFn":
        return self + (-_rcoerce(other))

    def __rsub__(self, other) -> "RatFn":
        return _rcoerce(other) - self

    def __mul__(self, other) -> "RatFn":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFn.const(0)
            return RatFn(self.num * other, self.den, _reduced=True)
        other = _rcoerce(other)
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFn":
        other = _rcoerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFn":
        return _rcoerce(other) / self

    def __call__(self, t: Number) -> Fraction:
        d = self.den(t)
        if d == 0:
            raise PoleAtSample(f"denominator vanishes at t={t}")
        return self.num(t) / d

    def derivative(self) -> "RatFn":
        return RatFn(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )


def _rcoerce(x) -> RatFn:
    if isinstance(x, RatFn):
        return x
    return RatFn(_coerce(x), _reduced=True)


# ---------------------------------------------------------------------------
# Sturm machinery


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rat(self.lo))
        object.__setattr__(self, "hi", as_rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, t) -> bool:
        return self.lo <= t <= self.hi


@lru_cache(maxsize=4096)
def _sturm_chain(p: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Sturm chain of a square-free primitive integer polynomial, each member a
    positive multiple of the classical negated-remainder sequence."""
    d = [i * c for i, c in enumerate(p) if i]
    chain = [list(p), _iprimitive(d)]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = _iprem(a, b)
        delta = len(a) - len(b) + 1
        if b[-1] < 0 and delta % 2 == 1:
            r = [-x for x in r]
        r = _ipoly_trim([-x for x in r])
        if not r:
            break
        g = _content(r)
        chain.append([x // g for x in r])
    return tuple(tuple(c) for c in chain)


def _ieval_sign(p: Sequence[int], a: int, b: int) -> int:
    acc = 0
    bpow = 1
    for c in reversed(p):
        acc = acc * a + c * bpow
        bpow *= b
    return (acc > 0) - (acc < 0)


def _variations(chain, t: Fraction) -> int:
    a, b = t.numerator, t.denominator
    last = 0
    v = 0
    for q in chain:
        s = _ieval_sign(q, a, b)
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def sturm_count(p: Poly, iv: Interval) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    if p.is_zero():
        raise ValueError("sturm_count of the zero polynomial")
    if p.degree < 1 or iv.lo == iv.hi:
        return 0
    chain = _sturm_chain(squarefree_part(p).prim)
    return _variations(chain, iv.lo) - _variations(chain, iv.hi)


def count_roots_closed(p: Poly, iv: Interval) -> int:
    """Distinct real roots of ``p`` in [lo, hi]."""
    if p.degree < 1:
        return 0
    return sturm_count(p, iv) + (1 if p.sign_at(iv.lo) == 0 else 0)


@dataclass(frozen=True)
class AlgebraicTime:
    """A real algebraic number given by a square-free defining polynomial and
    an isolating interval. ``odd`` records whether the root has odd
    multiplicity in the polynomial it was extracted from."""

    defining: Poly
    isolate: Interval
    odd: bool = True

    @classmethod
    def rational(cls, r: Number, odd: bool = True) -> "AlgebraicTime":
        r = as_rat(r)
        return cls(Poly((-r, 1)), Interval(r, r), odd)

    @property
    def lo(self) -> Fraction:
        return self.isolate.lo

    @property
    def hi(self) -> Fraction:
        return self.isolate.hi

    @property
    def approx(self) -> Fraction:
        return self.isolate.mid

    def is_exact(self) -> bool:
        return self.isolate.lo == self.isolate.hi

    @property
    def value(self) -> Fraction:
        """Exact value; only defined for rational (point-interval) roots."""
        if not self.is_exact():
            raise ValueError("algebraic time is not known to be rational")
        return self.isolate.lo

    def __float__(self) -> float:
        return float(self.approx)

    def __repr__(self) -> str:
        if self.is_exact():
            return f"AlgebraicTime({self.lo})"
        return f"AlgebraicTime(~{float(self.approx):.12g}, root of {self.defining!r})"

    def bisect(self) -> "AlgebraicTime":
        """Halve the isolating interval once."""
        if self.is_exact():
            return self
        lo, hi = self.isolate.lo, self.isolate.hi
        m = (lo + hi) / 2
        p = self.defining
        sm = p.sign_at(m)
        if sm == 0:
            return AlgebraicTime(p, Interval(m, m), self.odd)
        if sm == p.sign_at(lo):
            return AlgebraicTime(p, Interval(m, hi), self.odd)
        return AlgebraicTime(p, Interval(lo, m), self.odd)

    def exactify(self) -> "AlgebraicTime":
        """Collapse to a point interval when the root is rational."""
        if self.is_exact():
            return self
        p = self.defining
        if p.degree == 1:
            r = -p.coeffs[0] / p.coeffs[1]
            return AlgebraicTime(Poly((-r, 1)), Interval(r, r), self.odd)
        r = _simplest_between(self.lo, self.hi)
        if p.sign_at(r) == 0:
            return AlgebraicTime(p, Interval(r, r), self.odd)
        # a rational root a/b of a primitive integer poly has b | lc, so after
        # refining below 1/lc at most one candidate k/lc remains in the interval
        lead = abs(p.prim[-1])
        cur = self
        while cur.isolate.width * lead >= 1 and not cur.is_exact():
            cur = cur.bisect()
        if cur.is_exact():
            return cur
        k = math.floor(cur.hi * lead)
        r = Fraction(k, lead)
        if cur.lo <= r and p.sign_at(r) == 0:
            return AlgebraicTime(p, Interval(r, r), self.odd)
        return self


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in [lo, hi] (Stern-Brocot)."""
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -_simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    rest = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / rest


def _multiplicity_at(p: Poly, r: Fraction) -> int:
    k = 0
    q = p
    while not q.is_zero() and q.sign_at(r) == 0:
        k += 1
        q = q.derivative()
    return k


def isolate_roots(p: Poly, iv: Interval) -> list[AlgebraicTime]:
    """All distinct real roots of ``p`` in the closed interval ``iv``, sorted,
    with pairwise-disjoint isolating intervals. Rational roots that are found
    on the way are reported as point intervals."""
    if p.is_zero():
        raise ValueError("isolate_roots of the zero polynomial")
    if p.degree < 1:
        return []
    sqf = squarefree_part(p)
    chain = _sturm_chain(sqf.prim)
    out: list[AlgebraicTime] = []

    def point(r: Fraction) -> AlgebraicTime:
        odd = _multiplicity_at(p, r) % 2 == 1
        return AlgebraicTime(sqf, Interval(r, r), odd)

    if iv.lo == iv.hi:
        return [point(iv.lo)] if sqf.sign_at(iv.lo) == 0 else []
    if sqf.sign_at(iv.lo) == 0:
        out.append(point(iv.lo))

    stack = [(iv.lo, iv.hi, _variations(chain, iv.lo), _variations(chain, iv.hi))]
    found = []
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            found.append((a, b))
            continue
        m = (a + b) / 2
        vm = _variations(chain, m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    for a, b in found:
        # root lies in (a, b]
        if sqf.sign_at(b) == 0:
            out.append(point(b))
            continue
        while sqf.sign_at(a) == 0 or sqf.sign_at(a) == sqf.sign_at(b):
            # left endpoint is a neighbouring root: shrink from the left
            m = (a + b) / 2
            if sqf.sign_at(m) == 0:
                a = b = m
                break
            if _variations(chain, m) - _variations(chain, b) == 1:
                a = m
            else:
                b = m
        if a == b:
            out.append(point(a))
            continue
        odd = p.sign_at(a) != p.sign_at(b)
        if sqf.degree == 1:
            out.append(point(-sqf.coeffs[0] / sqf.coeffs[1]))
            continue
        root = AlgebraicTime(sqf, Interval(a, b), odd).exactify()
        out.append(point(root.lo) if root.is_exact() else root)
    out.sort(key=lambda z: (z.lo, z.hi))
    return out


def refine(a: AlgebraicTime, width: Number = DEFAULT_REFINE_WIDTH) -> AlgebraicTime:
    """Shrink the isolating interval to at most ``width``."""
    width = as_rat(width)
    if width <= 0:
        raise ValueError("refine width must be positive")
    while a.isolate.width > width:
        a = a.bisect()
    return a


def same_root(a: AlgebraicTime, b: AlgebraicTime) -> bool:
    """Exact equality of two algebraic times."""
    if a.is_exact() and b.is_exact():
        return a.lo == b.lo
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return False
    if a.is_exact():
        return b.defining.sign_at(a.lo) == 0
    if b.is_exact():
        return a.defining.sign_at(b.lo) == 0
    g = gcd(a.defining, b.defining)
    if g.degree < 1:
        return False
    return count_roots_closed(g, Interval(lo, hi)) > 0


def compare(a: "AlgebraicTime | Number", b: "AlgebraicTime | Number") -> int:
    """Exact three-way comparison of algebraic times and rationals."""
    if not isinstance(a, AlgebraicTime):
        a = AlgebraicTime.rational(a)
    if not isinstance(b, AlgebraicTime):
        b = AlgebraicTime.rational(b)
    if a.hi < b.lo:
        return -1
    if b.hi < a.lo:
        return 1
    if same_root(a, b):
        return 0
    while not (a.hi < b.lo or b.hi < a.lo):
        if a.isolate.width >= b.isolate.width:
            a = a.bisect()
        else:
            b = b.bisect()
    return -1 if a.hi < b.lo else 1


def separate(a: AlgebraicTime, b: AlgebraicTime) -> tuple[AlgebraicTime, AlgebraicTime]:
    """Refine two distinct algebraic times until their intervals are disjoint."""
    while not (a.hi < b.lo or b.hi < a.lo):
        if a.isolate.width >= b.isolate.width and not a.is_exact():
            a = a.bisect()
        elif not b.is_exact():
            b = b.bisect()
        else:
            a = a.bisect()
    return a, b


def sign_at_algebraic(f: Poly, a: AlgebraicTime) -> tuple[int, AlgebraicTime]:
    """Sign of ``f`` at the algebraic number ``a``; also returns ``a`` refined
    far enough that ``f`` has constant sign on its isolating interval."""
    if f.is_zero():
        return 0, a
    if a.is_exact():
        return f.sign_at(a.lo), a
    if f.degree < 1:
        return (1 if f.lc > 0 else -1), a
    g = gcd(f, a.defining)
    if g.degree >= 1 and count_roots_closed(g, a.isolate) > 0:
        return 0, a
    while count_roots_closed(f, a.isolate) > 0:
        a = a.bisect()
        if a.is_exact():
            return f.sign_at(a.lo), a
    return f.sign_at(a.lo), a
