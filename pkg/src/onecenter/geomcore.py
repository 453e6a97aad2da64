"""Exact static geometry: affine rank, circumcenters of simplices, smallest
enclosing balls and support certification.

Points are tuples of Fractions. Radii are always kept squared.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyalg import Interval, Poly, RatFn, as_rat, gcd, isolate_roots

Point = tuple  # tuple[Fraction, ...]


class DegenerateSimplex(ValueError):
    """Circumcenter requested for an affinely dependent point set."""


class IdenticallyDegenerate(ValueError):
    """The Gram determinant of a symbolic simplex vanishes for every t."""


def point(coords) -> Point:
    return tuple(as_rat(c) for c in coords)


def sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def dot(a, b):
    it = iter(zip(a, b))
    x, y = next(it)
    acc = x * y
    for x, y in it:
        acc = acc + x * y
    return acc


def dist2(a: Point, b: Point) -> Fraction:
    return sum(((x - y) ** 2 for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class Ball:
    center: Point
    radius_sq: Fraction

    def contains(self, p: Point) -> bool:
        return dist2(p, self.center) <= self.radius_sq

    def on_boundary(self, p: Point) -> bool:
        return dist2(p, self.center) == self.radius_sq


@dataclass(frozen=True)
class GramSystem:
    """M lambda = rhs with M_ij = (p_i - p_0).(p_j - p_0), rhs_i = M_ii / 2."""

    matrix: tuple
    rhs: tuple
    base: Point


@dataclass(frozen=True)
class RatCurve:
    """A d-tuple of rational functions of t on a closed interval."""

    components: tuple
    domain: Interval

    @classmethod
    def constant(cls, p: Point, domain: Interval) -> "RatCurve":
        return cls(tuple(RatFn.const(c) for c in p), domain)

    @classmethod
    def polynomial(cls, coeffs: Sequence[Sequence], domain: Interval) -> "RatCurve":
        return cls(tuple(RatFn(Poly(c)) for c in coeffs), domain)

    @property
    def dim(self) -> int:
        return len(self.components)

    def __call__(self, t) -> Point:
        return tuple(c(t) for c in self.components)

    def derivative(self) -> "RatCurve":
        return RatCurve(tuple(c.derivative() for c in self.components), self.domain)

    def is_constant(self) -> bool:
        return all(c.is_const() for c in self.components)

    def poles(self) -> list:
        """Real roots of any component denominator inside the domain."""
        out = []
        for c in self.components:
            if not c.den.is_const():
                out.extend(isolate_roots(c.den, self.domain))
        return out

    def validate(self) -> None:
        if self.poles():
            raise ValueError("curve denominator vanishes inside the domain")

    def same_as(self, other: "RatCurve") -> bool:
        return len(self.components) == len(other.components) and all(
            a == b for a, b in zip(self.components, other.components)
        )


# ---------------------------------------------------------------------------
# determinants and affine rank


def _exdiv(a, b):
    if isinstance(a, Poly):
        return a.exact_div(b)
    return a / b


def det_bareiss(mat: Sequence[Sequence], one=Fraction(1)):
    """Fraction-free determinant; entries may be Fractions, ints or Polys."""
    n = len(mat)
    if n == 0:
        return one
    a = [list(r) for r in mat]
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return one * 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = _exdiv(row_i[j] * akk - aik * row_k[j], prev)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def affine_rank(P: Sequence[Point]) -> tuple[int, list[int]]:
    """Dimension of Aff(P) and the greedy lowest-index affinely independent
    basis (as indices into P)."""
    if not P:
        raise ValueError("affine_rank of an empty set")
    base = P[0]
    rows: list[tuple[int, list[Fraction]]] = []  # (pivot column, reduced row)
    chosen = [0]
    for idx in range(1, len(P)):
        v = [x - y for x, y in zip(P[idx], base)]
        for piv, row in rows:
            if v[piv]:
                f = v[piv] / row[piv]
                v = [x - f * y for x, y in zip(v, row)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is not None:
            rows.append((piv, v))
            chosen.append(idx)
    return len(chosen) - 1, chosen


def is_affinely_independent(P: Sequence[Point]) -> bool:
    return affine_rank(P)[0] == len(P) - 1


# ---------------------------------------------------------------------------
# circumcenters


def gram_system(P: Sequence[Point]) -> GramSystem:
    p0 = P[0]
    w = [sub(p, p0) for p in P[1:]]
    m = tuple(tuple(dot(a, b) for b in w) for a in w)
    rhs = tuple(m[i][i] / 2 for i in range(len(w)))
    return GramSystem(m, rhs, p0)


def _cramer(gs: GramSystem) -> list[Fraction]:
    m = gs.matrix
    det = det_bareiss(m)
    if det == 0:
        raise DegenerateSimplex("points are affinely dependent")
    k = len(m)
    lam = []
    for j in range(k):
        mj = [[gs.rhs[i] if c == j else m[i][c] for c in range(k)] for i in range(k)]
        lam.append(det_bareiss(mj) / det)
    return lam


def cc_affine_coefficients(P: Sequence[Point]) -> list[Fraction]:
    """Coefficients (1 - sum(lam), lam_1, ..., lam_k) expressing cc(P) as an
    affine combination of P."""
    P = [point(p) for p in P]
    if len(P) == 1:
        return [Fraction(1)]
    lam = _cramer(gram_system(P))
    return [1 - sum(lam)] + lam


def circumcenter(P: Sequence[Point]) -> tuple[Point, Fraction]:
    """Center and squared radius of the circumball of affinely independent P."""
    P = [point(p) for p in P]
    if len(P) == 1:
        return P[0], Fraction(0)
    gs = gram_system(P)
    lam = _cramer(gs)
    p0 = gs.base
    c = list(p0)
    for lj, pj in zip(lam, P[1:]):
        for k in range(len(c)):
            c[k] += lj * (pj[k] - p0[k])
    c = tuple(c)
    return c, dist2(c, p0)


def _lcm(a: Poly, b: Poly) -> Poly:
    if a.is_const():
        return b.monic()
    if b.is_const():
        return a.monic()
    return (a * b).exact_div(gcd(a, b)).monic()


@dataclass(frozen=True)
class SymbolicCircumcenter:
    curve: RatCurve
    radius_sq: RatFn
    det: Poly  # Gram determinant (up to a nonvanishing factor); zeros are degenerate times


def symbolic_circumcenter(statics: Sequence[Point], curves: Sequence[RatCurve],
                          domain: Interval | None = None) -> SymbolicCircumcenter:
    """Circumcenter of statics + curves(t) as rational functions of t, via
    Cramer's rule on the Gram system with polynomial entries."""
    if domain is None:
        if not curves:
            raise ValueError("domain required when no curves are given")
        domain = curves[0].domain
    pts = [tuple(RatFn.const(c) for c in p) for p in statics]
    pts += [c.components for c in curves]
    if not pts:
        raise ValueError("empty point set")
    d = len(pts[0])
    p0 = pts[0]
    if len(pts) == 1:
        return SymbolicCircumcenter(RatCurve(tuple(p0), domain), RatFn.const(0), Poly.const(1))
    W, D = [], []
    for p in pts[1:]:
        diff = [a - b for a, b in zip(p, p0)]
        den = Poly.const(1)
        for c in diff:
            den = _lcm(den, c.den)
        W.append([c.num * den.exact_div(c.den) for c in diff])
        D.append(den)
    k = len(W)
    G = [[dot(W[i], W[j]) for j in range(k)] for i in range(k)]
    A = [[G[i][j] * (2 * D[i]) for j in range(k)] for i in range(k)]
    g = [G[i][i] for i in range(k)]
    one = Poly.const(1)
    det = det_bareiss(A, one)
    if det.is_zero():
        raise IdenticallyDegenerate("Gram determinant vanishes identically")
    mus = []
    for j in range(k):
        aj = [[g[i] if c == j else A[i][c] for c in range(k)] for i in range(k)]
        mus.append(det_bareiss(aj, one))
    N = [sum((mus[j] * W[j][a] for j in range(k)), Poly()) for a in range(d)]
    comps = tuple(p0[a] + RatFn(N[a], det) for a in range(d))
    rad = RatFn(sum((n * n for n in N), Poly()), det * det)
    return SymbolicCircumcenter(RatCurve(comps, domain), rad, det)


def circumcenter_symbolic(statics: Sequence[Point], curves: Sequence[RatCurve],
                          domain: Interval | None = None) -> tuple[RatCurve, RatFn]:
    sc = symbolic_circumcenter(statics, curves, domain)
    return sc.curve, sc.radius_sq


# ---------------------------------------------------------------------------
# smallest enclosing balls


def is_boundary_support(T: Sequence[Point], S_all: Sequence[Point]) -> bool:
    """CB(T) = SEB(S_all): every point inside CB(T) and cc(T) in conv(T)."""
    c, r2 = circumcenter(T)
    if any(dist2(p, c) > r2 for p in S_all):
        return False
    return all(x >= 0 for x in cc_affine_coefficients(T))


def support_of_ball(P: Sequence[Point], ball: Ball) -> list[int]:
    """Affinely independent boundary subset T with CB(T) = ball, certified."""
    boundary = [i for i, p in enumerate(P) if ball.on_boundary(p)]
    pts = [P[i] for i in boundary]
    rank, basis = affine_rank(pts)
    if len(basis) == len(boundary):
        return boundary
    for combo in itertools.combinations(range(len(boundary)), rank + 1):
        sub_pts = [pts[i] for i in combo]
        if is_affinely_independent(sub_pts) and is_boundary_support(sub_pts, P):
            return [boundary[i] for i in combo]
    # unreachable for an exact SEB: the center lies in the hull of the boundary
    return [boundary[i] for i in basis]


def _welzl_mtf(pts: list, end: int, support: list, dim: int):
    ball = circumcenter(support) if support else None
    if len(support) == dim + 1:
        return ball
    for i in range(end):
        p = pts[i]
        if ball is None or dist2(p, ball[0]) > ball[1]:
            ball = _welzl_mtf(pts, i, support + [p], dim)
            pts.insert(0, pts.pop(i))
    return ball


def seb(P: Sequence[Point], seed: int = 0) -> tuple[Ball, list[int]]:
    """Smallest enclosing ball (move-to-front Welzl, exact) and its support."""
    P = [point(p) for p in P]
    if not P:
        raise ValueError("seb of an empty set")
    pts = list(dict.fromkeys(P))
    random.Random(seed).shuffle(pts)
    c, r2 = _welzl_mtf(pts, len(pts), [], len(P[0]))
    ball = Ball(c, r2)
    return ball, support_of_ball(P, ball)


def seb_bruteforce(P: Sequence[Point]) -> Ball:
    """Reference SEB by enumerating all candidate supports."""
    P = [point(p) for p in P]
    uniq = list(dict.fromkeys(P))
    if len(uniq) == 1:
        return Ball(uniq[0], Fraction(0))
    d = len(P[0])
    found = None
    for k in range(2, min(d + 1, len(uniq)) + 1):
        for T in itertools.combinations(uniq, k):
            if not is_affinely_independent(T):
                continue
            if is_boundary_support(T, uniq):
                ball = Ball(*circumcenter(T))
                if found is None:
                    found = ball
                elif found != ball:
                    raise AssertionError("two distinct balls certified as the SEB")
    if found is None:
        raise AssertionError("no certified support found")
    return found


def lifted_det(P: Sequence[Point]) -> Fraction:
    """Determinant of rows (p, |p|^2, 1); zero iff the d+2 points are co-spherical
    or co-hyperplanar."""
    return det_bareiss([list(p) + [dot(p, p), Fraction(1)] for p in P])


def general_position_check(S: Sequence[Point]) -> bool:
    S = [point(p) for p in S]
    if len(S) <= 1:
        return True
    if len(set(S)) != len(S):
        return False
    d = len(S[0])
    k = min(len(S), d + 1)
    for T in itertools.combinations(S, k):
        if not is_affinely_independent(T):
            return False
    if len(S) >= d + 2:
        for T in itertools.combinations(S, d + 2):
            if lifted_det(T) == 0:
                return False
    return True
