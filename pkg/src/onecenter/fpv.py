"""Implicit farthest-point Voronoi queries.

The diagram is never built. A face F(S') is handled through the bisector
hyperplanes between a representative of S' and the remaining sites, and
membership is decided with exact sign computations, also at algebraic times.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geomcore import Ball, Point, RatCurve, dist2, dot, point
from .polyalg import (
    AlgebraicTime,
    Interval,
    Poly,
    RatFn,
    compare,
    gcd,
    isolate_roots,
    same_root,
    sign_at_algebraic,
)


class IdenticalPoints(ValueError):
    pass


class IdenticallyOnPlane(Exception):
    """The curve lies inside the hyperplane for all t (no isolated roots)."""


class IdenticalCurves(Exception):
    """Two curves agree as rational functions."""


@dataclass(frozen=True)
class Hyperplane:
    """Points x with normal . x = offset."""

    normal: tuple
    offset: Fraction

    def value(self, x) -> Fraction:
        """normal . x - offset; for a bisector of (a, b) this is |x-a|^2 - |x-b|^2."""
        return dot(self.normal, x) - self.offset


def bisector(a: Point, b: Point) -> Hyperplane:
    """Perpendicular bisector of a and b: |x-a|^2 = |x-b|^2."""
    a, b = point(a), point(b)
    if a == b:
        raise IdenticalPoints("bisector of identical points")
    normal = tuple(2 * (y - x) for x, y in zip(a, b))
    return Hyperplane(normal, dot(b, b) - dot(a, a))


def face_membership(x: Point, sprime_ids: Sequence[int], S: Sequence[Point]) -> bool:
    """x in F(S'): equidistant from S' and strictly farther from S' than from
    every other site."""
    ids = sorted(set(sprime_ids))
    if not ids:
        raise ValueError("empty face generator set")
    r = dist2(x, S[ids[0]])
    if any(dist2(x, S[i]) != r for i in ids[1:]):
        return False
    others = set(range(len(S))) - set(ids)
    return all(dist2(x, S[l]) < r for l in others)


def _along(curve: RatCurve, h: Hyperplane) -> RatFn:
    acc = RatFn.const(-h.offset)
    for n, c in zip(h.normal, curve.components):
        if n:
            acc = acc + c * n
    return acc


def _window(curve: RatCurve, window: Interval | None) -> Interval:
    return curve.domain if window is None else window


def curve_hyperplane_roots(curve: RatCurve, h: Hyperplane,
                           window: Interval | None = None) -> list[AlgebraicTime]:
    """Parameter values in the window where the curve meets the hyperplane."""
    f = _along(curve, h)
    if f.is_zero():
        raise IdenticallyOnPlane
    return isolate_roots(f.num, _window(curve, window))


def sign_of(f: RatFn, t: AlgebraicTime) -> tuple[int, AlgebraicTime]:
    """Exact sign of a rational function at an algebraic time (not a pole)."""
    sn, t = sign_at_algebraic(f.num, t)
    if sn == 0:
        return 0, t
    sd, t = sign_at_algebraic(f.den, t)
    return sn * sd, t


@dataclass(frozen=True)
class FaceHit:
    time: AlgebraicTime
    joined: tuple  # indices of sites that become equidistant with S'


def curve_face_intersections(arc: RatCurve, sprime_ids: Sequence[int], S: Sequence[Point],
                             window: Interval | None = None) -> list[FaceHit]:
    """Times at which an arc lying on F(S') reaches a face F(S' + {s_j}).

    Bisectors are taken between the lowest-index member of S' and each other
    site. A root is kept when no site is strictly farther than S' there, so a
    simultaneous arrival of several sites is reported once with all of them.
    """
    ids = sorted(set(sprime_ids))
    if not ids:
        raise ValueError("empty face generator set")
    rep = S[ids[0]]
    others = [j for j in range(len(S)) if j not in ids]
    funcs = {}
    for j in others:
        f = _along(arc, bisector(rep, S[j]))
        if not f.is_zero():
            funcs[j] = f
    hits: list[FaceHit] = []
    for j, f in funcs.items():
        for t0 in isolate_roots(f.num, _window(arc, window)):
            joined = [j]
            ok = True
            for l, g in funcs.items():
                if l == j:
                    continue
                s, t0 = sign_of(g, t0)
                if s < 0:
                    ok = False
                    break
                if s == 0:
                    joined.append(l)
            if ok:
                hits.append(FaceHit(t0, tuple(sorted(joined))))
    return _merge_hits(hits)


def _merge_hits(hits: list[FaceHit]) -> list[FaceHit]:
    merged: list[FaceHit] = []
    for h in hits:
        for k, m in enumerate(merged):
            if same_root(h.time, m.time):
                merged[k] = FaceHit(m.time, tuple(sorted(set(m.joined) | set(h.joined))))
                break
        else:
            merged.append(h)
    return sort_times(merged, key=lambda h: h.time)


def sort_times(items, key=lambda x: x):
    """Sort by exact algebraic time."""
    return sorted(items, key=functools.cmp_to_key(lambda a, b: compare(key(a), key(b))))


IN, OUT, TANGENT = "IN", "OUT", "TANGENT"


def _side_signs(f: Poly, t0: AlgebraicTime) -> tuple[int, int]:
    """Signs of f just left and just right of a root t0."""
    if t0.is_exact():
        r = t0.lo
        k, q = 0, f
        while q.sign_at(r) == 0:
            k += 1
            q = q.derivative()
        s = q.sign_at(r)
        return (s if k % 2 == 0 else -s), s
    return f.sign_at(t0.lo), f.sign_at(t0.hi)


def curve_sphere_intersections(curve: RatCurve, ball: Ball,
                               window: Interval | None = None) -> list[tuple[AlgebraicTime, str]]:
    """Crossings of the sphere bounding ``ball``, labelled IN (entering),
    OUT (leaving) or TANGENT (touching without crossing)."""
    f = RatFn.const(-ball.radius_sq)
    for comp, c in zip(curve.components, ball.center):
        diff = comp - c
        f = f + diff * diff
    if f.is_zero():
        return []
    out = []
    for t0 in isolate_roots(f.num, _window(curve, window)):
        left, right = _side_signs(f.num, t0)
        # the denominator of f is a square, hence positive
        if left == right:
            out.append((t0, TANGENT))
        elif left > 0:
            out.append((t0, IN))
        else:
            out.append((t0, OUT))
    return out


def curve_intersections(c1: RatCurve, c2: RatCurve,
                        window: Interval | None = None) -> list[AlgebraicTime]:
    """Parameter values where two rational curves coincide (common roots of the
    cross-multiplied component differences)."""
    g = None
    for a, b in zip(c1.components, c2.components):
        diff = a - b
        if diff.is_zero():
            continue
        g = diff.num if g is None else gcd(g, diff.num)
        if g.is_const():
            return []
    if g is None:
        raise IdenticalCurves
    return isolate_roots(g, _window(c1, window))
