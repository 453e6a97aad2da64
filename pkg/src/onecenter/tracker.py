"""Event-driven computation of the piecewise rational 1-center curve.

The loop alternates two steps. From the current arc, collect every candidate
event (face hits, sub-support intersections, sphere crossings, degenerate
times) and take the earliest one after the last event. Then recompute the
support at an exact rational sample just after it. A support is accepted only
if its own arc has no candidate event before that sample, which makes the
support valid on the whole gap by exact sign arguments.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import fpv
from .fpv import IdenticalCurves, sort_times
from .geomcore import (
    Ball,
    IdenticallyDegenerate,
    Point,
    RatCurve,
    circumcenter,
    dist2,
    general_position_check,
    point,
    seb,
    symbolic_circumcenter,
)
from .polyalg import (
    DEFAULT_REFINE_WIDTH,
    AlgebraicTime,
    Interval,
    Poly,
    RatFn,
    _simplest_between,
    as_rat,
    compare,
    isolate_roots,
    refine,
    same_root,
    separate,
)

START, END, IN, OUT, SUPPORT_CHANGE = "START", "END", "IN", "OUT", "SUPPORT_CHANGE"


class InvalidInstance(ValueError):
    pass


class ComplexityGuard(RuntimeError):
    pass


@dataclass(frozen=True)
class TraceOptions:
    refine_width: Fraction = DEFAULT_REFINE_WIDTH
    seed: int = 0
    skip_gp_check: bool = False
    candidate_cap: int = 20_000
    max_resample: int = 200


@dataclass(frozen=True, order=True)
class SupportSet:
    static_ids: tuple = ()
    mobile_ids: tuple = ()

    def __len__(self) -> int:
        return len(self.static_ids) + len(self.mobile_ids)

    def __sub__(self, other: "SupportSet") -> "SupportSet":
        return SupportSet(
            tuple(i for i in self.static_ids if i not in other.static_ids),
            tuple(i for i in self.mobile_ids if i not in other.mobile_ids),
        )


@dataclass(frozen=True)
class Arc:
    start: AlgebraicTime
    end: AlgebraicTime
    support: SupportSet
    curve: RatCurve
    radius_sq: RatFn

    def __call__(self, t):
        return self.curve(t)


@dataclass(frozen=True)
class Event:
    time: AlgebraicTime
    kind: str
    joined: SupportSet = SupportSet()
    left: SupportSet = SupportSet()


@dataclass
class PiecewiseCenter:
    arcs: list
    events: list
    domain: Interval

    def arc_index(self, t, prefer: str = "right") -> int:
        """Index of the arc active at rational t; at an event time the arc on
        the requested side is returned."""
        t = as_rat(t)
        if not (self.domain.lo <= t <= self.domain.hi):
            raise ValueError(f"t={t} outside the domain")
        for k, arc in enumerate(self.arcs):
            c_end = compare(t, arc.end)
            if c_end < 0:
                return k
            if c_end == 0:
                if prefer == "left" or k == len(self.arcs) - 1:
                    return k
                return k + 1
        return len(self.arcs) - 1

    def __call__(self, t) -> Point:
        t = as_rat(t)
        return self.arcs[self.arc_index(t)].curve(t)

    @property
    def interior_events(self) -> list:
        return [e for e in self.events if e.kind not in (START, END)]


@dataclass(frozen=True)
class _Candidate:
    time: AlgebraicTime
    source: str


def _exact_event_time(t: AlgebraicTime) -> AlgebraicTime:
    return t.exactify()


class Tracer:
    """Holds one instance (static sites, mobile curves, domain) and runs the
    event loop over it."""

    def __init__(self, S: Sequence, V: Sequence[RatCurve], domain: Interval,
                 options: TraceOptions = TraceOptions(), exhaustive: bool = False):
        self.S = [point(p) for p in S]
        self.V = list(V)
        self.domain = domain
        self.options = options
        self.exhaustive = exhaustive
        self.d = len(self.S[0]) if self.S else self.V[0].dim
        self._cc_cache: dict = {}
        self._static_ball: Optional[Ball] = None
        self.hi = AlgebraicTime.rational(domain.hi)
        self.lo = AlgebraicTime.rational(domain.lo)

    # -- geometry helpers -------------------------------------------------

    @property
    def static_ball(self) -> Optional[Ball]:
        if self._static_ball is None and self.S:
            self._static_ball = seb(self.S, self.options.seed)[0]
        return self._static_ball

    def positions(self, t) -> list:
        return self.S + [v(t) for v in self.V]

    def _split(self, ids: Sequence[int]) -> SupportSet:
        n = len(self.S)
        return SupportSet(tuple(sorted(i for i in ids if i < n)),
                          tuple(sorted(i - n for i in ids if i >= n)))

    def symbolic(self, sup: SupportSet):
        """(curve, radius_sq, det) of the circumcenter of a support, cached."""
        if sup in self._cc_cache:
            return self._cc_cache[sup]
        statics = [self.S[i] for i in sup.static_ids]
        if not sup.mobile_ids:
            c, r2 = circumcenter(statics)
            out = (RatCurve.constant(c, self.domain), RatFn.const(r2), Poly.const(1))
        else:
            try:
                sc = symbolic_circumcenter(statics, [self.V[i] for i in sup.mobile_ids], self.domain)
                out = (sc.curve, sc.radius_sq, sc.det)
            except IdenticallyDegenerate:
                out = None
        self._cc_cache[sup] = out
        return out

    def support_at(self, t) -> SupportSet:
        """Certified support of SEB(S + V(t)) at a rational time."""
        pts = self.positions(t)
        _, ids = seb(pts, self.options.seed)
        return self._split(ids)

    # -- candidate generation ---------------------------------------------

    def _window(self, t_last: AlgebraicTime) -> Interval:
        return Interval(t_last.lo, self.domain.hi)

    def in_out_list(self, mobile: int = 0) -> list:
        """Sphere crossings of one mobile against SEB(S), tangencies dropped,
        prefixed with the domain start when the mobile starts inside."""
        key = ("in_out", mobile)
        if key in self._cc_cache:
            return self._cc_cache[key]
        ball = self.static_ball
        out = []
        if dist2(self.V[mobile](self.domain.lo), ball.center) < ball.radius_sq:
            out.append((self.lo, IN))
        for t0, lab in fpv.curve_sphere_intersections(self.V[mobile], ball):
            if lab != fpv.TANGENT and compare(t0, self.lo) > 0:
                out.append((t0, lab))
        self._cc_cache[key] = out
        return out

    def candidates(self, sup: SupportSet, t_last: AlgebraicTime) -> list[_Candidate]:
        """All candidate event times of the arc of ``sup`` strictly after t_last."""
        sym = self.symbolic(sup)
        curve, rad, det = sym
        window = self._window(t_last)
        raw: list[_Candidate] = []
        n = len(self.S)

        # sites joining the boundary
        if sup.static_ids:
            for hit in fpv.curve_face_intersections(curve, sup.static_ids, self.S, window):
                raw.append(_Candidate(hit.time, "face"))
        else:
            for j in range(n):
                raw += self._distance_roots(curve, rad, RatCurve.constant(self.S[j], self.domain),
                                            window, "site")
        for i in range(len(self.V)):
            if i in sup.mobile_ids:
                continue
            if not sup.mobile_ids and self.S and sup == self._static_support():
                for t0, lab in fpv.curve_sphere_intersections(self.V[i], self.static_ball, window):
                    if lab != fpv.TANGENT:
                        raw.append(_Candidate(t0, lab))
            else:
                raw += self._distance_roots(curve, rad, self.V[i], window, "mobile")

        # sub-supports: a point's affine coefficient reaching zero
        for sub in self._sub_supports(sup):
            other = self.symbolic(sub)
            if other is None:
                continue
            try:
                for t0 in fpv.curve_intersections(curve, other[0], window):
                    raw.append(_Candidate(t0, "subarc"))
            except IdenticalCurves:
                pass

        # the mobile re-entering SEB(S)
        if len(self.V) == 1 and sup.mobile_ids and self.S:
            for t0, lab in self.in_out_list():
                if lab == IN:
                    raw.append(_Candidate(t0, IN))

        # degenerate simplex times and poles
        if not det.is_const():
            for t0 in isolate_roots(det, window):
                raw.append(_Candidate(t0, "degenerate"))
        for t0 in curve.poles() if not curve.is_constant() else []:
            raw.append(_Candidate(t0, "pole"))

        if self.exhaustive:
            raw += self._exhaustive(sup, curve, window)

        return self._after(raw, t_last)

    def _static_support(self) -> SupportSet:
        if not hasattr(self, "_ss"):
            self._ss = self._split(seb(self.S, self.options.seed)[1])
        return self._ss

    def _distance_roots(self, curve, rad, other: RatCurve, window, tag) -> list[_Candidate]:
        f = -rad
        for a, b in zip(curve.components, other.components):
            diff = a - b
            f = f + diff * diff
        if f.is_zero():
            return []
        return [_Candidate(t0, tag) for t0 in isolate_roots(f.num, window)]

    def _sub_supports(self, sup: SupportSet):
        if self.exhaustive or len(self.V) != 1:
            pts = [("s", i) for i in sup.static_ids] + [("m", i) for i in sup.mobile_ids]
            for k in range(2, len(pts)):
                for combo in itertools.combinations(pts, k):
                    yield SupportSet(tuple(i for tag, i in combo if tag == "s"),
                                     tuple(i for tag, i in combo if tag == "m"))
            return
        statics = sup.static_ids
        if not sup.mobile_ids:
            return
        for k in range(1, len(statics)):
            for combo in itertools.combinations(statics, k):
                yield SupportSet(combo, sup.mobile_ids)
        if len(statics) >= 2:
            yield SupportSet(statics, ())

    def candidate_subset_count(self) -> int:
        total = len(self.S) + len(self.V)
        return sum(math.comb(total, k) for k in range(2, self.d + 2))

    def _exhaustive(self, sup: SupportSet, curve: RatCurve, window) -> list[_Candidate]:
        out = []
        n, m = len(self.S), len(self.V)
        for k in range(2, self.d + 2):
            for combo in itertools.combinations(range(n + m), k):
                other_sup = self._split(combo)
                if other_sup == sup:
                    continue
                other = self.symbolic(other_sup)
                if other is None:
                    continue
                try:
                    for t0 in fpv.curve_intersections(curve, other[0], window):
                        out.append(_Candidate(t0, "subset"))
                except IdenticalCurves:
                    pass
        if self.S:
            for i in range(m):
                for t0, lab in fpv.curve_sphere_intersections(self.V[i], self.static_ball, window):
                    if lab != fpv.TANGENT:
                        out.append(_Candidate(t0, lab))
        return out

    def _after(self, raw: list[_Candidate], t_last: AlgebraicTime) -> list[_Candidate]:
        keep = [c for c in raw if compare(c.time, t_last) > 0 and compare(c.time, self.hi) <= 0]
        return sort_times(keep, key=lambda c: c.time)

    # -- the event loop -----------------------------------------------------

    def _sample_between(self, a: AlgebraicTime, b: AlgebraicTime) -> Fraction:
        a, b = separate(a, b)
        gap = b.lo - a.hi
        return _simplest_between(a.hi + gap / 4, b.lo - gap / 4)

    def certified_step(self, t_e: AlgebraicTime, bound: AlgebraicTime):
        """Support valid on (t_e, t*] for a rational t* before ``bound``, with
        the arc's candidate events after t_e."""
        for _ in range(self.options.max_resample):
            t_star = self._sample_between(t_e, bound)
            if self._coincidence_at(t_star):
                bound = AlgebraicTime.rational(t_star)
                continue
            sup = self.support_at(t_star)
            if self.symbolic(sup) is None:
                bound = AlgebraicTime.rational(t_star)
                continue
            cands = self.candidates(sup, t_e)
            if not cands or compare(cands[0].time, t_star) > 0:
                return sup, cands
            bound = cands[0].time
        raise RuntimeError("support certification did not converge")

    def _coincidence_at(self, t: Fraction) -> bool:
        """Two points meet at t without being the same curve. The ball there
        can be degenerate (radius 0 with a single static site), so t is not a
        usable sample."""
        if not hasattr(self, "_identical"):
            curves = [RatCurve.constant(p, self.domain) for p in self.S] + self.V
            self._identical = {(i, j) for i, j in itertools.combinations(range(len(curves)), 2)
                               if curves[i].same_as(curves[j])}
        pts = self.positions(t)
        seen: dict = {}
        for j, p in enumerate(pts):
            i = seen.setdefault(p, j)
            if i != j and (i, j) not in self._identical:
                return True
        return False

    def initial_arc(self) -> Arc:
        sup, cands = self.certified_step(self.lo, self.hi)
        end = cands[0].time if cands else self.hi
        return self._arc(self.lo, end, sup)

    def next_event(self, arc: Arc, t_last: AlgebraicTime) -> Optional[AlgebraicTime]:
        cands = self.candidates(arc.support, t_last)
        if not cands or compare(cands[0].time, self.hi) >= 0:
            return None
        return cands[0].time

    def support_after_event(self, t_e: AlgebraicTime, bound: AlgebraicTime | None = None) -> SupportSet:
        return self.certified_step(t_e, bound or self.hi)[0]

    def _arc(self, start, end, sup: SupportSet) -> Arc:
        curve, rad, _ = self.symbolic(sup)
        return Arc(start, end, sup, curve, rad)

    def _event_kind(self, old: SupportSet, new: SupportSet) -> str:
        if old.mobile_ids and not new.mobile_ids:
            return IN
        if not old.mobile_ids and new.mobile_ids:
            return OUT
        return SUPPORT_CHANGE

    def run(self) -> PiecewiseCenter:
        width = self.options.refine_width
        t_e = self.lo
        bound = self.hi
        arcs: list[Arc] = []
        events = [Event(self.lo, START)]
        cur_sup, cur_start = None, self.lo
        while True:
            sup, cands = self.certified_step(t_e, bound)
            if cur_sup is not None and sup != cur_sup:
                arcs.append(self._arc(cur_start, t_e, cur_sup))
                events.append(Event(refine(t_e, width), self._event_kind(cur_sup, sup),
                                    joined=sup - cur_sup, left=cur_sup - sup))
                cur_start = t_e
            if cur_sup is None or sup != cur_sup:
                cur_sup = sup
            if not cands or compare(cands[0].time, self.hi) >= 0:
                break
            t_next = _exact_event_time(cands[0].time)
            later = [c for c in cands[1:] if not same_root(c.time, t_next)]
            t_e, bound = t_next, (later[0].time if later else self.hi)
        arcs.append(self._arc(cur_start, self.hi, cur_sup))
        arcs = [Arc(refine(a.start, width), refine(a.end, width), a.support, a.curve, a.radius_sq)
                for a in arcs]
        events.append(Event(self.hi, END))
        return PiecewiseCenter(arcs, events, self.domain)


# ---------------------------------------------------------------------------


def validate_instance(S, V: Sequence[RatCurve], domain: Interval, skip_gp_check: bool = False):
    S = [point(p) for p in S]
    if domain.lo >= domain.hi:
        raise InvalidInstance("domain must have lo < hi")
    dims = {len(p) for p in S} | {v.dim for v in V}
    if len(dims) != 1:
        raise InvalidInstance(f"inconsistent dimensions {sorted(dims)}")
    if dims.pop() < 2:
        raise InvalidInstance("dimension must be at least 2")
    if len(set(S)) != len(S):
        raise InvalidInstance("static points must be distinct")
    for k, v in enumerate(V):
        if v.domain != domain:
            raise InvalidInstance(f"mobile {k} is defined on a different domain")
        if v.poles():
            raise InvalidInstance(f"mobile {k} has a vanishing denominator in the domain")
    if not skip_gp_check and not general_position_check(S):
        raise InvalidInstance("static points are not in general position")


def trace_single(S, nu: RatCurve, domain: Interval | None = None,
                 options: TraceOptions = TraceOptions()) -> PiecewiseCenter:
    """Piecewise center function for static sites S and one mobile point."""
    domain = domain or nu.domain
    if not S:
        raise InvalidInstance("at least one static point is required")
    validate_instance(S, [nu], domain, options.skip_gp_check)
    return Tracer(S, [nu], domain, options).run()


def trace_multi(S, V: Sequence[RatCurve], domain: Interval | None = None,
                options: TraceOptions = TraceOptions()) -> PiecewiseCenter:
    """Piecewise center function for several mobile points; every support of
    size 2..d+1 is considered as a candidate next arc."""
    if not V:
        raise InvalidInstance("at least one mobile curve is required")
    domain = domain or V[0].domain
    validate_instance(S, V, domain, options.skip_gp_check)
    tracer = Tracer(S, V, domain, options, exhaustive=True)
    count = tracer.candidate_subset_count()
    if count > options.candidate_cap:
        raise ComplexityGuard(f"{count} candidate supports exceed the cap {options.candidate_cap}")
    return tracer.run()


def one_sided_derivative(pc: PiecewiseCenter, t_e, side: str,
                         width: Fraction = DEFAULT_REFINE_WIDTH) -> tuple:
    """Derivative of the arc to the left or right of t_e evaluated at t_e.
    Exact for rational t_e; otherwise evaluated at a refined approximation."""
    if isinstance(t_e, Event):
        t_e = t_e.time
    if not isinstance(t_e, AlgebraicTime):
        t_e = AlgebraicTime.rational(t_e)
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    t_e = refine(t_e.exactify(), width)
    probe = t_e.lo if t_e.is_exact() else t_e.approx
    k = pc.arc_index(probe, prefer=side) if t_e.is_exact() else _arc_around(pc, t_e, side)
    return pc.arcs[k].curve.derivative()(probe)


def _arc_around(pc: PiecewiseCenter, t_e: AlgebraicTime, side: str) -> int:
    for k, arc in enumerate(pc.arcs):
        if same_root(arc.end, t_e) and k + 1 < len(pc.arcs):
            return k if side == "left" else k + 1
    return pc.arc_index(t_e.approx)
