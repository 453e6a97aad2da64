"""Independent checks of a traced center function against per-sample exact
smallest enclosing balls."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .fpv import sign_of
from .geomcore import RatCurve, point, seb
from .polyalg import DEFAULT_REFINE_WIDTH, refine, separate
from .tracker import PiecewiseCenter


@dataclass
class Failure:
    t: Fraction
    arc: int
    expected: tuple
    got: tuple


@dataclass
class VerifyReport:
    samples: int = 0
    exact_matches: int = 0
    max_dev: Fraction = Fraction(0)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.samples == self.exact_matches


def _arc_sample_range(arc) -> tuple[Fraction, Fraction]:
    a, b = arc.start, arc.end
    if a.is_exact() and b.is_exact():
        return a.lo, b.lo
    a, b = separate(a, b)
    return a.hi, b.lo


def sample_times(pc: PiecewiseCenter, samples: int, seed: int = 0) -> list[tuple[int, Fraction]]:
    """Rational sample times strictly inside the arcs (event isolating intervals
    excluded), spread round-robin over the arcs."""
    rng = random.Random(seed)
    out = []
    ranges = [_arc_sample_range(a) for a in pc.arcs]
    for k in range(samples):
        idx = k % len(pc.arcs)
        lo, hi = ranges[idx]
        u = Fraction(rng.randint(1, 999_999), 1_000_000)
        out.append((idx, lo + (hi - lo) * u))
    return out


def verify(pc: PiecewiseCenter, S: Sequence, V: Sequence[RatCurve], samples: int = 200,
           seed: int = 0) -> VerifyReport:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    S = [point(p) for p in S]
    report = VerifyReport()
    for idx, t in sample_times(pc, samples, seed):
        got = pc.arcs[idx].curve(t)
        ball, _ = seb(S + [v(t) for v in V], seed)
        report.samples += 1
        dev = max(abs(x - y) for x, y in zip(got, ball.center))
        report.max_dev = max(report.max_dev, dev)
        if dev == 0:
            report.exact_matches += 1
        else:
            report.failures.append(Failure(t, idx, ball.center, got))
    return report


@dataclass
class EventGap:
    time: object
    gaps: tuple  # per-coordinate |left - right|
    exact: bool

    @property
    def max_gap(self) -> Fraction:
        return max(self.gaps)


def continuity_audit(pc: PiecewiseCenter, width: Fraction = DEFAULT_REFINE_WIDTH) -> list[EventGap]:
    """Jump of the center function across every interior event.

    A coordinate whose left/right difference vanishes exactly at the event
    (decided by exact sign evaluation, also at irrational events) has gap 0;
    otherwise the gap is measured at the event time refined to ``width``.
    """
    out = []
    for left, right in zip(pc.arcs, pc.arcs[1:]):
        t_e = refine(left.end, width)
        t = t_e.lo if t_e.is_exact() else t_e.approx
        gaps = []
        exact = True
        for fl, fr in zip(left.curve.components, right.curve.components):
            diff = fl - fr
            s, t_e = sign_of(diff, t_e)
            if s == 0:
                gaps.append(Fraction(0))
            else:
                exact = exact and t_e.is_exact()
                gaps.append(abs(fl(t) - fr(t)))
        out.append(EventGap(t_e, tuple(gaps), exact))
    return out
