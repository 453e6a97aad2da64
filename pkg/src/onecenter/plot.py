"""Static plot output for planar instances: CSV samples and a plain SVG."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .geomcore import RatCurve
from .io import decimal_str
from .polyalg import AlgebraicTime, PoleAtSample
from .tracker import PiecewiseCenter

SIZE = 600
MARGIN = 30
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _endpoint(t: AlgebraicTime) -> Fraction:
    return t.lo if t.is_exact() else t.approx


def arc_samples(pc: PiecewiseCenter, samples: int) -> list[tuple[int, Fraction, tuple]]:
    """(arc id, t, center) at samples+1 evenly spaced times per arc.
    Irrational endpoints are replaced by their refined rational approximation."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rows = []
    for k, arc in enumerate(pc.arcs):
        a, b = _endpoint(arc.start), _endpoint(arc.end)
        for i in range(samples + 1):
            t = a + (b - a) * Fraction(i, samples)
            try:
                rows.append((k, t, arc.curve(t)))
            except PoleAtSample:
                continue
    return rows


def to_csv(pc: PiecewiseCenter, samples: int) -> str:
    lines = ["t,x,y,arc"]
    for k, t, (x, y) in arc_samples(pc, samples):
        lines.append(f"{decimal_str(t)},{decimal_str(x)},{decimal_str(y)},{k}")
    return "\n".join(lines) + "\n"


def _mobile_trace(curve: RatCurve, samples: int) -> list[tuple]:
    lo, hi = curve.domain.lo, curve.domain.hi
    n = max(samples, 64)
    return [curve(lo + (hi - lo) * Fraction(i, n)) for i in range(n + 1)]


def to_svg(pc: PiecewiseCenter, static: Sequence, mobile: Sequence[RatCurve],
           samples: int) -> str:
    rows = arc_samples(pc, samples)
    traces = [_mobile_trace(v, samples) for v in mobile]
    pts = [p for _, _, p in rows] + [tuple(p) for p in static] + [p for tr in traces for p in tr]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or Fraction(1)
    scale = Fraction(SIZE - 2 * MARGIN) / span

    def xy(p) -> str:
        x = MARGIN + (p[0] - x0) * scale
        y = SIZE - MARGIN - (p[1] - y0) * scale
        return f"{decimal_str(x, 3)},{decimal_str(y, 3)}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    for j, tr in enumerate(traces):
        out.append(f'<polyline class="mobile" data-mobile="{j}" fill="none" stroke="#777777" '
                   f'stroke-dasharray="6 4" points="{" ".join(xy(p) for p in tr)}"/>')
    for k in range(len(pc.arcs)):
        poly = " ".join(xy(p) for a, _, p in rows if a == k)
        out.append(f'<polyline class="arc" data-arc="{k}" fill="none" '
                   f'stroke="{COLORS[k % len(COLORS)]}" stroke-width="2" points="{poly}"/>')
    for i, p in enumerate(static):
        cx, cy = xy(p).split(",")
        out.append(f'<circle class="static" data-static="{i}" cx="{cx}" cy="{cy}" r="4" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
