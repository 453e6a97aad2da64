"""Instance configs and JSON (de)serialization of traced center functions.

Every number travels as a string: integers, decimals ("0.25", "1e-12") or
"p/q" fractions. Decimals are converted exactly; binary floats never enter.
"""
from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any

from .geomcore import RatCurve, point
from .polyalg import AlgebraicTime, Interval, Poly, RatFn, as_rat
from .tracker import Arc, Event, InvalidInstance, PiecewiseCenter, SupportSet, TraceOptions

FORMAT = 1


@dataclass
class InstanceConfig:
    dimension: int
    static: list
    mobile: list
    domain: Interval
    options: TraceOptions = field(default_factory=TraceOptions)
    samples: int = 200


def _rat(x, what: str) -> Fraction:
    if isinstance(x, bool) or x is None:
        raise InvalidInstance(f"{what}: expected a number, got {x!r}")
    try:
        return as_rat(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidInstance(f"{what}: cannot parse {x!r} as an exact rational") from exc


def _poly(coeffs, what: str) -> Poly:
    if not isinstance(coeffs, list) or not coeffs:
        raise InvalidInstance(f"{what}: expected a non-empty coefficient list")
    return Poly(_rat(c, what) for c in coeffs)


def parse_config(raw: dict[str, Any]) -> InstanceConfig:
    if not isinstance(raw, dict):
        raise InvalidInstance("config must be a JSON object")
    fmt = raw.get("format", FORMAT)
    if fmt != FORMAT:
        raise InvalidInstance(f"unsupported format {fmt!r}")
    try:
        d = int(raw["dimension"])
        lo, hi = raw["domain"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInstance(f"missing or malformed field: {exc}") from exc
    if d < 2:
        raise InvalidInstance("dimension must be at least 2")
    domain_lo, domain_hi = _rat(lo, "domain"), _rat(hi, "domain")
    if domain_lo >= domain_hi:
        raise InvalidInstance("domain must satisfy lo < hi")
    domain = Interval(domain_lo, domain_hi)

    static = []
    for k, p in enumerate(raw.get("static", [])):
        if not isinstance(p, list) or len(p) != d:
            raise InvalidInstance(f"static[{k}]: expected {d} coordinates")
        static.append(point(_rat(c, f"static[{k}]") for c in p))
    if len(set(static)) != len(static):
        raise InvalidInstance("static points must be distinct")

    mobile = []
    for k, comps in enumerate(raw.get("mobile", [])):
        if not isinstance(comps, list) or len(comps) != d:
            raise InvalidInstance(f"mobile[{k}]: expected {d} components")
        fns = []
        for j, comp in enumerate(comps):
            what = f"mobile[{k}][{j}]"
            if not isinstance(comp, dict) or "num" not in comp:
                raise InvalidInstance(f"{what}: expected {{num, den}}")
            den = _poly(comp.get("den", ["1"]), what)
            if den.is_zero():
                raise InvalidInstance(f"{what}: zero denominator")
            fns.append(RatFn(_poly(comp["num"], what), den))
        curve = RatCurve(tuple(fns), domain)
        if curve.poles():
            raise InvalidInstance(f"mobile[{k}]: denominator vanishes on the domain")
        mobile.append(curve)

    opts = raw.get("options", {}) or {}
    try:
        seed = int(opts.get("seed", 0))
        options = TraceOptions(
            refine_width=_rat(opts.get("refine_width", "1e-12"), "refine_width"),
            seed=seed,
            skip_gp_check=bool(opts.get("skip_gp_check", False)),
            candidate_cap=int(opts.get("candidate_cap", 20_000)),
        )
        samples = int(opts.get("samples", 200))
    except (TypeError, ValueError) as exc:
        raise InvalidInstance(f"bad options: {exc}") from exc
    if options.refine_width <= 0:
        raise InvalidInstance("refine_width must be positive")
    if "ONECENTER_SEED" in os.environ:
        try:
            options = replace(options, seed=int(os.environ["ONECENTER_SEED"]))
        except ValueError as exc:
            raise InvalidInstance("ONECENTER_SEED must be an integer") from exc
    return InstanceConfig(d, static, mobile, domain, options, samples)


def load_json(path) -> Any:
    text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
    try:
        return json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"invalid JSON: {exc}") from exc


def load_config(path) -> InstanceConfig:
    return parse_config(load_json(path))


# ---------------------------------------------------------------------------
# output


def rat_str(x: Fraction) -> str:
    x = as_rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, places: int = 12) -> str:
    """Rounded decimal rendering; integers print without a fraction part."""
    x = as_rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    with localcontext() as ctx:
        ctx.prec = 60
        d = (Decimal(x.numerator) / Decimal(x.denominator)).quantize(
            Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def poly_json(p: Poly) -> list:
    return [rat_str(c) for c in p.coeffs] or ["0"]


def ratfn_json(f: RatFn) -> dict:
    return {"num": poly_json(f.num), "den": poly_json(f.den)}


def time_json(t: AlgebraicTime) -> dict:
    return {
        "exact": {"poly": poly_json(t.defining), "interval": [rat_str(t.lo), rat_str(t.hi)]},
        "approx": decimal_str(t.approx, 13),
        "rational": t.is_exact(),
    }


def support_json(s: SupportSet) -> dict:
    return {"static": list(s.static_ids), "mobile": list(s.mobile_ids)}


def piecewise_json(pc: PiecewiseCenter, dimension: int) -> dict:
    return {
        "format": FORMAT,
        "dimension": dimension,
        "domain": [rat_str(pc.domain.lo), rat_str(pc.domain.hi)],
        "arcs": [
            {
                "span": {"start": time_json(a.start), "end": time_json(a.end)},
                "support": support_json(a.support),
                "center": [ratfn_json(c) for c in a.curve.components],
                "radius_sq": ratfn_json(a.radius_sq),
            }
            for a in pc.arcs
        ],
        "events": [
            {"time": time_json(e.time), "kind": e.kind,
             "joined": support_json(e.joined), "left": support_json(e.left)}
            for e in pc.events
        ],
    }


def _time_from(obj: dict) -> AlgebraicTime:
    ex = obj["exact"]
    lo, hi = ex["interval"]
    return AlgebraicTime(Poly(as_rat(c) for c in ex["poly"]), Interval(as_rat(lo), as_rat(hi)))


def _ratfn_from(obj: dict) -> RatFn:
    return RatFn(Poly(as_rat(c) for c in obj["num"]), Poly(as_rat(c) for c in obj["den"]))


def _support_from(obj: dict) -> SupportSet:
    return SupportSet(tuple(obj["static"]), tuple(obj["mobile"]))


def piecewise_from_json(obj: dict) -> PiecewiseCenter:
    """Inverse of :func:`piecewise_json`."""
    try:
        domain = Interval(as_rat(obj["domain"][0]), as_rat(obj["domain"][1]))
        arcs = []
        for a in obj["arcs"]:
            comps = tuple(_ratfn_from(c) for c in a["center"])
            arcs.append(Arc(_time_from(a["span"]["start"]), _time_from(a["span"]["end"]),
                            _support_from(a["support"]), RatCurve(comps, domain),
                            _ratfn_from(a["radius_sq"])))
        events = [Event(_time_from(e["time"]), e["kind"], _support_from(e["joined"]),
                        _support_from(e["left"])) for e in obj["events"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInstance(f"malformed piecewise JSON: {exc}") from exc
    return PiecewiseCenter(arcs, events, domain)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
