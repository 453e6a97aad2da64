"""onecenter command line: trace | verify | eval | plot | seb.

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 complexity guard.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import plot
from .geomcore import point, seb, seb_bruteforce
from .io import (
    InstanceConfig,
    decimal_str,
    dumps,
    load_config,
    load_json,
    piecewise_from_json,
    piecewise_json,
    rat_str,
    time_json,
)
from .oracle import continuity_audit, verify
from .polyalg import PoleAtSample, as_rat
from .tracker import ComplexityGuard, InvalidInstance, PiecewiseCenter, one_sided_derivative, trace_multi, trace_single

EXIT_OK, EXIT_VERIFY, EXIT_INVALID, EXIT_GUARD = 0, 1, 2, 3
GAP_LIMIT = Fraction(1, 10**9)


def trace_config(cfg: InstanceConfig) -> PiecewiseCenter:
    if not cfg.mobile:
        raise InvalidInstance("at least one mobile curve is required")
    if len(cfg.mobile) == 1:
        return trace_single(cfg.static, cfg.mobile[0], cfg.domain, cfg.options)
    return trace_multi(cfg.static, cfg.mobile, cfg.domain, cfg.options)


def _point_json(p) -> dict:
    return {"exact": [rat_str(c) for c in p], "approx": [decimal_str(c) for c in p]}


def cmd_trace(args) -> int:
    cfg = load_config(args.config)
    sys.stdout.write(dumps(piecewise_json(trace_config(cfg), cfg.dimension)))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    pc = piecewise_from_json(load_json(args.trace)) if args.trace else trace_config(cfg)
    samples = args.samples or cfg.samples
    try:
        rep = verify(pc, cfg.static, cfg.mobile, samples, cfg.options.seed)
    except PoleAtSample as exc:
        raise InvalidInstance(f"traced arc has a pole inside its span: {exc}") from exc
    gaps = continuity_audit(pc, cfg.options.refine_width)
    bad_gaps = [g for g in gaps
                if (g.time.is_exact() and g.max_gap != 0) or g.max_gap >= GAP_LIMIT]
    out = {
        "samples": rep.samples,
        "exact_matches": rep.exact_matches,
        "max_deviation": decimal_str(rep.max_dev),
        "failures": [
            {"t": rat_str(f.t), "arc": f.arc,
             "expected": _point_json(f.expected), "got": _point_json(f.got)}
            for f in rep.failures[:20]
        ],
        "failure_count": len(rep.failures),
        "continuity": [
            {"time": time_json(g.time), "max_gap": decimal_str(g.max_gap, 15), "exact": g.exact}
            for g in gaps
        ],
        "ok": rep.ok and not bad_gaps,
    }
    sys.stdout.write(dumps(out))
    return EXIT_OK if out["ok"] else EXIT_VERIFY


def cmd_eval(args) -> int:
    cfg = load_config(args.config)
    try:
        t = as_rat(args.t)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidInstance(f"--t: cannot parse {args.t!r}") from exc
    if not cfg.domain.lo <= t <= cfg.domain.hi:
        raise InvalidInstance(f"--t {args.t} is outside the domain")
    pc = trace_config(cfg)
    k = pc.arc_index(t)
    out = {"t": rat_str(t), "arc": k, "center": _point_json(pc.arcs[k].curve(t)),
           "radius_sq": rat_str(pc.arcs[k].radius_sq(t))}
    sides = {"left": ["left"], "right": ["right"], "both": ["left", "right"]}.get(args.derivative, [])
    for side in sides:
        out.setdefault("derivative", {})[side] = _point_json(one_sided_derivative(pc, t, side))
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_plot(args) -> int:
    cfg = load_config(args.config)
    if cfg.dimension != 2:
        raise InvalidInstance("plot is only available for d = 2")
    if args.samples < 1:
        raise InvalidInstance("--samples must be >= 1")
    pc = trace_config(cfg)
    if args.format == "csv":
        text = plot.to_csv(pc, args.samples)
    else:
        text = plot.to_svg(pc, cfg.static, cfg.mobile, args.samples)
    Path(args.out).write_text(text)
    return EXIT_OK


def cmd_seb(args) -> int:
    raw = load_json(args.points)
    pts = raw.get("points") if isinstance(raw, dict) else raw
    if not isinstance(pts, list) or not pts:
        raise InvalidInstance("expected a non-empty list of points")
    try:
        P = [point(as_rat(c) for c in p) for p in pts]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidInstance(f"bad point: {exc}") from exc
    if len({len(p) for p in P}) != 1:
        raise InvalidInstance("points have different dimensions")
    ball, support = seb(P, args.seed)
    out = {"center": _point_json(ball.center), "radius_sq": rat_str(ball.radius_sq),
           "support": sorted(support)}
    code = EXIT_OK
    if args.check:
        ok = seb_bruteforce(P) == ball
        out["check"] = ok
        code = EXIT_OK if ok else EXIT_VERIFY
    sys.stdout.write(dumps(out))
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="onecenter",
                                 description="Exact 1-center of static and mobile points.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="piecewise center function as JSON")
    p.add_argument("config")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", help="check a trace against per-sample exact balls")
    p.add_argument("config")
    p.add_argument("--trace", help="verify this trace JSON instead of tracing anew")
    p.add_argument("--samples", type=int, help="override the configured sample count")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate the center at a rational time")
    p.add_argument("config")
    p.add_argument("--t", required=True)
    p.add_argument("--derivative", choices=["left", "right", "both"])
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("plot", help="CSV samples or SVG figure (d = 2)")
    p.add_argument("config")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["svg", "csv"], default="svg")
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("seb", help="smallest enclosing ball of a point file")
    p.add_argument("points")
    p.add_argument("--check", action="store_true", help="compare with brute force")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_seb)
    return ap


def _diagnose(kind: str, exc: Exception) -> None:
    sys.stderr.write(json.dumps({"error": kind, "type": type(exc).__name__,
                                 "message": str(exc)}) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ComplexityGuard as exc:
        _diagnose("complexity_guard", exc)
        return EXIT_GUARD
    except (InvalidInstance, ValueError, OSError) as exc:
        _diagnose("invalid_input", exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
