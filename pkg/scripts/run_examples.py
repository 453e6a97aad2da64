"""Trace the two worked planar examples and print arcs, events and the
one-sided derivatives at t = 0."""
from onecenter.instances import example1, example2
from onecenter.oracle import continuity_audit, verify
from onecenter.tracker import one_sided_derivative, trace_single


def show(name, make):
    S, nu, iv = make()
    pc = trace_single(S, nu, iv)
    print(f"== {name}  domain [{iv.lo}, {iv.hi}]")
    for k, arc in enumerate(pc.arcs):
        x, y = arc.curve.components
        print(f"  arc {k}: [{float(arc.start):.13g}, {float(arc.end):.13g}]"
              f"  support={arc.support}\n    x = {x}\n    y = {y}")
    for e in pc.interior_events:
        tag = f"t = {e.time.lo}" if e.time.is_exact() else f"t ~ {float(e.time.approx):.13f}"
        print(f"  event {e.kind}: {tag}  (root of {e.time.defining})")
    left = one_sided_derivative(pc, 0, "left")
    right = one_sided_derivative(pc, 0, "right")
    print(f"  derivative at 0: left {tuple(map(str, left))}, right {tuple(map(str, right))}")
    rep = verify(pc, S, [nu], 200)
    gaps = continuity_audit(pc)
    print(f"  oracle: {rep.exact_matches}/{rep.samples} exact, "
          f"max event gap {max(float(g.max_gap) for g in gaps):.1e}")


if __name__ == "__main__":
    show("example 1: nu(t) = (t, 0)", example1)
    show("example 2: nu(t) = (t^3, 0)", example2)
