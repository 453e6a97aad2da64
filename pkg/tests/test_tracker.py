from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from onecenter.geomcore import RatCurve, seb
from onecenter.instances import example1, example2
from onecenter.polyalg import Interval, Poly, RatFn, T, compare, same_root
from onecenter.tracker import (
    END,
    IN,
    OUT,
    START,
    SUPPORT_CHANGE,
    ComplexityGuard,
    InvalidInstance,
    SupportSet,
    TraceOptions,
    Tracer,
    one_sided_derivative,
    trace_multi,
    trace_single,
)

X = Poly([0, 1])


def branches(u):
    """Center branches of the two worked examples with the mobile x-coordinate u(t)."""
    return [
        (RatFn(u, Poly([2])), RatFn.const(2)),
        (RatFn(u * u, 2 * u + 8), RatFn(-u * u + 4 * u + 16, 2 * u + 8)),
        (RatFn(u - 2, Poly([2])), RatFn.const(1)),
    ]


@pytest.mark.parametrize("make,u", [(example1, X), (example2, T**3)])
def test_examples_match_closed_form(make, u):
    S, nu, iv = make()
    pc = trace_single(S, nu, iv)
    assert len(pc.arcs) == 3
    for arc, (bx, by) in zip(pc.arcs, branches(u)):
        assert arc.curve.components == (bx, by)
    assert [a.support for a in pc.arcs] == [
        SupportSet((0,), (0,)), SupportSet((0, 1), (0,)), SupportSet((1,), (0,))]
    assert [e.kind for e in pc.events] == [START, SUPPORT_CHANGE, SUPPORT_CHANGE, END]


def test_example_event_times():
    pc = trace_single(*example1())
    assert [e.time.lo for e in pc.interior_events] == [0, 4]
    assert all(e.time.is_exact() for e in pc.interior_events)
    pc = trace_single(*example2())
    e0, e1 = pc.interior_events
    assert e0.time.is_exact() and e0.time.lo == 0
    assert not e1.time.is_exact()
    assert e1.time.defining.monic() == T**3 - 4
    assert abs(e1.time.approx - Fraction(15874010519682, 10**13)) < Fraction(1, 10**9)


def test_piecewise_evaluation_and_sides():
    pc = trace_single(*example1())
    assert pc(2) == (Fraction(1, 3), Fraction(5, 3))
    assert pc.arc_index(0, "left") == 0 and pc.arc_index(0, "right") == 1
    with pytest.raises(ValueError):
        pc(100)


def test_one_sided_derivatives():
    pc1 = trace_single(*example1())
    assert one_sided_derivative(pc1, 0, "left") == (Fraction(1, 2), 0)
    assert one_sided_derivative(pc1, 0, "right") == (0, 0)
    pc2 = trace_single(*example2())
    assert one_sided_derivative(pc2, 0, "left") == (0, 0)
    assert one_sided_derivative(pc2, 0, "right") == (0, 0)


def test_in_and_out_events():
    # a mobile sweeping through the static ball enters and leaves it
    S = [(Fraction(-1), Fraction(0)), (Fraction(1), Fraction(0))]
    iv = Interval(-4, 4)
    nu = RatCurve.polynomial([[0, 1], [0]], iv)
    pc = trace_single(S, nu, iv)
    kinds = [e.kind for e in pc.interior_events]
    assert kinds == [IN, OUT]
    assert [e.time.lo for e in pc.interior_events] == [-1, 1]
    assert pc.arcs[1].support == SupportSet((0, 1), ())


def test_single_static_point():
    iv = Interval(0, 1)
    nu = RatCurve.polynomial([[1, 1], [2]], iv)
    pc = trace_single([(Fraction(0), Fraction(0))], nu, iv)
    assert len(pc.arcs) == 1
    assert pc(Fraction(1, 2)) == (Fraction(3, 4), 1)


def test_event_times_are_ordered_and_arcs_tile_domain():
    S, nu, iv = example2()
    pc = trace_single(S, nu, iv)
    assert pc.arcs[0].start.lo == iv.lo and pc.arcs[-1].end.lo == iv.hi
    for a, b in zip(pc.arcs, pc.arcs[1:]):
        assert same_root(a.end, b.start)
        assert compare(a.start, a.end) < 0


def test_supports_match_pointwise_seb():
    S, nu, iv = example1()
    tracer = Tracer(S, [nu], iv, TraceOptions())
    for t, want in [(-2, SupportSet((0,), (0,))), (1, SupportSet((0, 1), (0,)))]:
        assert tracer.support_at(Fraction(t)) == want
        ball, _ = seb(S + [nu(t)])
        assert tracer.symbolic(want)[0](Fraction(t)) == ball.center


def test_invalid_instances():
    iv = Interval(0, 1)
    nu = RatCurve.polynomial([[0, 1], [0]], iv)
    with pytest.raises(InvalidInstance):
        trace_single([(0, 0), (0, 0)], nu, iv)
    with pytest.raises(InvalidInstance):
        trace_single([(0, 0), (1, 1), (2, 2)], nu, iv)
    pole = RatCurve((RatFn(Poly([1]), T - Fraction(1, 2)), RatFn.const(0)), iv)
    with pytest.raises(InvalidInstance):
        trace_single([(0, 0)], pole, iv)
    with pytest.raises(InvalidInstance):
        trace_single([(0, 0, 0)], nu, iv)


def test_trace_multi_two_mobiles():
    iv = Interval(-2, 2)
    S = [(Fraction(0), Fraction(3))]
    V = [RatCurve.polynomial([[0, 1], [0]], iv), RatCurve.polynomial([[0, -1], [1]], iv)]
    pc = trace_multi(S, V, iv)
    for t in [Fraction(k, 7) for k in range(-14, 15)]:
        ball, _ = seb(S + [v(t) for v in V])
        assert pc(t) == ball.center


def test_multi_with_single_mobile_agrees():
    S, nu, iv = example1()
    a = trace_single(S, nu, iv)
    b = trace_multi(S, [nu], iv)
    assert [x.curve.components for x in a.arcs] == [x.curve.components for x in b.arcs]


def test_complexity_guard():
    iv = Interval(0, 1)
    S = [(Fraction(i), Fraction(i * i)) for i in range(3)]
    V = [RatCurve.polynomial([[k, 1], [0, k]], iv) for k in range(3)]
    with pytest.raises(ComplexityGuard):
        trace_multi(S, V, iv, TraceOptions(candidate_cap=10))


def test_mobile_through_single_static_point():
    # the mobile meets the only site at t = 0, where the ball has radius 0
    iv = Interval(-2, 2)
    nu = RatCurve.polynomial([[0, 1], [0, 0, 1]], iv)
    pc = trace_single([(Fraction(0), Fraction(0))], nu, iv)
    assert pc(1) == (Fraction(1, 2), Fraction(1, 2))
    assert pc.arcs[0].support == SupportSet((0,), (0,))


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from([Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2)]),
       st.integers(1, 4))
def test_trace_matches_oracle_through_sites(seed, t0, n):
    """Curves that pass exactly through a static site at a simple rational
    time, where degenerate balls are most likely to be sampled."""
    import random

    from onecenter.instances import random_static
    from onecenter.oracle import verify

    rng = random.Random(seed)
    S = random_static(rng, 2, n, 6)
    s = S[rng.randrange(n)]
    iv = Interval(-2, 2)
    comps = []
    for c in s:
        q = Poly([Fraction(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(rng.randint(1, 2))])
        comps.append(RatFn(c + (T - t0) * q))
    nu = RatCurve(tuple(comps), iv)
    pc = trace_single(S, nu, iv)
    assert verify(pc, S, [nu], samples=40, seed=seed).ok
