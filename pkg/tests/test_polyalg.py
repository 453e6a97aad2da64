from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from onecenter.polyalg import (
    AlgebraicTime,
    Interval,
    PoleAtSample,
    Poly,
    RatFn,
    T,
    as_rat,
    compare,
    count_roots_closed,
    gcd,
    isolate_roots,
    refine,
    same_root,
    sign_at_algebraic,
    squarefree_part,
    sturm_count,
)
from strategies import polys, small_rats


def test_as_rat_rejects_floats():
    with pytest.raises(TypeError):
        as_rat(0.5)
    assert as_rat("0.25") == Fraction(1, 4)
    assert as_rat("-3/6") == Fraction(-1, 2)


def test_poly_basics():
    p = (T - 1) * (T + 2)
    assert p.coeffs == (-2, 1, 1)
    assert p.degree == 2
    assert p(Fraction(1)) == 0
    assert p.derivative() == 2 * T + 1
    assert Poly().degree < 0


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys(), polys(nonzero=True))
def test_divmod(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys(4, nonzero=True), polys(4, nonzero=True), polys(3, nonzero=True))
def test_gcd_contains_common_factor(a, b, c):
    g = gcd(a * c, b * c)
    assert ((a * c) % g).is_zero() and ((b * c) % g).is_zero()
    assert (g % c.monic()).is_zero() or c.is_const()


@given(polys(nonzero=True), small_rats)
def test_sign_at_matches_value(p, t):
    v = p(t)
    assert p.sign_at(t) == (v > 0) - (v < 0)


def test_squarefree_part():
    p = (T - 1) ** 3 * (T + 2) ** 2
    assert squarefree_part(p) == ((T - 1) * (T + 2)).monic()


def test_ratfn_reduction_and_identity():
    f = RatFn((T - 1) * (T + 1), 2 * (T - 1))
    assert f.den == Poly([1])
    assert f == RatFn(T + 1, Poly([2]))
    with pytest.raises(PoleAtSample):
        RatFn(Poly([1]), T)(0)


@given(polys(3), polys(3, nonzero=True), small_rats)
def test_ratfn_derivative_quotient_rule(a, b, t):
    f = RatFn(a, b)
    if b(t) == 0:
        return
    lhs = f.derivative()(t)
    rhs = (a.derivative()(t) * b(t) - a(t) * b.derivative()(t)) / b(t) ** 2
    assert lhs == rhs


def test_sturm_count_half_open():
    p = (T - 1) * (T - 2) * (T - 3)
    assert sturm_count(p, Interval(1, 3)) == 2  # (1, 3]
    assert count_roots_closed(p, Interval(1, 3)) == 3
    assert sturm_count(p, Interval(Fraction(7, 2), 10)) == 0


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6))
def test_isolation_finds_integer_roots(roots):
    p = Poly([1])
    for r in roots:
        p = p * (T - r)
    found = isolate_roots(p, Interval(-10, 10))
    assert [a.lo for a in found] == sorted(set(roots))
    assert all(a.is_exact() for a in found)
    for a in found:
        assert a.odd == (roots.count(a.lo) % 2 == 1)


def test_irrational_root_and_refinement():
    (r,) = isolate_roots(T**3 - 4, Interval(0, 2))
    assert not r.is_exact()
    r = refine(r, Fraction(1, 10**12))
    assert r.isolate.width <= Fraction(1, 10**12)
    assert abs(float(r) - 4 ** (1 / 3)) < 1e-11


def test_compare_and_same_root():
    a = isolate_roots(T**2 - 2, Interval(0, 2))[0]
    b = isolate_roots((T**2 - 2) * (T - 5), Interval(0, 2))[0]
    assert same_root(a, b)
    assert compare(a, b) == 0
    assert compare(a, Fraction(141, 100)) > 0
    assert compare(Fraction(142, 100), a) > 0
    c = isolate_roots(T**3 - 3, Interval(0, 2))[0]
    assert compare(a, c) < 0


def test_sign_at_algebraic():
    a = isolate_roots(T**2 - 2, Interval(0, 2))[0]
    s, a = sign_at_algebraic(T**4 - 4, a)
    assert s == 0
    s, a = sign_at_algebraic(T - Fraction(3, 2), a)
    assert s == -1


def test_tangent_root_parity():
    # (t-1)^2 (t-3): t=1 is an even root (no sign change)
    roots = isolate_roots((T - 1) ** 2 * (T - 3), Interval(0, 4))
    assert [(a.lo, a.odd) for a in roots] == [(1, False), (3, True)]


def test_exactify_rational_root_of_higher_degree():
    p = (3 * T - 2) * (T**2 - 2)
    (r,) = [a for a in isolate_roots(p, Interval(0, 1))]
    assert r.exactify().lo == Fraction(2, 3)
    assert AlgebraicTime.rational(Fraction(5, 7)).value == Fraction(5, 7)
