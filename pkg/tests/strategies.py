"""Shared hypothesis strategies."""
from fractions import Fraction

import hypothesis.strategies as st

from onecenter.polyalg import Poly

small_rats = st.builds(Fraction, st.integers(-20, 20), st.sampled_from([1, 2, 3, 4, 5]))


def polys(max_degree: int = 6, nonzero: bool = False):
    s = st.lists(small_rats, min_size=1, max_size=max_degree + 1).map(Poly)
    return s.filter(lambda p: not p.is_zero()) if nonzero else s


def points(d: int, min_size: int = 1, max_size: int = 8, unique: bool = True):
    pt = st.tuples(*[st.integers(-8, 8).map(Fraction) for _ in range(d)])
    return st.lists(pt, min_size=min_size, max_size=max_size, unique=unique)


def sphere_points(rng, d: int, n: int, center=None, radius=None) -> tuple[list, tuple, Fraction]:
    """n distinct rational points exactly on a sphere in R^d, built by inverse
    stereographic projection of random rational parameters."""
    center = center or tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(d))
    radius = radius or Fraction(rng.randint(1, 6), rng.randint(1, 3))
    pts = set()
    while len(pts) < n:
        u = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(d - 1)]
        q = sum(x * x for x in u)
        unit = [2 * x / (q + 1) for x in u] + [(q - 1) / (q + 1)]
        pts.add(tuple(c + radius * x for c, x in zip(center, unit)))
    return sorted(pts), center, radius * radius
