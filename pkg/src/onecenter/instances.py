"""Random instance generators used by the experiment scripts and tests."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .geomcore import RatCurve, general_position_check
from .polyalg import Interval, Poly, RatFn

EXAMPLE_STATIC = [(Fraction(0), Fraction(4)), (Fraction(-2), Fraction(2))]


@dataclass(frozen=True)
class RandomSpec:
    dimensions: tuple = (2, 3)
    max_static: int = 6
    min_static: int = 1
    mobiles: int = 1
    max_degree: int = 3
    rational_every: int = 4  # every k-th instance gets a nonconstant denominator (0: never)
    coord_range: int = 12
    domain: tuple = (-3, 3)


def example1() -> tuple[list, RatCurve, Interval]:
    iv = Interval(Fraction(-4), Fraction(8))
    return list(EXAMPLE_STATIC), RatCurve.polynomial([[0, 1], [0]], iv), iv


def example2() -> tuple[list, RatCurve, Interval]:
    iv = Interval(Fraction(-2), Fraction(2))
    return list(EXAMPLE_STATIC), RatCurve.polynomial([[0, 0, 0, 1], [0]], iv), iv


def _coord(rng: random.Random, k: int) -> Fraction:
    return Fraction(rng.randint(-k, k), rng.choice((1, 2, 4)))


def random_static(rng: random.Random, d: int, n: int, k: int = 12) -> list:
    """n distinct rational points in certified general position."""
    while True:
        S = [tuple(_coord(rng, k) for _ in range(d)) for _ in range(n)]
        if len(set(S)) == n and general_position_check(S):
            return S


def random_curve(rng: random.Random, d: int, degree: int, domain: Interval,
                 rational: bool = False, k: int = 12) -> RatCurve:
    comps = []
    for _ in range(d):
        num = Poly([_coord(rng, k) for _ in range(rng.randint(1, degree + 1))])
        # 1 + c t^2 with c > 0 never vanishes
        den = Poly([1, 0, Fraction(rng.randint(1, 3), 2)]) if rational else Poly([1])
        comps.append(RatFn(num, den))
    return RatCurve(tuple(comps), domain)


def random_instances(spec: RandomSpec, count: int, seed: int = 0):
    """Yield (S, V, domain) triples."""
    rng = random.Random(seed)
    iv = Interval(Fraction(spec.domain[0]), Fraction(spec.domain[1]))
    for k in range(count):
        d = rng.choice(spec.dimensions)
        n = rng.randint(spec.min_static, spec.max_static)
        S = random_static(rng, d, n, spec.coord_range)
        rational = bool(spec.rational_every) and k % spec.rational_every == spec.rational_every - 1
        V = [random_curve(rng, d, spec.max_degree, iv, rational, spec.coord_range)
             for _ in range(spec.mobiles)]
        yield S, V, iv
