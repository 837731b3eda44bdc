import random
from fractions import Fraction

import pytest

from nadyn import (
    DegenerateMap,
    KScalar,
    Mobius,
    QPoly,
    TypeIIPoint,
    make_map,
    parse_map,
    parse_point,
)

CORPUS_SOURCES = ["z^2", "t*z^2", "(t*z^2+1)/t", "(z^2-t)/z", "z^2+t"]
POINT_SOURCES = ["gauss", "a=0;s=1/2", "a=0;s=-1/2", "a=0;s=1", "a=0;s=-1", "a=1;s=1"]


@pytest.fixture(scope="session")
def corpus():
    return {src: parse_map(src) for src in CORPUS_SOURCES}


@pytest.fixture(scope="session")
def corpus_points():
    return {src: parse_point(src) for src in POINT_SOURCES}


def rand_scalar(rng: random.Random, min_exp=-2, max_exp=3, allow_zero=False) -> KScalar:
    """Random Laurent polynomial in t with small integer coefficients."""
    while True:
        terms = {}
        for _ in range(rng.randint(0, 3)):
            e = rng.randint(min_exp, max_exp)
            c = rng.randint(-3, 3)
            if c:
                terms[e] = terms.get(e, 0) + c
        if terms:
            low = min(terms)
            shift = -low if low < 0 else 0
            poly = QPoly((e + shift, c) for e, c in terms.items())
            den = QPoly.monomial(shift) if shift else QPoly.one()
            value = KScalar(poly, den)
        else:
            value = KScalar.zero()
        if allow_zero or not value.is_zero:
            return value


def rand_integral_scalar(rng: random.Random) -> KScalar:
    return rand_scalar(rng, min_exp=0, max_exp=3)


def rand_map(rng: random.Random, degree=2):
    for _ in range(100):
        num = [rand_scalar(rng, -1, 2, allow_zero=True) for _ in range(degree + 1)]
        den = [rand_scalar(rng, -1, 2, allow_zero=True) for _ in range(degree + 1)]
        try:
            return make_map(num, den)
        except (DegenerateMap, ValueError):
            continue
    raise AssertionError("could not build a random map")


def rand_point(rng: random.Random) -> TypeIIPoint:
    centers = [
        KScalar.zero(),
        KScalar.one(),
        KScalar.t_power(1),
        KScalar.one() + KScalar.t_power(1),
        KScalar.from_rational(2),
        KScalar.t_power(-1),
    ]
    s = Fraction(rng.randint(-4, 4), rng.choice([1, 2, 3]))
    return TypeIIPoint(rng.choice(centers), s)


def rand_unit_mobius(rng: random.Random) -> Mobius:
    while True:
        entries = [rand_integral_scalar(rng) if rng.random() < 0.8 else KScalar.zero() for _ in range(4)]
        a, b, c, d = entries
        det = a * d - b * c
        if not det.is_zero and det.ord() == 0:
            return Mobius(a, b, c, d)
