"""Geometry of the Berkovich tree over K.

Type II points are disks D(a, r^s) stored as a canonical centre (Laurent
expansion truncated strictly below the exponent) plus the rational radius
exponent s, so equal points have equal representations.  The hyperbolic
metric, wedge points, segment parametrisation and directions all reduce to
valuation comparisons of centres.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .errors import OutOfRange, SamePoint
from .respoly import FiniteClass, InfinityClass, INFINITY
from .scalars import KScalar, K_ONE, K_ZERO


class ClassicalInfinity:
    """The classical point infinity of P^1(K)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


CLASSICAL_INF = ClassicalInfinity()


@dataclass(frozen=True)
class TypeIIPoint:
    """The disk D(center, r^exponent); the Gauss point is (0, 0)."""

    center: KScalar
    exponent: Fraction

    def __init__(self, center: KScalar, exponent):
        exponent = Fraction(exponent)
        object.__setattr__(self, "center", center.truncated_below(exponent))
        object.__setattr__(self, "exponent", exponent)

    def __repr__(self):
        return f"TypeIIPoint(a={self.center.to_str()}, s={self.exponent})"


GAUSS = TypeIIPoint(K_ZERO, Fraction(0))


@dataclass(frozen=True)
class Mobius:
    """Invertible 2x2 matrix over K acting as w -> (a*w + b)/(c*w + d)."""

    a: KScalar
    b: KScalar
    c: KScalar
    d: KScalar

    def __post_init__(self):
        if (self.a * self.d - self.b * self.c).is_zero:
            raise ValueError("Mobius matrix must have nonzero determinant")

    def inverse(self) -> "Mobius":
        # projective inverse; no division by the determinant needed
        return Mobius(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, z: KScalar) -> KScalar:
        return (self.a * z + self.b) / (self.c * z + self.d)


@dataclass(frozen=True)
class TowardClass:
    """Symbolic direction class toward a concrete target, resolved on demand."""

    target: object  # TypeIIPoint, KScalar, or CLASSICAL_INF


@dataclass(frozen=True)
class Direction:
    at: TypeIIPoint
    cls: object


def chart(point: TypeIIPoint) -> Mobius:
    """Canonical chart [[t^s, a], [0, 1]] sending the Gauss point to the point."""
    return Mobius(KScalar.t_power(point.exponent), point.center, K_ZERO, K_ONE)


def _join_exponent(p1: TypeIIPoint, p2: TypeIIPoint) -> Fraction:
    d = (p1.center - p2.center).ord()
    m = min(p1.exponent, p2.exponent)
    if d is inf:
        return m
    return min(m, d)


def rho(p1: TypeIIPoint, p2: TypeIIPoint) -> Fraction:
    """Hyperbolic distance in ord units."""
    m = _join_exponent(p1, p2)
    return (p1.exponent - m) + (p2.exponent - m)


def wedge(p1: TypeIIPoint, p2: TypeIIPoint, base: TypeIIPoint = GAUSS) -> TypeIIPoint:
    """Median of the tree triple: the point where [base,p1] and [base,p2] split."""
    tau = (rho(base, p1) + rho(base, p2) - rho(p1, p2)) / 2
    return path_point(base, p1, tau)


def path_point(start: TypeIIPoint, end: TypeIIPoint, tau) -> TypeIIPoint:
    """The unique point of [start, end] at distance tau from start."""
    tau = Fraction(tau)
    total = rho(start, end)
    if tau < 0 or tau > total:
        raise OutOfRange(f"parameter {tau} outside [0, {total}]")
    m = _join_exponent(start, end)
    up = start.exponent - m
    if tau <= up:
        return TypeIIPoint(start.center, start.exponent - tau)
    return TypeIIPoint(end.center, m + (tau - up))


def direction_toward(point: TypeIIPoint, target) -> Direction:
    """Direction at the point containing the target, in the canonical chart.

    The target may be a type II point, a classical point of K, or the
    classical infinity.
    """
    if target is CLASSICAL_INF:
        return Direction(point, INFINITY)
    if isinstance(target, TypeIIPoint):
        if target == point:
            raise SamePoint("no direction from a point toward itself")
        below = target.exponent > point.exponent and (
            (target.center - point.center).ord() >= point.exponent
        )
        if not below:
            return Direction(point, INFINITY)
        centre_gap = target.center - point.center
    elif isinstance(target, KScalar):
        gap_ord = (target - point.center).ord()
        if gap_ord < point.exponent:
            return Direction(point, INFINITY)
        centre_gap = target - point.center
    else:
        raise TypeError(f"unsupported target {target!r}")
    value = (centre_gap / KScalar.t_power(point.exponent)).residue()
    return Direction(point, FiniteClass(value))


def step_into(point: TypeIIPoint, cls, h: Fraction) -> TypeIIPoint:
    """The point at distance h from the point along a direction class."""
    h = Fraction(h)
    if h <= 0:
        raise OutOfRange("step must be positive")
    if isinstance(cls, InfinityClass):
        return TypeIIPoint(point.center, point.exponent - h)
    if isinstance(cls, FiniteClass):
        centre = point.center + KScalar.from_rational(cls.value) * KScalar.t_power(point.exponent)
        return TypeIIPoint(centre, point.exponent + h)
    if isinstance(cls, TowardClass):
        target = cls.target
        if isinstance(target, TypeIIPoint):
            return path_point(point, target, h)
        if target is CLASSICAL_INF:
            return TypeIIPoint(point.center, point.exponent - h)
        if isinstance(target, KScalar):
            gap = (target - point.center).ord()
            m = min(point.exponent, gap)
            up = point.exponent - m
            if h <= up:
                return TypeIIPoint(point.center, point.exponent - h)
            return TypeIIPoint(target, m + (h - up))
    raise TypeError(f"cannot step along class {cls!r}")
