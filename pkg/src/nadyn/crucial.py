"""Resultant functions on the tree, the slope oracle, and the minimum locus.

ordRes is the t-adic valuation of the Sylvester resultant of a minimal lift
of the chart conjugate; hypRes is its affine renormalisation vanishing at the
Gauss point.  Slopes along directions come from two independent routes: the
reduction-theoretic formula (depth and fixedness of the direction) and exact
one-sided difference quotients, which agree by convexity as soon as two
dyadic quotients coincide.  A third, fully geometric evaluation integrates
pullback masses along the segment from the Gauss point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .berkspace import (
    Direction,
    GAUSS,
    Mobius,
    TowardClass,
    TypeIIPoint,
    chart,
    direction_toward,
    path_point,
    rho,
    step_into,
)
from .errors import (
    BreakpointUnresolved,
    IrrationalDirection,
    NeedsExtension,
    PiecewiseBoundaryUnresolved,
    SamePoint,
)
from .polys import QPoly, rational_roots, simplest_in
from .respoly import (
    FactorClass,
    FiniteClass,
    InfinityClass,
    INFINITY,
    depth_at,
    squarefree_decomposition,
)
from .redux import (
    IntrinsicReduction,
    RationalMapK,
    coeff_reduction,
    conjugate,
    intrinsic_data,
    minimal_lift,
    precompose,
    postcompose,
    sylvester_resultant,
)

_MAX_DESCENT_STEPS = 1000
_MAX_BISECT_DEPTH = 200


class Verdict(enum.Enum):
    UNSTABLE = "unstable"
    SEMISTABLE_NOT_STABLE = "semistable"
    STABLE = "stable"


@dataclass(frozen=True)
class CrucialReport:
    at: TypeIIPoint
    ord_res: Fraction
    hyp_res: Fraction


@dataclass(frozen=True)
class SlopeReport:
    direction: Direction
    dep: int
    fixed: bool
    rhs: Fraction
    measured: Fraction | None = None


@dataclass(frozen=True)
class MinLocusResult:
    minimizer: TypeIIPoint
    min_hyp_res: Fraction
    unique: bool
    verdict: Verdict
    trail: tuple[tuple[TypeIIPoint, object, Fraction], ...]
    zero_slope_classes: tuple[object, ...]


def ord_res_for_chart(phi: RationalMapK, m: Mobius) -> Fraction:
    """ordRes of the conjugate m^(-1) . phi . m, in t-units."""
    num_l, den_l = minimal_lift(conjugate(m, phi))
    res = sylvester_resultant(den_l, num_l)
    if res.is_zero:
        raise AssertionError("resultant vanished on a valid map")
    return Fraction(res.ord())


def ord_res(phi: RationalMapK, point: TypeIIPoint) -> Fraction:
    """The resultant function at a type II point, in t-units."""
    return ord_res_for_chart(phi, chart(point))


@lru_cache(maxsize=512)
def _ord_res_gauss(phi: RationalMapK) -> Fraction:
    num_l, den_l = minimal_lift(phi)
    res = sylvester_resultant(den_l, num_l)
    return Fraction(res.ord())


def hyp_res(phi: RationalMapK, point: TypeIIPoint) -> Fraction:
    """Normalised resultant function, vanishing at the Gauss point."""
    d = phi.degree
    return (ord_res(phi, point) - _ord_res_gauss(phi)) / (2 * d * (d - 1))


def crucial_report(phi: RationalMapK, point: TypeIIPoint) -> CrucialReport:
    d = phi.degree
    o = ord_res(phi, point)
    return CrucialReport(point, o, (o - _ord_res_gauss(phi)) / (2 * d * (d - 1)))


# -- slopes --------------------------------------------------------------------


def _rhs_value(d: int, dep: int, fixed: bool) -> Fraction:
    bonus = Fraction(d - 1, 2) if fixed else Fraction(d + 1, 2)
    return (bonus - dep) / (d - 1)


def slope_rhs(phi: RationalMapK, point: TypeIIPoint, direction: Direction) -> SlopeReport:
    """Reduction-theoretic slope of hypRes along a direction."""
    from .redux import depth, is_fixed_direction

    dep = depth(phi, point, direction)
    fixed = is_fixed_direction(phi, point, direction)
    return SlopeReport(direction, dep, fixed, _rhs_value(phi.degree, dep, fixed))


def slope_measured(phi: RationalMapK, point: TypeIIPoint, direction: Direction) -> Fraction:
    """One-sided derivative of hypRes along the direction, by exact quotients.

    Difference quotients of a convex piecewise-affine function over nested
    steps agree exactly once the step is inside the first affine piece, so
    one agreement certifies the slope.
    """
    cls = direction.cls
    if isinstance(cls, FactorClass):
        raise IrrationalDirection("measured slopes need a rational direction")
    if not isinstance(cls, (FiniteClass, InfinityClass, TowardClass)):
        raise TypeError(f"unsupported direction class {cls!r}")
    if isinstance(cls, TowardClass) and isinstance(cls.target, TypeIIPoint):
        gap = rho(point, cls.target)
        if gap == 0:
            raise SamePoint("direction target coincides with the base point")
        h = min(Fraction(1, 2), gap / 2)
    else:
        h = Fraction(1, 2)
    base = hyp_res(phi, point)
    value_h = hyp_res(phi, step_into(point, cls, h))
    for _ in range(24):
        half = h / 2
        value_half = hyp_res(phi, step_into(point, cls, half))
        q1 = (value_h - base) / h
        q2 = (value_half - base) / half
        if q1 == q2:
            return q1
        h, value_h = half, value_half
    raise PiecewiseBoundaryUnresolved(f"no stable quotient along {cls!r}")


# -- direction class inventory --------------------------------------------------


def _split_part(poly: QPoly):
    """Rational-root classes of a squarefree part plus the leftover factor."""
    out = []
    rem = poly
    for r in rational_roots(poly):
        out.append(FiniteClass(r))
        rem = rem.exact_div(QPoly.from_coeffs([-r, 1]))
    if rem.degree >= 2:
        out.append(FactorClass(rem.monic()))
    return out


def class_slope_data(info: IntrinsicReduction) -> list[tuple[object, int, bool]]:
    """(class, per-root depth, fixed) for every class of positive depth.

    Parts whose roots mix fixed and moved directions are split by the GCD
    with the fixed-point form, so the flag is well defined on each entry.
    """
    out = []
    divisor = info.depths
    if info.fixes_point:
        n_poly, d_poly = info.tangent
        fix_form = n_poly - QPoly.x() * d_poly
        if divisor.inf_mult:
            out.append((INFINITY, divisor.inf_mult, d_poly.degree < info.local_degree))
        for s, i in divisor.parts:
            if fix_form.is_zero:
                pieces = [(s, True)]
            else:
                g = s.gcd(fix_form)
                if g.degree == 0:
                    pieces = [(s, False)]
                elif g.degree == s.degree:
                    pieces = [(s, True)]
                else:
                    pieces = [(g, True), (s.exact_div(g).monic(), False)]
            for piece, fixed in pieces:
                for cls in _split_part(piece):
                    out.append((cls, i, fixed))
    else:
        image = info.image_direction
        if divisor.inf_mult:
            out.append((INFINITY, divisor.inf_mult, isinstance(image, InfinityClass)))
        for s, i in divisor.parts:
            for cls in _split_part(s):
                fixed = isinstance(cls, FiniteClass) and cls == image
                out.append((cls, i, fixed))
    return out


def semistability(phi: RationalMapK, point: TypeIIPoint) -> Verdict:
    """GIT verdict on the reduced coefficient point, by the depth inequalities."""
    info = intrinsic_data(phi, point)
    d = phi.degree
    data = class_slope_data(info)
    max_all = max((dep for _, dep, _ in data), default=0)
    max_fixed = max((dep for _, dep, fixed in data if fixed), default=0)
    semistable = max_all <= Fraction(d + 1, 2) and max_fixed < Fraction(d, 2)
    if not semistable:
        return Verdict.UNSTABLE
    stable = max_all <= Fraction(d, 2) and max_fixed < Fraction(d - 1, 2)
    return Verdict.STABLE if stable else Verdict.SEMISTABLE_NOT_STABLE


def _negative_classes(info: IntrinsicReduction, d: int):
    out = []
    for cls, dep, fixed in class_slope_data(info):
        rhs = _rhs_value(d, dep, fixed)
        if rhs < 0:
            out.append((cls, rhs))
    return out


def _zero_slope_classes(info: IntrinsicReduction, d: int):
    return tuple(
        cls
        for cls, dep, fixed in class_slope_data(info)
        if _rhs_value(d, dep, fixed) == 0
    )


# -- breakpoint machinery --------------------------------------------------------


def _denominator_bound(phi: RationalMapK, point: TypeIIPoint) -> int:
    """Bound on breakpoint denominators: ord-equalities of finitely many
    coefficient monomials with integer slope spread at most 4d."""
    d = phi.degree
    level = lcm(point.center.level, point.exponent.denominator)
    for c in phi.num + phi.den:
        level = lcm(level, c.level)
    return lcm(*range(1, 4 * d + 1)) * level


def _snap_unique(lo, hi, incl_lo, incl_hi, dmax):
    """The only rational with denominator <= dmax in the interval, or None.

    A kink is known to lie in the interval and to have denominator <= dmax,
    so a positive answer pins it exactly.
    """
    cut = simplest_in(lo, hi, incl_lo, incl_hi)
    if cut.denominator > dmax:
        return None
    if cut != lo and lo < cut:
        left = simplest_in(lo, cut, incl_lo, False)
        if left.denominator <= dmax:
            return None
    if cut != hi and cut < hi:
        right = simplest_in(cut, hi, False, incl_hi)
        if right.denominator <= dmax:
            return None
    return cut


def _affine_reach(phi, point, cls, sigma, dmax):
    """Largest step along cls on which hypRes stays affine with slope sigma."""
    base = hyp_res(phi, point)

    def affine(h):
        return hyp_res(phi, step_into(point, cls, h)) == base + sigma * h

    lo = Fraction(1)
    if affine(lo):
        hi = 2 * lo
        for _ in range(64):
            if not affine(hi):
                break
            lo, hi = hi, 2 * hi
        else:
            raise BreakpointUnresolved("descent ray stayed affine past the cap")
    else:
        hi = lo
        for _ in range(64):
            lo = hi / 2
            if affine(lo):
                break
            hi = lo
        else:
            raise PiecewiseBoundaryUnresolved("no affine initial segment found")
    # the kink is in [lo, hi)
    for _ in range(_MAX_BISECT_DEPTH):
        reach = _snap_unique(lo, hi, True, False, dmax)
        if reach is not None:
            if reach != lo and not affine(reach):
                raise BreakpointUnresolved("snapped kink failed certification")
            return reach
        mid = (lo + hi) / 2
        if affine(mid):
            lo = mid
        else:
            hi = mid
    raise BreakpointUnresolved(f"kink not isolated at denominator bound {dmax}")


def _gauss_mass(phi: RationalMapK, probe: TypeIIPoint, cls) -> int:
    """Mass of (phi^* delta_gauss) on the component of the class at the probe.

    Pullback is contravariant and the chart N of the probe carries components
    to components, so this mass equals the depth of phi . N at the Gauss
    point in the same class.
    """
    red = coeff_reduction(precompose(phi, chart(probe)))
    return depth_at(squarefree_decomposition(red.h), cls)


def _mass_integral(phi: RationalMapK, point: TypeIIPoint, total: Fraction, dmax: int) -> Fraction:
    """Integral over [0, rho(gauss, point)] of the pullback mass beyond tau."""

    def value(tau: Fraction) -> int:
        probe = path_point(GAUSS, point, tau)
        cls = direction_toward(probe, point).cls
        return _gauss_mass(phi, probe, cls)

    v_lo = value(Fraction(0))
    # left limit at the far end: total mass minus the mass toward the
    # Gauss point, all measured through the chart of the endpoint
    toward_gauss = direction_toward(point, GAUSS).cls
    v_hi = phi.degree - _gauss_mass(phi, point, toward_gauss)

    def recurse(lo, hi, a, b, depth):
        # the mass function is right-continuous, so a jump lies in (lo, hi]
        if a == b:
            return a * (hi - lo)
        cut = _snap_unique(lo, hi, False, True, dmax)
        if cut is not None:
            return a * (cut - lo) + b * (hi - cut)
        if depth > _MAX_BISECT_DEPTH:
            raise BreakpointUnresolved("mass integral bisection too deep")
        mid = (lo + hi) / 2
        vm = value(mid)
        return recurse(lo, mid, a, vm, depth + 1) + recurse(mid, hi, vm, b, depth + 1)

    return recurse(Fraction(0), total, v_lo, v_hi, 0)


def _wedge_parameter(phi: RationalMapK, point: TypeIIPoint, total: Fraction, dmax: int) -> Fraction:
    """Distance from the Gauss point to the wedge of the image with the point.

    The image point is never constructed: the direction at a probe toward it
    is the constant value of the reduction of phi precomposed with the chart
    of the endpoint, postcomposed with the inverse chart of the probe.
    """
    phi_m = precompose(phi, chart(point))

    def image_class(tau: Fraction):
        probe = path_point(GAUSS, point, tau)
        red = coeff_reduction(postcompose(chart(probe).inverse(), phi_m))
        if red.fixes_gauss:
            return None  # the image is exactly the probe point
        return red.image_class

    toward_gauss = direction_toward(point, GAUSS).cls
    red_at_point = coeff_reduction(postcompose(chart(point).inverse(), phi_m))
    if not red_at_point.fixes_gauss and red_at_point.image_class != toward_gauss:
        return total  # wedge at the point itself

    def toward(tau: Fraction):
        # probe strictly before the endpoint, so the direction is defined
        return direction_toward(path_point(GAUSS, point, tau), point).cls

    ic0 = image_class(Fraction(0))
    if ic0 is None:
        return Fraction(0)
    if ic0 != toward(Fraction(0)):
        return Fraction(0)
    lo, hi = Fraction(0), total
    # the predicate flips exactly at the wedge parameter, in (lo, hi]
    for _ in range(_MAX_BISECT_DEPTH):
        cut = _snap_unique(lo, hi, False, True, dmax)
        if cut is not None:
            if cut != hi and cut != total:
                ic = image_class(cut)
                if ic is not None and ic == toward(cut):
                    raise BreakpointUnresolved("snapped wedge failed certification")
            return cut
        mid = (lo + hi) / 2
        ic = image_class(mid)
        if ic is None:
            return mid
        if ic == toward(mid):
            lo = mid
        else:
            hi = mid
    raise BreakpointUnresolved(f"wedge not isolated at denominator bound {dmax}")


def hyp_res_direct(phi: RationalMapK, point: TypeIIPoint) -> Fraction:
    """Evaluate hypRes geometrically: distance, wedge, and path-mass terms.

    Independent of the Sylvester route: only reductions of right and left
    composites of phi with charts enter.
    """
    if point == GAUSS:
        return Fraction(0)
    d = phi.degree
    total = rho(GAUSS, point)
    dmax = _denominator_bound(phi, point)
    info = intrinsic_data(phi, point)
    if info.fixes_point:
        wedge_term = Fraction(0)
    else:
        wedge_term = total - _wedge_parameter(phi, point, total, dmax)
    integral = _mass_integral(phi, point, total, dmax)
    return total / 2 + (wedge_term - integral) / (d - 1)


# -- the minimum locus -----------------------------------------------------------


def min_locus(phi: RationalMapK, start: TypeIIPoint = GAUSS) -> MinLocusResult:
    """Descend hypRes from the start point to its minimum locus.

    By convexity there is at most one descending direction per point; the
    step to the next kink is found by doubling and exact bisection on the
    piecewise-affine restriction.
    """
    d = phi.degree
    point = start
    trail = []
    for _ in range(_MAX_DESCENT_STEPS):
        info = intrinsic_data(phi, point)
        negatives = _negative_classes(info, d)
        if not negatives:
            break
        if len(negatives) > 1:
            raise AssertionError("convexity violation: several descending directions")
        cls, sigma = negatives[0]
        if isinstance(cls, FactorClass):
            raise NeedsExtension(
                f"descending direction is the irrational class {cls.poly.to_str('z')}"
            )
        dmax = _denominator_bound(phi, point)
        step = _affine_reach(phi, point, cls, sigma, dmax)
        trail.append((point, cls, step))
        point = step_into(point, cls, step)
    else:
        raise AssertionError("descent did not terminate")
    verdict = semistability(phi, point)
    if verdict is Verdict.UNSTABLE:
        raise AssertionError("descent terminated at an unstable point")
    info = intrinsic_data(phi, point)
    return MinLocusResult(
        minimizer=point,
        min_hyp_res=hyp_res(phi, point),
        unique=verdict is Verdict.STABLE,
        verdict=verdict,
        trail=tuple(trail),
        zero_slope_classes=_zero_slope_classes(info, d),
    )
