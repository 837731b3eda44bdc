import random
from fractions import Fraction

import pytest

from nadyn import (
    Direction,
    FactorClass,
    FiniteClass,
    GAUSS,
    INFINITY,
    IrrationalDirection,
    QPoly,
    TowardClass,
    Verdict,
    chart,
    hyp_res,
    hyp_res_direct,
    intrinsic_data,
    min_locus,
    ord_res,
    ord_res_for_chart,
    parse_map,
    parse_point,
    semistability,
    slope_measured,
    slope_rhs,
)
from nadyn.crucial import class_slope_data
from conftest import rand_map, rand_point, rand_unit_mobius

Z2 = parse_map("z^2")
TZ2 = parse_map("t*z^2")
TZ21T = parse_map("(t*z^2+1)/t")
Z2TZ = parse_map("(z^2-t)/z")
HALF_DOWN = parse_point("a=0;s=-1/2")
ONE_DOWN = parse_point("a=0;s=-1")


def direction(point, cls):
    return Direction(point, cls)


def test_ord_res_golden_values():
    assert ord_res(Z2, GAUSS) == 0
    assert ord_res(TZ2, GAUSS) == 2
    assert ord_res(TZ21T, GAUSS) == 4
    assert ord_res(Z2TZ, GAUSS) == 1
    assert ord_res(TZ21T, HALF_DOWN) == 1


def test_hyp_res_examples():
    assert hyp_res(TZ2, GAUSS) == 0
    assert hyp_res(TZ2, ONE_DOWN) == Fraction(-1, 2)
    assert hyp_res(TZ21T, HALF_DOWN) == Fraction(-3, 4)


def test_slope_rhs_examples():
    r = slope_rhs(TZ2, GAUSS, direction(GAUSS, INFINITY))
    assert (r.dep, r.fixed, r.rhs) == (2, False, Fraction(-1, 2))
    r = slope_rhs(Z2TZ, GAUSS, direction(GAUSS, FiniteClass(Fraction(0))))
    assert (r.dep, r.fixed, r.rhs) == (1, True, Fraction(-1, 2))
    r = slope_rhs(Z2, GAUSS, direction(GAUSS, FiniteClass(Fraction(0))))
    assert (r.dep, r.fixed, r.rhs) == (0, True, Fraction(1, 2))


def test_slope_measured_examples():
    assert slope_measured(TZ2, GAUSS, direction(GAUSS, INFINITY)) == Fraction(-1, 2)
    assert slope_measured(TZ21T, GAUSS, direction(GAUSS, INFINITY)) == Fraction(-3, 2)
    assert slope_measured(Z2, GAUSS, direction(GAUSS, FiniteClass(Fraction(1)))) == Fraction(1, 2)


def test_slope_measured_along_toward_class():
    cls = TowardClass(ONE_DOWN)
    assert slope_measured(TZ2, GAUSS, direction(GAUSS, cls)) == Fraction(-1, 2)


def test_slope_measured_rejects_factor_classes():
    with pytest.raises(IrrationalDirection):
        slope_measured(
            TZ21T,
            HALF_DOWN,
            direction(HALF_DOWN, FactorClass(QPoly.from_coeffs([1, 0, 1]))),
        )


def test_hyp_res_direct_examples():
    assert hyp_res_direct(TZ2, ONE_DOWN) == Fraction(-1, 2)
    assert hyp_res_direct(Z2TZ, GAUSS) == 0
    assert hyp_res_direct(TZ21T, HALF_DOWN) == Fraction(-3, 4)


def test_hyp_res_direct_agrees_with_resultant_route(corpus, corpus_points):
    for phi in corpus.values():
        for point in corpus_points.values():
            assert hyp_res_direct(phi, point) == hyp_res(phi, point)


def test_min_locus_golden():
    r = min_locus(TZ2)
    assert r.minimizer == ONE_DOWN
    assert r.min_hyp_res == Fraction(-1, 2)
    assert r.verdict is Verdict.STABLE and r.unique

    r = min_locus(TZ21T)
    assert r.minimizer == HALF_DOWN
    assert r.min_hyp_res == Fraction(-3, 4)
    assert r.verdict is Verdict.STABLE

    r = min_locus(Z2TZ)
    assert r.minimizer == parse_point("a=0;s=1/2")
    # the descent slope is -1/2 over distance 1/2
    assert r.min_hyp_res == Fraction(-1, 4)
    assert r.verdict is Verdict.STABLE

    r = min_locus(Z2)
    assert r.minimizer == GAUSS and r.min_hyp_res == 0
    assert r.verdict is Verdict.STABLE


def test_hyp_res_direct_agrees_on_random_maps():
    rng = random.Random(65)
    for _ in range(20):
        phi = rand_map(rng)
        point = rand_point(rng)
        assert hyp_res_direct(phi, point) == hyp_res(phi, point)


def test_min_locus_custom_start():
    r = min_locus(TZ2, start=parse_point("a=0;s=-2"))
    assert r.minimizer == ONE_DOWN
    assert r.min_hyp_res == Fraction(-1, 2)


def test_semistability_examples():
    assert semistability(TZ2, GAUSS) is Verdict.UNSTABLE
    assert semistability(TZ21T, HALF_DOWN) is Verdict.STABLE
    assert semistability(Z2, GAUSS) is Verdict.STABLE


def test_semistable_not_stable_segment():
    # depth 1 at both fixed directions 0 and infinity with identity tangent:
    # the minimum is attained along a segment through the Gauss point
    phi = parse_map("(t + z^2 + t*z^3)/(z + t*z^3)")
    assert semistability(phi, GAUSS) is Verdict.SEMISTABLE_NOT_STABLE
    r = min_locus(phi)
    assert r.minimizer == GAUSS
    assert r.verdict is Verdict.SEMISTABLE_NOT_STABLE
    assert not r.unique
    assert set(r.zero_slope_classes) == {INFINITY, FiniteClass(Fraction(0))}


def test_slope_identity_on_corpus(corpus, corpus_points):
    for phi in corpus.values():
        for point in corpus_points.values():
            info = intrinsic_data(phi, point)
            classes = [
                cls
                for cls, _, _ in class_slope_data(info)
                if not isinstance(cls, FactorClass)
            ]
            for extra in (FiniteClass(Fraction(0)), FiniteClass(Fraction(1)), INFINITY):
                if extra not in classes:
                    classes.append(extra)
            for cls in classes:
                d = direction(point, cls)
                assert slope_measured(phi, point, d) == slope_rhs(phi, point, d).rhs


def test_pgl2_integral_invariance(corpus):
    rng = random.Random(61)
    for phi in corpus.values():
        for _ in range(20):
            point = rand_point(rng)
            m = chart(point)
            u = rand_unit_mobius(rng)
            assert ord_res_for_chart(phi, m @ u) == ord_res(phi, point)


def test_convexity_at_most_one_negative_direction():
    rng = random.Random(62)
    checked = 0
    while checked < 200:
        phi = rand_map(rng)
        point = rand_point(rng)
        info = intrinsic_data(phi, point)
        d = phi.degree
        negatives = [
            cls
            for cls, dep, fixed in class_slope_data(info)
            if (Fraction(d - 1, 2) if fixed else Fraction(d + 1, 2)) < dep
        ]
        assert len(negatives) <= 1
        checked += 1


def test_slope_quantization():
    rng = random.Random(63)
    checked = 0
    while checked < 200:
        phi = rand_map(rng, degree=rng.choice([2, 3]))
        point = rand_point(rng)
        info = intrinsic_data(phi, point)
        d = phi.degree
        unit = Fraction(1, 2 * (d - 1))
        for cls, dep, fixed in class_slope_data(info):
            rhs = slope_rhs(phi, point, direction(point, cls)).rhs
            assert (rhs / unit).denominator == 1
            checked += 1


def test_descent_is_monotone(corpus):
    for phi in corpus.values():
        r = min_locus(phi)
        values = [hyp_res(phi, pt) for pt, _, _ in r.trail] + [r.min_hyp_res]
        assert all(a > b for a, b in zip(values, values[1:]))


def test_minimum_never_unstable():
    rng = random.Random(64)
    for _ in range(25):
        phi = rand_map(rng)
        r = min_locus(phi)
        assert semistability(phi, r.minimizer) is not Verdict.UNSTABLE
        assert r.unique == (r.verdict is Verdict.STABLE)
