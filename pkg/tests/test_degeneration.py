import cmath
import random

import pytest

from nadyn import (
    CoefficientPole,
    ComplexMap,
    GAUSS,
    IllConditioned,
    INF_C,
    TargetsOverlap,
    TotallyInvariantPoint,
    atom_estimate,
    chordal,
    degeneration_report,
    parse_map,
    predicted_limit,
    pullback_sample,
    specialize,
)
from nadyn.degeneration import aberth_roots

Z2 = parse_map("z^2")
TZ2 = parse_map("t*z^2")
TZ21T = parse_map("(t*z^2+1)/t")


def test_specialize_examples():
    g = specialize(TZ2, 0.001)
    assert g.num == (0, 0, 0.001) and g.den == (1, 0, 0)
    g = specialize(parse_map("(z^2-t)/z"), 0.01)
    assert g.num == (-0.01, 0, 1) and g.den == (0, 1, 0)
    with pytest.raises(CoefficientPole):
        specialize(parse_map("(1/(1-t))*z^2"), 1.0)
    with pytest.raises(CoefficientPole):
        specialize(parse_map("(1/(1-2*t))*z^2"), 0.5)


def test_specialize_ill_conditioned():
    # the leading numerator coefficient vanishes exactly at t = 1/1000
    phi = parse_map("((1 - 1000*t)*z^2 + z)/1")
    with pytest.raises(IllConditioned):
        specialize(phi, 0.001)


def test_aberth_finds_roots_with_residual_bound():
    rng = random.Random(81)
    for _ in range(50):
        roots = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(rng.randint(1, 5))]
        coeffs = [1 + 0j]
        for r in roots:
            coeffs = [0j] + coeffs
            for i in range(len(coeffs) - 1):
                coeffs[i] -= r * coeffs[i + 1]
        found = aberth_roots(coeffs)
        assert len(found) == len(roots)
        for r in roots:
            assert min(abs(r - f) for f in found) < 1e-6


def test_pullback_roots_of_unity():
    g = specialize(Z2, 0.3)
    points = pullback_sample(g, 1 + 0j, 10)
    assert len(points) == 1024
    assert max(abs(abs(p) - 1) for p in points) < 1e-9


def test_pullback_small_leading_coefficient_growth():
    g = ComplexMap((0, 0, 0.001), (1, 0, 0))
    points = pullback_sample(g, 1 + 0j, 12)
    escaped = sum(1 for p in points if abs(p) > 10)
    assert escaped / len(points) >= 0.99


def test_pullback_multiplicity_conservation():
    rng = random.Random(82)
    for _ in range(10):
        num = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3))
        den = (1 + 0j, 0j, 0j)
        g = ComplexMap(num, den)
        n = rng.randint(1, 6)
        assert len(pullback_sample(g, 1 + 1j / 3, n)) == 2**n


def test_pullback_preimages_of_infinity_pad_in():
    # (z^2+z)/(z^2+1) sends infinity to 1 simply: one preimage of the start
    # value 1 is infinity, the other is the root of z - 1
    g = ComplexMap((0j, 1 + 0j, 1 + 0j), (1 + 0j, 0j, 1 + 0j))
    pts = pullback_sample(g, 1 + 0j, 1)
    assert sum(1 for p in pts if cmath.isinf(p)) == 1
    assert any(abs(p - 1) < 1e-9 for p in pts)


def test_atom_estimate_examples():
    near_inf = [complex(50, k) for k in range(100)]
    (atom,) = atom_estimate(near_inf, [INF_C], 0.1)
    assert atom.mass == 1.0

    circle = [cmath.exp(2j * cmath.pi * k / 1024) for k in range(1024)]
    (atom,) = atom_estimate(circle, [0j], 0.1)
    assert atom.mass == 0.0

    sym = [1 + 1j, -1 - 1j, 1.1 + 1j, -1.1 - 1j]
    up, down = atom_estimate(sym, [1 + 1j, -1 - 1j], 0.1)
    assert up.mass == down.mass


def test_atom_estimate_overlap():
    with pytest.raises(TargetsOverlap):
        atom_estimate([0j], [0j, 0.01 + 0j], 0.1)


def test_chordal_metric():
    assert chordal(0j, INF_C) == 1.0
    assert chordal(INF_C, INF_C) == 0.0
    assert abs(chordal(0j, 1 + 0j) - 1 / cmath.sqrt(2).real) < 1e-15
    # the 0.1-ball around infinity is |z| > sqrt(99) ~ 9.95
    assert chordal(complex(9.9, 0), INF_C) > 0.1 > chordal(complex(10, 0), INF_C)


def test_degeneration_report_rejects_good_reduction():
    with pytest.raises(TotallyInvariantPoint):
        degeneration_report(Z2, [1e-3], 4)


def test_degeneration_report_tz2():
    report = degeneration_report(TZ2, [1e-3], 10)
    (row,) = report.sampled[0]["rows"]
    assert str(row["cls"]) == "InfinityClass()"
    assert row["sampled"] >= 0.99
    assert report.max_discrepancy <= 0.01


def test_scale_robustness_on_corpus():
    # halving eps or adding a level moves corpus masses by less than 0.05
    g = specialize(TZ21T, 1e-4)
    base = pullback_sample(g, 1 + 1j / 3, 8)
    finer = pullback_sample(g, 1 + 1j / 3, 9)
    for eps in (0.1, 0.05):
        m_base = sum(1 for p in base if chordal(p, INF_C) <= eps) / len(base)
        m_fine = sum(1 for p in finer if chordal(p, INF_C) <= eps) / len(finer)
        assert abs(m_base - m_fine) < 0.05


def test_symmetric_masses():
    # odd family: preimages of a symmetric start set under z^2 - c come in pairs
    g = ComplexMap((-1 + 0j, 0j, 1 + 0j), (1 + 0j, 0j, 0j))
    pts = pullback_sample(g, 2 + 0j, 8)
    plus = sum(1 for p in pts if not cmath.isinf(p) and p.real > 0) / len(pts)
    minus = sum(1 for p in pts if not cmath.isinf(p) and p.real < 0) / len(pts)
    assert abs(plus - minus) < 0.02


def test_cross_validation_with_prediction():
    predicted = predicted_limit(TZ2, GAUSS)
    report = degeneration_report(TZ2, [1e-2, 1e-3], 10, hypothesis=predicted)
    assert report.max_discrepancy < 0.05
