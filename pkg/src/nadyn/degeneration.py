"""Floating-point degeneration checks for families over Q(t).

A family is specialised at small complex t, the maximal entropy measure of
the specialisation is sampled by iterated pullback of a generic point, and
the sampled atom masses are compared with the non-archimedean prediction.
Distances on the complex projective line are chordal with diameter 1, so the
ball of radius 0.1 around infinity is {|z| > sqrt(99)}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .berkspace import GAUSS
from .errors import (
    CoefficientPole,
    IllConditioned,
    RootFindingFailed,
    TargetsOverlap,
    TotallyInvariantPoint,
)
from .polys import QPoly
from .respoly import FactorClass, FiniteClass, InfinityClass
from .redux import RationalMapK
from .equidist import DirectionMeasure, depth_sequence, predicted_limit, totally_invariant

INF_C = complex(math.inf, 0.0)

DEFAULT_START = 1 + 1j / 3
DEFAULT_TOL = 1e-12
SAMPLE_CAP = 2**16
_LEADING_CUTOFF = 1e-13


def chordal(z: complex, w: complex) -> float:
    """Chordal metric on P^1(C), normalised to diameter 1."""
    zi, wi = cmath.isinf(z), cmath.isinf(w)
    if zi and wi:
        return 0.0
    if zi or wi:
        finite = w if zi else z
        return 1.0 / math.sqrt(1.0 + abs(finite) ** 2)
    return abs(z - w) / (math.sqrt(1.0 + abs(z) ** 2) * math.sqrt(1.0 + abs(w) ** 2))


@dataclass(frozen=True)
class ComplexMap:
    num: tuple[complex, ...]
    den: tuple[complex, ...]

    @property
    def degree(self) -> int:
        return len(self.num) - 1


@dataclass(frozen=True)
class AtomEstimate:
    center: complex
    radius: float
    mass: float


@dataclass(frozen=True)
class DegenerationReport:
    t_values: tuple[complex, ...]
    predicted: tuple[tuple[object, Fraction], ...]
    sampled: tuple[dict, ...]  # one dict per t, class index -> mass data
    max_discrepancy: float


def specialize(phi: RationalMapK, t0: complex) -> ComplexMap:
    """Evaluate the coefficients at t = t0 (principal branch for roots)."""
    t0 = complex(t0)
    if t0 == 0:
        raise CoefficientPole("specialisation needs t != 0")
    if abs(t0) >= 1:
        raise CoefficientPole("specialisation needs |t| < 1")
    num = []
    den = []
    for coeff, out in ((phi.num, num), (phi.den, den)):
        for c in coeff:
            n_val, d_val = c.eval_parts(t0)
            if _vanishes(c.den, t0, d_val):
                raise CoefficientPole(f"coefficient {c.to_str()} has a pole at t = {t0}")
            out.append(n_val / d_val)
    gmap = ComplexMap(tuple(num), tuple(den))
    _check_conditioning(phi, gmap, t0)
    return gmap


def _vanishes(poly: QPoly, t0: complex, value: complex) -> bool:
    # exact check for real rational parameters; numeric fallback otherwise
    if t0.imag == 0:
        t_frac = Fraction(t0.real)
        return poly.eval(t_frac) == 0
    scale = sum(abs(complex(c)) * abs(t0) ** e for e, c in poly.terms)
    return abs(value) <= 1e-14 * scale


def _check_conditioning(phi: RationalMapK, gmap: ComplexMap, t0: complex) -> None:
    d = gmap.degree
    n = 2 * d
    m = np.zeros((n, n), dtype=complex)
    for k in range(d):
        for j in range(d + 1):
            m[k, k + j] = gmap.den[d - j]
            m[d + k, k + j] = gmap.num[d - j]
    det = complex(np.linalg.det(m))
    scale = max(max(abs(c) for c in gmap.num), max(abs(c) for c in gmap.den), 1.0)
    if abs(det) <= 1e-250 * scale ** (2 * d):
        raise IllConditioned(f"specialised resultant vanishes at t = {t0}")


def aberth_roots(coeffs: list[complex], tol: float = DEFAULT_TOL, max_iter: int = 500) -> list[complex]:
    """All roots of a complex polynomial by simultaneous Aberth iteration.

    Deterministic: initial points on a scaled circle with a fixed phase, and
    a fixed sequential update order.
    """
    e = len(coeffs) - 1
    if e < 1:
        return []
    if e == 1:
        return [-coeffs[0] / coeffs[1]]
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    radius = 1.0 + max(abs(c) for c in monic[:-1])
    roots = [
        radius * cmath.exp(2j * math.pi * (k / e) + 0.4j) for k in range(e)
    ]
    deriv = [monic[i] * i for i in range(1, e + 1)]

    def horner(cs, z):
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    scale = sum(abs(c) for c in monic)
    for _ in range(max_iter):
        converged = True
        for j in range(e):
            z = roots[j]
            pz = horner(monic, z)
            bound = tol * sum(abs(c) * max(1.0, abs(z)) ** i for i, c in enumerate(monic))
            if abs(pz) > bound:
                converged = False
            dz = horner(deriv, z)
            if dz == 0:
                roots[j] = z * (1 + 1e-8) + 1e-8
                converged = False
                continue
            newton = pz / dz
            rep = 0j
            for k in range(e):
                if k != j:
                    diff = z - roots[k]
                    if diff == 0:
                        diff = 1e-14 * (1 + abs(z))
                    rep += 1.0 / diff
            denom = 1.0 - newton * rep
            if denom == 0:
                denom = 1e-14
            roots[j] = z - newton / denom
        if converged:
            return roots
    raise RootFindingFailed(0, scale)


def _preimages(gmap: ComplexMap, w: complex, tol: float, level: int) -> list[complex]:
    """All d preimages of w, counted with multiplicity; infinity padded in."""
    d = gmap.degree
    if cmath.isinf(w):
        coeffs = list(gmap.den)
    else:
        coeffs = [b - w * a for b, a in zip(gmap.num, gmap.den)]
    top = max(abs(c) for c in coeffs)
    if top == 0.0:
        raise RootFindingFailed(level, w)
    e = d
    while e > 0 and abs(coeffs[e]) <= _LEADING_CUTOFF * top:
        e -= 1
    try:
        finite = aberth_roots(coeffs[: e + 1], tol=tol)
    except RootFindingFailed as exc:
        raise RootFindingFailed(level, w) from exc
    return finite + [INF_C] * (d - e)


def pullback_sample(gmap: ComplexMap, z0: complex, n: int, tol: float = DEFAULT_TOL) -> list[complex]:
    """The multiset of d^n n-th preimages of z0 under the map."""
    d = gmap.degree
    if d**n > SAMPLE_CAP:
        raise ValueError(f"sample size {d}^{n} exceeds cap {SAMPLE_CAP}")
    points = [complex(z0)]
    for level in range(1, n + 1):
        nxt = []
        for w in points:
            nxt.extend(_preimages(gmap, w, tol, level))
        points = nxt
    return points


def atom_estimate(points: list[complex], targets: list[complex], eps: float = 0.1) -> list[AtomEstimate]:
    """Fraction of the sample within chordal eps of each target."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    for i in range(len(targets)):
        for j in range(i + 1, len(targets)):
            if chordal(targets[i], targets[j]) < 2 * eps:
                raise TargetsOverlap(
                    f"targets {targets[i]} and {targets[j]} overlap at scale {eps}"
                )
    out = []
    total = len(points)
    for target in targets:
        hits = sum(1 for p in points if chordal(p, target) <= eps)
        out.append(AtomEstimate(center=target, radius=eps, mass=hits / total))
    return out


def _class_targets(cls, tol: float) -> list[complex]:
    if isinstance(cls, InfinityClass):
        return [INF_C]
    if isinstance(cls, FiniteClass):
        return [complex(cls.value)]
    if isinstance(cls, FactorClass):
        return aberth_roots([complex(c) for c in cls.poly.coeff_list()], tol=tol)
    raise TypeError(f"cannot place class {cls!r} in the complex plane")


def auto_hypothesis(phi: RationalMapK, n_max: int = 2) -> DirectionMeasure:
    """Predicted direction measure at the Gauss point.

    The exact Dirac prediction is used when available; otherwise the deepest
    computed level of the depth sequence stands in for the limit.
    """
    predicted = predicted_limit(phi, GAUSS)
    if predicted is not None:
        return predicted
    report = depth_sequence(phi, GAUSS, n_max)
    return report.measures[-1]


def degeneration_report(
    phi: RationalMapK,
    t_values,
    n: int,
    hypothesis: DirectionMeasure | None = None,
    eps: float = 0.1,
    z0: complex = DEFAULT_START,
    tol: float = DEFAULT_TOL,
) -> DegenerationReport:
    """Sample the maximal entropy measures and compare with the prediction."""
    if totally_invariant(phi, GAUSS):
        raise TotallyInvariantPoint(
            "the family has good reduction at the Gauss point; the comparison "
            "needs a point whose preimage is larger"
        )
    if hypothesis is None:
        hypothesis = auto_hypothesis(phi)
    t_values = tuple(complex(t) for t in t_values)
    if not t_values:
        raise ValueError("at least one parameter value is needed")
    atoms = [(cls, mass) for cls, mass in hypothesis.atoms]
    per_t = []
    for t0 in t_values:
        gmap = specialize(phi, t0)
        points = _sample_with_reanchor(gmap, z0, n, tol)
        rows = []
        for cls, mass in atoms:
            targets = _class_targets(cls, tol)
            union_hits = sum(
                1 for p in points if any(chordal(p, tg) <= eps for tg in targets)
            )
            per_target = [
                sum(1 for p in points if chordal(p, tg) <= eps) / len(points)
                for tg in targets
            ]
            rows.append(
                {
                    "cls": cls,
                    "predicted": mass,
                    "sampled": union_hits / len(points),
                    "per_target": per_target,
                    "targets": targets,
                }
            )
        per_t.append({"t": t0, "rows": rows})
    smallest = min(range(len(t_values)), key=lambda i: abs(t_values[i]))
    max_disc = max(
        (abs(row["sampled"] - float(row["predicted"])) for row in per_t[smallest]["rows"]),
        default=0.0,
    )
    return DegenerationReport(
        t_values=t_values,
        predicted=tuple(atoms),
        sampled=tuple(per_t),
        max_discrepancy=max_disc,
    )


def _sample_with_reanchor(gmap: ComplexMap, z0: complex, n: int, tol: float) -> list[complex]:
    # exceptional-orbit collisions show up as root-finding failures; retry
    # from a deterministic sequence of perturbed anchors
    last = None
    for k in range(4):
        anchor = z0 if k == 0 else z0 * (1 + k * 1e-3) + k * 1e-3j
        try:
            return pullback_sample(gmap, anchor, n, tol)
        except RootFindingFailed as exc:
            last = exc
    raise last
