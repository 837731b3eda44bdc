"""Normalised depth-divisor sequences of iterates and their limits.

Each level n produces an atomic probability measure on the direction space
at the point (plus a possible point mass when the iterate fixes the point);
consecutive levels are compared in exact total variation over a common
coprime refinement of the direction classes.  The limit is predicted only in
the potential-good-reduction case, where it is a Dirac mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .berkspace import TypeIIPoint, direction_toward
from .errors import TotallyInvariantPoint
from .polys import QPoly, coprime_basis, rational_roots
from .respoly import FactorClass, FiniteClass, InfinityClass, INFINITY, class_sort_key
from .redux import RationalMapK, intrinsic_data, iterate
from .crucial import min_locus


@dataclass(frozen=True)
class DirectionMeasure:
    """Atomic measure on the direction space, plus a mass at the point itself."""

    atoms: tuple[tuple[object, Fraction], ...]
    point_mass: Fraction = Fraction(0)

    @property
    def total(self) -> Fraction:
        return sum((m for _, m in self.atoms), self.point_mass)


@dataclass(frozen=True)
class ConvergenceReport:
    levels: tuple[int, ...]
    measures: tuple[DirectionMeasure, ...]
    tv_steps: tuple[Fraction, ...]
    predicted: DirectionMeasure | None
    match: bool | None  # None when no prediction is available


def totally_invariant(phi: RationalMapK, point: TypeIIPoint) -> bool:
    """Whether the point is totally invariant (good reduction of the conjugate)."""
    return intrinsic_data(phi, point).totally_invariant


def _measure_from_intrinsic(info, d: int, n: int) -> DirectionMeasure:
    scale = Fraction(1, d**n)
    atoms = []
    divisor = info.depths
    if divisor.inf_mult:
        atoms.append((INFINITY, divisor.inf_mult * scale))
    for s, i in divisor.parts:
        rem = s
        for r in rational_roots(s):
            atoms.append((FiniteClass(r), i * scale))
            rem = rem.exact_div(QPoly.from_coeffs([-r, 1]))
        if rem.degree >= 2:
            atoms.append((FactorClass(rem.monic()), i * rem.degree * scale))
    atoms.sort(key=lambda a: class_sort_key(a[0]))
    point_mass = info.local_degree * scale if info.fixes_point else Fraction(0)
    return DirectionMeasure(tuple(atoms), point_mass)


def depth_sequence(phi: RationalMapK, point: TypeIIPoint, n_max: int = 4) -> ConvergenceReport:
    """Depth measures of the first n_max iterates at the point, with TV steps."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if totally_invariant(phi, point):
        raise TotallyInvariantPoint(
            "the point is totally invariant; the sequence hypothesis fails"
        )
    d = phi.degree
    measures = []
    current = phi
    for n in range(1, n_max + 1):
        if n > 1:
            current = iterate(phi, n)
        measures.append(_measure_from_intrinsic(intrinsic_data(current, point), d, n))
    tv_steps = tuple(
        tv_distance(measures[k], measures[k + 1]) for k in range(len(measures) - 1)
    )
    predicted = predicted_limit(phi, point)
    match = None
    if predicted is not None:
        match = tv_distance(measures[-1], predicted) == 0
    return ConvergenceReport(
        levels=tuple(range(1, n_max + 1)),
        measures=tuple(measures),
        tv_steps=tv_steps,
        predicted=predicted,
        match=match,
    )


def predicted_limit(phi: RationalMapK, point: TypeIIPoint) -> DirectionMeasure | None:
    """Dirac prediction in the potential-good-reduction case, else None.

    When the minimizer of the resultant function has good reduction, the
    equilibrium measure is the Dirac mass there, and its pushforward to the
    direction space at the point is the atom toward the minimizer.
    """
    if totally_invariant(phi, point):
        raise TotallyInvariantPoint("no limit prediction at a totally invariant point")
    locus = min_locus(phi)
    minimizer = locus.minimizer
    if not intrinsic_data(phi, minimizer).totally_invariant:
        return None
    cls = direction_toward(point, minimizer).cls
    return DirectionMeasure(((cls, Fraction(1)),))


def _atom_masses_on_basis(measure: DirectionMeasure, basis: list[QPoly]):
    """Distribute atom masses over a coprime basis, equally per root."""
    inf_mass = Fraction(0)
    masses = {q: Fraction(0) for q in basis}
    for cls, mass in measure.atoms:
        if isinstance(cls, InfinityClass):
            inf_mass += mass
            continue
        if isinstance(cls, FiniteClass):
            target = QPoly.from_coeffs([-cls.value, 1])
            masses[target] += mass
            continue
        p = cls.poly
        per_root = mass / p.degree
        for q in basis:
            g = q.gcd(p)
            if g.degree > 0:
                masses[q] += per_root * g.degree
    return inf_mass, masses


def tv_distance(m1: DirectionMeasure, m2: DirectionMeasure) -> Fraction:
    """Exact total variation distance over the common class refinement."""
    polys = []
    for measure in (m1, m2):
        for cls, _ in measure.atoms:
            if isinstance(cls, FiniteClass):
                polys.append(QPoly.from_coeffs([-cls.value, 1]))
            elif isinstance(cls, FactorClass):
                polys.append(cls.poly)
    basis = coprime_basis(polys)
    inf1, masses1 = _atom_masses_on_basis(m1, basis)
    inf2, masses2 = _atom_masses_on_basis(m2, basis)
    spread = abs(inf1 - inf2) + abs(m1.point_mass - m2.point_mass)
    for q in basis:
        spread += abs(masses1[q] - masses2[q])
    return spread / 2
