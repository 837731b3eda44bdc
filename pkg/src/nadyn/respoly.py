"""Polynomial algebra over the residue field k = Q.

Homogeneous pairs, their GCD form H, squarefree decompositions, and depth
lookups for direction classes.  Classes defined by irreducible factors are
handled through GCD splitting, so no factorisation into irreducibles is ever
needed: squarefree over Q stays squarefree over the algebraic closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AmbiguousClass, BothFormsZero
from .polys import QPoly, coprime_basis, rational_roots, squarefree_parts


class HomogeneousForm:
    """Homogeneous form sum c_i X0^(d-i) X1^i of declared degree d.

    Stored as the declared degree plus the dehomogenisation p(z) = sum c_i z^i;
    the multiplicity of the root at infinity [0:1] is d - deg p.
    """

    __slots__ = ("degree", "dehom")

    def __init__(self, degree: int, dehom: QPoly):
        if degree < 0:
            raise ValueError("negative form degree")
        if dehom.degree > degree:
            raise ValueError("dehomogenised degree exceeds declared degree")
        self.degree = degree
        self.dehom = dehom

    @classmethod
    def from_coeffs(cls, degree: int, coeffs) -> "HomogeneousForm":
        coeffs = list(coeffs)
        if len(coeffs) != degree + 1:
            raise ValueError("coefficient list must have length degree + 1")
        return cls(degree, QPoly.from_coeffs(coeffs))

    @property
    def is_zero(self) -> bool:
        return self.dehom.is_zero

    @property
    def inf_mult(self) -> int:
        """Multiplicity of [0:1]; meaningless for the zero form."""
        return self.degree - self.dehom.degree

    def coeff(self, i: int) -> Fraction:
        return self.dehom.coeff(i)

    def coeffs(self) -> list[Fraction]:
        out = self.dehom.coeff_list()
        out += [Fraction(0)] * (self.degree + 1 - len(out))
        return out

    def monic(self) -> "HomogeneousForm":
        return HomogeneousForm(self.degree, self.dehom.monic())

    def exact_div(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero:
            return HomogeneousForm(self.degree - other.degree, QPoly.zero())
        if self.inf_mult < other.inf_mult:
            raise ValueError("quotient is not a form")
        return HomogeneousForm(self.degree - other.degree, self.dehom.exact_div(other.dehom))

    def __eq__(self, other):
        return (
            isinstance(other, HomogeneousForm)
            and self.degree == other.degree
            and self.dehom == other.dehom
        )

    def __hash__(self):
        return hash((self.degree, self.dehom))

    def __repr__(self):
        return f"HomogeneousForm(deg={self.degree}, {self.dehom.to_str('z')})"


# -- direction classes -------------------------------------------------------


@dataclass(frozen=True)
class FiniteClass:
    """Direction indexed by a rational residue value."""

    value: Fraction

    def __repr__(self):
        return f"FiniteClass({self.value})"


@dataclass(frozen=True)
class InfinityClass:
    """The direction indexed by infinity in the residue projective line."""

    def __repr__(self):
        return "InfinityClass()"


INFINITY = InfinityClass()


@dataclass(frozen=True)
class FactorClass:
    """Galois-stable packet of directions: roots of a monic squarefree poly."""

    poly: QPoly

    def __post_init__(self):
        if self.poly.degree < 2:
            raise ValueError("factor classes need degree >= 2")
        if self.poly.leading != 1:
            raise ValueError("factor classes must be monic")

    def __repr__(self):
        return f"FactorClass({self.poly.to_str('z')})"


def finite(value) -> FiniteClass:
    return FiniteClass(Fraction(value))


def class_sort_key(cls):
    """Deterministic ordering: infinity, then finite values, then factors."""
    if isinstance(cls, InfinityClass):
        return (0,)
    if isinstance(cls, FiniteClass):
        return (1, cls.value)
    return (2, cls.poly.degree, cls.poly.terms)


# -- depth divisors -----------------------------------------------------------


@dataclass(frozen=True)
class DepthDivisor:
    """Root multiplicities of H: squarefree parts plus the infinity count."""

    parts: tuple[tuple[QPoly, int], ...]
    inf_mult: int

    @property
    def total_degree(self) -> int:
        return sum(i * s.degree for s, i in self.parts) + self.inf_mult

    def max_multiplicity(self) -> int:
        best = self.inf_mult
        for _, i in self.parts:
            best = max(best, i)
        return best


def homogeneous_gcd(f: HomogeneousForm, g: HomogeneousForm) -> HomogeneousForm:
    """Monic GCD of two equal-degree forms, with GCD(0, a) = a."""
    if f.degree != g.degree:
        raise ValueError("forms must have equal degree")
    if f.is_zero and g.is_zero:
        raise BothFormsZero("GCD of two zero forms")
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    inf = min(f.inf_mult, g.inf_mult)
    core = f.dehom.gcd(g.dehom)
    return HomogeneousForm(inf + core.degree, core)


def squarefree_decomposition(h: HomogeneousForm) -> DepthDivisor:
    """Read off all root multiplicities of h without factoring."""
    if h.is_zero:
        raise ValueError("squarefree decomposition of the zero form")
    if h.dehom.degree <= 0:
        return DepthDivisor(parts=(), inf_mult=h.degree)
    parts = tuple(squarefree_parts(h.dehom))
    return DepthDivisor(parts=parts, inf_mult=h.inf_mult)


def depth_at(divisor: DepthDivisor, cls) -> int:
    """Per-root depth of a direction class in the divisor."""
    if isinstance(cls, InfinityClass):
        return divisor.inf_mult
    if isinstance(cls, FiniteClass):
        for s, i in divisor.parts:
            if s.eval(cls.value) == 0:
                return i
        return 0
    if isinstance(cls, FactorClass):
        p = cls.poly
        hit = None
        for s, i in divisor.parts:
            g = s.gcd(p)
            if g.degree == 0:
                continue
            if g.degree == p.degree and hit is None:
                hit = i
            else:
                raise AmbiguousClass(
                    f"class {p.to_str('z')} straddles parts of the divisor"
                )
        return hit if hit is not None else 0
    raise TypeError(f"unsupported direction class {cls!r}")


def divisor_classes(divisor: DepthDivisor) -> list[tuple[object, int]]:
    """Split the divisor into atomic classes with their per-root depths.

    Rational roots become finite classes; what is left of each part stays one
    factor class per part.  Includes the infinity class when it carries depth.
    """
    out = []
    if divisor.inf_mult:
        out.append((INFINITY, divisor.inf_mult))
    for s, i in divisor.parts:
        rem = s
        for r in rational_roots(s):
            out.append((FiniteClass(r), i))
            rem = rem.exact_div(QPoly.from_coeffs([-r, 1]))
        if rem.degree == 1:
            # all linear factors are rational, so this cannot remain
            raise AssertionError("linear factor escaped rational root extraction")
        if rem.degree >= 2:
            out.append((FactorClass(rem.monic()), i))
    out.sort(key=lambda item: class_sort_key(item[0]))
    return out


def refine_classes(d1: DepthDivisor, d2: DepthDivisor):
    """Common coprime refinement of two divisors with per-class masses.

    Returns a list of (class, mass_in_d1, mass_in_d2); the mass of a class is
    deg(class) * per-root depth, and infinity is its own class.  Masses of each
    column sum to the respective divisor's total degree.
    """
    polys = [s for s, _ in d1.parts] + [s for s, _ in d2.parts]
    basis = coprime_basis(polys)
    refined = []
    for q in basis:
        roots = rational_roots(q)
        rem = q
        for r in roots:
            refined.append(FiniteClass(r))
            rem = rem.exact_div(QPoly.from_coeffs([-r, 1]))
        if rem.degree >= 2:
            refined.append(FactorClass(rem.monic()))
    rows = []
    if d1.inf_mult or d2.inf_mult:
        rows.append((INFINITY, d1.inf_mult, d2.inf_mult))
    for cls in refined:
        deg = 1 if isinstance(cls, FiniteClass) else cls.poly.degree
        rows.append((cls, deg * depth_at(d1, cls), deg * depth_at(d2, cls)))
    rows.sort(key=lambda row: class_sort_key(row[0]))
    return rows
