"""Rational maps over K: composition, conjugation, reductions, depths.

A map is stored as numerator/denominator coefficient vectors of equal length
d+1; validity means the degree-d homogeneous pair has nonzero resultant.  The
intrinsic reduction at a type II point is computed by conjugating with the
canonical chart and reducing the minimal lift: the GCD form H carries the
directionwise depths, and the quotient pair is the induced tangent map (or a
constant, which names the direction of the image point).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, inf

from .berkspace import Direction, Mobius, TowardClass, TypeIIPoint, chart, direction_toward
from .errors import AmbiguousClass, DegenerateMap, IterationCapExceeded
from .polys import QPoly
from .respoly import (
    DepthDivisor,
    FactorClass,
    FiniteClass,
    HomogeneousForm,
    InfinityClass,
    INFINITY,
    depth_at,
    homogeneous_gcd,
    squarefree_decomposition,
)
from .scalars import KScalar, K_ZERO, K_ONE

ITERATION_CAP = 4096


@dataclass(frozen=True)
class RationalMapK:
    """phi(z) = sum(num[i] z^i) / sum(den[i] z^i), genuinely of this degree."""

    num: tuple[KScalar, ...]
    den: tuple[KScalar, ...]

    @property
    def degree(self) -> int:
        return len(self.num) - 1

    def __repr__(self):
        from .parsing import map_str

        return f"RationalMapK({map_str(self)})"


def _normalized(num, den) -> RationalMapK:
    """Scale the pair by the first nonzero coefficient, so equal projective
    maps get equal representations."""
    num = tuple(num)
    den = tuple(den)
    pivot = None
    for c in den + num:
        if not c.is_zero:
            pivot = c
            break
    if pivot is None:
        raise DegenerateMap("all coefficients vanish")
    if pivot != K_ONE:
        num = tuple(c / pivot for c in num)
        den = tuple(c / pivot for c in den)
    return RationalMapK(num, den)


def _bareiss_det(mat: list[list[QPoly]]) -> QPoly:
    """Fraction-free determinant over Q[u]: only exact divisions occur."""
    n = len(mat)
    sign = 1
    prev = QPoly.one()
    for k in range(n - 1):
        if mat[k][k].is_zero:
            swap = None
            for r in range(k + 1, n):
                if not mat[r][k].is_zero:
                    swap = r
                    break
            if swap is None:
                return QPoly.zero()
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        pivot = mat[k][k]
        for i in range(k + 1, n):
            head = mat[i][k]
            for j in range(k + 1, n):
                val = mat[i][j] * pivot - head * mat[k][j]
                mat[i][j] = val.exact_div(prev)
            mat[i][k] = QPoly.zero()
        prev = pivot
    det = mat[n - 1][n - 1]
    return -det if sign < 0 else det


def _cleared_vector(coeffs: tuple[KScalar, ...], level: int):
    """Common-denominator form: polynomial entries and the scalar multiplier."""
    common = QPoly.one()
    dens = []
    for c in coeffs:
        den = c.with_level(level).den
        dens.append(den)
        g = common.gcd(den)
        common = common * den.exact_div(g)
    polys = []
    for c, den in zip(coeffs, dens):
        c = c.with_level(level)
        polys.append(c.num * common.exact_div(den))
    return polys, common


def sylvester_resultant(den: tuple[KScalar, ...], num: tuple[KScalar, ...]) -> KScalar:
    """Resultant of the degree-d homogeneous pair (2d x 2d Sylvester matrix)."""
    d = len(den) - 1
    n = 2 * d
    level = 1
    for c in den + num:
        level = level * c.level // gcd(level, c.level)
    den_polys, den_common = _cleared_vector(den, level)
    num_polys, num_common = _cleared_vector(num, level)
    zero = QPoly.zero()
    rows = []
    for source in (den_polys, num_polys):
        for k in range(d):
            row = [zero] * n
            for j in range(d + 1):
                row[k + j] = source[d - j]
            rows.append(row)
    det = _bareiss_det(rows)
    # the resultant is d-homogeneous in each coefficient row
    scale = (den_common * num_common) ** d
    return KScalar(det, scale, level)


def make_map(num, den) -> RationalMapK:
    """Validate and build a map from coefficient vectors of equal length."""
    num = tuple(num)
    den = tuple(den)
    if len(num) != len(den):
        raise ValueError("numerator and denominator vectors must have equal length")
    if len(num) < 2:
        raise ValueError("a rational map needs degree at least 1")
    if sylvester_resultant(den, num).is_zero:
        raise DegenerateMap("coefficient pair has zero resultant")
    return _normalized(num, den)


# -- polynomial helpers over K (dense lists in z) ------------------------------


def _zmul(p: list[KScalar], q: list[KScalar]) -> list[KScalar]:
    out = [K_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero:
            continue
        for j, b in enumerate(q):
            if b.is_zero:
                continue
            out[i + j] = out[i + j] + a * b
    return out


def _zadd(p: list[KScalar], q: list[KScalar]) -> list[KScalar]:
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else K_ZERO
        b = q[i] if i < len(q) else K_ZERO
        out.append(a + b)
    return out


def _zscale(p: list[KScalar], c: KScalar) -> list[KScalar]:
    return [c * a for a in p]


def compose(outer: RationalMapK, inner: RationalMapK) -> RationalMapK:
    """outer after inner; the degree multiplies and no revalidation is needed."""
    d1 = outer.degree
    p, q = list(inner.num), list(inner.den)
    p_pows = [[K_ONE]]
    q_pows = [[K_ONE]]
    for _ in range(d1):
        p_pows.append(_zmul(p_pows[-1], p))
        q_pows.append(_zmul(q_pows[-1], q))
    size = d1 * inner.degree + 1
    new_num = [K_ZERO] * size
    new_den = [K_ZERO] * size
    for i in range(d1 + 1):
        blend = _zmul(p_pows[i], q_pows[d1 - i])
        if not outer.num[i].is_zero:
            new_num = _zadd(new_num, _zscale(blend, outer.num[i]))
        if not outer.den[i].is_zero:
            new_den = _zadd(new_den, _zscale(blend, outer.den[i]))
    return _normalized(new_num[:size], new_den[:size])


def iterate(phi: RationalMapK, n: int, cap: int = ITERATION_CAP) -> RationalMapK:
    """n-fold composition of the map with itself."""
    if n < 1:
        raise ValueError("iteration count must be positive")
    if phi.degree**n > cap:
        raise IterationCapExceeded(f"degree {phi.degree}^{n} exceeds cap {cap}")
    result = phi
    for _ in range(n - 1):
        result = compose(phi, result)
    return result


def precompose(phi: RationalMapK, m: Mobius) -> RationalMapK:
    """phi after the Mobius map (substitution on the source side)."""
    d = phi.degree
    lin_num = [m.b, m.a]  # a*w + b
    lin_den = [m.d, m.c]  # c*w + d
    num_pows = [[K_ONE]]
    den_pows = [[K_ONE]]
    for _ in range(d):
        num_pows.append(_zmul(num_pows[-1], lin_num))
        den_pows.append(_zmul(den_pows[-1], lin_den))
    new_num = [K_ZERO] * (d + 1)
    new_den = [K_ZERO] * (d + 1)
    for i in range(d + 1):
        blend = _zmul(num_pows[i], den_pows[d - i])
        if not phi.num[i].is_zero:
            new_num = _zadd(new_num, _zscale(blend, phi.num[i]))
        if not phi.den[i].is_zero:
            new_den = _zadd(new_den, _zscale(blend, phi.den[i]))
    return _normalized(new_num[: d + 1], new_den[: d + 1])


def postcompose(m: Mobius, phi: RationalMapK) -> RationalMapK:
    """The Mobius map after phi (linear combination on the value side)."""
    new_num = _zadd(_zscale(list(phi.num), m.a), _zscale(list(phi.den), m.b))
    new_den = _zadd(_zscale(list(phi.num), m.c), _zscale(list(phi.den), m.d))
    return _normalized(new_num, new_den)


def conjugate(m: Mobius, phi: RationalMapK) -> RationalMapK:
    """Exact coefficients of m^(-1) . phi . m; the degree is preserved."""
    return postcompose(m.inverse(), precompose(phi, m))


def minimal_lift(phi: RationalMapK) -> tuple[tuple[KScalar, ...], tuple[KScalar, ...]]:
    """Scale the coefficient pair so all entries are integral, one a unit."""
    m = inf
    for c in phi.num + phi.den:
        o = c.ord()
        if o < m:
            m = o
    if m is inf:
        raise DegenerateMap("zero map has no minimal lift")
    if m == 0:
        return phi.num, phi.den
    scale = KScalar.t_power(-Fraction(m))
    return tuple(c * scale for c in phi.num), tuple(c * scale for c in phi.den)


@dataclass(frozen=True)
class CoeffReduction:
    """Reduction of the coefficient point modulo the maximal ideal."""

    reduced_num: HomogeneousForm
    reduced_den: HomogeneousForm
    h: HomogeneousForm
    tilde_num: QPoly
    tilde_den: QPoly
    tilde_degree: int
    image_class: object  # FiniteClass/InfinityClass when the reduction is constant

    @property
    def fixes_gauss(self) -> bool:
        return self.tilde_degree >= 1


def coeff_reduction(phi: RationalMapK) -> CoeffReduction:
    """Reduced pair, GCD form H, and the reduced map num/H over den/H."""
    num_l, den_l = minimal_lift(phi)
    d = phi.degree
    hat_num = HomogeneousForm.from_coeffs(d, [c.residue() for c in num_l])
    hat_den = HomogeneousForm.from_coeffs(d, [c.residue() for c in den_l])
    h = homogeneous_gcd(hat_num, hat_den)
    qn = hat_num.exact_div(h)
    qd = hat_den.exact_div(h)
    tilde_degree = d - h.degree
    image_class = None
    if tilde_degree == 0:
        cn = qn.dehom.coeff(0)
        cd = qd.dehom.coeff(0)
        image_class = FiniteClass(cn / cd) if cd else INFINITY
    return CoeffReduction(
        reduced_num=hat_num,
        reduced_den=hat_den,
        h=h,
        tilde_num=qn.dehom,
        tilde_den=qd.dehom,
        tilde_degree=tilde_degree,
        image_class=image_class,
    )


@dataclass(frozen=True)
class IntrinsicReduction:
    """Intrinsic reduction of the map at a type II point."""

    at: TypeIIPoint
    fixes_point: bool
    tangent: tuple[QPoly, QPoly] | None
    image_direction: object | None
    depths: DepthDivisor
    local_degree: int | None
    totally_invariant: bool
    reduction: CoeffReduction


def intrinsic_data(phi: RationalMapK, point: TypeIIPoint) -> IntrinsicReduction:
    """Conjugate to the canonical chart and reduce."""
    if phi.degree < 2:
        raise ValueError("intrinsic data needs a map of degree >= 2")
    red = coeff_reduction(conjugate(chart(point), phi))
    return _intrinsic_from_reduction(red, point)


def _intrinsic_from_reduction(red: CoeffReduction, point: TypeIIPoint) -> IntrinsicReduction:
    depths = squarefree_decomposition(red.h)
    fixes = red.fixes_gauss
    return IntrinsicReduction(
        at=point,
        fixes_point=fixes,
        tangent=(red.tilde_num, red.tilde_den) if fixes else None,
        image_direction=None if fixes else red.image_class,
        depths=depths,
        local_degree=red.tilde_degree if fixes else None,
        totally_invariant=red.h.degree == 0,
        reduction=red,
    )


def _resolve_class(phi: RationalMapK, point: TypeIIPoint, direction: Direction):
    if direction.at != point:
        raise ValueError("direction is based at a different point")
    cls = direction.cls
    if isinstance(cls, TowardClass):
        cls = direction_toward(point, cls.target).cls
    return cls


def depth(phi: RationalMapK, point: TypeIIPoint, direction: Direction) -> int:
    """Mass the pullback of the Dirac at the point puts on the direction."""
    cls = _resolve_class(phi, point, direction)
    return depth_at(intrinsic_data(phi, point).depths, cls)


def _tangent_fixes(info: IntrinsicReduction, cls) -> bool:
    """Whether the tangent map fixes the class; assumes fixes_point."""
    n_poly, d_poly = info.tangent
    e = info.local_degree
    if isinstance(cls, InfinityClass):
        return d_poly.degree < e
    if isinstance(cls, FiniteClass):
        c = cls.value
        return n_poly.eval(c) == c * d_poly.eval(c)
    if isinstance(cls, FactorClass):
        fixed_form = n_poly - QPoly.x() * d_poly
        if fixed_form.is_zero:
            return True
        g = cls.poly.gcd(fixed_form)
        if g.degree == 0:
            return False
        if g.degree == cls.poly.degree:
            return True
        raise AmbiguousClass(
            f"class {cls.poly.to_str('z')} mixes fixed and moved directions"
        )
    raise TypeError(f"unsupported direction class {cls!r}")


def is_fixed_direction(phi: RationalMapK, point: TypeIIPoint, direction: Direction) -> bool:
    """Whether the intrinsic reduction maps the direction to itself."""
    cls = _resolve_class(phi, point, direction)
    info = intrinsic_data(phi, point)
    if info.fixes_point:
        return _tangent_fixes(info, cls)
    image = info.image_direction
    if isinstance(cls, FactorClass):
        if isinstance(image, FiniteClass) and cls.poly.eval(image.value) == 0:
            raise AmbiguousClass(
                "image direction lies inside the factor class; refine it"
            )
        return False
    return cls == image
