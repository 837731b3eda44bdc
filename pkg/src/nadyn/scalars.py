"""Exact arithmetic in K = Q(t^(1/N)) with the t-adic valuation.

A scalar is a reduced fraction num/den of polynomials in the uniformizer u,
together with a level N meaning t = u^N.  All valuations (``ord``) are
reported in t-units, so they are rationals with denominator dividing N.
The absolute value |x| = r^ord(x) is never materialised; everything is kept
in ord units.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd as _int_gcd
from math import inf

from .errors import LevelCapExceeded
from .polys import QPoly

DEFAULT_LEVEL_CAP = 64

# Absolute guard for internally generated levels (path probes, bisection);
# the user-facing cap only applies to base_change and parsed input.
HARD_LEVEL_CAP = 10**8


def level_cap() -> int:
    """User-facing level cap; NADYN_LEVEL_CAP overrides the default."""
    raw = os.environ.get("NADYN_LEVEL_CAP")
    if raw is None:
        return DEFAULT_LEVEL_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise LevelCapExceeded(f"invalid NADYN_LEVEL_CAP value {raw!r}") from exc
    return cap


class ResidueInfinity:
    """The point at infinity of the residue projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


RES_INF = ResidueInfinity()


class KScalar:
    """Element of Q(t^(1/N)), reduced, with monic denominator."""

    __slots__ = ("num", "den", "level")

    def __init__(self, num: QPoly, den: QPoly = QPoly.one(), level: int = 1):
        if den.is_zero:
            raise ZeroDivisionError("scalar with zero denominator")
        if level < 1:
            raise ValueError("level must be a positive integer")
        if not num.is_zero:
            if len(den.terms) == 1 or len(num.terms) == 1:
                # the gcd is a monomial: shift out the common power of u
                k = min(num.val, den.val)
                if k:
                    num = num.shifted(-k)
                    den = den.shifted(-k)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lead = den.leading
            if lead != 1:
                num = num.scale(1 / lead)
                den = den.scale(1 / lead)
        else:
            den = QPoly.one()
        self.num = num
        self.den = den
        self.level = level

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "KScalar":
        return cls(QPoly.zero())

    @classmethod
    def one(cls) -> "KScalar":
        return cls(QPoly.one())

    @classmethod
    def from_rational(cls, value) -> "KScalar":
        return cls(QPoly([(0, Fraction(value))]))

    @classmethod
    def t_power(cls, exponent) -> "KScalar":
        """The monomial t^exponent; fractional exponents raise the level."""
        q = Fraction(exponent)
        n = q.denominator
        e = q.numerator
        if e >= 0:
            return cls(QPoly.monomial(e), QPoly.one(), n)
        return cls(QPoly.one(), QPoly.monomial(-e), n)

    # -- representation ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _canonical(self):
        """Minimal-level normal form, for equality and hashing."""
        g = self.level
        for e, _ in self.num.terms:
            g = _int_gcd(g, e)
        for e, _ in self.den.terms:
            g = _int_gcd(g, e)
        if g <= 1:
            return (self.num, self.den, self.level)
        num = QPoly((e // g, c) for e, c in self.num.terms)
        den = QPoly((e // g, c) for e, c in self.den.terms)
        return (num, den, self.level // g)

    def with_level(self, target: int) -> "KScalar":
        """Re-express at a level that the current one divides."""
        if target == self.level:
            return self
        if target % self.level:
            raise ValueError(f"level {target} is not a multiple of {self.level}")
        if target > HARD_LEVEL_CAP:
            raise LevelCapExceeded(f"internal level {target} exceeds hard cap")
        m = target // self.level
        num = QPoly((e * m, c) for e, c in self.num.terms)
        den = QPoly((e * m, c) for e, c in self.den.terms)
        out = object.__new__(KScalar)
        out.num, out.den, out.level = num, den, target
        return out

    def _unify(self, other: "KScalar"):
        if self.level == other.level:
            return self, other
        lcm = self.level * other.level // _int_gcd(self.level, other.level)
        return self.with_level(lcm), other.with_level(lcm)

    def __eq__(self, other):
        if not isinstance(other, KScalar):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def __repr__(self):
        return f"KScalar({self.to_str()})"

    # -- field operations ----------------------------------------------------

    def __add__(self, other: "KScalar") -> "KScalar":
        a, b = self._unify(other)
        return KScalar(a.num * b.den + b.num * a.den, a.den * b.den, a.level)

    def __sub__(self, other: "KScalar") -> "KScalar":
        a, b = self._unify(other)
        return KScalar(a.num * b.den - b.num * a.den, a.den * b.den, a.level)

    def __neg__(self) -> "KScalar":
        out = object.__new__(KScalar)
        out.num, out.den, out.level = -self.num, self.den, self.level
        return out

    def __mul__(self, other: "KScalar") -> "KScalar":
        a, b = self._unify(other)
        return KScalar(a.num * b.num, a.den * b.den, a.level)

    def __truediv__(self, other: "KScalar") -> "KScalar":
        if other.is_zero:
            raise ZeroDivisionError("scalar division by zero")
        a, b = self._unify(other)
        return KScalar(a.num * b.den, a.den * b.num, a.level)

    def __pow__(self, n: int) -> "KScalar":
        if n < 0:
            return KScalar.one() / self**(-n)
        return KScalar(self.num**n, self.den**n, self.level)

    # -- valuation and residue ---------------------------------------------

    def ord(self):
        """t-adic valuation in t-units; +inf for zero."""
        if self.num.is_zero:
            return inf
        return Fraction(self.num.val - self.den.val, self.level)

    def residue(self):
        """Image in the residue field k = Q, extended by inf off K°."""
        o = self.ord()
        if o is inf or o > 0:
            return Fraction(0)
        if o < 0:
            return RES_INF
        return self.num.coeff(0) / self.den.coeff(0)

    def truncated_below(self, bound: Fraction) -> "KScalar":
        """Laurent expansion truncated to t-exponents strictly below bound.

        The result is a Laurent polynomial in u; this is what makes type II
        centres canonical.
        """
        if self.is_zero:
            return self
        bound = Fraction(bound)
        n = self.level
        a = self.den.val
        shift = self.num.val - a
        # series coefficients c_j of (num/u^val) / (den/u^a), exponents shift+j
        count_f = bound * n - shift
        if count_f <= 0:
            return KScalar.zero()
        count = int(count_f) if count_f.denominator == 1 else int(count_f) + 1
        numt = self.num.shifted(-self.num.val)
        dent = self.den.shifted(-a)
        d0 = dent.coeff(0)
        coeffs: list[Fraction] = []
        for j in range(count):
            s = numt.coeff(j)
            for e, c in dent.terms:
                if e == 0:
                    continue
                if e > j:
                    break
                s -= c * coeffs[j - e]
            coeffs.append(s / d0)
        terms = [(shift + j, c) for j, c in enumerate(coeffs) if c]
        if not terms:
            return KScalar.zero()
        low = min(e for e, _ in terms)
        if low >= 0:
            return KScalar(QPoly(terms), QPoly.one(), n)
        poly = QPoly((e - low, c) for e, c in terms)
        return KScalar(poly, QPoly.monomial(-low), n)

    # -- numerics ------------------------------------------------------------

    def eval_parts(self, t0: complex) -> tuple[complex, complex]:
        """Numerator and denominator evaluated at t = t0 (principal branch)."""
        if self.level == 1:
            u0 = complex(t0)
        else:
            u0 = complex(t0) ** (1.0 / self.level)
        return self.num.eval_complex(u0), self.den.eval_complex(u0)

    # -- printing ------------------------------------------------------------

    def to_str(self) -> str:
        num, den, lvl = self._canonical()
        num_s = _laurent_str(num, lvl)
        if den.degree == 0 and den.coeff(0) == 1:
            return num_s
        den_s = _laurent_str(den, lvl)
        if " " in num_s:
            num_s = f"({num_s})"
        if " " in den_s or "*" in den_s:
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"


def _laurent_str(p: QPoly, level: int) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for e, c in reversed(p.terms):
        q = Fraction(e, level)
        if q == 0:
            body = str(c)
        else:
            if q == 1:
                pw = "t"
            elif q.denominator == 1:
                pw = f"t^{q}"
            else:
                pw = f"t^({q})"
            if c == 1:
                body = pw
            elif c == -1:
                body = f"-{pw}"
            else:
                body = f"{c}*{pw}"
        parts.append(body)
    out = parts[0]
    for body in parts[1:]:
        out += f" - {body[1:]}" if body.startswith("-") else f" + {body}"
    return out


T = KScalar.t_power(1)
K_ZERO = KScalar.zero()
K_ONE = KScalar.one()


def ord_of(x: KScalar):
    """t-adic valuation of x in t-units (ord(0) = +inf)."""
    return x.ord()


def residue(x: KScalar):
    """Reduction of x modulo the maximal ideal, valued in Q union {inf}."""
    return x.residue()


def base_change(x: KScalar, m: int) -> KScalar:
    """Replace the uniformizer u by a root of order m: level N -> N*m."""
    if m < 1:
        raise ValueError("base change order must be a positive integer")
    target = x.level * m
    cap = level_cap()
    if target > cap:
        raise LevelCapExceeded(f"level {target} exceeds cap {cap}")
    return x.with_level(target)


def scalar_from_rational(value) -> KScalar:
    return KScalar.from_rational(value)
