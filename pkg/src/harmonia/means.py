"""Pythagorean means, the proportion identities, and Kepler orbit geometry.

Rational endpoints keep the arithmetic and harmonic means exact.  The
geometric mean of rationals is exact only when the product is a perfect
rational square; otherwise it is a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from harmonia.exactmath import PHI_FLOAT

REAL_TOL = 1e-12
KEPLER_TOL = 1e-9


def _positive(*xs):
    for x in xs:
        if not x > 0:
            raise ValueError(f"means are defined for positive values, got {x}")


def _exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def arithmetic_mean(a, b):
    _positive(a, b)
    if _exact(a) and _exact(b):
        return Fraction(a + b, 2)
    return (a + b) / 2


def harmonic_mean(a, b):
    _positive(a, b)
    if _exact(a) and _exact(b):
        return Fraction(2 * a * b) / (a + b)
    return 2 * a * b / (a + b)


def _exact_sqrt(x: Fraction) -> Fraction | None:
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def geometric_mean(a, b):
    _positive(a, b)
    if _exact(a) and _exact(b):
        root = _exact_sqrt(Fraction(a) * Fraction(b))
        if root is not None:
            return root
    return math.sqrt(float(a) * float(b))


def close(x, y, tol: float = REAL_TOL) -> bool:
    """Exact equality for rationals, relative tolerance otherwise."""
    if _exact(x) and _exact(y):
        return x == y
    return math.isclose(float(x), float(y), rel_tol=tol, abs_tol=tol)


@dataclass(frozen=True)
class MeanTriple:
    a: Real
    b: Real
    arithmetic: Real
    geometric: Real
    harmonic: Real

    @classmethod
    def of(cls, a, b) -> "MeanTriple":
        return cls(a, b, arithmetic_mean(a, b), geometric_mean(a, b), harmonic_mean(a, b))

    def is_ordered(self) -> bool:
        """HM <= GM <= AM, with equality exactly when a == b."""
        h, g, m = float(self.harmonic), float(self.geometric), float(self.arithmetic)
        slack = REAL_TOL * m
        if close(self.a, self.b):
            return abs(h - m) <= slack and abs(g - m) <= slack
        return h < g + slack and g < m + slack and h < m

    def archytas_holds(self) -> bool:
        """GM^2 == AM * HM (exact for rationals)."""
        g = self.geometric
        if _exact(self.arithmetic) and _exact(self.harmonic):
            return Fraction(self.a) * Fraction(self.b) == self.arithmetic * self.harmonic
        return close(float(g) ** 2, float(self.arithmetic) * float(self.harmonic))


def proportion_identity_check(a, b, tol: float = REAL_TOL) -> bool:
    """a / AM(a, b) == HM(a, b) / b; an identity, so this is a verifier."""
    _positive(a, b)
    lhs = a / arithmetic_mean(a, b) if not _exact(a) else Fraction(a) / arithmetic_mean(a, b)
    rhs = harmonic_mean(a, b) / b
    return close(lhs, rhs, tol)


@dataclass(frozen=True)
class OrbitGeometry:
    """Ellipse fixed by perihelion and aphelion distances.

    ``a``, ``b`` and ``l`` are the arithmetic, geometric and harmonic means
    of ``r_min`` and ``r_max`` (semimajor axis, semiminor axis,
    semilatus rectum).
    """

    r_min: Real
    r_max: Real
    a: Real
    b: Real
    l: Real  # noqa: E741
    eccentricity: Real

    def latus_consistent(self, tol: float = REAL_TOL) -> bool:
        return close(self.l, float(self.b) ** 2 / float(self.a), tol)


def kepler_orbit_means(r_min, r_max) -> OrbitGeometry:
    if not r_min > 0:
        raise ValueError(f"r_min must be > 0, got {r_min}")
    if r_min > r_max:
        raise ValueError(f"r_min ({r_min}) exceeds r_max ({r_max})")
    if _exact(r_min) and _exact(r_max):
        ecc = Fraction(r_max - r_min, r_max + r_min)
    else:
        ecc = (r_max - r_min) / (r_max + r_min)
    return OrbitGeometry(
        r_min=r_min,
        r_max=r_max,
        a=arithmetic_mean(r_min, r_max),
        b=geometric_mean(r_min, r_max),
        l=harmonic_mean(r_min, r_max),
        eccentricity=ecc,
    )


def third_law_holds(a1, t1, a2, t2, tol: float = 1e-9) -> bool:
    """(a1/a2)^3 == (T1/T2)^2 for externally supplied semimajor axes and periods."""
    _positive(a1, t1, a2, t2)
    return math.isclose((float(a1) / float(a2)) ** 3, (float(t1) / float(t2)) ** 2, rel_tol=tol)


def is_kepler_mean_triangle(a, b, tol: float = KEPLER_TOL) -> bool:
    """Do AM, GM, HM of (a, b) form a right triangle with AM as hypotenuse?

    The residual AM^2 - GM^2 - HM^2 is divided by sqrt(5) * AM * HM, which
    to first order equals the relative distance of AM/HM from phi; the
    predicate therefore agrees with :func:`is_golden_mean_ratio` at the
    same ``tol``.  Equal endpoints give a degenerate triangle: False.
    """
    _positive(a, b)
    fa, fb = float(a), float(b)
    if fa == fb:
        return False
    am = (fa + fb) / 2
    gm2 = fa * fb
    hm = 2 * fa * fb / (fa + fb)
    residual = (am * am - gm2 - hm * hm) / (math.sqrt(5.0) * am * hm)
    return abs(residual) <= tol


def is_golden_mean_ratio(a, b, tol: float = KEPLER_TOL) -> bool:
    """AM/HM == phi; equivalent to :func:`is_kepler_mean_triangle`."""
    _positive(a, b)
    fa, fb = float(a), float(b)
    if fa == fb:
        return False
    ratio = (fa + fb) ** 2 / (4 * fa * fb)
    return abs(ratio - PHI_FLOAT) <= tol * PHI_FLOAT
