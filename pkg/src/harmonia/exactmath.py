"""Exact rationals, Farey sequences, mediants and continued fractions.

``Ratio`` is :class:`fractions.Fraction`: arbitrary-precision integers,
sign on the numerator, always reduced.  Irrational inputs to
:func:`continued_fraction_of` are evaluated with mpmath at increasing
precision until the requested coefficients stop changing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Protocol, Union, runtime_checkable

import mpmath

Ratio = Fraction

# Bits of headroom kept beyond what the requested depth needs.
GUARD_BITS = 64


@runtime_checkable
class Evaluable(Protocol):
    """A real constant that can be evaluated to any binary precision."""

    def evaluate(self, prec: int) -> mpmath.mpf: ...


Real = Union[int, float, Fraction, Evaluable, mpmath.mpf]


def ratio(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("ratio with zero denominator")
    return Fraction(num, den)


def ratio_text(r: Fraction) -> str:
    """``num/den`` text, denominator always written (``2/1``)."""
    return f"{r.numerator}/{r.denominator}"


def parse_ratio(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        n, d = text.split("/", 1)
        return Fraction(int(n), int(d))
    return Fraction(text)


@dataclass(frozen=True)
class GoldenConstant:
    """phi = (1 + sqrt 5) / 2, evaluated lazily at the requested precision."""

    def evaluate(self, prec: int = 53) -> mpmath.mpf:
        with mpmath.workprec(prec):
            return (1 + mpmath.sqrt(5)) / 2

    def __float__(self) -> float:
        return float(self.evaluate(80))

    def __repr__(self) -> str:
        return "phi"


PHI = GoldenConstant()
PHI_FLOAT = float(PHI)


@dataclass(frozen=True)
class ContinuedFraction:
    """Simple continued fraction [a0; a1, a2, ...].

    ``exact`` marks an expansion that terminated on its own (rational
    input) instead of being cut at ``depth``.
    """

    coefficients: tuple[int, ...]
    depth: int
    exact: bool = False

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("continued fraction needs at least one coefficient")
        if self.coefficients[0] < 0 or any(a < 1 for a in self.coefficients[1:]):
            raise ValueError(f"invalid coefficients {self.coefficients}")

    def convergent(self, k: int) -> Fraction:
        """Value of the expansion truncated after ``k`` coefficients."""
        if not 1 <= k <= len(self.coefficients):
            raise IndexError(k)
        return convergents(self)[k - 1]

    def __str__(self) -> str:
        head, *tail = self.coefficients
        if not tail:
            return f"[{head}]"
        return f"[{head}; {', '.join(map(str, tail))}]"


def mediant(a: Fraction, b: Fraction) -> Fraction:
    """Farey sum (num_a + num_b) / (den_a + den_b) of ``a < b``."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError(f"mediant requires a < b, got {a} >= {b}")
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def are_farey_adjacent(a: Fraction, b: Fraction) -> bool:
    a, b = Fraction(a), Fraction(b)
    return abs(a.numerator * b.denominator - a.denominator * b.numerator) == 1


def farey_sequence(n: int) -> list[Fraction]:
    """All reduced fractions in [0, 1] with denominator <= n, increasing.

    Uses the next-term recurrence, so each step is O(1).
    """
    if n < 1:
        raise ValueError(f"Farey order must be >= 1, got {n}")
    a, b, c, d = 0, 1, 1, n
    out = [Fraction(0, 1)]
    while c <= n:
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        out.append(Fraction(a, b))
    return out


def _is_exact(x) -> bool:
    return isinstance(x, (int, Rational, float)) and not isinstance(x, bool)


def _exact_cf(x: Fraction, depth: int) -> tuple[list[int], bool]:
    coeffs = []
    num, den = x.numerator, x.denominator
    while den and len(coeffs) < depth:
        a, rem = divmod(num, den)
        coeffs.append(a)
        num, den = den, rem
    return coeffs, den == 0


def _mp_cf(x: mpmath.mpf, depth: int) -> list[int]:
    coeffs = []
    for _ in range(depth):
        a = int(mpmath.floor(x))
        coeffs.append(a)
        frac = x - a
        if frac == 0:
            break
        x = 1 / frac
    return coeffs


def continued_fraction_of(x: Real, depth: int) -> ContinuedFraction:
    """Floor/reciprocal expansion of ``x > 0`` cut at ``depth`` coefficients.

    Ints, Fractions and floats are expanded exactly (a float is the dyadic
    rational it stores).  Objects with ``evaluate(prec)`` are expanded at
    ``GUARD_BITS + 8 * depth`` bits, doubled until two successive
    precisions give the same coefficients.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if _is_exact(x):
        fx = Fraction(x)
        if fx <= 0:
            raise ValueError(f"continued fraction needs x > 0, got {x}")
        coeffs, exact = _exact_cf(fx, depth)
        return ContinuedFraction(tuple(coeffs), depth, exact)

    if isinstance(x, Evaluable):
        evaluate = x.evaluate
    elif isinstance(x, mpmath.mpf):
        fixed = +x
        evaluate = lambda prec: fixed  # noqa: E731
    else:
        raise TypeError(f"cannot expand {type(x).__name__}")

    prec = GUARD_BITS + 8 * depth
    with mpmath.workprec(prec):
        value = evaluate(prec)
        if value <= 0:
            raise ValueError(f"continued fraction needs x > 0, got {value}")
        prev = _mp_cf(value, depth)
    for _ in range(8):
        prec *= 2
        with mpmath.workprec(prec):
            cur = _mp_cf(evaluate(prec), depth)
        if cur == prev:
            break
        prev = cur
    return ContinuedFraction(tuple(prev), depth, exact=len(prev) < depth)


def convergents(cf: ContinuedFraction | Iterable[int]) -> list[Fraction]:
    """p_k/q_k from p_k = a_k p_{k-1} + p_{k-2} (same for q)."""
    coeffs = cf.coefficients if isinstance(cf, ContinuedFraction) else tuple(cf)
    p_prev, p = 1, coeffs[0]
    q_prev, q = 0, 1
    out = [Fraction(p, q)]
    for a in coeffs[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append(Fraction(p, q))
    return out


def convergents_up_to(x: float | Fraction, q_max: int) -> list[Fraction]:
    """Convergents of a non-negative ``x`` with denominator <= ``q_max``."""
    fx = Fraction(x)
    if fx < 0:
        raise ValueError(f"expected x >= 0, got {x}")
    base = math.floor(fx)
    frac = fx - base
    out = [Fraction(base)]
    if frac == 0:
        return out
    # depth needed is O(log q_max); 4 * bit length is a loose upper bound
    cf = continued_fraction_of(1 / frac, 4 * q_max.bit_length() + 4)
    p_prev, p = 1, base
    q_prev, q = 0, 1
    for a in cf.coefficients:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        if q > q_max:
            break
        out.append(Fraction(p, q))
    return out


def fibonacci(n: int) -> list[int]:
    """First n Fibonacci numbers F1..Fn = 1, 1, 2, 3, 5, ..."""
    out = []
    a, b = 1, 1
    for _ in range(n):
        out.append(a)
        a, b = b, a + b
    return out


def golden_convergents(n: int) -> list[Fraction]:
    """F(k+1)/F(k) for k = 1..n, i.e. 1/1, 2/1, 3/2, 5/3, ..."""
    fib = fibonacci(n + 1)
    return [Fraction(fib[k + 1], fib[k]) for k in range(n)]
