import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from harmonia.exactmath import (
    PHI,
    ContinuedFraction,
    are_farey_adjacent,
    continued_fraction_of,
    convergents,
    convergents_up_to,
    farey_sequence,
    golden_convergents,
    mediant,
)


def farey_by_enumeration(n):
    return sorted({F(p, q) for q in range(1, n + 1) for p in range(0, q + 1)})


def smallest_denominator_between(a, b, limit=200):
    for q in range(1, limit):
        for p in range(0, q + 1):
            if a < F(p, q) < b:
                return F(p, q)
    raise AssertionError("none found")


def euclid_coefficients(num, den):
    out = []
    while den:
        out.append(num // den)
        num, den = den, num % den
    return out


def evaluate_truncated(coeffs):
    """Back-substitute a0 + 1/(a1 + 1/(...)) from the tail."""
    value = F(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        value = a + 1 / value
    return value


class TestMediant:
    def test_symmetric_endpoints(self):
        assert mediant(F(0), F(1)) == F(1, 2)

    def test_half_two_thirds(self):
        assert mediant(F(1, 2), F(2, 3)) == F(3, 5)
        assert smallest_denominator_between(F(1, 2), F(2, 3)) == F(3, 5)

    @pytest.mark.parametrize("a, b", [(F(1), F(1, 2)), (F(1, 3), F(1, 3))])
    def test_rejects_unordered(self, a, b):
        with pytest.raises(ValueError):
            mediant(a, b)

    def test_minimal_denominator_brute_force(self):
        for n in range(1, 20):
            seq = farey_sequence(n)
            for a, b in zip(seq, seq[1:]):
                m = mediant(a, b)
                assert m == smallest_denominator_between(a, b)
                assert all(not a < F(p, q) < b for q in range(1, m.denominator) for p in range(q + 1))

    def test_minimal_denominator_up_to_50(self):
        # adjacent pairs sampled from order 25; brute force every q <= 50
        seq = farey_sequence(25)
        for a, b in list(zip(seq, seq[1:]))[::7]:
            m = mediant(a, b)
            for q in range(1, min(m.denominator, 51)):
                lo = math.floor(a * q) + 1
                assert not F(lo, q) < b, (a, b, q)


class TestAdjacency:
    @pytest.mark.parametrize(
        "a, b, expected",
        [(F(1, 2), F(2, 3), True), (F(1, 3), F(2, 3), False), (F(0), F(1), True)],
    )
    def test_examples(self, a, b, expected):
        assert are_farey_adjacent(a, b) is expected

    def test_determinant_identity_up_to_30(self):
        for n in range(1, 31):
            seq = farey_sequence(n)
            assert all(are_farey_adjacent(a, b) for a, b in zip(seq, seq[1:]))

    @given(st.integers(1, 40), st.data())
    def test_mediant_between_and_adjacent(self, n, data):
        seq = farey_sequence(n)
        i = data.draw(st.integers(0, len(seq) - 2))
        a, b = seq[i], seq[i + 1]
        m = mediant(a, b)
        assert a < m < b
        assert are_farey_adjacent(a, m) and are_farey_adjacent(m, b)


class TestFarey:
    def test_order_one(self):
        assert farey_sequence(1) == [F(0), F(1)]

    def test_order_three(self):
        assert farey_sequence(3) == [F(0), F(1, 3), F(1, 2), F(2, 3), F(1)]
        assert farey_sequence(3) == farey_by_enumeration(3)

    def test_order_five_length(self):
        assert len(farey_by_enumeration(5)) == 11
        assert len(farey_sequence(5)) == 11

    @pytest.mark.parametrize("n", [2, 7, 13, 30])
    def test_matches_enumeration(self, n):
        assert farey_sequence(n) == farey_by_enumeration(n)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            farey_sequence(0)


class TestContinuedFractions:
    def test_three_halves(self):
        cf = continued_fraction_of(F(3, 2), 10)
        assert cf.coefficients == (1, 2) and cf.exact
        assert convergents(cf) == [F(1), F(3, 2)]

    def test_twelve_sevenths(self):
        cf = continued_fraction_of(F(12, 7), 10)
        assert list(cf.coefficients) == euclid_coefficients(12, 7) == [1, 1, 2, 2]
        expected = [evaluate_truncated(cf.coefficients[:k]) for k in range(1, 5)]
        assert expected == [F(1), F(2), F(5, 3), F(12, 7)]
        assert convergents(cf) == expected

    def test_golden_expansion(self):
        cf = continued_fraction_of(PHI, 6)
        assert cf.coefficients == (1, 1, 1, 1, 1, 1)
        assert convergents(cf) == [F(1), F(2), F(3, 2), F(5, 3), F(8, 5), F(13, 8)]
        assert cf.convergent(5) == F(8, 5)
        assert str(cf) == "[1; 1, 1, 1, 1, 1]"

    def test_golden_deep_expansion_is_all_ones(self):
        assert set(continued_fraction_of(PHI, 200).coefficients) == {1}

    def test_sqrt2_via_mpf(self):
        with mpmath.workprec(300):
            cf = continued_fraction_of(mpmath.sqrt(2), 30)
        assert cf.coefficients == (1,) + (2,) * 29

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            continued_fraction_of(F(-1, 2), 3)
        with pytest.raises(ValueError):
            continued_fraction_of(0, 3)

    def test_validates_coefficients(self):
        with pytest.raises(ValueError):
            ContinuedFraction((1, 0), 2)

    @given(st.fractions(min_value=F(1, 10**6), max_value=10**6))
    def test_exact_roundtrip(self, x):
        cf = continued_fraction_of(x, 10**4)
        assert cf.exact
        assert convergents(cf)[-1] == x
        assert evaluate_truncated(cf.coefficients) == x

    def test_convergents_up_to(self):
        assert convergents_up_to(F(12, 7), 5) == [F(1), F(2), F(5, 3)]
        assert convergents_up_to(0.5, 50) == [F(0), F(1, 2)]


class TestGolden:
    def test_phi_is_root(self):
        with mpmath.workprec(200):
            phi = PHI.evaluate(200)
            assert abs(phi**2 - phi - 1) < mpmath.mpf(2) ** -190

    def test_hurwitz_constant_is_approached_alternately(self):
        # q^2 |phi - p/q| = 1 / (phi + F(n-1)/F(n)), which straddles 1/sqrt5
        with mpmath.workprec(200):
            phi = PHI.evaluate(200)
            scaled = [
                float(abs(phi - mpmath.mpf(c.numerator) / c.denominator) * c.denominator**2)
                for c in golden_convergents(20)
            ]
        bound = 1 / math.sqrt(5)
        below = [s < bound for s in scaled]
        assert below == [n % 2 == 0 for n in range(1, 21)]
        assert all(s < 1 for s in scaled)  # Dirichlet bound
        assert abs(scaled[-1] - bound) < 1e-7

    def test_consecutive_golden_convergents_adjacent(self):
        cs = golden_convergents(25)
        assert all(are_farey_adjacent(a, b) for a, b in zip(cs, cs[1:]))
