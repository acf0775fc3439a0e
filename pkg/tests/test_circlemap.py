import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harmonia.circlemap import (
    CircleMapParams,
    detect_lock,
    devils_staircase,
    fractions_between,
    mediant_width_check,
    plateaus,
    rotation_number,
    staircase_grid,
    step,
    tongue_interval,
)
from harmonia.exactmath import PHI_FLOAT


def lift_average(omega, k, theta=0.0, n_transient=2_000, n=200_000):
    """Plain (unweighted) lift displacement per step, in pure Python."""
    for _ in range(n_transient):
        theta = (theta + omega + k / (2 * math.pi) * math.sin(2 * math.pi * theta)) % 1.0
    total = 0.0
    for _ in range(n):
        inc = omega + k / (2 * math.pi) * math.sin(2 * math.pi * theta)
        total += inc
        theta = (theta + inc) % 1.0
    return total / n


class TestParams:
    def test_reduction(self):
        assert CircleMapParams(1.25, 0.5).omega == 0.25
        assert CircleMapParams(1.0, 0.5).omega == 1.0
        assert CircleMapParams(0.3, 0.5, theta0=1.75).theta0 == 0.75

    def test_rejects(self):
        with pytest.raises(ValueError):
            CircleMapParams(0.3, -0.1)
        with pytest.raises(ValueError):
            CircleMapParams(0.3, 1.5)
        assert CircleMapParams(0.3, 1.5, allow_noninvertible=True).k == 1.5


class TestStep:
    def test_rigid_rotation(self):
        _, inc = step(0.37, CircleMapParams(0.3, 0.0))
        assert inc == 0.3

    def test_fixed_point(self):
        assert step(0.0, CircleMapParams(0.0, 0.5)) == (0.0, 0.0)

    def test_substitution(self):
        theta, inc = step(0.25, CircleMapParams(0.5, 1.0))
        assert inc == pytest.approx(0.75 - 0.25 + 1 / (2 * math.pi), abs=1e-15)
        assert theta == pytest.approx((0.75 + 1 / (2 * math.pi)) % 1.0, abs=1e-15)


class TestRotation:
    def test_rigid_third(self):
        r = rotation_number(CircleMapParams(1 / 3, 0.0))
        assert r.rho == pytest.approx(1 / 3, abs=1e-12)
        assert r.locked == F(1, 3)

    def test_half_locked(self):
        assert rotation_number(CircleMapParams(0.5, 0.9)).locked == F(1, 2)

    def test_golden_unlocked(self):
        r = rotation_number(CircleMapParams(PHI_FLOAT - 1, 0.9), tol=1e-7, q_max=50)
        assert r.locked is None
        assert r.residual > 1e-7

    def test_agrees_with_plain_average(self):
        # independent estimator; its error is O(1/n)
        for omega, k in [(0.2, 0.6), (0.61, 0.9), (0.45, 1.0)]:
            r = rotation_number(CircleMapParams(omega, k))
            assert r.rho == pytest.approx(lift_average(omega, k), abs=2e-5)

    def test_locked_invariant(self):
        for omega in np.linspace(0, 1, 41):
            r = rotation_number(CircleMapParams(float(omega), 0.95))
            if r.locked is not None:
                assert abs(r.rho - float(r.locked)) <= 1e-7
                assert r.locked.denominator <= 50

    def test_detect_lock(self):
        assert detect_lock(0.4 + 1e-9) == (F(2, 5), pytest.approx(1e-9, abs=1e-12))
        assert detect_lock(0.4 + 1e-5)[0] is None
        assert detect_lock(-0.5)[0] == F(-1, 2)

    def test_independent_of_initial_phase(self):
        rng = np.random.default_rng(3)
        for omega, k in [(0.36, 0.7), (0.6180339887, 0.9), (0.1, 0.99)]:
            rhos = [rotation_number(CircleMapParams(omega, k, float(t))).rho for t in rng.random(10)]
            assert max(rhos) - min(rhos) < 1e-6

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_symmetry(self, omega, k):
        # theta -> -theta conjugates the two maps; mirrored start phases avoid the
        # unstable fixed point at 0, whose escape time diverges as omega -> 0
        a = rotation_number(CircleMapParams(omega, k, 0.3)).rho
        b = rotation_number(CircleMapParams(1.0 - omega, k, 0.7)).rho
        assert a + b == pytest.approx(1.0, abs=1e-6)


class TestTongues:
    def test_zero_tongue_edge(self):
        t = tongue_interval(F(0), 0.8)
        assert t.omega_lo == 0.0
        # fixed point exists while |omega| <= K / 2pi
        assert t.omega_hi == pytest.approx(0.8 / (2 * math.pi), abs=2e-7)

    def test_half_tongue_recorded(self):
        t = tongue_interval(F(1, 2), 0.9)
        assert t.contains(0.5)
        assert 0.5 - t.omega_lo == pytest.approx(t.omega_hi - 0.5, abs=2e-7)
        # edges checked against the plain average
        assert lift_average(t.omega_lo + 1e-4, 0.9) == pytest.approx(0.5, abs=1e-9)
        assert abs(lift_average(t.omega_lo - 1e-4, 0.9) - 0.5) > 1e-4

    def test_unforced_limit(self):
        assert tongue_interval(F(1, 3), 0.0).width == 0
        # below K ~ 1e-2 the relaxation time exceeds the default window
        w_zero = [tongue_interval(F(0), k).width for k in (1e-2, 0.1, 0.5)]
        assert w_zero == sorted(w_zero)
        assert w_zero[0] == pytest.approx(1e-2 / (2 * math.pi), abs=2e-7)
        w_half = [tongue_interval(F(1, 2), k).width for k in (1e-4, 0.1, 0.5, 0.9)]
        assert w_half == sorted(w_half)
        assert w_half[0] < 1e-6

    def test_nested_in_k(self):
        for ratio in (F(0), F(1, 2), F(1)):
            regions = [tongue_interval(ratio, k) for k in (0.3, 0.6, 0.9)]
            for small, big in zip(regions, regions[1:]):
                assert big.omega_lo <= small.omega_lo + 1e-7
                assert small.omega_hi <= big.omega_hi + 1e-7

    @pytest.mark.parametrize("ratio", [F(0), F(1, 2), F(1)])
    @pytest.mark.parametrize("k", [0.1, 0.5, 0.9, 1.0])
    def test_symmetric_tongues_contain_root(self, ratio, k):
        assert tongue_interval(ratio, k).contains(float(ratio))

    def test_width_grows_with_k(self):
        for ratio in (F(1, 3), F(2, 5)):
            w = [tongue_interval(ratio, k).width for k in (0.3, 0.6, 0.9)]
            assert w == sorted(w) and w[0] > 0

    def test_tongue_born_at_its_rational(self):
        # off-symmetric tongues drift with K, but return to p/q as K -> 0
        dist = []
        for k in (0.8, 0.4, 0.2):
            t = tongue_interval(F(1, 3), k)
            mid = 0.5 * (t.omega_lo + t.omega_hi)
            dist.append(abs(mid - 1 / 3))
        assert dist == sorted(dist, reverse=True)
        assert dist[-1] < 2e-3

    def test_boundaries_bracket_lock(self):
        t = tongue_interval(F(2, 5), 0.8)
        eps = 1e-6
        assert rotation_number(CircleMapParams(t.omega_lo + eps, 0.8)).locked == F(2, 5)
        assert rotation_number(CircleMapParams(t.omega_hi - eps, 0.8)).locked == F(2, 5)
        assert rotation_number(CircleMapParams(t.omega_lo - eps, 0.8)).locked != F(2, 5)
        assert rotation_number(CircleMapParams(t.omega_hi + eps, 0.8)).locked != F(2, 5)

    def test_rejects(self):
        with pytest.raises(ValueError):
            tongue_interval(F(3, 2), 0.5)
        with pytest.raises(ValueError):
            tongue_interval(F(1, 60), 0.5)


class TestStaircase:
    def test_unforced_identity(self):
        grid = np.linspace(0, 1, 201)
        pts = devils_staircase(0.0, grid)
        assert all(abs(p.rho - p.omega) < 1e-12 for p in pts)
        assert all(pl.cells == 1 for pl in plateaus(pts))

    def test_monotone(self):
        grid = np.linspace(0, 1, 2001)
        rho = staircase_grid(1.0, grid)
        assert np.all(np.diff(rho) >= -1e-9)

    def test_plateau_self_consistency(self):
        pts = devils_staircase(0.9, np.linspace(0.3, 0.7, 201))
        pls = plateaus(pts)
        assert pls
        for pl in pls:
            inside = [p for p in pts if pl.omega_lo <= p.omega <= pl.omega_hi]
            assert all(abs(p.rho - float(pl.ratio)) < 1e-7 for p in inside)

    def test_workers_bit_identical(self):
        grid = np.linspace(0, 1, 64)
        a = devils_staircase(0.9, grid, workers=1, n_iter=20_000)
        b = devils_staircase(0.9, grid, workers=8, n_iter=20_000)
        assert a == b


class TestMediantWidths:
    def test_golden_chain(self):
        # 1/2, 2/3 are Fibonacci convergents; their mediant 3/5 should dominate
        check = mediant_width_check(F(1, 2), F(2, 3), 0.8, q_max=12)
        assert check.mediant == F(3, 5)
        assert check.holds

    def test_rejects_non_adjacent(self):
        with pytest.raises(ValueError):
            mediant_width_check(F(1, 3), F(2, 3), 0.8)

    def test_between(self):
        assert fractions_between(F(0), F(1, 2), 4) == [F(1, 4), F(1, 3)]
