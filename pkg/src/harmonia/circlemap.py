"""The sine circle map: rotation numbers, Arnol'd tongues, devil's staircase.

    theta' = theta + omega + (K / 2 pi) sin(2 pi theta)

The map is a monotone circle homeomorphism for 0 <= K <= 1.  Rotation
numbers are smooth-bump weighted averages of the lift increments, and a
lock at p/q is declared when a convergent of the measured rotation
number with q <= q_max lies within ``tol`` of it.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from harmonia import _kernels
from harmonia.exactmath import are_farey_adjacent, convergents_up_to, farey_sequence, mediant

N_TRANSIENT = 1_000
N_ITER = 100_000
TOL = 1e-7
Q_MAX = 50
RESOLUTION = 1e-7


@dataclass(frozen=True)
class CircleMapParams:
    """Bare frequency ``omega``, coupling ``k`` and initial phase ``theta0``.

    ``omega`` is reduced into [0, 1]; 1.0 itself is kept so the 1/1
    tongue sits at the right end of the unit interval.  K > 1 makes the
    map non-invertible and must be requested with ``allow_noninvertible``.
    """

    omega: float
    k: float
    theta0: float = 0.0
    allow_noninvertible: bool = False

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"coupling must be >= 0, got {self.k}")
        if self.k > 1 and not self.allow_noninvertible:
            raise ValueError(f"K = {self.k} > 1 is non-invertible; pass allow_noninvertible=True")
        omega = float(self.omega)
        if not 0.0 <= omega <= 1.0:
            omega -= math.floor(omega)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "k", float(self.k))
        object.__setattr__(self, "theta0", float(self.theta0) % 1.0)


def step(theta: float, p: CircleMapParams) -> tuple[float, float]:
    """One iterate: (phase mod 1, lift increment)."""
    inc = p.omega + (p.k / _kernels.TWO_PI) * math.sin(_kernels.TWO_PI * theta)
    new = theta + inc
    return new - math.floor(new), inc


@dataclass(frozen=True)
class RotationResult:
    rho: float
    locked: Fraction | None
    iterations: int
    residual: float
    spread: float = 0.0  # |first-half - second-half| estimate

    @property
    def is_locked(self) -> bool:
        return self.locked is not None


def detect_lock(rho: float, tol: float = TOL, q_max: int = Q_MAX) -> tuple[Fraction | None, float]:
    """Lowest-denominator convergent of ``rho`` within ``tol``, and the best distance.

    Negative rho is handled by shifting into [0, 1) and back.
    """
    shift = math.floor(rho)
    best = math.inf
    found = None
    for c in convergents_up_to(rho - shift, q_max):
        d = abs(rho - shift - float(c))
        best = min(best, d)
        if found is None and d < tol:
            found = c + shift
    return found, best


def rotation_number(
    p: CircleMapParams,
    n_transient: int = N_TRANSIENT,
    n_iter: int = N_ITER,
    tol: float = TOL,
    q_max: int = Q_MAX,
) -> RotationResult:
    rho, r1, r2, _, _ = _kernels.weighted_rotation(
        p.theta0, 0.0, p.omega, p.k, 0.0, 0.0, int(n_transient), int(n_iter)
    )
    locked, residual = detect_lock(rho, tol, q_max)
    return RotationResult(rho, locked, int(n_iter), residual, abs(r1 - r2))


@dataclass(frozen=True)
class TongueRegion:
    ratio: Fraction
    k: float
    omega_lo: float
    omega_hi: float

    @property
    def width(self) -> float:
        return self.omega_hi - self.omega_lo

    @property
    def empty(self) -> bool:
        return self.omega_hi <= self.omega_lo

    def contains(self, omega: float) -> bool:
        return self.omega_lo <= omega <= self.omega_hi


def tongue_interval(
    ratio: Fraction,
    k: float,
    resolution: float = RESOLUTION,
    **rotation_kw,
) -> TongueRegion:
    """Omega-interval locked at ``ratio`` for coupling ``k``, by bisection.

    The rotation number is monotone in omega, so first bisect on the sign
    of rho - ratio until a locked omega turns up, then bisect each edge on
    the locked predicate.  The reported endpoints are locked points, so
    the interval is an inner bound within ``resolution`` of the true one.
    A tongue narrower than ``resolution`` comes back empty.
    """
    ratio = Fraction(ratio)
    if not 0 <= ratio <= 1:
        raise ValueError(f"ratio must lie in [0, 1], got {ratio}")
    if not 0 <= k <= 1:
        raise ValueError(f"K must lie in [0, 1], got {k}")
    q_max = rotation_kw.setdefault("q_max", Q_MAX)
    if ratio.denominator > q_max:
        raise ValueError(f"denominator {ratio.denominator} exceeds q_max {q_max}")
    target = float(ratio)
    if k == 0:
        return TongueRegion(ratio, 0.0, target, target)

    cache: dict[float, int] = {}

    def side(omega: float) -> int:
        if omega not in cache:
            r = rotation_number(CircleMapParams(omega, k), **rotation_kw)
            if r.locked == ratio:
                cache[omega] = 0
            else:
                cache[omega] = -1 if r.rho < target else 1
        return cache[omega]

    lo, hi = 0.0, 1.0
    probe = target
    while True:
        s = side(probe)
        if s == 0:
            inside = probe
            break
        if s < 0:
            lo = probe
        else:
            hi = probe
        if hi - lo < resolution:
            mid = 0.5 * (lo + hi)
            return TongueRegion(ratio, k, mid, mid)
        probe = 0.5 * (lo + hi)

    def edge(outer: float, inner: float) -> float:
        if side(outer) == 0:
            return outer
        while abs(inner - outer) > resolution:
            mid = 0.5 * (outer + inner)
            if side(mid) == 0:
                inner = mid
            else:
                outer = mid
        return inner

    return TongueRegion(ratio, k, edge(lo, inside), edge(hi, inside))


@dataclass(frozen=True)
class StairPoint:
    omega: float
    rho: float
    locked: Fraction | None


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def devils_staircase(
    k: float,
    omega_grid: Iterable[float],
    workers: int = 1,
    **rotation_kw,
) -> list[StairPoint]:
    """Rotation number and lock over a grid of bare frequencies."""
    grid = [float(w) for w in omega_grid]

    def one(omega):
        r = rotation_number(CircleMapParams(omega, k), **rotation_kw)
        return StairPoint(omega, r.rho, r.locked)

    return _map(one, grid, workers)


def staircase_grid(
    k: float, omegas: np.ndarray, theta0: float = 0.0, n_transient: int = N_TRANSIENT, n_iter: int = N_ITER
) -> np.ndarray:
    """Vectorised rotation numbers (no lock detection) for plotting and bulk checks."""
    out = _kernels.rotation_grid(
        np.asarray(omegas, dtype=np.float64), float(k), 0.0, 0.0, float(theta0), 0.0, int(n_transient), int(n_iter)
    )
    return out[:, 0]


@dataclass(frozen=True)
class Plateau:
    ratio: Fraction
    omega_lo: float
    omega_hi: float
    cells: int


def plateaus(points: Sequence[StairPoint]) -> list[Plateau]:
    """Runs of consecutive grid points locked at the same ratio."""
    out = []
    run: list[StairPoint] = []
    for pt in list(points) + [None]:
        if run and (pt is None or pt.locked != run[0].locked):
            if run[0].locked is not None:
                out.append(Plateau(run[0].locked, run[0].omega, run[-1].omega, len(run)))
            run = []
        if pt is not None:
            run.append(pt)
    return out


def tongues(
    k: float,
    ratios: Iterable[Fraction],
    workers: int = 1,
    resolution: float = RESOLUTION,
    **rotation_kw,
) -> list[TongueRegion]:
    return _map(lambda r: tongue_interval(r, k, resolution, **rotation_kw), list(ratios), workers)


def locked_measure(
    k: float, q_max: int = 30, workers: int = 1, resolution: float = RESOLUTION, **rotation_kw
) -> tuple[float, list[TongueRegion]]:
    """Total omega-length in [0, 1] covered by tongues with denominator <= q_max."""
    regions = tongues(k, farey_sequence(q_max), workers, resolution, **rotation_kw)
    return math.fsum(r.width for r in regions), regions


def fractions_between(a: Fraction, b: Fraction, q_max: int) -> list[Fraction]:
    return [x for x in farey_sequence(q_max) if a < x < b]


@dataclass(frozen=True)
class MediantCheck:
    parents: tuple[Fraction, Fraction]
    mediant: Fraction
    k: float
    widths: dict[Fraction, float]

    @property
    def holds(self) -> bool:
        w = self.widths[self.mediant]
        return all(w > v for r, v in self.widths.items() if r != self.mediant)

    def widest(self) -> Fraction:
        return max(self.widths, key=lambda r: (self.widths[r], -r.denominator))


def mediant_width_check(
    parent_a: Fraction,
    parent_b: Fraction,
    k: float,
    q_max: int = 12,
    workers: int = 1,
    resolution: float = RESOLUTION,
    **rotation_kw,
) -> MediantCheck:
    """Is the mediant's tongue strictly the widest between two adjacent parents?"""
    a, b = Fraction(parent_a), Fraction(parent_b)
    if a > b:
        a, b = b, a
    if not are_farey_adjacent(a, b):
        raise ValueError(f"{a} and {b} are not Farey-adjacent")
    if not 0 < k < 1:
        raise ValueError(f"K must lie in (0, 1), got {k}")
    m = mediant(a, b)
    between = fractions_between(a, b, max(q_max, m.denominator))
    regions = tongues(k, between, workers, resolution, **rotation_kw)
    return MediantCheck((a, b), m, k, {r.ratio: r.width for r in regions})
