"""How well does an N-note equal temperament approximate the just intervals?

sigma(N) is the sum over a set of just intervals of the squared distance,
in cents, from each interval to the nearest step of the N-note lattice.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from harmonia.scales import CONSONANT, JustInterval

PLATEAU_TOL = 1e-12


@dataclass(frozen=True)
class IntervalError:
    name: str
    just_cents: float
    tempered_cents: float
    error: float


@dataclass(frozen=True)
class TemperamentReport:
    n: int
    sigma: float
    per_interval: tuple[IntervalError, ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sigma": self.sigma,
            "per_interval": [
                {
                    "name": e.name,
                    "just_cents": e.just_cents,
                    "tempered_cents": e.tempered_cents,
                    "error": e.error,
                }
                for e in self.per_interval
            ],
        }


def sigma(n: int, intervals: Sequence[JustInterval] = CONSONANT) -> TemperamentReport:
    if n < 1:
        raise ValueError(f"note count must be >= 1, got {n}")
    if not intervals:
        raise ValueError("interval set is empty")
    rows = []
    for iv in intervals:
        c = iv.cents
        k = math.floor(c * n / 1200.0 + 0.5)
        tempered = 1200.0 * k / n
        rows.append(IntervalError(iv.name, c, tempered, c - tempered))
    total = math.fsum(e.error * e.error for e in rows)
    return TemperamentReport(n, total, tuple(rows))


@dataclass(frozen=True)
class Sweep:
    reports: tuple[TemperamentReport, ...]
    minima: tuple[int, ...]

    def is_min(self, n: int) -> bool:
        return n in self.minima


def local_minima(values: Sequence[tuple[int, float]], tol: float = PLATEAU_TOL) -> list[int]:
    """Interior points strictly below both neighbours (ties within tol are not minima)."""
    out = []
    for (_, left), (n, mid), (_, right) in zip(values, values[1:], values[2:]):
        if mid < left - tol and mid < right - tol:
            out.append(n)
    return out


def sigma_sweep(
    n_min: int,
    n_max: int,
    intervals: Sequence[JustInterval] = CONSONANT,
    workers: int = 1,
) -> Sweep:
    if not 1 <= n_min < n_max <= 200:
        raise ValueError(f"need 1 <= n_min < n_max <= 200, got [{n_min}, {n_max}]")
    ns = range(n_min, n_max + 1)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            reports = tuple(pool.map(lambda n: sigma(n, intervals), ns))
    else:
        reports = tuple(sigma(n, intervals) for n in ns)
    minima = local_minima([(r.n, r.sigma) for r in reports])
    return Sweep(reports, tuple(minima))
