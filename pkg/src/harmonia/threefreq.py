"""Quasiperiodically forced circle map and three-frequency resonances.

Second drive of amplitude ``eps`` at frequency ratio ``w = f2/f1``:

    theta' = theta + omega + (K/2pi) sin(2pi theta) + (eps/2pi) sin(2pi phi)
    phi'   = phi + w  (mod 1)

Resonances are written p*f1 + q*f2 = r*f3 with r > 0, so (1, 1, 1) is the
sum tone f3 = f1 + f2 and (-1, 1, 1) the difference tone.  The residual
is |p*f1 + q*f2 - r*f3|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from harmonia import _kernels
from harmonia.circlemap import N_ITER, N_TRANSIENT, _map

F2_DEFAULT = Fraction(12, 7)
DEFAULT_K = 0.4
DEFAULT_EPS = 0.4
REPORT_TOL = 1e-9


@dataclass(frozen=True)
class QpForcingParams:
    """``f2`` is the full frequency ratio f2/f1; iteration uses it mod 1."""

    omega: float
    k: float
    eps: float
    f2: float | Fraction = F2_DEFAULT
    theta0: float = 0.0
    phi0: float = 0.0

    def __post_init__(self):
        if self.k < 0 or self.eps < 0:
            raise ValueError(f"K and eps must be >= 0, got K={self.k}, eps={self.eps}")
        if self.f2 < 0:
            raise ValueError(f"f2/f1 must be >= 0, got {self.f2}")
        object.__setattr__(self, "theta0", float(self.theta0) % 1.0)
        object.__setattr__(self, "phi0", float(self.phi0) % 1.0)

    @property
    def w(self) -> float:
        """Drive frequency reduced mod 1 (exactly, when f2 is a Fraction)."""
        if isinstance(self.f2, Fraction):
            return float(self.f2 - math.floor(self.f2))
        return float(self.f2) % 1.0


def qp_step(theta: float, phi: float, p: QpForcingParams) -> tuple[float, float, float]:
    """One iterate: (theta mod 1, phi mod 1, lift increment of theta)."""
    inc = p.omega + (p.k / _kernels.TWO_PI) * math.sin(_kernels.TWO_PI * theta)
    if p.eps != 0.0:
        inc += (p.eps / _kernels.TWO_PI) * math.sin(_kernels.TWO_PI * phi)
    theta = theta + inc
    phi = phi + p.w
    return theta - math.floor(theta), phi - math.floor(phi), inc


@dataclass(frozen=True)
class QpRotation:
    f3: float
    first_half: float
    second_half: float

    @property
    def spread(self) -> float:
        return abs(self.first_half - self.second_half)

    def resolved(self, tol: float = REPORT_TOL) -> bool:
        """Half-sample estimates agree within 10x the reporting tolerance."""
        return self.spread <= 10 * tol


def qp_rotation_number(
    p: QpForcingParams, n_transient: int = N_TRANSIENT, n_iter: int = N_ITER
) -> QpRotation:
    rho, r1, r2, _, _ = _kernels.weighted_rotation(
        p.theta0, p.phi0, float(p.omega), float(p.k), float(p.eps), p.w, int(n_transient), int(n_iter)
    )
    return QpRotation(rho, r1, r2)


@dataclass(frozen=True)
class ResonanceTriple:
    p: int
    q: int
    r: int
    f1: float
    f2: float
    f3: float
    residual: float

    @property
    def order(self) -> int:
        return abs(self.p) + abs(self.q) + abs(self.r)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def predicted_f3(self, f1=None, f2=None) -> float:
        f1 = self.f1 if f1 is None else f1
        f2 = self.f2 if f2 is None else f2
        return (self.p * f1 + self.q * f2) / self.r


def resonance_residual(p: int, q: int, r: int, f1, f2, f3) -> float:
    """|p f1 + q f2 - r f3|, exact when every frequency is rational."""
    if all(isinstance(x, (int, Fraction)) for x in (f1, f2, f3)):
        return float(abs(p * Fraction(f1) + q * Fraction(f2) - r * Fraction(f3)))
    return abs(math.fsum((p * float(f1), q * float(f2), -r * float(f3))))


def identify_resonance(
    f1,
    f2,
    f3,
    max_order: int = 30,
    tol: float = 1e-6,
    two_frequency: bool = False,
) -> ResonanceTriple | None:
    """Lowest-order (p, q, r) with |p f1 + q f2 - r f3| < tol * f1.

    Every coefficient is bounded by ``max_order`` in absolute value and
    r > 0.  Ties on |p|+|q|+|r| go to smaller |r|, then smaller |q|, then
    smaller p and q.  For each (q, r) only the nearest integer p can
    qualify because tol < 1/2.  ``two_frequency`` pins q = 0, for a drive
    that is switched off.
    """
    if not f1 > 0:
        raise ValueError(f"f1 must be > 0, got {f1}")
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    if not 0 < tol < 0.5:
        raise ValueError(f"tol must lie in (0, 1/2), got {tol}")
    m = int(max_order)
    ff1, ff2, ff3 = float(f1), float(f2), float(f3)
    qs = np.array([0]) if two_frequency else np.arange(-m, m + 1)
    rs = np.arange(1, m + 1)
    Q, R = np.meshgrid(qs, rs, indexing="ij")
    Q, R = Q.ravel(), R.ravel()
    P = np.rint((R * ff3 - Q * ff2) / ff1).astype(np.int64)
    resid = np.abs(P * ff1 + Q * ff2 - R * ff3)
    g = np.gcd(np.gcd(np.abs(P), np.abs(Q)), R)
    ok = (np.abs(P) <= m) & (resid < tol * ff1) & (g == 1)
    if not ok.any():
        return None
    P, Q, R = P[ok], Q[ok], R[ok]
    order = np.abs(P) + np.abs(Q) + R
    # lexsort: last key is primary
    idx = np.lexsort((Q, P, np.abs(Q), R, order))[0]
    p, q, r = int(P[idx]), int(Q[idx]), int(R[idx])
    residual = resonance_residual(p, q, r, f1, f2, f3)
    if not residual < tol * ff1:  # independent re-check
        return None
    return ResonanceTriple(p, q, r, ff1, ff2, ff3, residual)


# --- staircase and ramps ------------------------------------------------------


@dataclass(frozen=True)
class QpStairPoint:
    omega: float
    f3: float
    resonance: ResonanceTriple | None
    resolved: bool


def three_freq_staircase(
    k: float = DEFAULT_K,
    eps: float = DEFAULT_EPS,
    omega_grid: Iterable[float] = (),
    f2=F2_DEFAULT,
    n_transient: int = N_TRANSIENT,
    n_iter: int = N_ITER,
    max_order: int = 30,
    tol: float = 1e-6,
    workers: int = 1,
) -> list[QpStairPoint]:
    """Response frequency f3 across omega, each point labeled against (1, f2)."""
    grid = [float(x) for x in omega_grid]

    def one(omega):
        rot = qp_rotation_number(QpForcingParams(omega, k, eps, f2), n_transient, n_iter)
        res = identify_resonance(1.0, f2, rot.f3, max_order, tol, two_frequency=eps == 0)
        return QpStairPoint(omega, rot.f3, res, rot.resolved())

    return _map(one, grid, workers)


@dataclass(frozen=True)
class QpPlateau:
    omega_lo: float
    omega_hi: float
    cells: int
    f3: float
    resonance: ResonanceTriple | None


def qp_plateaus(
    points: Sequence[QpStairPoint],
    f2=F2_DEFAULT,
    same_tol: float = 1e-9,
    max_order: int = 30,
    tol: float = 1e-6,
    two_frequency: bool = False,
) -> list[QpPlateau]:
    """Runs of consecutive points with equal f3, each labeled from its mean f3.

    Plateaus are found from f3 alone, independently of the per-point labels.
    """
    out = []
    run: list[QpStairPoint] = []

    def close_run():
        if len(run) > 1:
            f3 = math.fsum(p.f3 for p in run) / len(run)
            res = identify_resonance(1.0, f2, f3, max_order, tol, two_frequency)
            out.append(QpPlateau(run[0].omega, run[-1].omega, len(run), f3, res))

    for pt in points:
        if run and abs(pt.f3 - run[-1].f3) > same_tol:
            close_run()
            run = []
        run.append(pt)
    close_run()
    return out


@dataclass(frozen=True)
class RampCell:
    w: float
    omega: float
    f3: float
    resonance: ResonanceTriple | None
    resolved: bool

    @property
    def label(self) -> str:
        if not self.resolved:
            return "unresolved"
        if self.resonance is None:
            return "unlocked"
        return f"{self.resonance.p},{self.resonance.q},{self.resonance.r}"


def ramps_grid(
    w_range: tuple[float, float],
    omega_range: tuple[float, float],
    k: float = DEFAULT_K,
    eps: float = DEFAULT_EPS,
    n_w: int = 200,
    n_omega: int = 200,
    n_transient: int = N_TRANSIENT,
    n_iter: int = 10_000,
    max_order: int = 5,
    tol: float = 1e-6,
    workers: int = 1,
) -> list[RampCell]:
    """Resonance label for every (f2/f1, omega) cell, row-major in w.

    A cell whose two half-sample rotation numbers disagree by more than
    10 * tol is marked unresolved instead of labeled.
    """
    ws = np.linspace(w_range[0], w_range[1], n_w)
    omegas = np.linspace(omega_range[0], omega_range[1], n_omega)

    def row(w):
        w = float(w)
        wmod = w - math.floor(w)
        rot = _kernels.rotation_grid(omegas, float(k), float(eps), wmod, 0.0, 0.0, int(n_transient), int(n_iter))
        cells = []
        for om, (f3, r1, r2) in zip(omegas, rot):
            resolved = abs(r1 - r2) <= 10 * tol
            res = identify_resonance(1.0, w, f3, max_order, tol, two_frequency=eps == 0) if resolved else None
            cells.append(RampCell(w, float(om), float(f3), res, resolved))
        return cells

    rows = _map(row, list(ws), workers)
    return [c for r in rows for c in r]


# --- residue pitch --------------------------------------------------------------


@dataclass(frozen=True)
class PitchStimulus:
    """Three partials k*f0 + dw, (k+1)*f0 + dw, (k+2)*f0 + dw."""

    k: int
    f0: float
    dw: float = 0.0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"harmonic index k must be >= 1, got {self.k}")
        if not self.f0 > 0:
            raise ValueError(f"f0 must be > 0, got {self.f0}")
        if not self.partials[0] > 0:
            raise ValueError(f"shift {self.dw} makes the lowest partial non-positive")

    @property
    def partials(self) -> tuple:
        return tuple((self.k + i) * self.f0 + self.dw for i in range(3))

    @property
    def center(self):
        return (self.k + 1) * self.f0 + self.dw


@dataclass(frozen=True)
class PitchLine:
    k: int
    f0: float
    slope: Fraction
    intercept: float
    resonance: tuple[int, int, int]

    def pitch(self, dw):
        return self.intercept + self.slope * dw

    def pitch_at_center(self, f):
        """P as a function of the center frequency f = (k+1) f0 + dw."""
        return (2 * f - self.f0) / (2 * self.k + 1)


def pitch_shift_line(k: int, f0) -> PitchLine:
    """Resonance (1, 1, 2k+1) between the two lower partials and the pitch.

    P(dw) = (f1 + f2) / (2k+1) = f0 + 2 dw / (2k+1).
    """
    if k < 1:
        raise ValueError(f"harmonic index k must be >= 1, got {k}")
    if not f0 > 0:
        raise ValueError(f"f0 must be > 0, got {f0}")
    return PitchLine(k, f0, Fraction(2, 2 * k + 1), f0, (1, 1, 2 * k + 1))


@dataclass(frozen=True)
class PitchPrediction:
    pitch: float
    shift: float
    resonance: ResonanceTriple
    slope: Fraction
    center: float


def predicted_pitch(s: PitchStimulus) -> PitchPrediction:
    line = pitch_shift_line(s.k, s.f0)
    if all(isinstance(x, (int, Fraction)) for x in (s.f0, s.dw)):
        pitch = s.f0 + line.slope * Fraction(s.dw)
    else:
        pitch = s.f0 + float(line.slope) * s.dw
    f1, f2, _ = s.partials
    p, q, r = line.resonance
    res = ResonanceTriple(p, q, r, float(f1), float(f2), float(pitch), resonance_residual(p, q, r, f1, f2, pitch))
    return PitchPrediction(pitch, pitch - s.f0, res, line.slope, s.center)
