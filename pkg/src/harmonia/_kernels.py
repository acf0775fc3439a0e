"""Compiled inner loops for the circle-map family.

Phases are kept in [0, 1) and the lift is tracked through per-step
increments, so long orbits never accumulate large floats.  Rotation
numbers use the smooth-bump weighted Birkhoff average, which converges
far faster than the plain mean on periodic and quasiperiodic orbits.
"""

import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi


@njit(cache=True, nogil=True)
def _bump(t, n):
    s = (t + 1.0) / (n + 1.0)
    return math.exp(-1.0 / (s * (1.0 - s)))


@njit(cache=True, nogil=True)
def qp_increment(theta, phi, omega, k, eps):
    inc = omega + (k / TWO_PI) * math.sin(TWO_PI * theta)
    if eps != 0.0:
        inc += (eps / TWO_PI) * math.sin(TWO_PI * phi)
    return inc


@njit(cache=True, nogil=True)
def advance(theta, phi, omega, k, eps, w, n):
    """Iterate n steps; return (theta, phi, total lift displacement)."""
    disp = 0.0
    for _ in range(n):
        inc = qp_increment(theta, phi, omega, k, eps)
        disp += inc
        theta = theta + inc
        theta -= math.floor(theta)
        phi = phi + w
        phi -= math.floor(phi)
    return theta, phi, disp


@njit(cache=True, nogil=True)
def weighted_rotation(theta, phi, omega, k, eps, w, n_transient, n_iter):
    """Weighted rotation number over n_iter steps after n_transient.

    Returns (rho, rho_first_half, rho_second_half, theta_end, phi_end).
    Each half carries its own bump weight, so the halves are independent
    estimates of the same quantity.
    """
    theta, phi, _ = advance(theta, phi, omega, k, eps, w, n_transient)
    half = n_iter // 2
    rest = n_iter - half
    num = 0.0
    den = 0.0
    num1 = 0.0
    den1 = 0.0
    num2 = 0.0
    den2 = 0.0
    for t in range(n_iter):
        inc = qp_increment(theta, phi, omega, k, eps)
        wt = _bump(t, n_iter)
        num += wt * inc
        den += wt
        if t < half:
            wh = _bump(t, half)
            num1 += wh * inc
            den1 += wh
        else:
            wh = _bump(t - half, rest)
            num2 += wh * inc
            den2 += wh
        theta = theta + inc
        theta -= math.floor(theta)
        phi = phi + w
        phi -= math.floor(phi)
    return num / den, num1 / den1, num2 / den2, theta, phi


@njit(cache=True, nogil=True)
def rotation_grid(omegas, k, eps, w, theta0, phi0, n_transient, n_iter):
    out = np.empty((omegas.shape[0], 3))
    for i in range(omegas.shape[0]):
        r, r1, r2, _, _ = weighted_rotation(
            theta0, phi0, omegas[i], k, eps, w, n_transient, n_iter
        )
        out[i, 0] = r
        out[i, 1] = r1
        out[i, 2] = r2
    return out
