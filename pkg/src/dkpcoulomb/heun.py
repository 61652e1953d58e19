"""Confluent-Heun reduction of the 6-component master equation.

Peeling x^A e^{Bx} off the regular solution of the x-form master equation
leaves an equation of confluent Heun type. This module carries the peel
parameters, the map onto the canonical parameter set (a, b, c, d, h), the
local power series at x = 0, and the polynomial-termination residual whose
zeros are the closed-form energy levels.

The termination condition is applied with the sign that the energy formula
actually satisfies: d - a(n + (b+c+2)/2) vanishes on the closed-form levels
(the opposite sign vanishes nowhere on 0 < epsilon < M).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import CoulombParams, EnergyParams
from .series import SeriesSolution

__all__ = [
    "HeunCanonical",
    "map_to_heun",
    "heun_local_series",
    "physical_series",
    "polynomial_condition_residual",
    "tail_ratio",
    "pre_canonical_coefficients",
    "canonical_coefficients",
]


@dataclass(frozen=True)
class HeunCanonical:
    """Canonical confluent-Heun parameters (a, b, c, d, h).

    The peel exponents are recovered as A = b/2 - 1 (power of x at the
    origin) and B = a/2 (exponential rate); d/2 is the squared Coulomb
    strength Lambda^2 in the x variable.
    """

    a: float
    b: float
    c: float
    d: float
    h: float

    @property
    def A(self) -> float:
        return 0.5 * self.b - 1.0

    @property
    def B(self) -> float:
        return 0.5 * self.a

    @property
    def Lambda2(self) -> float:
        return 0.5 * self.d


def map_to_heun(params: CoulombParams, energy: EnergyParams) -> HeunCanonical:
    """Canonical parameters of the peeled master equation at given energy.

    A = -1 + sqrt(1 + 2 nu^2 + alpha^2) picks the regular branch at x = 0;
    B = sqrt(Lambda^2 - alpha^2) picks decay at infinity, which needs
    Lambda^2 > alpha^2 (automatic for a bound energy, spoiled only by
    degenerate inputs).
    """
    if params.j < 1:
        raise ValueError("the 6-component sector needs j >= 1")
    nu2 = params.j * (params.j + 1) / 2.0
    under = energy.Lambda2 - params.alpha**2
    if under <= 0.0:
        raise ValueError(
            f"Lambda^2 = {energy.Lambda2} must exceed alpha^2 = {params.alpha**2}"
        )
    A = -1.0 + math.sqrt(1.0 + 2.0 * nu2 + params.alpha**2)
    B = math.sqrt(under)
    return HeunCanonical(
        a=2.0 * B,
        b=2.0 * A + 2.0,
        c=-2.0,
        d=2.0 * energy.Lambda2,
        h=2.0,
    )


def pre_canonical_coefficients(hc: HeunCanonical):
    """(p, q) of the peeled equation written with the S/x + T/(1-x) split."""
    A, B, L2 = hc.A, hc.B, hc.Lambda2
    S = 2.0 * A * B + A + 3.0 * B
    T = A + B - 2.0 * L2

    def p(x):
        x = np.asarray(x, dtype=float)
        return 2.0 * B + (2.0 * A + 3.0) / x - 1.0 / (x - 1.0)

    def q(x):
        x = np.asarray(x, dtype=float)
        return S / x + T / (1.0 - x)

    return p, q


def canonical_coefficients(hc: HeunCanonical):
    """(p, q) in the canonical (a, b, c, d, h) form; must agree with
    pre_canonical_coefficients everywhere."""
    a, b, c, d, h = hc.a, hc.b, hc.c, hc.d, hc.h

    def p(x):
        x = np.asarray(x, dtype=float)
        return a + (b + 1.0) / x + (c + 1.0) / (x - 1.0)

    def q(x):
        x = np.asarray(x, dtype=float)
        num = (-2.0 * d + a * (-b - c - 2.0)) * x + a * (1.0 + b) + b * (-1.0 - c) - c - 2.0 * h
        return -num / (2.0 * x * (x - 1.0))

    return p, q


def heun_local_series(hc: HeunCanonical, K: int) -> SeriesSolution:
    """Power-series factor f(x) = sum f_k x^k of the regular solution at 0.

    Three-term recurrence
        f_{k+1} = {[k(k + 2A + 1 - 2B) - S] f_k + [2B(k + A) + 2 Lambda^2] f_{k-1}}
                  / ((k + 1)(k + 2A + 3)),
    f_0 = 1, f_1 = -S/(2A + 3). The f_{k-1} weight 2B(k + A) + 2 Lambda^2 is
    strictly positive for a bound energy, so the series never truly
    terminates; terminated_at stays None by construction.
    """
    if K < 2:
        raise ValueError("K >= 2 required")
    A, B, L2 = hc.A, hc.B, hc.Lambda2
    S = 2.0 * A * B + A + 3.0 * B
    if abs(2.0 * A + 3.0) < 1e-12 or (
        2.0 * A + 3.0 < 0.0 and abs((2.0 * A + 3.0) - round(2.0 * A + 3.0)) < 1e-12
    ):
        raise ValueError("resonant index: 2A + 3 is a non-positive integer")
    coeffs = np.zeros(K + 1)
    coeffs[0] = 1.0
    coeffs[1] = -S / (2.0 * A + 3.0)
    for k in range(1, K):
        numer = (k * (k + 2.0 * A + 1.0 - 2.0 * B) - S) * coeffs[k] + (
            2.0 * B * (k + A) + 2.0 * L2
        ) * coeffs[k - 1]
        coeffs[k + 1] = numer / ((k + 1.0) * (k + 2.0 * A + 3.0))
    return SeriesSolution(
        exponent_a=A, scale_b=-B, coeffs=coeffs, terminated_at=None, label="heun",
    )


def physical_series(hc: HeunCanonical, K: int) -> SeriesSolution:
    """Same solution on the positive half-line xi = -x = (epsilon/alpha) r.

    Phi0(xi) = xi^A e^{-B xi} sum f_k (-xi)^k, directly evaluable with
    series_eval on the physical domain.
    """
    local = heun_local_series(hc, K)
    signs = np.where(np.arange(K + 1) % 2 == 0, 1.0, -1.0)
    return SeriesSolution(
        exponent_a=hc.A,
        scale_b=hc.B,
        coeffs=local.coeffs * signs,
        terminated_at=None,
        label="heun-physical",
    )


def polynomial_condition_residual(hc: HeunCanonical, n: int) -> float:
    """Termination residual d - a(n + (b+c+2)/2) at candidate degree n.

    Zero exactly on the closed-form levels Lambda^2 = B(n + A + 1).
    """
    if n < 0:
        raise ValueError("n >= 0 required")
    return hc.d - hc.a * (n + 0.5 * (hc.b + hc.c + 2.0))


def tail_ratio(sol: SeriesSolution, n: int) -> float:
    """Largest |coefficient| beyond degree n over the largest up to n.

    An honestly terminating series gives ~0 here; the bound-state series of
    this sector does not, which is the quantitative content of the
    no-true-termination statement.
    """
    head = np.max(np.abs(sol.coeffs[: n + 1]))
    if n + 1 >= len(sol.coeffs):
        raise ValueError("series too short to inspect the tail")
    tail = np.max(np.abs(sol.coeffs[n + 1 :]))
    return float(tail / head)
