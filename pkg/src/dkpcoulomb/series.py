"""Series machinery around regular singular points.

Solutions near r=0 behave like r^a times an analytic factor, and near
infinity like e^{-b r}; this module peels those prefactors off, runs the
power-series recurrences, detects polynomial termination, and evaluates
confluent hypergeometric series. It also extracts Frobenius indices
numerically from an opaque RadialODE by extrapolating t*p(t) and t^2*q(t)
to the singular point, which is what the shooting oracle uses to launch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .radialeq import RadialODE

__all__ = [
    "SeriesSolution",
    "KummerParams",
    "jzero_indices",
    "jzero_recurrence",
    "jzero_termination_ratio",
    "jzero_nontermination_margin",
    "kummer_eval",
    "frobenius_indices",
    "singular_limits",
    "series_eval",
    "series_eval_with_derivs",
]

TERMINATION_RTOL = 1e-10


@dataclass(frozen=True)
class SeriesSolution:
    """Power-series factor F of a solution x^a e^{-b x} F(x).

    coeffs[0] is always 1. terminated_at = N means the recurrence produced a
    vanishing C_{N+1}; everything past N is stored as an exact zero.
    """

    exponent_a: float
    scale_b: float
    coeffs: np.ndarray
    terminated_at: Optional[int]
    label: str

    def __post_init__(self) -> None:
        if self.coeffs[0] != 1.0:
            raise ValueError("series is normalized to C_0 = 1")


@dataclass(frozen=True)
class KummerParams:
    """Parameters (A, C) of the confluent hypergeometric function M(A, C; x)."""

    A: float
    C: float

    def __post_init__(self) -> None:
        if self.C <= 0 and float(self.C).is_integer():
            raise ValueError(f"C must not be a non-positive integer, got {self.C}")


def jzero_indices(alpha: float, epsilon: float, mass: float = 1.0):
    """Frobenius exponent a and decay rate b of the j=0 equation in x.

    Upper-sign pair: a = (1 + sqrt(9 - 4 alpha^2))/2, b = sqrt(lambda^2 - 1).
    """
    if alpha >= 1.5:
        raise ValueError(
            f"alpha = {alpha} >= 3/2 makes the j=0 index imaginary"
        )
    if not 0.0 < epsilon < mass:
        raise ValueError("bound state requires 0 < epsilon < mass")
    a = 0.5 * (1.0 + math.sqrt(9.0 - 4.0 * alpha**2))
    lam = mass / epsilon
    b = math.sqrt(lam**2 - 1.0)
    return a, b


def jzero_recurrence(alpha: float, a: float, b: float, K: int) -> SeriesSolution:
    """Run the two-term j=0 recurrence up to degree K.

    C_{n+1} (n+1)(n+2a) = 2 [n b - (alpha - a b)] C_n, with C_0 = 1; the
    same line at n=0 fixes C_1 = -(alpha - a b)/a. Termination means the
    bracket n b - (alpha - a b) vanishes, so the test is scale-aware on the
    factor itself: any bound-state series has superexponentially decaying
    coefficients, and a smallness test on C_{n+1} alone would fire on every
    convergent tail eventually.
    """
    if K < 1:
        raise ValueError("K >= 1 required")
    coeffs = np.zeros(K + 1)
    coeffs[0] = 1.0
    terminated_at = None
    for n in range(K):
        factor = n * b - (alpha - a * b)
        if abs(factor) < TERMINATION_RTOL * (n * abs(b) + abs(alpha) + abs(a * b)):
            terminated_at = n
            break
        coeffs[n + 1] = 2.0 * factor * coeffs[n] / ((n + 1) * (n + 2 * a))
    return SeriesSolution(
        exponent_a=a, scale_b=b, coeffs=coeffs, terminated_at=terminated_at,
        label="jzero",
    )


def jzero_termination_ratio(alpha: float, a: float, b: float, N: int) -> float:
    """Raw |C_{N+1}| / max|C_k| of the j=0 recurrence, no tail clipping.

    ~1e-16 at a quantized energy standing in for exact zero; order-of-the-
    perturbation when the energy is detuned. This is the quantity the
    termination verdicts are made from.
    """
    if N < 0:
        raise ValueError("N >= 0 required")
    coeffs = np.zeros(N + 2)
    coeffs[0] = 1.0
    for n in range(N + 1):
        coeffs[n + 1] = (
            2.0 * (n * b - (alpha - a * b)) * coeffs[n] / ((n + 1) * (n + 2 * a))
        )
    return float(abs(coeffs[N + 1]) / np.max(np.abs(coeffs[: N + 1])))


def jzero_nontermination_margin(alpha: float, a: float, b: float, N: int) -> float:
    """Smallest successive-coefficient ratio |C_{n+1}/C_n| for n <= N+2.

    A two-term recurrence terminates exactly when one of its factors
    2[nb - (alpha - ab)] vanishes, so off quantization every successive
    ratio stays at the recurrence's own scale (~1e-4 and up for the detuned
    energies of interest) while a quantized ladder drops to roundoff at
    n = N. Normalizing against the running maximum instead would classify
    any decaying ladder as terminated, which says nothing.
    """
    if N < 0:
        raise ValueError("N >= 0 required")
    smallest = math.inf
    c = 1.0
    for n in range(N + 3):
        c_next = 2.0 * (n * b - (alpha - a * b)) * c / ((n + 1) * (n + 2 * a))
        if c == 0.0:
            return 0.0
        smallest = min(smallest, abs(c_next / c))
        c = c_next
    return smallest


def _kahan_sum(terms) -> float:
    total = 0.0
    comp = 0.0
    for t in terms:
        y = t - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return total


def kummer_eval(params: KummerParams, x: float, max_terms: int = 1000) -> float:
    """Confluent hypergeometric series M(A, C; x) = sum (A)_k/(C)_k x^k/k!.

    A = -n gives the exact degree-n polynomial (the Pochhammer factor hits
    zero). Summation is compensated; truncation stops once terms fall below
    the running scale for good.
    """
    terms = [1.0]
    term = 1.0
    scale = 1.0
    for k in range(max_terms):
        term *= (params.A + k) / (params.C + k) * x / (k + 1)
        if term == 0.0:
            break
        terms.append(term)
        scale = max(scale, abs(term))
        if abs(term) < 1e-18 * scale and k > 2:
            break
    return _kahan_sum(terms)


def series_eval(sol: SeriesSolution, x) -> np.ndarray:
    """Evaluate the full solution x^a e^{-b x} sum C_k x^k."""
    return series_eval_with_derivs(sol, x)[0]


def series_eval_with_derivs(sol: SeriesSolution, x):
    """Value and first two derivatives of x^a e^{-b x} F(x), analytically."""
    x = np.asarray(x, dtype=float)
    a, b = sol.exponent_a, sol.scale_b
    ks = np.arange(len(sol.coeffs))
    # compensated Horner is overkill; accumulate monomials with Kahan per point
    F = np.zeros_like(x)
    dF = np.zeros_like(x)
    d2F = np.zeros_like(x)
    flat = x.ravel()
    for i, xi in enumerate(flat):
        powers = xi**ks
        F.ravel()[i] = _kahan_sum(sol.coeffs * powers)
        dF.ravel()[i] = _kahan_sum(sol.coeffs[1:] * ks[1:] * powers[:-1])
        d2F.ravel()[i] = _kahan_sum(
            sol.coeffs[2:] * ks[2:] * (ks[2:] - 1) * powers[:-2]
        )
    pref = x**a * np.exp(-b * x)
    dpref = (a / x - b) * pref
    d2pref = (a * (a - 1) / x**2 - 2 * a * b / x + b**2) * pref
    f = pref * F
    df = dpref * F + pref * dF
    d2f = d2pref * F + 2 * dpref * dF + pref * d2F
    return f, df, d2f


def _limit_to_zero(func, t0: float, levels: int, ratio: float = 4.0):
    """Richardson limit of func(t) as t -> 0 along t_k = t0 / ratio^k.

    Assumes an expansion in integer powers of t. Returns (limit, spread)
    where spread bounds the last extrapolation update; raises if the raw
    sequence diverges (irregular singular point).
    """
    vals = [float(func(t0 / ratio**k)) for k in range(levels)]
    scale = abs(vals[0]) + 1.0
    if abs(vals[-1]) > 1e6 * scale:
        raise ValueError("no finite limit at the singular point (irregular)")
    table = list(vals)
    for j in range(1, levels):
        fac = ratio**j
        for k in range(levels - 1, j - 1, -1):
            table[k] = (fac * table[k] - table[k - 1]) / (fac - 1.0)
    spread = abs(table[-1] - table[-2]) if levels >= 2 else math.inf
    return table[-1], spread


def singular_limits(ode: RadialODE, t0: float = 1e-2, levels: int = 7):
    """Leading Laurent coefficients of p and q at the singular point 0.

    Returns (p_m1, p_0, q_m2, q_m1) for p = p_m1/t + p_0 + ... and
    q = q_m2/t^2 + q_m1/t + ..., extrapolated numerically from inside the
    domain (t < 0 for the x-form equations of the 6-component sector).
    Raises ValueError when the point is irregular.
    """
    sign = -1.0 if ode.domain[1] <= 0.0 else 1.0
    t0 = sign * t0
    p_m1, sp = _limit_to_zero(lambda t: t * ode.p(t), t0, levels)
    q_m2, sq = _limit_to_zero(lambda t: t * t * ode.q(t), t0, levels)
    if sp > 1e-6 * (abs(p_m1) + 1.0) or sq > 1e-6 * (abs(q_m2) + 1.0):
        raise ValueError("no finite limit at the singular point (irregular)")
    # subtracted limits are cancellation-prone at tiny t; stay at coarser t
    p_0, _ = _limit_to_zero(lambda t: ode.p(t) - p_m1 / t, t0, 4)
    q_m1, _ = _limit_to_zero(lambda t: t * (ode.q(t) - q_m2 / t**2), t0, 4)
    return p_m1, p_0, q_m2, q_m1


def frobenius_indices(ode: RadialODE):
    """Indicial roots at the origin, (index_minus, index_plus).

    Solves A(A-1) + p_m1 A + q_m2 = 0 with the Laurent coefficients
    extracted numerically; the plus root is the bound-state branch.
    """
    p_m1, _, q_m2, _ = singular_limits(ode)
    disc = (p_m1 - 1.0) ** 2 - 4.0 * q_m2
    if disc < 0.0:
        raise ValueError("complex Frobenius indices")
    root = math.sqrt(disc)
    return 0.5 * (1.0 - p_m1 - root), 0.5 * (1.0 - p_m1 + root)
