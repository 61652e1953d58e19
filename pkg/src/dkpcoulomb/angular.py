"""Wigner d-functions and the angular structure behind the radial reduction.

The angular dependence of every field component is carried by
D_sigma = d^j_{-m,sigma}(theta), sigma in {0, +1, -1} (with sigma = +-2
appearing only inside the recurrence identities). This module evaluates the
d-functions from the explicit factorial-sum formula, verifies the six
derivative/weight recurrences that make the radial separation work, and
exposes the parity tie sets that split the ten radial functions into the
4-component and 6-component sectors.

Angular coefficients here use nu_angular = sqrt(j(j+1)) and
a = sqrt((j-1)(j+2)); the radial modules use nu_radial = sqrt(j(j+1)/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import ParitySign

__all__ = [
    "WignerIndex",
    "ParityConstraint",
    "wigner_small_d",
    "wigner_small_d_dtheta",
    "verify_recurrences",
    "unitarity_defect",
    "parity_constraints",
    "parity_block",
    "COMPONENT_NAMES",
]

COMPONENT_NAMES = (
    "Phi0", "Phi1", "Phi2", "Phi3",
    "E1", "E2", "E3",
    "H1", "H2", "H3",
)


@dataclass(frozen=True)
class WignerIndex:
    """Index triple (j, m, sigma) of a D_sigma = d^j_{-m,sigma} symbol."""

    j: int
    m: int
    sigma: int

    def __post_init__(self) -> None:
        if not (isinstance(self.j, int) and self.j >= 0):
            raise ValueError(f"j must be a non-negative integer, got {self.j!r}")
        if abs(self.m) > self.j:
            raise ValueError(f"|m| <= j required, got m={self.m}, j={self.j}")
        if abs(self.sigma) > 2:
            raise ValueError(f"sigma in {{-2..2}} required, got {self.sigma}")


def _lfact(n: int) -> float:
    return math.lgamma(n + 1)


def _d_terms(j: int, mp: int, mm: int):
    """Yield (sign, log_magnitude, cos_power, sin_power) of each sum term
    of d^j_{mp,mm}; powers refer to cos(theta/2) and sin(theta/2)."""
    pref = 0.5 * (
        _lfact(j + mp) + _lfact(j - mp) + _lfact(j + mm) + _lfact(j - mm)
    )
    for s in range(max(0, mm - mp), min(j + mm, j - mp) + 1):
        sign = -1.0 if (mp - mm + s) % 2 else 1.0
        mag = pref - (
            _lfact(j + mm - s) + _lfact(s) + _lfact(mp - mm + s) + _lfact(j - mp - s)
        )
        yield sign, mag, 2 * j + mm - mp - 2 * s, mp - mm + 2 * s


def _small_d(j: int, mp: int, mm: int, theta: float) -> float:
    if abs(mp) > j or abs(mm) > j:
        return 0.0
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    total = 0.0
    for sign, mag, pc, ps in _d_terms(j, mp, mm):
        total += sign * math.exp(mag) * c**pc * s**ps
    return total


def _small_d_dtheta(j: int, mp: int, mm: int, theta: float) -> float:
    """theta-derivative of d^j_{mp,mm}, term by term in closed form.

    Independent of the recurrence identities, so it can serve as one side of
    their verification.
    """
    if abs(mp) > j or abs(mm) > j:
        return 0.0
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    total = 0.0
    for sign, mag, pc, ps in _d_terms(j, mp, mm):
        d_term = 0.0
        if ps > 0:
            d_term += 0.5 * ps * c ** (pc + 1) * s ** (ps - 1)
        if pc > 0:
            d_term -= 0.5 * pc * c ** (pc - 1) * s ** (ps + 1)
        total += sign * math.exp(mag) * d_term
    return total


def wigner_small_d(idx: WignerIndex, theta: float) -> float:
    """Evaluate D_sigma = d^j_{-m,sigma}(theta).

    Returns 0 when |sigma| > j (the symbol does not exist in that
    representation).
    """
    return _small_d(idx.j, -idx.m, idx.sigma, theta)


def wigner_small_d_dtheta(idx: WignerIndex, theta: float) -> float:
    """theta-derivative of D_sigma = d^j_{-m,sigma}(theta)."""
    return _small_d_dtheta(idx.j, -idx.m, idx.sigma, theta)


def verify_recurrences(j: int, theta_grid) -> float:
    """Worst absolute residual of the six D_sigma identities.

    Checked over every m in [-j, j] and every grid angle. The grid must stay
    away from theta = 0 and pi where the 1/sin(theta) weights blow up.
    """
    if j < 1:
        raise ValueError("recurrence identities need j >= 1")
    nu = math.sqrt(j * (j + 1))
    a = math.sqrt((j - 1) * (j + 2)) if j >= 1 else 0.0
    worst = 0.0
    for m in range(-j, j + 1):
        mp = -m
        for theta in np.atleast_1d(theta_grid):
            theta = float(theta)
            sin_t = math.sin(theta)
            cos_t = math.cos(theta)
            d = {sig: _small_d(j, mp, sig, theta) for sig in (-2, -1, 0, 1, 2)}
            dth = {sig: _small_d_dtheta(j, mp, sig, theta) for sig in (-1, 0, 1)}
            residuals = (
                dth[-1] - 0.5 * (a * d[-2] - nu * d[0]),
                (m - cos_t) / sin_t * d[-1] - 0.5 * (a * d[-2] + nu * d[0]),
                dth[0] - 0.5 * (nu * d[-1] - nu * d[+1]),
                m / sin_t * d[0] - 0.5 * nu * (d[-1] + d[+1]),
                dth[+1] - 0.5 * (nu * d[0] - a * d[+2]),
                (m + cos_t) / sin_t * d[+1] - 0.5 * (nu * d[0] + a * d[+2]),
            )
            worst = max(worst, max(abs(x) for x in residuals))
    return worst


def unitarity_defect(j: int, m: int, theta: float) -> float:
    """|1 - sum_sigma d^j_{-m,sigma}(theta)^2| over the full row sigma in [-j, j].

    The row-orthonormality of the rotation matrix; a direct check that the
    factorial-sum evaluation stays sane at larger j.
    """
    if abs(m) > j:
        raise ValueError(f"|m| <= j required, got m={m}, j={j}")
    total = math.fsum(
        _small_d(j, -m, sig, theta) ** 2 for sig in range(-j, j + 1)
    )
    return abs(1.0 - total)


@dataclass(frozen=True)
class ParityConstraint:
    """Linear ties among the ten radial functions in one parity sector.

    relations is a tuple of (target, coefficient, source); source None means
    the target component vanishes identically. Components absent from any
    relation are the free radial functions of the sector.
    """

    parity: ParitySign
    j: int
    relations: tuple

    @property
    def zeroed(self) -> tuple:
        return tuple(t for t, _, s in self.relations if s is None)

    @property
    def free_components(self) -> tuple:
        tied = {t for t, _, _ in self.relations}
        return tuple(c for c in COMPONENT_NAMES if c not in tied)


def parity_constraints(parity: ParitySign, j: int) -> ParityConstraint:
    """Tie set of the requested parity sector.

    P=(-1)^(j+1) keeps (Phi1, E1, H1, H2); P=(-1)^j keeps
    (Phi0, Phi1, Phi2, E1, E2, H1). At j=0 only the sigma=0 channel exists
    and the surviving trio is (Phi0, Phi2, E2) with H2 = 0.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    if j == 0:
        if parity is ParitySign.MINUS_TO_J:
            raise ValueError("j=0 only exists in the P=(-1)^(j+1) sector")
        relations = tuple(
            (name, 0.0, None)
            for name in ("Phi1", "Phi3", "E1", "E3", "H1", "H3", "H2")
        )
        return ParityConstraint(parity=parity, j=j, relations=relations)
    if parity is ParitySign.MINUS_TO_J_PLUS_1:
        relations = (
            ("Phi0", 0.0, None),
            ("Phi2", 0.0, None),
            ("E2", 0.0, None),
            ("Phi3", -1.0, "Phi1"),
            ("E3", -1.0, "E1"),
            ("H3", 1.0, "H1"),
        )
    else:
        relations = (
            ("Phi3", 1.0, "Phi1"),
            ("E3", 1.0, "E1"),
            ("H3", -1.0, "H1"),
            ("H2", 0.0, None),
        )
    return ParityConstraint(parity=parity, j=j, relations=relations)


def parity_block() -> np.ndarray:
    """The 3x3 block of the inversion operator acting on vector components."""
    return np.array([[0, 0, -1], [0, -1, 0], [-1, 0, 0]], dtype=int)
