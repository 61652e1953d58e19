"""Closed-form bound-state spectra of the three exactly solvable branches.

Every branch ends up hydrogen-like in an effective principal quantum number
N: the scalar-like channel with N = n + 1/2 + sqrt((j+1/2)^2 - alpha^2), the
j=0 trio with N = n + (1 + sqrt(9 - 4 alpha^2))/2, and the 6-component
channel through the quartic E^4 N^2-ish relation solved here in its stable
square-root form. Energies are returned as epsilon/mc^2 in (0, 1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "Branch",
    "EnergyLevel",
    "spectrum_scalar_like",
    "spectrum_jzero",
    "spectrum_heun",
    "heun_energy_from_neff",
    "nonrel_limit",
]


class Branch(enum.Enum):
    SCALAR_LIKE = "scalar-like"
    JZERO = "jzero"
    HEUN = "heun"
    NONREL_MINUS = "nonrel-minus"
    NONREL_PLUS = "nonrel-plus"


@dataclass(frozen=True)
class EnergyLevel:
    """One bound level: branch, quantum numbers, epsilon/mc^2, effective N.

    The nonrel branches store the binding energy epsilon'/mc^2 (negative) in
    e_over_mc2; the relativistic branches store the total epsilon/mc^2.
    """

    branch: Branch
    n: int
    j: int
    e_over_mc2: float
    n_effective: float
    alpha: float
    mass: float = 1.0


def _check_n(n: int) -> None:
    if not (isinstance(n, int) and n >= 0):
        raise ValueError(f"n must be a non-negative integer, got {n!r}")


def spectrum_scalar_like(alpha: float, j: int, n: int, mass: float = 1.0) -> EnergyLevel:
    """Level of the scalar-like channel, any j >= 0.

    E/mc^2 = [1 + alpha^2 / N^2]^{-1/2}, N = n + 1/2 + sqrt((j+1/2)^2 - alpha^2).
    """
    _check_n(n)
    if j < 0:
        raise ValueError("j >= 0 required")
    under = (j + 0.5) ** 2 - alpha**2
    if under <= 0.0:
        raise ValueError(
            f"alpha = {alpha} >= j + 1/2 collapses the scalar-like level"
        )
    n_eff = n + 0.5 + math.sqrt(under)
    e = 1.0 / math.sqrt(1.0 + alpha**2 / n_eff**2)
    return EnergyLevel(Branch.SCALAR_LIKE, n, j, e, n_eff, alpha, mass)


def spectrum_jzero(alpha: float, n: int, mass: float = 1.0) -> EnergyLevel:
    """Level of the j=0 trio.

    N_eff = n + Gamma with Gamma = (1 + sqrt(9 - 4 alpha^2))/2; the energy is
    hydrogen-like in N_eff. alpha < 3/2 keeps Gamma real.
    """
    _check_n(n)
    if alpha >= 1.5:
        raise ValueError(f"alpha = {alpha} >= 3/2 makes the j=0 index imaginary")
    gamma = 0.5 * (1.0 + math.sqrt(9.0 - 4.0 * alpha**2))
    n_eff = n + gamma
    e = 1.0 / math.sqrt(1.0 + alpha**2 / n_eff**2)
    return EnergyLevel(Branch.JZERO, n, 0, e, n_eff, alpha, mass)


def heun_energy_from_neff(alpha: float, n_eff: float) -> float:
    """E/mc^2 of the 6-component channel at effective quantum number N.

    The level condition closes to E^2 = (1 + sqrt(1 - 4 alpha^2 / N^2))/2,
    the root continuously connected to E -> 1 as N -> infinity.
    """
    under = 1.0 - 4.0 * alpha**2 / n_eff**2
    if under <= 0.0:
        raise ValueError(f"N = {n_eff} <= 2 alpha leaves no real level")
    return math.sqrt(0.5 * (1.0 + math.sqrt(under)))


def spectrum_heun(alpha: float, j: int, n: int, mass: float = 1.0) -> EnergyLevel:
    """Level of the 6-component channel, j >= 1 only.

    N = n + sqrt(1 + j(j+1) + alpha^2) (the origin exponent shifted by one),
    then the stable closed form of heun_energy_from_neff.
    """
    _check_n(n)
    if j < 1:
        raise ValueError("the 6-component sector needs j >= 1")
    n_eff = n + math.sqrt(1.0 + j * (j + 1) + alpha**2)
    e = heun_energy_from_neff(alpha, n_eff)
    return EnergyLevel(Branch.HEUN, n, j, e, n_eff, alpha, mass)


def nonrel_limit(level: EnergyLevel) -> float:
    """Leading binding energy -alpha^2 / (2 N^2) at the level's effective N.

    For the relativistic branches this is the quantity E/mc^2 - 1 tends to;
    for the nonrel branches it is the level itself.
    """
    return -level.alpha**2 / (2.0 * level.n_effective**2)
