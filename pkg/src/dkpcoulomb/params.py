"""Parameter containers shared by every other module.

Units: everything is dimensionless. Energies are measured in units of the
mass parameter M (default 1), so bound states live in 0 < epsilon < M and
spectra are reported as E/mc^2. The coupling alpha is the fine-structure-like
combination of the source charge; j is the total angular momentum.

Two distinct nu symbols appear in the radial reduction and must never be
mixed: nu_radial = sqrt(j(j+1)/2) multiplies the 1/r couplings of the radial
systems, while nu_angular = sqrt(j(j+1)) appears in the angular recurrence
identities.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

__all__ = [
    "CouplingStrengthWarning",
    "ParitySign",
    "CoulombParams",
    "EnergyParams",
    "derived_nu",
    "to_energy_params",
]


class CouplingStrengthWarning(UserWarning):
    """Coupling strong enough that some closed-form roots turn imaginary."""


class ParitySign(enum.Enum):
    """Parity eigenvalue convention: P = (-1)^(j+1) or P = (-1)^j."""

    MINUS_TO_J_PLUS_1 = "(-1)^(j+1)"
    MINUS_TO_J = "(-1)^j"


@dataclass(frozen=True)
class CoulombParams:
    """Static problem parameters: coupling, angular momentum, parity sector.

    j = 0 exists only in the P = (-1)^(j+1) sector; the six-component sector
    needs the sigma = +-1 angular channels, which vanish identically at j = 0.
    """

    alpha: float
    j: int
    parity: ParitySign = ParitySign.MINUS_TO_J
    mass: float = 1.0

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha}")
        if not (isinstance(self.j, int) and self.j >= 0):
            raise ValueError(f"j must be a non-negative integer, got {self.j!r}")
        if not (self.mass > 0.0 and math.isfinite(self.mass)):
            raise ValueError(f"mass must be positive and finite, got {self.mass}")
        if self.j == 0 and self.parity is ParitySign.MINUS_TO_J:
            raise ValueError("j=0 only exists in the P=(-1)^(j+1) sector")
        if self.alpha >= 1.5:
            warnings.warn(
                f"alpha={self.alpha} >= 1.5: the j=0 index sqrt(9-4*alpha^2) "
                "turns imaginary",
                CouplingStrengthWarning,
                stacklevel=2,
            )
        if self.alpha > self.j + 0.5:
            warnings.warn(
                f"alpha={self.alpha} > j+1/2={self.j + 0.5}: the scalar-like "
                "effective index turns imaginary",
                CouplingStrengthWarning,
                stacklevel=2,
            )

    @property
    def nu_radial(self) -> float:
        """sqrt(j(j+1)/2), the coupling constant of the radial systems."""
        return math.sqrt(self.j * (self.j + 1) / 2.0)

    @property
    def nu_angular(self) -> float:
        """sqrt(j(j+1)), the coefficient in the angular recurrences."""
        return math.sqrt(self.j * (self.j + 1))


def derived_nu(params: CoulombParams) -> float:
    """The nu of the radial systems, sqrt(j(j+1)/2)."""
    return params.nu_radial


@dataclass(frozen=True)
class EnergyParams:
    """Energy-dependent dimensionless combinations for a bound state.

    lam = M/epsilon > 1 and Lambda2 = alpha^2 * lam^2; both recur throughout
    the dimensionless forms of the radial equations.
    """

    epsilon: float
    lam: float
    Lambda2: float


def to_energy_params(params: CoulombParams, epsilon: float) -> EnergyParams:
    """Package epsilon with its derived lam and Lambda2.

    Rejects energies outside the bound-state window 0 < epsilon < mass.
    """
    if not (0.0 < epsilon < params.mass):
        raise ValueError(
            f"bound states need 0 < epsilon < {params.mass}, got {epsilon}"
        )
    lam = params.mass / epsilon
    return EnergyParams(epsilon=epsilon, lam=lam, Lambda2=params.alpha**2 * lam**2)
