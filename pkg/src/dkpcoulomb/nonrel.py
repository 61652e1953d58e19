"""Non-relativistic reduction: big/small split, decoupling, Coulomb towers.

In the weak-binding regime the ten radial functions collapse onto "big"
combinations B = (Phi - Ebar)/2 obeying Schroedinger-type equations. The
4-component sector gives a single hydrogen-like equation; the 6-component
sector gives a 2x2 coupled system whose constant matrix K diagonalizes into
two channels with shifted centrifugal indices nu_eff = j-1 and j+1. Each
channel reduces to Kummer's equation and quantizes at
epsilon = -alpha^2 M / (2 (1 + nu_eff + n)^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .params import CoulombParams
from .radialeq import ODELabel, RadialODE, SingularPoint
from .series import KummerParams, kummer_eval
from .spectra import Branch, EnergyLevel

__all__ = [
    "BigSmallSplit",
    "DiagonalizedSystem",
    "KummerReduction",
    "big_small_split",
    "nonrel_big_equation",
    "nonrel_effective_equation",
    "coupled_residual",
    "diagonalize_coupled",
    "nonrel_spectrum",
    "kummer_reduction",
]


@dataclass(frozen=True)
class BigSmallSplit:
    """Big and small combinations of (Phi_i, Ebar_i) pairs.

    big = ((Phi1 - Ebar1)/2, (Phi2 - Ebar2)/2) and small the + combinations;
    the small pair is suppressed by the binding in the weak-coupling regime.
    """

    big: tuple
    small: tuple


def big_small_split(phi1, ebar1, phi2, ebar2) -> BigSmallSplit:
    phi1, ebar1, phi2, ebar2 = map(np.asarray, (phi1, ebar1, phi2, ebar2))
    return BigSmallSplit(
        big=((phi1 - ebar1) / 2.0, (phi2 - ebar2) / 2.0),
        small=((phi1 + ebar1) / 2.0, (phi2 + ebar2) / 2.0),
    )


def _check_nonrel_energy(epsilon: float) -> None:
    if epsilon >= 0.0:
        raise ValueError(f"non-relativistic bound energy must be < 0, got {epsilon}")


def nonrel_big_equation(params: CoulombParams, epsilon: float) -> RadialODE:
    """Big-component equation of the 4-component sector.

    u'' + (2/r) u' + [2M(epsilon + alpha/r) - j(j+1)/r^2] u = 0; epsilon is
    the binding energy (negative).
    """
    if params.j < 1:
        raise ValueError("the 4-component sector needs j >= 1")
    _check_nonrel_energy(epsilon)
    alpha, j, M = params.alpha, params.j, params.mass

    def p(r):
        r = np.asarray(r, dtype=float)
        return 2.0 / r

    def q(r):
        r = np.asarray(r, dtype=float)
        return 2.0 * M * (epsilon + alpha / r) - j * (j + 1) / r**2

    return RadialODE(
        label=ODELabel.NONREL_BIG,
        p=p,
        q=q,
        singular_points=(SingularPoint(0.0, "regular"),),
        domain=(0.0, math.inf),
    )


def nonrel_effective_equation(
    alpha: float, M: float, nu_eff: float, epsilon: float
) -> RadialODE:
    """Decoupled channel equation with centrifugal index nu_eff."""
    if nu_eff < 0:
        raise ValueError("nu_eff >= 0 required")
    _check_nonrel_energy(epsilon)

    def p(r):
        r = np.asarray(r, dtype=float)
        return 2.0 / r

    def q(r):
        r = np.asarray(r, dtype=float)
        return 2.0 * M * (epsilon + alpha / r) - nu_eff * (nu_eff + 1.0) / r**2

    return RadialODE(
        label=ODELabel.NONREL_EFF,
        p=p,
        q=q,
        singular_points=(SingularPoint(0.0, "regular"),),
        domain=(0.0, math.inf),
    )


def coupled_residual(params: CoulombParams, epsilon: float, r, B, dB, d2B):
    """Residual (1/2) r^2 Delta B - K B of the coupled big-component system.

    B, dB, d2B are shape (2, npts) samples of (B1, B2) and derivatives;
    Delta = d^2 + (2/r) d + 2M(epsilon + alpha/r) - 2 nu^2 / r^2 and
    K = [[0, nu], [2 nu, 1]] with nu = sqrt(j(j+1)/2).
    """
    r = np.asarray(r, dtype=float)
    B, dB, d2B = (np.asarray(x, dtype=float) for x in (B, dB, d2B))
    alpha, M = params.alpha, params.mass
    nu = params.nu_radial
    delta = d2B + (2.0 / r) * dB + (
        2.0 * M * (epsilon + alpha / r) - 2.0 * nu**2 / r**2
    ) * B
    KB = np.stack([nu * B[1], 2.0 * nu * B[0] + B[1]])
    return 0.5 * r**2 * delta - KB


@dataclass(frozen=True)
class DiagonalizedSystem:
    """Eigen-decomposition of the coupling matrix K.

    eigenvalues = (j+1, -j); transform rows are left eigenvectors
    (1, lambda/(2 nu)); decoupled_nu lists the shifted centrifugal indices
    in increasing order (j-1, j+1). The pairing runs through the identity
    nu_eff (nu_eff + 1) = 2 nu^2 + 2 lambda, so eigenvalue j+1 pairs with
    nu_eff = j+1 and eigenvalue -j with nu_eff = j-1.
    """

    eigenvalues: tuple
    transform: np.ndarray
    decoupled_nu: tuple
    j: int

    def nu_for_eigenvalue(self, lam: float) -> float:
        nu2 = self.j * (self.j + 1) / 2.0
        shifted = 2.0 * nu2 + 2.0 * lam
        return 0.5 * (-1.0 + math.sqrt(1.0 + 4.0 * shifted))


def diagonalize_coupled(params: CoulombParams) -> DiagonalizedSystem:
    """Left eigen-decomposition of K = [[0, nu], [2 nu, 1]]."""
    j = params.j
    if j < 1:
        raise ValueError("the coupled system needs j >= 1")
    nu = params.nu_radial
    lam1, lam2 = float(j + 1), float(-j)
    transform = np.array([
        [1.0, lam1 / (2.0 * nu)],
        [1.0, lam2 / (2.0 * nu)],
    ])
    return DiagonalizedSystem(
        eigenvalues=(lam1, lam2),
        transform=transform,
        decoupled_nu=(float(j - 1), float(j + 1)),
        j=j,
    )


def nonrel_spectrum(
    alpha: float,
    M: float,
    nu_eff: float,
    n: int,
    j: Optional[int] = None,
    branch: Optional[Branch] = None,
) -> EnergyLevel:
    """Level epsilon/M = -alpha^2 / (2 (1 + nu_eff + n)^2) of one channel.

    e_over_mc2 stores the (negative) binding energy in units of M. When j is
    omitted it is inferred from nu_eff through the default branch pairing
    nu_eff = j - 1.
    """
    if not (isinstance(n, int) and n >= 0):
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if nu_eff < 0:
        raise ValueError("nu_eff >= 0 required")
    if branch is None:
        branch = Branch.NONREL_MINUS
    if branch not in (Branch.NONREL_MINUS, Branch.NONREL_PLUS):
        raise ValueError(f"not a non-relativistic branch: {branch}")
    if j is None:
        j = int(round(nu_eff)) + 1 if branch is Branch.NONREL_MINUS else int(round(nu_eff)) - 1
    n_eff = 1.0 + nu_eff + n
    e = -(alpha**2) / (2.0 * n_eff**2)
    return EnergyLevel(branch, n, j, e, n_eff, alpha, M)


@dataclass(frozen=True)
class KummerReduction:
    """Channel solution f(r) = x^nu_eff e^{-x/2} M(A, C; x), x = scale * r."""

    kummer: KummerParams
    scale: float
    nu_eff: float

    def evaluate(self, r, max_terms: int = 1000) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        out = np.empty_like(r)
        flat_r = r.ravel()
        flat_o = out.ravel()
        for i, ri in enumerate(flat_r):
            x = self.scale * ri
            flat_o[i] = x**self.nu_eff * math.exp(-0.5 * x) * kummer_eval(
                self.kummer, x, max_terms
            )
        return out


def kummer_reduction(alpha: float, M: float, epsilon: float, nu_eff: float) -> KummerReduction:
    """Kummer parameters of one decoupled channel at energy epsilon.

    A = 1 + nu_eff - alpha M / kappa with kappa = sqrt(-2 M epsilon) and
    C = 2 nu_eff + 2; A hitting a non-positive integer -n is exactly the
    quantization condition of nonrel_spectrum.
    """
    _check_nonrel_energy(epsilon)
    if nu_eff < 0:
        raise ValueError("nu_eff >= 0 required")
    kappa = math.sqrt(-2.0 * M * epsilon)
    A = 1.0 + nu_eff - alpha * M / kappa
    C = 2.0 * nu_eff + 2.0
    return KummerReduction(
        kummer=KummerParams(A=A, C=C), scale=2.0 * kappa, nu_eff=nu_eff
    )
