"""Numerical eigenvalue engines independent of every closed form.

Two cross-checking methods on a generic RadialODE family epsilon -> ODE:

* shoot_eigenvalue launches the regular Frobenius branch at r_min and the
  decaying WKB branch at r_max, integrates both to a matching radius, and
  finds the energy where the normalized Wronskian mismatch vanishes.
* fd_matrix_eigen Liouville-transforms the equation onto a uniform
  logarithmic grid, where each energy gives a well-scaled symmetric
  tridiagonal operator; level n is the root in energy of that operator's
  n-th eigenvalue, with Richardson extrapolation across a grid doubling.

Both work in whatever radial variable the ODE is defined in; all they need
is a (0, inf) domain with a regular singular point at the origin and decay
at infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .radialeq import RadialODE
from .series import frobenius_indices, singular_limits

__all__ = [
    "ShootingConfig",
    "OracleResult",
    "shoot_eigenvalue",
    "mismatch_scan",
    "fd_matrix_eigen",
    "integrate_decaying",
]


@dataclass(frozen=True)
class ShootingConfig:
    """Search window and tolerances for one shooting solve.

    bracket is the open energy interval searched; node_target, when set, is
    reported back by the caller's checks rather than enforced here. r_min
    and r_max of None auto-size from the decay rate at the bracket center.
    """

    bracket: tuple
    r_min: Optional[float] = None
    r_max: Optional[float] = None
    tol_ode: float = 1e-11
    tol_eig: float = 1e-10
    node_target: Optional[int] = None


@dataclass(frozen=True)
class OracleResult:
    """Converged eigenvalue with its quality measures.

    match_residual is the normalized Wronskian mismatch at the converged
    energy (shooting) or the Richardson error estimate (finite differences).
    wavefunction holds sample arrays under keys "r", "u", "du".
    """

    epsilon: float
    node_count: int
    match_residual: float
    wavefunction: dict = field(repr=False, default_factory=dict)


def _decay_rate(ode: RadialODE, r_probe: float = 1e6) -> float:
    q_inf = float(ode.q(r_probe))
    if q_inf >= 0.0:
        raise ValueError("q stays non-negative at infinity: not a bound-state window")
    return math.sqrt(-q_inf)


def _geometry(ode: RadialODE, config: ShootingConfig):
    kappa = _decay_rate(ode)
    r_min = config.r_min if config.r_min is not None else 1e-4
    r_max = config.r_max if config.r_max is not None else 35.0 / kappa
    r_match = min(max(1.2 / kappa, 3.0 * r_min), 0.5 * r_max)
    return r_min, r_match, r_max


def _launch_origin(ode: RadialODE, r_min: float):
    """Value 1 and log-derivative of the regular branch r^A (1 + c1 r)."""
    p_m1, p_0, q_m2, q_m1 = singular_limits(ode)
    _, A = frobenius_indices(ode)
    denom = (A + 1.0) * A + p_m1 * (A + 1.0) + q_m2
    c1 = -(A * p_0 + q_m1) / denom
    logder = A / r_min + c1 / (1.0 + c1 * r_min)
    return 1.0, logder


def _launch_infinity(ode: RadialODE, r_max: float):
    """Decaying WKB log-derivative -sqrt(-q) - p/2 + q'/(4q) at r_max."""
    q = float(ode.q(r_max))
    p = float(ode.p(r_max))
    if q >= 0.0:
        raise ValueError("r_max is not in the classically forbidden region")
    delta = 1e-6 * r_max
    dq = (float(ode.q(r_max + delta)) - float(ode.q(r_max - delta))) / (2.0 * delta)
    return 1.0, -math.sqrt(-q) - 0.5 * p + dq / (4.0 * q)


def _integrate(ode: RadialODE, r_from, r_to, y0, rtol, t_eval=None):
    def rhs(r, y):
        return [y[1], -ode.p(r) * y[1] - ode.q(r) * y[0]]

    sol = solve_ivp(
        rhs, (r_from, r_to), y0, method="DOP853",
        rtol=rtol, atol=1e-14, t_eval=t_eval, dense_output=False,
    )
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    return sol


def _mismatch(ode: RadialODE, r_min, r_match, r_max, rtol, want_samples=False):
    u0, du0 = _launch_origin(ode, r_min)
    t_out = np.geomspace(r_min, r_match, 200) if want_samples else None
    out = _integrate(ode, r_min, r_match, [u0, du0 * u0], rtol, t_out)
    uo, duo = out.y[0, -1], out.y[1, -1]

    u1, du1 = _launch_infinity(ode, r_max)
    t_in = np.geomspace(r_max, r_match, 200) if want_samples else None
    inw = _integrate(ode, r_max, r_match, [u1, du1 * u1], rtol, t_in)
    ui, dui = inw.y[0, -1], inw.y[1, -1]

    w = duo * ui - dui * uo
    norm = abs(duo * ui) + abs(dui * uo)
    mismatch = w / norm if norm > 0.0 else math.inf
    if not want_samples:
        return mismatch, None

    scale = uo / ui if ui != 0.0 else 1.0
    r_all = np.concatenate([out.t, inw.t[::-1][1:]])
    u_all = np.concatenate([out.y[0], scale * inw.y[0][::-1][1:]])
    du_all = np.concatenate([out.y[1], scale * inw.y[1][::-1][1:]])
    peak = np.max(np.abs(u_all))
    return mismatch, {"r": r_all, "u": u_all / peak, "du": du_all / peak}


def _count_nodes(u: np.ndarray) -> int:
    # ignore roundoff wiggle near the clamped boundaries
    u = np.asarray(u, dtype=float)
    s = np.sign(u[np.abs(u) > 1e-6 * np.max(np.abs(u))])
    return int(np.sum(s[:-1] * s[1:] < 0))


def mismatch_scan(ode_family: Callable[[float], RadialODE], energies, config: ShootingConfig):
    """Normalized Wronskian mismatch at each energy; the eigenvalues are its
    sign changes. Geometry is frozen at the first energy to keep the scan
    comparable point to point."""
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    geo = _geometry(ode_family(energies[0]), config)
    out = np.empty_like(energies)
    for i, eps in enumerate(energies):
        out[i] = _mismatch(ode_family(eps), *geo, config.tol_ode)[0]
    return out


def shoot_eigenvalue(ode_family: Callable[[float], RadialODE], config: ShootingConfig) -> OracleResult:
    """Converge one eigenvalue inside config.bracket.

    Finds a sign change of the Wronskian mismatch (refining the bracket by
    scanning when the endpoints agree in sign), then polishes it with brentq
    to tol_eig. Raises ValueError when the window contains no eigenvalue,
    which is itself a meaningful verdict for branches with no bound states.
    """
    lo, hi = config.bracket
    if not lo < hi:
        raise ValueError(f"empty bracket {config.bracket}")
    geo = _geometry(ode_family(0.5 * (lo + hi)), config)

    def w_of(eps: float) -> float:
        return _mismatch(ode_family(eps), *geo, config.tol_ode)[0]

    a, b = lo, hi
    wa, wb = w_of(a), w_of(b)
    if wa == 0.0:
        root = a
    elif wb == 0.0:
        root = b
    else:
        if wa * wb > 0.0:
            grid = np.linspace(lo, hi, 17)
            vals = [wa] + [w_of(g) for g in grid[1:-1]] + [wb]
            found = False
            for i in range(len(grid) - 1):
                if vals[i] * vals[i + 1] < 0.0:
                    a, b, wa, wb = grid[i], grid[i + 1], vals[i], vals[i + 1]
                    found = True
                    break
            if not found:
                raise ValueError(
                    f"no eigenvalue bracketed in {config.bracket}: "
                    f"mismatch keeps sign (endpoints {wa:.3e}, {wb:.3e})"
                )
        root = brentq(w_of, a, b, xtol=config.tol_eig, rtol=8.9e-16)

    residual, samples = _mismatch(ode_family(root), *geo, config.tol_ode, want_samples=True)
    return OracleResult(
        epsilon=float(root),
        node_count=_count_nodes(samples["u"]),
        match_residual=abs(residual),
        wavefunction=samples,
    )


def _fd_operator(ode: RadialODE, n_grid: int, r_min: float, r_max: float):
    """Symmetric tridiagonal H(eps) on the uniform log grid t = ln r.

    The Liouville form phi'' + (r^2 Qtilde - 1/4) phi = 0 with
    Qtilde = q - p^2/4 - p'/2 turns into H phi = 0; a bound level of the
    family is an energy where an eigenvalue of H crosses zero. H is scaled
    by h^2 so its norm stays O(1)-ish and the tridiagonal bisection keeps
    absolute accuracy far below the crossing slope.
    """
    t = np.linspace(math.log(r_min), math.log(r_max), n_grid)
    h = t[1] - t[0]
    r = np.exp(t)
    p = np.asarray(ode.p(r), dtype=float)
    q = np.asarray(ode.q(r), dtype=float)
    delta = 1e-6 * r
    dp = (np.asarray(ode.p(r + delta)) - np.asarray(ode.p(r - delta))) / (2.0 * delta)
    v = r**2 * (q - 0.25 * p**2 - 0.5 * dp) - 0.25
    diag = 2.0 / h**2 - v
    off = np.full(n_grid - 1, -1.0 / h**2)
    return diag, off, r, p


def fd_matrix_eigen(
    ode_family: Callable[[float], RadialODE],
    grid_size: int,
    k_lowest: int,
    bracket: tuple,
    r_min: Optional[float] = None,
    r_max: Optional[float] = None,
):
    """Lowest k levels of the family by finite differences, one OracleResult
    per level, all inside the energy bracket.

    For fixed energy the Liouville-transformed operator H(eps) is symmetric
    tridiagonal; its n-th eigenvalue decreases monotonically in eps (the
    Coulomb well deepens), so level n of the family is the unique root of
    lambda_n(eps) = 0, found with brentq. Each level is re-solved at twice
    the grid and Richardson extrapolated; the step between the two grids is
    the error estimate.
    """
    if grid_size < 200:
        raise ValueError("grid_size >= 200 required")
    lo, hi = bracket
    if not lo < hi:
        raise ValueError(f"empty bracket {bracket}")
    # size the box for the least-bound energy the window can hold; the
    # inner wall sits deep enough that the irregular branch it admixes
    # (~ r_lo^(2A-1), and A can be as low as ~0.9) stays below 1e-8
    kappa = _decay_rate(ode_family(hi))
    r_lo = r_min if r_min is not None else 1e-10
    r_hi = r_max if r_max is not None else 40.0 / kappa

    def level_eig(eps: float, level: int, n_grid: int) -> float:
        diag, off, _, _ = _fd_operator(ode_family(eps), n_grid, r_lo, r_hi)
        lam = eigh_tridiagonal(diag, off, select="i",
                               select_range=(level, level),
                               eigvals_only=True)
        return float(lam[0])

    def solve(level: int, n_grid: int) -> float:
        f = lambda eps: level_eig(eps, level, n_grid)
        f_lo, f_hi = f(lo), f(hi)
        if not (f_lo > 0.0 > f_hi):
            raise ValueError(
                f"bracket {bracket} does not isolate level {level}: "
                f"operator eigenvalue spans ({f_lo:.3e}, {f_hi:.3e})"
            )
        return brentq(f, lo, hi, xtol=1e-14, rtol=8.9e-16)

    results = []
    for level in range(k_lowest):
        eps_n = solve(level, grid_size)
        eps_2n = solve(level, 2 * grid_size)
        eps_rich = eps_2n + (eps_2n - eps_n) / 3.0

        diag, off, r, p = _fd_operator(ode_family(eps_2n), 2 * grid_size, r_lo, r_hi)
        _, vec = eigh_tridiagonal(diag, off, select="i",
                                  select_range=(level, level))
        phi = vec[:, 0]
        ihalfp = np.concatenate([[0.0], np.cumsum(
            0.5 * (p[1:] + p[:-1]) * np.diff(r))])
        u = np.exp(-0.5 * ihalfp) * np.sqrt(r) * phi
        u = u / np.max(np.abs(u))
        results.append(OracleResult(
            epsilon=float(eps_rich),
            node_count=_count_nodes(phi),
            match_residual=abs(eps_2n - eps_n) / 3.0,
            wavefunction={"r": r, "u": u},
        ))
    return results


def integrate_decaying(ode: RadialODE, r_grid) -> dict:
    """Decaying solution sampled on r_grid by inward integration.

    Launched well beyond the grid so the growing admixture picked up at the
    launch point has died away by the time the grid is reached; normalized
    to peak magnitude 1 on the grid.
    """
    r_grid = np.sort(np.asarray(r_grid, dtype=float))
    kappa = _decay_rate(ode)
    r_start = r_grid[-1] + 20.0 / kappa
    u0, logder = _launch_infinity(ode, r_start)
    sol = _integrate(
        ode, r_start, r_grid[0], [u0, logder * u0], 1e-11,
        t_eval=np.concatenate([[r_start], r_grid[::-1]]),
    )
    u = sol.y[0][1:][::-1].copy()
    du = sol.y[1][1:][::-1].copy()
    peak = np.max(np.abs(u))
    return {"r": r_grid, "u": u / peak, "du": du / peak}
