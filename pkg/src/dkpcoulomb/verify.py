"""Acceptance criteria engine shared by the CLI and the test suite.

Each criterion is a self-contained measurement returning raw numbers, its
tolerance, and a verdict. Nothing here is softened to force a pass: the
6-component master-equation window genuinely contains no shooting
eigenvalues, and the reconstructed profile genuinely violates the magnetic
dual route to H1, so the corresponding criteria report honest failures with
the measured values attached.

Shooting results are memoized per run so the cross-method criterion reuses
the eigenvalues instead of recomputing them.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .angular import parity_block, verify_recurrences
from .fields import (
    h1_dual_residual,
    lorentz_residual,
    reconstruct,
    system_residuals,
)
from .heun import map_to_heun, polynomial_condition_residual
from .nonrel import diagonalize_coupled, nonrel_effective_equation, nonrel_spectrum
from .oracle import ShootingConfig, fd_matrix_eigen, integrate_decaying, shoot_eigenvalue
from .params import CoulombParams, ParitySign, to_energy_params
from .radialeq import build_jzero, build_main_type1, build_scalar_like
from .series import jzero_indices, jzero_nontermination_margin, jzero_termination_ratio
from .spectra import (
    heun_energy_from_neff,
    nonrel_limit,
    spectrum_heun,
    spectrum_jzero,
    spectrum_scalar_like,
)

__all__ = ["CriterionResult", "run_all", "run_criterion", "list_criteria",
           "tower_bracket"]


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    title: str
    measured: float
    tolerance: float
    passed: bool
    seconds: float
    rows: tuple = field(repr=False, default=())
    notes: str = ""


def _params(alpha: float, j: int) -> CoulombParams:
    parity = ParitySign.MINUS_TO_J_PLUS_1 if j == 0 else ParitySign.MINUS_TO_J
    return CoulombParams(alpha=alpha, j=j, parity=parity)


def tower_bracket(tower, n):
    """Window around tower[n] reaching a bit under halfway to each neighbor."""
    e = tower[n]
    gap_hi = tower[n + 1] - e
    gap_lo = e - tower[n - 1] if n > 0 else gap_hi
    delta = 0.45 * min(gap_lo, gap_hi)
    return e - delta, e + delta


class _Run:
    """One verification run: perturbation setting plus the shooting cache."""

    def __init__(self, perturb: float = 0.0):
        self.perturb = perturb
        self.shot = {}

    def shoot(self, key, family, config):
        if key not in self.shot:
            self.shot[key] = shoot_eigenvalue(family, config)
        return self.shot[key]


_SHOOT_KW = dict(tol_ode=1e-10, tol_eig=1e-12)


def _scalar_cases():
    for alpha in (0.05, 0.1, 0.3):
        for j in range(4):
            tower = [spectrum_scalar_like(alpha, j, n).e_over_mc2 for n in range(5)]
            for n in range(4):
                yield alpha, j, n, tower


def _criterion_scalar(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    rows = []
    worst = 0.0
    for alpha, j, n, tower in _scalar_cases():
        params = _params(alpha, j)
        family = (lambda p: (lambda eps: build_scalar_like(p, eps)))(params)
        config = ShootingConfig(bracket=tower_bracket(tower, n),
                                node_target=n, **_SHOOT_KW)
        res = run.shoot(("scalar", alpha, j, n), family, config)
        dev = abs(res.epsilon - tower[n]) / tower[n]
        worst = max(worst, dev)
        rows.append({
            "alpha": alpha, "j": j, "n": n, "closed_form": tower[n],
            "oracle": res.epsilon, "rel_deviation": dev, "nodes": res.node_count,
        })
    secs = time.perf_counter() - t0
    return CriterionResult(
        cid="1",
        title="scalar-like channel: shooting oracle vs closed form",
        measured=worst, tolerance=1e-8,
        passed=worst < 1e-8 and secs < 30.0,
        seconds=secs, rows=tuple(rows),
        notes=f"48 levels in {secs:.1f}s (budget 30s)",
    )


def _jzero_cases():
    for alpha in (0.05, 0.1):
        tower = [spectrum_jzero(alpha, n).e_over_mc2 for n in range(5)]
        for n in range(4):
            yield alpha, n, tower


def _criterion_jzero(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    rows = []
    worst_dev = 0.0
    worst_ratio = 0.0
    min_detuned = math.inf
    for alpha, n, tower in _jzero_cases():
        params = _params(alpha, 0)
        family = (lambda p: (lambda eps: build_jzero(p, eps)))(params)
        config = ShootingConfig(bracket=tower_bracket(tower, n),
                                node_target=n, **_SHOOT_KW)
        res = run.shoot(("jzero", alpha, 0, n), family, config)
        dev = abs(res.epsilon - tower[n]) / tower[n]
        worst_dev = max(worst_dev, dev)

        a, b = jzero_indices(alpha, tower[n])
        ratio = jzero_termination_ratio(alpha, a, b, n)
        a2, b2 = jzero_indices(alpha, tower[n] - 1e-4)
        margin = jzero_nontermination_margin(alpha, a2, b2, n)
        worst_ratio = max(worst_ratio, ratio)
        min_detuned = min(min_detuned, margin)
        rows.append({
            "alpha": alpha, "n": n, "closed_form": tower[n],
            "oracle": res.epsilon, "rel_deviation": dev,
            "termination_ratio": ratio, "detuned_step_margin": margin,
            "nodes": res.node_count,
        })
    passed = worst_dev < 1e-8 and worst_ratio < 1e-9 and min_detuned > 1e-9
    measured, tol = max(
        ((worst_dev, 1e-8), (worst_ratio, 1e-9)), key=lambda mt: mt[0] / mt[1]
    )
    return CriterionResult(
        cid="2",
        title="j=0 trio: oracle vs closed form; series termination",
        measured=measured, tolerance=tol, passed=passed,
        seconds=time.perf_counter() - t0, rows=tuple(rows),
        notes=(
            f"worst oracle deviation {worst_dev:.2e}; worst termination ratio "
            f"{worst_ratio:.2e}; detuned by 1e-4 every recurrence step keeps "
            f"|C_next/C| >= {min_detuned:.2e}, no termination anywhere"
        ),
    )


def _criterion_heun_poly(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    rows = []
    worst = 0.0
    for alpha in (0.05, 0.1, 0.3):
        for j in (1, 2, 3):
            params = _params(alpha, j)
            for n in range(6):
                # detune downward so the probe stays inside the bound window
                eps = spectrum_heun(alpha, j, n).e_over_mc2 * (1.0 - run.perturb)
                hc = map_to_heun(params, to_energy_params(params, eps))
                resid = abs(polynomial_condition_residual(hc, n))
                worst = max(worst, resid)
                rows.append({"alpha": alpha, "j": j, "n": n, "residual": resid})
    return CriterionResult(
        cid="3a",
        title="6-component channel: polynomial condition at closed-form levels",
        measured=worst, tolerance=1e-9, passed=worst < 1e-9,
        seconds=time.perf_counter() - t0, rows=tuple(rows),
        notes=("energies perturbed by a relative "
               f"{run.perturb:g} before the residual" if run.perturb else ""),
    )


def _heun_oracle_cases():
    alpha = 0.1
    for j in (1, 2, 3):
        tower = [spectrum_heun(alpha, j, n).e_over_mc2 for n in range(3)]
        for n in range(2):
            yield alpha, j, n, tower


def _criterion_heun_oracle(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    rows = []
    worst = 0.0
    any_found = False
    for alpha, j, n, tower in _heun_oracle_cases():
        params = _params(alpha, j)
        family = (lambda p: (lambda eps: build_main_type1(p, eps)))(params)
        config = ShootingConfig(bracket=tower_bracket(tower, n),
                                node_target=n, **_SHOOT_KW)
        try:
            res = run.shoot(("heun", alpha, j, n), family, config)
        except ValueError as exc:
            rows.append({"alpha": alpha, "j": j, "n": n,
                         "closed_form": tower[n], "oracle": None,
                         "error": str(exc)})
            worst = math.inf
            continue
        any_found = True
        dev = abs(res.epsilon - tower[n]) / tower[n]
        worst = max(worst, dev)
        rows.append({"alpha": alpha, "j": j, "n": n, "closed_form": tower[n],
                     "oracle": res.epsilon, "rel_deviation": dev})
    return CriterionResult(
        cid="3b",
        title="6-component channel: shooting oracle vs closed form",
        measured=worst, tolerance=1e-8, passed=worst < 1e-8,
        seconds=time.perf_counter() - t0, rows=tuple(rows),
        notes=(
            "" if any_found else
            "the shooting window around every closed-form level contains no "
            "Wronskian sign change: the reduced master equation alone "
            "supports no bound state there, so the closed-form levels are "
            "not reproduced by this oracle"
        ),
    )


def _criterion_heun_quartic(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    rows = []
    worst = 0.0
    for alpha in (0.05, 0.1, 0.3):
        for j in (1, 2, 3):
            for n in range(6):
                lv = spectrum_heun(alpha, j, n)
                e = lv.e_over_mc2
                scale = alpha**2 / lv.n_effective**2
                resid = abs(e**4 - e**2 + scale) / scale
                worst = max(worst, resid)
                rows.append({"alpha": alpha, "j": j, "n": n, "residual": resid})
    return CriterionResult(
        cid="3c",
        title="6-component channel: quartic back-substitution",
        measured=worst, tolerance=1e-11, passed=worst < 1e-11,
        seconds=time.perf_counter() - t0, rows=tuple(rows),
    )


def _criterion_limits(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    rows = []
    worst_large_n = 0.0
    for alpha in (0.05, 0.1, 0.3):
        gap = abs(heun_energy_from_neff(alpha, 1e3) - 1.0)
        worst_large_n = max(worst_large_n, gap)
        rows.append({"part": "large-N", "alpha": alpha, "n_eff": 1e3,
                     "abs_gap_to_1": gap})
    worst_margin = 0.0
    worst_exp = (0.0, 1.0)
    for alpha in (0.01, 0.02, 0.05):
        bound = 5.0 * alpha**4
        for j in (1, 2, 3):
            for n in range(4):
                lv = spectrum_heun(alpha, j, n)
                gap = abs((lv.e_over_mc2 - 1.0) - nonrel_limit(lv))
                if gap / bound > worst_margin:
                    worst_margin = gap / bound
                    worst_exp = (gap, bound)
                rows.append({"part": "nonrel-expansion", "alpha": alpha,
                             "j": j, "n": n, "abs_gap": gap, "bound": bound})
    measured, tol = max(
        ((worst_large_n, 1e-6), worst_exp), key=lambda mt: mt[0] / mt[1]
    )
    return CriterionResult(
        cid="4",
        title="limits: E -> 1 at large N; non-relativistic expansion",
        measured=measured, tolerance=tol,
        passed=worst_large_n < 1e-6 and worst_margin < 1.0,
        seconds=time.perf_counter() - t0, rows=tuple(rows),
    )


def _nonrel_cases():
    alpha = 0.1
    for nu_eff in range(4):
        tower = [nonrel_spectrum(alpha, 1.0, float(nu_eff), n).e_over_mc2
                 for n in range(5)]
        for n in range(4):
            yield alpha, nu_eff, n, tower


def _criterion_nonrel(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    rows = []
    worst_dec = 0.0
    for j in range(1, 21):
        dec = diagonalize_coupled(_params(0.1, j))
        nu = _params(0.1, j).nu_radial
        K = np.array([[0.0, nu], [2.0 * nu, 1.0]])
        resid = np.max(np.abs(
            dec.transform @ K - np.diag(dec.eigenvalues) @ dec.transform
        ))
        worst_dec = max(worst_dec, resid)
        rows.append({"part": "decoupling", "j": j, "residual": resid})
    worst_dev = 0.0
    for alpha, nu_eff, n, tower in _nonrel_cases():
        family = (lambda v: (lambda eps: nonrel_effective_equation(alpha, 1.0, v, eps)))(float(nu_eff))
        config = ShootingConfig(bracket=tower_bracket(tower, n),
                                node_target=n, **_SHOOT_KW)
        res = run.shoot(("nonrel", alpha, nu_eff, n), family, config)
        dev = abs(res.epsilon - tower[n]) / abs(tower[n])
        worst_dev = max(worst_dev, dev)
        rows.append({"part": "oracle", "alpha": alpha, "nu_eff": nu_eff,
                     "n": n, "closed_form": tower[n], "oracle": res.epsilon,
                     "rel_deviation": dev, "nodes": res.node_count})
    measured, tol = max(
        ((worst_dec, 1e-13), (worst_dev, 1e-8)), key=lambda mt: mt[0] / mt[1]
    )
    return CriterionResult(
        cid="5",
        title="non-relativistic suite: decoupling residual; oracle vs closed form",
        measured=measured, tolerance=tol,
        passed=worst_dec < 1e-13 and worst_dev < 1e-8,
        seconds=time.perf_counter() - t0, rows=tuple(rows),
    )


def _criterion_fields(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    alpha, j = 0.1, 1
    params = _params(alpha, j)
    eps = spectrum_heun(alpha, j, 0).e_over_mc2
    grid = np.geomspace(0.5, 20.0, 400)
    sol = integrate_decaying(build_main_type1(params, eps), grid)
    profile = reconstruct(params, eps, grid, sol["u"], sol["du"])

    k = eps + alpha / grid
    vmax = np.max(np.abs(profile.matrix()), axis=0)
    dmax = np.max(np.abs(profile.deriv_matrix()), axis=0)
    scale = dmax + (params.mass + np.abs(k) + 6.0 / grid) * vmax

    resid = np.abs(system_residuals(params, eps, profile)) / scale
    lorentz = np.abs(lorentz_residual(params, eps, profile)) / scale
    dual = np.abs(h1_dual_residual(params, eps, profile))
    e2_defect = np.max(np.abs(profile.values["E2"] + 2.0 * params.mass * grid * profile.phi0))
    e2_rel = e2_defect / np.max(np.abs(profile.values["E2"]))

    eq_worst = np.max(resid, axis=1)
    rows = [{"equation": i + 1, "max_rel_residual": float(eq_worst[i])}
            for i in range(6)]
    rows.append({"equation": "lorentz", "max_rel_residual": float(np.max(lorentz))})
    rows.append({"equation": "E2 identity", "max_rel_residual": float(e2_rel)})
    rows.append({"equation": "H1 dual-route gap",
                 "max_abs": float(np.max(dual))})

    worst = max(float(np.max(eq_worst)), float(np.max(lorentz)))
    passed = worst < 1e-6 and e2_rel < 1e-12
    return CriterionResult(
        cid="6",
        title="end-to-end field consistency at the 6-component ground state",
        measured=worst, tolerance=1e-6, passed=passed,
        seconds=time.perf_counter() - t0, rows=tuple(rows),
        notes=(
            "five of the six first-order equations and the Lorentz condition "
            f"hold to {float(np.max(resid[:5])):.1e}; the magnetic equation "
            "(the H1 dual route) misses at order one, which no choice of the "
            "free normalization repairs"
        ) if not passed else "",
    )


def _criterion_angular(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    theta = np.linspace(0.05, math.pi - 0.05, 100)
    rows = []
    worst = 0.0
    for j in range(1, 11):
        resid = verify_recurrences(j, theta)
        worst = max(worst, resid)
        rows.append({"part": "recurrences", "j": j, "max_residual": resid})
    block = parity_block()
    exact = bool(np.array_equal(block @ block, np.eye(3, dtype=int)))
    rows.append({"part": "parity-block", "squares_to_identity": exact})
    return CriterionResult(
        cid="7",
        title="angular identities: recurrences and parity block",
        measured=worst, tolerance=1e-10,
        passed=worst < 1e-10 and exact,
        seconds=time.perf_counter() - t0, rows=tuple(rows),
    )


def _criterion_cross(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    rows = []
    worst = 0.0
    nodes_ok = True

    def compare(key, family, tower, n, tag=None):
        nonlocal worst, nodes_ok
        config = ShootingConfig(bracket=tower_bracket(tower, n),
                                node_target=n, **_SHOOT_KW)
        sh = run.shoot(key, family, config)
        fd = fd_matrix_eigen(
            family, grid_size=1500, k_lowest=n + 1,
            bracket=(tower_bracket(tower, 0)[0], config.bracket[1]),
        )[n]
        gap = abs(sh.epsilon - fd.epsilon) / abs(tower[n])
        worst = max(worst, gap)
        ok = sh.node_count == n and fd.node_count == n
        nodes_ok = nodes_ok and ok
        rows.append({**tag, "n": n, "shooting": sh.epsilon, "fd": fd.epsilon,
                     "rel_gap": gap, "nodes_shooting": sh.node_count,
                     "nodes_fd": fd.node_count, "node_target": n})

    for alpha, j, n, tower in _scalar_cases():
        params = _params(alpha, j)
        family = (lambda p: (lambda eps: build_scalar_like(p, eps)))(params)
        compare(("scalar", alpha, j, n), family, tower, n,
                tag={"branch": "scalar-like", "alpha": alpha, "j": j})
    for alpha, n, tower in _jzero_cases():
        params = _params(alpha, 0)
        family = (lambda p: (lambda eps: build_jzero(p, eps)))(params)
        compare(("jzero", alpha, 0, n), family, tower, n,
                tag={"branch": "jzero", "alpha": alpha, "j": 0})
    for alpha, nu_eff, n, tower in _nonrel_cases():
        family = (lambda v: (lambda eps: nonrel_effective_equation(alpha, 1.0, v, eps)))(float(nu_eff))
        compare(("nonrel", alpha, nu_eff, n), family, tower, n,
                tag={"branch": "nonrel", "alpha": alpha, "nu_eff": nu_eff})

    return CriterionResult(
        cid="8a",
        title="oracle self-consistency: shooting vs finite differences",
        measured=worst, tolerance=1e-6,
        passed=worst < 1e-6 and nodes_ok,
        seconds=time.perf_counter() - t0, rows=tuple(rows),
    )


def _criterion_cross_heun(run: _Run) -> CriterionResult:
    t0 = time.perf_counter()
    rows = []
    found = 0
    for alpha, j, n, tower in _heun_oracle_cases():
        params = _params(alpha, j)
        family = (lambda p: (lambda eps: build_main_type1(p, eps)))(params)
        config = ShootingConfig(bracket=tower_bracket(tower, n),
                                node_target=n, **_SHOOT_KW)
        try:
            res = run.shoot(("heun", alpha, j, n), family, config)
            found += 1
            rows.append({"alpha": alpha, "j": j, "n": n,
                         "shooting": res.epsilon})
        except ValueError as exc:
            rows.append({"alpha": alpha, "j": j, "n": n, "shooting": None,
                         "error": str(exc)})
    passed = found == len(rows) and found > 0
    return CriterionResult(
        cid="8b",
        title="oracle self-consistency on the 6-component channel",
        measured=math.inf if not passed else 0.0, tolerance=1e-6,
        passed=passed,
        seconds=time.perf_counter() - t0, rows=tuple(rows),
        notes=(
            "no shooting eigenvalue exists to cross-check (see 3b); the "
            "finite-difference side would only discretize the continuum, so "
            "it is not run"
        ) if not passed else "",
    )


_REGISTRY = (
    ("1", _criterion_scalar),
    ("2", _criterion_jzero),
    ("3a", _criterion_heun_poly),
    ("3b", _criterion_heun_oracle),
    ("3c", _criterion_heun_quartic),
    ("4", _criterion_limits),
    ("5", _criterion_nonrel),
    ("6", _criterion_fields),
    ("7", _criterion_angular),
    ("8a", _criterion_cross),
    ("8b", _criterion_cross_heun),
)

_TITLES = {
    "1": "scalar-like channel: shooting oracle vs closed form",
    "2": "j=0 trio: oracle vs closed form; series termination",
    "3a": "6-component channel: polynomial condition at closed-form levels",
    "3b": "6-component channel: shooting oracle vs closed form",
    "3c": "6-component channel: quartic back-substitution",
    "4": "limits: E -> 1 at large N; non-relativistic expansion",
    "5": "non-relativistic suite: decoupling residual; oracle vs closed form",
    "6": "end-to-end field consistency at the 6-component ground state",
    "7": "angular identities: recurrences and parity block",
    "8a": "oracle self-consistency: shooting vs finite differences",
    "8b": "oracle self-consistency on the 6-component channel",
}


def list_criteria():
    return [(cid, _TITLES[cid]) for cid, _ in _REGISTRY]


def run_criterion(cid: str, perturb: float = 0.0,
                  run: Optional[_Run] = None) -> CriterionResult:
    table = dict(_REGISTRY)
    if cid not in table:
        raise ValueError(f"unknown criterion {cid!r}; known: {sorted(table)}")
    return table[cid](run if run is not None else _Run(perturb))


def run_all(ids=None, perturb: float = 0.0):
    """Run the selected criteria (all by default) sharing one shooting cache."""
    run = _Run(perturb)
    wanted = list(ids) if ids is not None else [cid for cid, _ in _REGISTRY]
    known = {cid for cid, _ in _REGISTRY}
    unknown = [c for c in wanted if c not in known]
    if unknown:
        raise ValueError(f"unknown criteria {unknown}; known: {sorted(known)}")
    return [run_criterion(cid, run=run) for cid, _ in _REGISTRY if cid in wanted]
