"""The reconstruction satisfies five of the six first-order equations and
the Lorentz condition at machine precision; the magnetic-sector equation
(row H1) carries a known order-one gap that h1_dual_residual reports. These
tests pin both sides so neither silently drifts."""

import numpy as np
import pytest

from dkpcoulomb import (
    CoulombParams,
    build_main_type1,
    h1_dual_residual,
    integrate_decaying,
    lorentz_residual,
    reconstruct,
    spectrum_heun,
    system_residuals,
)
from dkpcoulomb.radialeq import PARITY6_COMPONENTS


@pytest.fixture(scope="module")
def ground_profile():
    params = CoulombParams(alpha=0.1, j=1)
    eps = spectrum_heun(0.1, 1, 0).e_over_mc2
    grid = np.geomspace(0.5, 20.0, 300)
    sol = integrate_decaying(build_main_type1(params, eps), grid)
    profile = reconstruct(params, eps, grid, sol["u"], sol["du"])
    return params, eps, profile


def test_five_equations_close_at_machine_precision(ground_profile):
    params, eps, profile = ground_profile
    res = system_residuals(params, eps, profile)
    assert res.shape == (6, profile.r.size)
    vmax = max(np.max(np.abs(v)) for v in profile.values.values())
    for i, name in enumerate(PARITY6_COMPONENTS[:5]):
        assert np.max(np.abs(res[i])) / vmax < 1e-12, name


def test_magnetic_row_keeps_its_known_gap(ground_profile):
    # this gap and the failing acceptance verdict for the full-system check
    # document the same limitation; revisit both together if either moves
    params, eps, profile = ground_profile
    res = system_residuals(params, eps, profile)
    vmax = max(np.max(np.abs(v)) for v in profile.values.values())
    assert np.max(np.abs(res[5])) / vmax > 1e-2


def test_h1_dual_route_disagrees_by_order_one(ground_profile):
    params, eps, profile = ground_profile
    gap = h1_dual_residual(params, eps, profile)
    rel = np.max(np.abs(gap)) / np.max(np.abs(profile.values["H1"]))
    assert np.all(np.isfinite(gap))
    assert rel > 0.1


def test_lorentz_condition_closes(ground_profile):
    params, eps, profile = ground_profile
    vmax = max(np.max(np.abs(v)) for v in profile.values.values())
    assert np.max(np.abs(lorentz_residual(params, eps, profile))) / vmax < 1e-12


def test_e2_is_algebraic_in_phi0(ground_profile):
    params, _, profile = ground_profile
    want = -2.0 * params.mass * profile.r * profile.phi0
    assert np.array_equal(profile.values["E2"], want)


def test_second_derivative_comes_from_the_master_equation(ground_profile):
    params, eps, profile = ground_profile
    ode = build_main_type1(params, eps)
    resid = profile.d2phi0 + ode.p(profile.r) * profile.dphi0 + ode.q(
        profile.r
    ) * profile.phi0
    assert np.max(np.abs(resid)) < 1e-14


def test_matrix_rows_follow_the_component_order(ground_profile):
    _, _, profile = ground_profile
    m = profile.matrix()
    dm = profile.deriv_matrix()
    assert m.shape == dm.shape == (6, profile.r.size)
    for i, name in enumerate(PARITY6_COMPONENTS):
        assert np.array_equal(m[i], profile.values[name])
        assert np.array_equal(dm[i], profile.derivs[name])


def test_reconstruct_is_grid_shape_preserving():
    params = CoulombParams(alpha=0.1, j=2)
    eps = spectrum_heun(0.1, 2, 0).e_over_mc2
    r = np.array([1.0, 2.0, 5.0])
    profile = reconstruct(params, eps, r, np.ones(3), np.zeros(3))
    assert profile.r.shape == (3,)
    assert all(v.shape == (3,) for v in profile.values.values())
    assert all(v.shape == (3,) for v in profile.derivs.values())
