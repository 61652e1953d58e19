import numpy as np
import pytest

from dkpcoulomb import (
    CoulombParams,
    HeunCanonical,
    ParitySign,
    heun_local_series,
    map_to_heun,
    physical_series,
    polynomial_condition_residual,
    series_eval_with_derivs,
    spectrum_heun,
    tail_ratio,
    to_energy_params,
)
from dkpcoulomb.heun import canonical_coefficients, pre_canonical_coefficients

ALPHA = 0.1
E_GROUND = 0.998331923512875  # alpha=0.1, j=1, n=0


def ground_hc():
    params = CoulombParams(alpha=ALPHA, j=1)
    return map_to_heun(params, to_energy_params(params, E_GROUND))


def test_canonical_parameters_frozen_at_the_ground_state():
    hc = ground_hc()
    assert hc.a == pytest.approx(0.011566363328361218, rel=1e-12)
    assert hc.b == pytest.approx(3.4698703145794942, rel=1e-12)
    assert hc.c == -2.0
    assert hc.d == pytest.approx(0.020066890380321833, rel=1e-12)
    assert hc.h == 2.0
    # peel exponent matches the regular index of the reduced equation
    assert hc.A == pytest.approx(0.7349351572897471, rel=1e-12)
    assert hc.B == pytest.approx(hc.a / 2.0, rel=1e-15)
    assert hc.Lambda2 == pytest.approx(hc.d / 2.0, rel=1e-15)


def test_map_rejects_j_zero():
    params = CoulombParams(alpha=ALPHA, j=0, parity=ParitySign.MINUS_TO_J_PLUS_1)
    with pytest.raises(ValueError, match="j >= 1"):
        map_to_heun(params, to_energy_params(params, 0.99))


def test_canonical_and_pre_canonical_coefficients_agree():
    """Expanding the canonical form must reproduce the S/x + T/(1-x) split
    identically; five sample points on both sides of x = 0."""
    hc = ground_hc()
    p1, q1 = pre_canonical_coefficients(hc)
    p2, q2 = canonical_coefficients(hc)
    for x in (-3.2, -1.1, -0.25, 0.4, 2.7):
        assert float(p1(x)) == pytest.approx(float(p2(x)), rel=1e-12)
        assert float(q1(x)) == pytest.approx(float(q2(x)), rel=1e-12, abs=1e-12)


def test_local_series_solves_the_peeled_equation():
    hc = ground_hc()
    sol = heun_local_series(hc, 40)
    assert sol.coeffs[0] == 1.0
    p, q = pre_canonical_coefficients(hc)
    # series factor alone: f'' + p f' + q f = 0 near the origin
    for x in (-0.3, -0.1, 0.05, 0.2):
        f = sum(c * x**k for k, c in enumerate(sol.coeffs))
        fp = sum(k * sol.coeffs[k] * x ** (k - 1) for k in range(1, 41))
        fpp = sum(k * (k - 1) * sol.coeffs[k] * x ** (k - 2) for k in range(2, 41))
        resid = fpp + float(p(x)) * fp + float(q(x)) * f
        scale = abs(fpp) + abs(float(p(x)) * fp) + abs(float(q(x)) * f)
        assert abs(resid) / scale < 1e-11


def test_physical_series_is_the_sign_flipped_local_series():
    hc = ground_hc()
    local = heun_local_series(hc, 20)
    phys = physical_series(hc, 20)
    signs = (-1.0) ** np.arange(21)
    assert np.allclose(phys.coeffs, local.coeffs * signs, rtol=1e-15)
    assert phys.exponent_a == local.exponent_a
    assert phys.scale_b == -local.scale_b
    # evaluable on the physical half-line
    u, du, _ = series_eval_with_derivs(phys, np.array([0.5, 2.0]))
    assert np.all(np.isfinite(u)) and np.all(np.isfinite(du))


@pytest.mark.parametrize("j,n", [(1, 0), (1, 3), (2, 1), (3, 5)])
def test_polynomial_condition_vanishes_on_closed_form_levels(j, n):
    params = CoulombParams(alpha=ALPHA, j=j)
    eps = spectrum_heun(ALPHA, j, n).e_over_mc2
    hc = map_to_heun(params, to_energy_params(params, eps))
    assert abs(polynomial_condition_residual(hc, n)) < 1e-12
    # the residual runs at O(alpha^2) scale, so 1e-5 off is clearly nonzero
    assert abs(polynomial_condition_residual(hc, n + 1)) > 1e-5


def test_polynomial_condition_moves_off_quantization():
    params = CoulombParams(alpha=ALPHA, j=1)
    eps = spectrum_heun(ALPHA, 1, 0).e_over_mc2 * (1.0 - 1e-3)
    hc = map_to_heun(params, to_energy_params(params, eps))
    assert abs(polynomial_condition_residual(hc, 0)) > 1e-7


def test_series_does_not_truly_terminate_at_a_quantized_level():
    """The single displayed condition does not kill the tail: the local
    series keeps order-one structure past the candidate degree."""
    hc = ground_hc()
    sol = heun_local_series(hc, 30)
    assert sol.terminated_at is None
    assert tail_ratio(sol, 0) > 1e-3


def test_resonant_index_is_rejected():
    with pytest.raises(ValueError, match="resonant"):
        heun_local_series(HeunCanonical(a=0.1, b=-1.0, c=-2.0, d=0.1, h=2.0), 10)


def test_tail_ratio_needs_enough_coefficients():
    hc = ground_hc()
    sol = heun_local_series(hc, 5)
    with pytest.raises(ValueError):
        tail_ratio(sol, 5)
