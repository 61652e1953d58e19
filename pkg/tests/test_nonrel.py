import math

import numpy as np
import pytest

from dkpcoulomb import (
    Branch,
    CoulombParams,
    ParitySign,
    big_small_split,
    coupled_residual,
    diagonalize_coupled,
    kummer_reduction,
    nonrel_big_equation,
    nonrel_effective_equation,
    nonrel_spectrum,
)


def test_big_small_split_roundtrip():
    rng = np.random.default_rng(3)
    phi1, ebar1, phi2, ebar2 = rng.normal(size=(4, 20))
    split = big_small_split(phi1, ebar1, phi2, ebar2)
    b1, b2 = split.big
    s1, s2 = split.small
    assert np.allclose(b1 + s1, phi1, atol=1e-15)
    assert np.allclose(s1 - b1, ebar1, atol=1e-15)
    assert np.allclose(b2 + s2, phi2, atol=1e-15)
    assert np.allclose(s2 - b2, ebar2, atol=1e-15)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_coupling_matrix_diagonalization(j):
    params = CoulombParams(alpha=0.1, j=j)
    sys = diagonalize_coupled(params)
    assert sys.eigenvalues == (float(j + 1), float(-j))
    assert sys.decoupled_nu == (float(j - 1), float(j + 1))
    nu = params.nu_radial
    K = np.array([[0.0, nu], [2.0 * nu, 1.0]])
    # rows are left eigenvectors: T K = diag(eigenvalues) T
    lhs = sys.transform @ K
    rhs = np.diag(sys.eigenvalues) @ sys.transform
    assert np.allclose(lhs, rhs, atol=1e-13)
    # eigenvalue <-> shifted index pairing
    assert sys.nu_for_eigenvalue(float(j + 1)) == pytest.approx(j + 1, rel=1e-12)
    assert sys.nu_for_eigenvalue(float(-j)) == pytest.approx(j - 1, abs=1e-12)


def test_diagonalize_needs_j_at_least_one():
    with pytest.raises(ValueError, match="j >= 1"):
        diagonalize_coupled(
            CoulombParams(alpha=0.1, j=0, parity=ParitySign.MINUS_TO_J_PLUS_1)
        )


def test_left_eigenrows_decouple_the_residual():
    """Projecting the coupled residual on a left eigenrow must reproduce the
    single-channel operator with the shifted index: feed the channel's own
    Kummer profile through the 2x2 system and check the projection vanishes."""
    j = 1
    params = CoulombParams(alpha=0.1, j=j)
    sys = diagonalize_coupled(params)
    lam = sys.eigenvalues[1]  # -j channel, nu_eff = j - 1
    nu_eff = sys.nu_for_eigenvalue(lam)
    lvl = nonrel_spectrum(params.alpha, params.mass, nu_eff, n=1)
    red = kummer_reduction(params.alpha, params.mass, lvl.e_over_mc2, nu_eff)

    r = np.linspace(0.5, 60.0, 400)
    h = 1e-5
    f = red.evaluate(r)
    df = (red.evaluate(r + h) - red.evaluate(r - h)) / (2.0 * h)
    d2f = (red.evaluate(r + h) - 2.0 * f + red.evaluate(r - h)) / h**2

    # lift the channel profile back through the inverse transform: B = T^{-1} e_2 f
    weights = np.linalg.solve(sys.transform, np.array([0.0, 1.0]))
    B = np.stack([weights[0] * f, weights[1] * f])
    dB = np.stack([weights[0] * df, weights[1] * df])
    d2B = np.stack([weights[0] * d2f, weights[1] * d2f])
    resid = coupled_residual(params, lvl.e_over_mc2, r, B, dB, d2B)
    projected = sys.transform[1] @ resid
    scale = np.max(np.abs(f)) * np.max(0.5 * r**2)
    assert np.max(np.abs(projected)) / scale < 1e-6


def test_coupled_residual_matches_hand_evaluation():
    params = CoulombParams(alpha=0.2, j=2)
    r = np.array([1.0, 2.5])
    B = np.array([[1.0, 0.5], [-0.3, 2.0]])
    dB = np.zeros_like(B)
    d2B = np.zeros_like(B)
    eps = -0.02
    nu = params.nu_radial
    got = coupled_residual(params, eps, r, B, dB, d2B)
    pot = 2.0 * (eps + params.alpha / r) - 2.0 * nu**2 / r**2
    want0 = 0.5 * r**2 * pot * B[0] - nu * B[1]
    want1 = 0.5 * r**2 * pot * B[1] - (2.0 * nu * B[0] + B[1])
    assert np.allclose(got[0], want0, rtol=1e-14)
    assert np.allclose(got[1], want1, rtol=1e-14)


def test_nonrel_spectrum_closed_form_and_j_inference():
    lvl = nonrel_spectrum(0.1, 1.0, 0.0, n=0)
    assert lvl.e_over_mc2 == pytest.approx(-0.005, rel=1e-15)
    assert lvl.branch is Branch.NONREL_MINUS
    assert lvl.j == 1  # nu_eff = j - 1 on the default branch
    plus = nonrel_spectrum(0.1, 1.0, 2.0, n=0, branch=Branch.NONREL_PLUS)
    assert plus.j == 1
    assert plus.e_over_mc2 == pytest.approx(-(0.1**2) / (2.0 * 9.0), rel=1e-14)
    with pytest.raises(ValueError, match="not a non-relativistic branch"):
        nonrel_spectrum(0.1, 1.0, 1.0, n=0, branch=Branch.HEUN)
    with pytest.raises(ValueError, match="non-negative integer"):
        nonrel_spectrum(0.1, 1.0, 1.0, n=-2)


def test_mass_scales_the_binding_linearly():
    a = nonrel_spectrum(0.1, 1.0, 1.0, n=0)
    b = nonrel_spectrum(0.1, 3.0, 1.0, n=0)
    assert a.e_over_mc2 == pytest.approx(b.e_over_mc2, rel=1e-15)
    assert b.mass == 3.0


@pytest.mark.parametrize("nu_eff,n", [(0.0, 0), (0.0, 2), (1.0, 1), (2.0, 3)])
def test_kummer_parameter_hits_negative_n_exactly_on_a_level(nu_eff, n):
    lvl = nonrel_spectrum(0.1, 1.0, nu_eff, n)
    red = kummer_reduction(0.1, 1.0, lvl.e_over_mc2, nu_eff)
    assert red.kummer.A == pytest.approx(-n, abs=1e-12)
    assert red.kummer.C == 2.0 * nu_eff + 2.0
    assert red.scale == pytest.approx(2.0 * math.sqrt(-2.0 * lvl.e_over_mc2), rel=1e-14)


def test_kummer_profile_solves_the_channel_equation():
    nu_eff, n = 1.0, 1
    lvl = nonrel_spectrum(0.1, 1.0, nu_eff, n)
    red = kummer_reduction(0.1, 1.0, lvl.e_over_mc2, nu_eff)
    ode = nonrel_effective_equation(0.1, 1.0, nu_eff, lvl.e_over_mc2)
    r = np.linspace(2.0, 80.0, 200)
    h = 1e-5
    f = red.evaluate(r)
    df = (red.evaluate(r + h) - red.evaluate(r - h)) / (2.0 * h)
    d2f = (red.evaluate(r + h) - 2.0 * f + red.evaluate(r - h)) / h**2
    resid = d2f + ode.p(r) * df + ode.q(r) * f
    assert np.max(np.abs(resid)) / np.max(np.abs(f)) < 1e-5
    # node count of the radial factor matches n
    sign_changes = np.sum(np.diff(np.sign(f)) != 0)
    assert sign_changes == n


def test_equation_builders_validate_inputs():
    params = CoulombParams(alpha=0.1, j=1)
    with pytest.raises(ValueError, match="must be < 0"):
        nonrel_big_equation(params, 0.01)
    with pytest.raises(ValueError, match="j >= 1"):
        nonrel_big_equation(
            CoulombParams(alpha=0.1, j=0, parity=ParitySign.MINUS_TO_J_PLUS_1), -0.01
        )
    with pytest.raises(ValueError, match="nu_eff >= 0"):
        nonrel_effective_equation(0.1, 1.0, -0.5, -0.01)
    with pytest.raises(ValueError, match="must be < 0"):
        kummer_reduction(0.1, 1.0, 0.02, 1.0)


def test_big_equation_is_the_nu_equals_j_channel():
    params = CoulombParams(alpha=0.1, j=2)
    eps = -0.003
    a = nonrel_big_equation(params, eps)
    b = nonrel_effective_equation(0.1, 1.0, 2.0, eps)
    r = np.array([0.7, 3.0, 11.0])
    assert np.allclose(a.p(r), b.p(r), rtol=1e-15)
    assert np.allclose(a.q(r), b.q(r), rtol=1e-15)
