import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dkpcoulomb import (
    Branch,
    heun_energy_from_neff,
    nonrel_limit,
    spectrum_heun,
    spectrum_jzero,
    spectrum_scalar_like,
)

SCALAR_J0_A03 = [
    0.9486832980505138,
    0.987762965329069,
    0.9946917938265514,
    0.9970544855015816,
]
HEUN_J1_A01 = [
    0.9983319235128816,
    0.9993304189660129,
    0.9996412487328459,
    0.9997768565045715,
]


def test_scalar_like_tower_frozen():
    for n, want in enumerate(SCALAR_J0_A03):
        lvl = spectrum_scalar_like(0.3, 0, n)
        assert lvl.e_over_mc2 == pytest.approx(want, rel=1e-14)
        assert lvl.branch is Branch.SCALAR_LIKE
        assert (lvl.n, lvl.j, lvl.alpha) == (n, 0, 0.3)
    # ground level of the alpha = 0.3, j = 0 channel is exactly sqrt(0.9)
    assert SCALAR_J0_A03[0] == pytest.approx(math.sqrt(0.9), rel=1e-15)


def test_scalar_like_alpha01_pins():
    assert spectrum_scalar_like(0.1, 1, 0).e_over_mc2 == pytest.approx(
        0.9987481727669195, rel=1e-14
    )
    assert spectrum_scalar_like(0.1, 0, 0).e_over_mc2 == pytest.approx(
        0.994936153005124, rel=1e-14
    )
    assert spectrum_scalar_like(0.1, 0, 1).e_over_mc2 == pytest.approx(
        0.9987396627991164, rel=1e-14
    )


def test_six_component_tower_frozen():
    for n, want in enumerate(HEUN_J1_A01):
        lvl = spectrum_heun(0.1, 1, n)
        assert lvl.e_over_mc2 == pytest.approx(want, rel=1e-14)
        assert lvl.branch is Branch.HEUN
    # effective N of the ground level is the regular origin exponent plus one
    assert spectrum_heun(0.1, 1, 0).n_effective == pytest.approx(
        math.sqrt(3.01), rel=1e-15
    )


def test_jzero_tower_is_degenerate_with_scalar_j1():
    """Gamma = (1 + sqrt(9 - 4 alpha^2))/2 equals 1/2 + sqrt((3/2)^2 - alpha^2),
    so the whole j=0 tower coincides with the scalar-like j=1 tower."""
    for alpha in (0.05, 0.1, 0.3):
        for n in range(4):
            a = spectrum_jzero(alpha, n)
            b = spectrum_scalar_like(alpha, 1, n)
            assert a.e_over_mc2 == pytest.approx(b.e_over_mc2, rel=1e-15)
            assert a.n_effective == pytest.approx(b.n_effective, rel=1e-15)
    assert spectrum_jzero(0.05, 0).e_over_mc2 == pytest.approx(
        0.9996873860004086, rel=1e-14
    )


def test_energies_sit_in_the_bound_window():
    for lvl in (
        spectrum_scalar_like(0.4, 0, 2),
        spectrum_jzero(1.2, 0),
        spectrum_heun(0.45, 1, 0),
    ):
        assert 0.0 < lvl.e_over_mc2 < 1.0


def test_scalar_like_rejects_overcritical_alpha():
    with pytest.raises(ValueError, match="collapses"):
        spectrum_scalar_like(0.6, 0, 0)
    with pytest.raises(ValueError, match="collapses"):
        spectrum_scalar_like(1.5, 1, 0)


def test_jzero_rejects_alpha_past_three_halves():
    with pytest.raises(ValueError, match="imaginary"):
        spectrum_jzero(1.5, 0)


def test_six_component_needs_j_at_least_one():
    with pytest.raises(ValueError, match="j >= 1"):
        spectrum_heun(0.1, 0, 0)


@pytest.mark.parametrize("bad_n", [-1, 0.5, 2.0])
def test_n_must_be_a_non_negative_integer(bad_n):
    with pytest.raises(ValueError, match="non-negative integer"):
        spectrum_scalar_like(0.1, 1, bad_n)


def test_heun_energy_from_neff_limits():
    with pytest.raises(ValueError, match="no real level"):
        heun_energy_from_neff(0.5, 1.0)
    # large N: binding approaches -alpha^2 / (2 N^2) like the other branches
    alpha, big_n = 0.2, 1000.0
    e = heun_energy_from_neff(alpha, big_n)
    assert (1.0 - e) * 2.0 * big_n**2 / alpha**2 == pytest.approx(1.0, rel=1e-6)


def test_nonrel_limit_matches_the_closed_form():
    lvl = spectrum_scalar_like(0.1, 1, 0)
    want = -(0.1**2) / (2.0 * lvl.n_effective**2)
    assert nonrel_limit(lvl) == pytest.approx(want, rel=1e-15)
    # and it is the leading piece of E - 1, off only at O(alpha^4 / N^4)
    gap = (lvl.e_over_mc2 - 1.0) - nonrel_limit(lvl)
    assert abs(gap) < (0.1 / lvl.n_effective) ** 4


def test_mass_is_carried_not_folded_in():
    a = spectrum_scalar_like(0.1, 1, 0, mass=1.0)
    b = spectrum_scalar_like(0.1, 1, 0, mass=2.0)
    assert a.e_over_mc2 == b.e_over_mc2
    assert b.mass == 2.0


@settings(max_examples=60, deadline=None)
@given(
    alpha=st.floats(0.01, 0.45),
    j=st.integers(0, 4),
    n=st.integers(0, 8),
)
def test_levels_rise_monotonically_toward_the_continuum(alpha, j, n):
    lo = spectrum_scalar_like(alpha, j, n)
    hi = spectrum_scalar_like(alpha, j, n + 1)
    assert lo.e_over_mc2 < hi.e_over_mc2 < 1.0
    assert hi.n_effective == pytest.approx(lo.n_effective + 1.0, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(alpha=st.floats(0.01, 0.45), j=st.integers(1, 4), n=st.integers(0, 8))
def test_six_component_levels_rise_monotonically(alpha, j, n):
    lo = spectrum_heun(alpha, j, n)
    hi = spectrum_heun(alpha, j, n + 1)
    assert lo.e_over_mc2 < hi.e_over_mc2 < 1.0
