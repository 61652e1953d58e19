import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dkpcoulomb import (
    ParitySign,
    WignerIndex,
    parity_block,
    parity_constraints,
    unitarity_defect,
    verify_recurrences,
    wigner_small_d,
    wigner_small_d_dtheta,
)

THETA = 0.7


def test_small_d_against_closed_forms():
    # the index triple names D_sigma = d^j_{-m, sigma}
    c, s = math.cos(THETA), math.sin(THETA)
    cases = [
        (WignerIndex(1, 0, 0), c),
        (WignerIndex(1, -1, 1), (1.0 + c) / 2.0),
        (WignerIndex(1, -1, 0), -s / math.sqrt(2.0)),
        (WignerIndex(1, -1, -1), (1.0 - c) / 2.0),
        (WignerIndex(2, 0, 0), (3.0 * c**2 - 1.0) / 2.0),
        (WignerIndex(2, -1, 1), (2.0 * c**2 + c - 1.0) / 2.0),
    ]
    for idx, want in cases:
        assert wigner_small_d(idx, THETA) == pytest.approx(want, abs=1e-14)


def test_small_d_at_zero_angle_is_kronecker():
    for j in (1, 3):
        for m in range(-j, j + 1):
            for sigma in range(-min(j, 2), min(j, 2) + 1):
                want = 1.0 if sigma == -m else 0.0
                assert wigner_small_d(WignerIndex(j, m, sigma), 0.0) == pytest.approx(
                    want, abs=1e-14
                )


@given(
    j=st.integers(min_value=1, max_value=8),
    theta=st.floats(min_value=0.05, max_value=math.pi - 0.05),
    data=st.data(),
)
@settings(max_examples=60, deadline=None)
def test_row_unitarity(j, theta, data):
    m = data.draw(st.integers(min_value=-j, max_value=j))
    assert unitarity_defect(j, m, theta) < 1e-12


@given(
    j=st.integers(min_value=1, max_value=6),
    theta=st.floats(min_value=0.1, max_value=math.pi - 0.1),
    data=st.data(),
)
@settings(max_examples=40, deadline=None)
def test_theta_derivative_matches_central_difference(j, theta, data):
    m = data.draw(st.integers(min_value=-j, max_value=j))
    sigma = data.draw(st.integers(min_value=-min(j, 2), max_value=min(j, 2)))
    idx = WignerIndex(j, m, sigma)
    h = 1e-6
    fd = (wigner_small_d(idx, theta + h) - wigner_small_d(idx, theta - h)) / (2.0 * h)
    assert wigner_small_d_dtheta(idx, theta) == pytest.approx(fd, abs=5e-9)


@pytest.mark.parametrize("j", [1, 4, 10])
def test_recurrences_hold_on_a_grid(j):
    grid = np.linspace(0.05, math.pi - 0.05, 100)
    assert verify_recurrences(j, grid) < 1e-10


def test_index_validation():
    with pytest.raises(ValueError):
        WignerIndex(1, 2, 0)
    with pytest.raises(ValueError):
        WignerIndex(-1, 0, 0)
    with pytest.raises(ValueError):
        verify_recurrences(0, np.linspace(0.1, 1.0, 10))


def test_parity_block_is_an_exact_involution():
    block = parity_block()
    assert block.dtype.kind == "i"
    assert np.array_equal(block @ block, np.eye(3, dtype=int))


def test_parity_constraints_split_the_components():
    plus = parity_constraints(ParitySign.MINUS_TO_J_PLUS_1, 2)
    minus = parity_constraints(ParitySign.MINUS_TO_J, 2)
    # the two sectors never share a surviving component
    assert not (set(plus.relations) & set(minus.relations))
    for constraint in (plus, minus):
        assert constraint.j == 2
        assert len(constraint.relations) > 0
