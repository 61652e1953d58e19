"""Radial differential equations of the bound-state problem.

Every second-order equation is packaged as a RadialODE: a pair of coefficient
closures (p, q) for u'' + p u' + q u = 0, plus bookkeeping about singular
points and the independent variable. The first-order parity subsystems are
packaged as residual evaluators so that reconstructed field profiles can be
checked against them equation by equation.

Conventions. All imaginary units have been factored out of the first-order
systems: the stored amplitudes are real. For the 6-component sector the
stored vector is (Phi0, phi1, phi2, E1, E2, H1) with phi1 = -i Phi1 and
phi2 = -i Phi2; for the 4-component sector it is (Phi1, E1b, H1b, H2b) with
E1b = -i E1, H1b = -i H1, H2b = -i H2; for the j=0 trio it is
(phi0, phi2, E2) with phi0 = Phi0 and phi2 = -i Phi2. With these choices
every displayed equation is real, and the original components are recovered
by multiplying the barred/lower-case entries by i.

The two main-function equations are transcribed independently in each
variable in which they are displayed; change_of_variable helpers implement
the exact chain rule. The r-form and x-form of the first main equation agree
under the chain rule; for the second main equation they do not (the x-form
differs from the chain-rule image of the r-form in the 1/x part of p and in
one sign of q), and both versions are kept so the discrepancy stays visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .params import CoulombParams

__all__ = [
    "ODELabel",
    "SystemLabel",
    "SingularPoint",
    "RadialODE",
    "FirstOrderSystem",
    "build_scalar_like",
    "build_jzero",
    "build_main_type1",
    "build_main_type1_x",
    "build_main_type2",
    "build_main_type2_x",
    "build_main_type2_y",
    "to_x_variable",
    "to_y_variable",
    "build_first_order",
    "residual_system",
    "PARITY6_COMPONENTS",
    "PARITY4_COMPONENTS",
    "JZERO_COMPONENTS",
]


class ODELabel(Enum):
    SCALAR_LIKE = "scalar_like"
    JZERO = "jzero"
    MAIN_TYPE1 = "main_type1"
    MAIN_TYPE1_X = "main_type1_x"
    MAIN_TYPE2 = "main_type2"
    MAIN_TYPE2_X = "main_type2_x"
    MAIN_TYPE2_Y = "main_type2_y"
    NONREL_BIG = "nonrel_big"
    NONREL_EFF = "nonrel_eff"


class SystemLabel(Enum):
    PARITY4 = "parity4"
    PARITY6 = "parity6"
    JZERO = "jzero"


@dataclass(frozen=True)
class SingularPoint:
    location: float
    kind: str  # "regular" | "irregular" | "non-physical"


@dataclass(frozen=True)
class RadialODE:
    """u'' + p(t) u' + q(t) u = 0 in the variable named by `variable`."""

    label: ODELabel
    p: Callable
    q: Callable
    singular_points: tuple
    domain: tuple
    variable: str = "r"

    def singular_kinds(self) -> dict:
        return {s.location: s.kind for s in self.singular_points}


@dataclass(frozen=True)
class FirstOrderSystem:
    """Residual evaluator for one of the displayed first-order systems.

    residual(r, values, derivs) plugs the stored real amplitudes and their
    r-derivatives into each displayed equation (in display order) and returns
    the left-hand sides; an exact solution gives identically zero.
    """

    label: SystemLabel
    size: int
    components: tuple
    residual: Callable


PARITY6_COMPONENTS = ("Phi0", "phi1", "phi2", "E1", "E2", "H1")
PARITY4_COMPONENTS = ("Phi1", "E1b", "H1b", "H2b")
JZERO_COMPONENTS = ("phi0", "phi2", "E2")


def _require_bound(params: CoulombParams, epsilon: float) -> None:
    if not 0.0 < epsilon < params.mass:
        raise ValueError(
            f"bound-state energy requires 0 < epsilon < M, got {epsilon}"
        )


def build_scalar_like(params: CoulombParams, epsilon: float) -> RadialODE:
    """Second-order equation of the 4-component sector.

    Identical to the scalar-particle Coulomb radial equation; defined for
    every j >= 0 even though the j=0 physical sector is the separate trio.
    """
    _require_bound(params, epsilon)
    alpha, M, jj = params.alpha, params.mass, params.j * (params.j + 1)

    def p(r):
        return 2.0 / r

    def q(r):
        return (epsilon + alpha / r) ** 2 - M**2 - jj / r**2

    return RadialODE(
        label=ODELabel.SCALAR_LIKE,
        p=p,
        q=q,
        singular_points=(SingularPoint(0.0, "regular"),),
        domain=(0.0, math.inf),
    )


def build_jzero(params: CoulombParams, epsilon: float) -> RadialODE:
    """j=0 equation for f = r E2 in the scaled variable x = epsilon*r > 0."""
    if params.j != 0:
        raise ValueError("the reduced j=0 equation requires j = 0")
    _require_bound(params, epsilon)
    alpha = params.alpha
    lam2 = (params.mass / epsilon) ** 2

    def p(x):
        return np.zeros_like(np.asarray(x, dtype=float))

    def q(x):
        return 1.0 - lam2 + 2.0 * alpha / x - (2.0 - alpha**2) / x**2

    return RadialODE(
        label=ODELabel.JZERO,
        p=p,
        q=q,
        singular_points=(SingularPoint(0.0, "regular"),),
        domain=(0.0, math.inf),
        variable="x",
    )


def build_main_type1(params: CoulombParams, epsilon: float) -> RadialODE:
    """First main equation for Phi0 in r (6-component sector, j >= 1)."""
    if params.j < 1:
        raise ValueError("the 6-component sector requires j >= 1")
    _require_bound(params, epsilon)
    alpha, M = params.alpha, params.mass
    nu2 = params.nu_radial**2

    def p(r):
        return (3.0 - epsilon / (epsilon + alpha / r)) / r

    def q(r):
        return (
            epsilon**2
            - alpha**2 / r**2
            - 3.0 * M**2
            + 2.0 * M**2 * epsilon / (epsilon + alpha / r)
            - 2.0 * nu2 / r**2
        )

    return RadialODE(
        label=ODELabel.MAIN_TYPE1,
        p=p,
        q=q,
        singular_points=(
            SingularPoint(0.0, "regular"),
            SingularPoint(-alpha / epsilon, "non-physical"),
        ),
        domain=(0.0, math.inf),
    )


def build_main_type1_x(params: CoulombParams, epsilon: float) -> RadialODE:
    """First main equation in x = -(epsilon/alpha) r < 0, as displayed."""
    if params.j < 1:
        raise ValueError("the 6-component sector requires j >= 1")
    _require_bound(params, epsilon)
    alpha = params.alpha
    lam = params.mass / epsilon
    Lambda2 = alpha**2 * lam**2
    nu2 = params.nu_radial**2

    def p(x):
        return 3.0 / x - 1.0 / (x - 1.0)

    def q(x):
        return (
            alpha**2
            - Lambda2
            - (alpha**2 + 2.0 * nu2) / x**2
            + 2.0 * Lambda2 / (x - 1.0)
        )

    return RadialODE(
        label=ODELabel.MAIN_TYPE1_X,
        p=p,
        q=q,
        singular_points=(
            SingularPoint(0.0, "regular"),
            SingularPoint(1.0, "non-physical"),
        ),
        domain=(-math.inf, 0.0),
        variable="x",
    )


def build_main_type2(params: CoulombParams, epsilon: float) -> RadialODE:
    """Second main equation for Phi0 in r, as displayed.

    The point r=0 is an irregular singular point here: r^2 q diverges like
    1/r^2 because of the nu^2/(r^4 ...) term.
    """
    if params.j < 1:
        raise ValueError("the 6-component sector requires j >= 1")
    _require_bound(params, epsilon)
    alpha, M = params.alpha, params.mass
    nu2 = params.nu_radial**2

    def p(r):
        return (6.0 + alpha / (r * (epsilon + alpha / r))) / r

    def q(r):
        den = epsilon * r + alpha
        return (
            epsilon**2
            - M**2
            + 2.0 * epsilon**2 * alpha / den
            - alpha * nu2 / (r**4 * M**2 * den)
            - 0.5 * alpha * (-15.0 + 4.0 * nu2 - 2.0 * alpha**2) / (r**2 * den)
            - epsilon * (-5.0 + 2.0 * nu2 - 3.0 * alpha**2) / (r * den)
        )

    return RadialODE(
        label=ODELabel.MAIN_TYPE2,
        p=p,
        q=q,
        singular_points=(
            SingularPoint(0.0, "irregular"),
            SingularPoint(-alpha / epsilon, "non-physical"),
        ),
        domain=(0.0, math.inf),
    )


def build_main_type2_x(params: CoulombParams, epsilon: float) -> RadialODE:
    """Second main equation in x, transcribed from its displayed x-form.

    Not the chain-rule image of the r-form: the displayed x-form has 6/x
    where the chain rule produces 7/x, and the opposite sign on the
    (5 + 2 nu^2 - 3 alpha^2)/x term. Kept verbatim; compare with
    to_x_variable(build_main_type2(...)) to see the difference.
    """
    if params.j < 1:
        raise ValueError("the 6-component sector requires j >= 1")
    _require_bound(params, epsilon)
    alpha = params.alpha
    lam2 = (params.mass / epsilon) ** 2
    nu2 = params.nu_radial**2

    def p(x):
        return (6.0 - x / (x - 1.0)) / x

    def q(x):
        return (
            (1.0 - lam2) * alpha**2
            - 2.0 * alpha**2 / (x - 1.0)
            + nu2 / (alpha**2 * lam2 * x**4 * (x - 1.0))
            + (-15.0 + 4.0 * nu2 - 2.0 * alpha**2) / (2.0 * x**2 * (x - 1.0))
            - (5.0 + 2.0 * nu2 - 3.0 * alpha**2) / (x * (x - 1.0))
        )

    return RadialODE(
        label=ODELabel.MAIN_TYPE2_X,
        p=p,
        q=q,
        singular_points=(
            SingularPoint(0.0, "irregular"),
            SingularPoint(1.0, "non-physical"),
        ),
        domain=(-math.inf, 0.0),
        variable="x",
    )


def build_main_type2_y(params: CoulombParams, epsilon: float) -> RadialODE:
    """Second main equation in y = 1/x, as displayed.

    Consistent with the displayed x-form under the y = 1/x chain rule
    (unlike the r-form/x-form pair).
    """
    if params.j < 1:
        raise ValueError("the 6-component sector requires j >= 1")
    _require_bound(params, epsilon)
    alpha = params.alpha
    lam2 = (params.mass / epsilon) ** 2
    nu2 = params.nu_radial**2

    def p(y):
        return (4.0 * y - 3.0) / (y * (1.0 - y))

    def q(y):
        return (
            (1.0 - lam2) * alpha**2 / y**4
            - 2.0 * alpha**2 / (y**3 * (1.0 - y))
            + nu2 * y / (alpha**2 * lam2 * (1.0 - y))
            - (15.0 - 4.0 * nu2 + 2.0 * alpha**2) / (2.0 * y * (1.0 - y))
            - (5.0 + 2.0 * nu2 - 3.0 * alpha**2) / (y**2 * (1.0 - y))
        )

    return RadialODE(
        label=ODELabel.MAIN_TYPE2_Y,
        p=p,
        q=q,
        singular_points=(
            SingularPoint(0.0, "irregular"),
            SingularPoint(1.0, "non-physical"),
        ),
        domain=(-math.inf, 0.0),
        variable="y",
    )


def to_x_variable(ode: RadialODE, params: CoulombParams, epsilon: float) -> RadialODE:
    """Exact change of variable x = -(epsilon/alpha) r on an r-form ODE.

    For the first main equation this reproduces the displayed x-form
    identically; for the second it produces the true chain-rule image, which
    differs from the displayed x-form (see build_main_type2_x).
    """
    if ode.label not in (ODELabel.MAIN_TYPE1, ODELabel.MAIN_TYPE2):
        raise ValueError(f"x-variable transform not defined for {ode.label}")
    s = -epsilon / params.alpha  # x = s r, s < 0

    def p(x):
        return ode.p(x / s) / s

    def q(x):
        return ode.q(x / s) / s**2

    label = (
        ODELabel.MAIN_TYPE1_X if ode.label is ODELabel.MAIN_TYPE1 else ode.label
    )
    points = tuple(
        SingularPoint(s * sp.location, sp.kind) for sp in ode.singular_points
    )
    return RadialODE(
        label=label,
        p=p,
        q=q,
        singular_points=points,
        domain=(-math.inf, 0.0),
        variable="x",
    )


_Y_PAIR = {
    ODELabel.MAIN_TYPE2_X: ODELabel.MAIN_TYPE2_Y,
    ODELabel.MAIN_TYPE2_Y: ODELabel.MAIN_TYPE2_X,
}


def to_y_variable(ode: RadialODE) -> RadialODE:
    """Exact reciprocal change of variable y = 1/x. Involutive."""
    if ode.variable not in ("x", "y"):
        raise ValueError("reciprocal transform expects an x- or y-form ODE")

    def p(y):
        return 2.0 / y - ode.p(1.0 / y) / y**2

    def q(y):
        return ode.q(1.0 / y) / y**4

    points = [SingularPoint(0.0, "irregular")]
    for sp in ode.singular_points:
        if sp.location != 0.0:
            points.append(SingularPoint(1.0 / sp.location, sp.kind))
    new_var = "y" if ode.variable == "x" else "x"
    return RadialODE(
        label=_Y_PAIR.get(ode.label, ode.label),
        p=p,
        q=q,
        singular_points=tuple(points),
        domain=ode.domain,
        variable=new_var,
    )


def _stack(parts):
    return np.stack(np.broadcast_arrays(*parts))


def build_first_order(
    label: SystemLabel, params: CoulombParams, epsilon: float
) -> FirstOrderSystem:
    """Residual evaluator for the requested first-order system.

    Component orders are PARITY6_COMPONENTS, PARITY4_COMPONENTS and
    JZERO_COMPONENTS; equations come back in display order.
    """
    alpha, M = params.alpha, params.mass
    nu = params.nu_radial

    if label is SystemLabel.PARITY6:
        if params.j < 1:
            raise ValueError("the 6-equation system requires j >= 1")

        def residual(r, values, derivs):
            Phi0, phi1, phi2, E1, E2, H1 = values
            dPhi0, dphi1, _, _, dE2, dH1 = derivs
            k = epsilon + alpha / r
            return _stack(
                [
                    dE2 + 2.0 * E2 / r + 2.0 * nu / r * E1 + M * Phi0,
                    k * E1 + dH1 + H1 / r - M * phi1,
                    k * E2 - 2.0 * nu / r * H1 - M * phi2,
                    k * phi1 + nu / r * Phi0 - M * E1,
                    -k * phi2 + dPhi0 + M * E2,
                    -(dphi1 + phi1 / r) - nu / r * phi2 + M * H1,
                ]
            )

        return FirstOrderSystem(label, 6, PARITY6_COMPONENTS, residual)

    if label is SystemLabel.PARITY4:

        def residual(r, values, derivs):
            Phi1, E1b, H1b, H2b = values
            dPhi1, _, dH1b, _ = derivs
            k = epsilon + alpha / r
            return _stack(
                [
                    -k * E1b - (dH1b + H1b / r) - nu / r * H2b - M * Phi1,
                    k * Phi1 + M * E1b,
                    (dPhi1 + Phi1 / r) + M * H1b,
                    2.0 * nu / r * Phi1 - M * H2b,
                ]
            )

        return FirstOrderSystem(label, 4, PARITY4_COMPONENTS, residual)

    if label is SystemLabel.JZERO:
        if params.j != 0:
            raise ValueError("the j=0 trio requires j = 0")

        def residual(r, values, derivs):
            phi0, phi2, E2 = values
            dphi0, _, dE2 = derivs
            k = epsilon + alpha / r
            return _stack(
                [
                    -(dE2 + 2.0 * E2 / r) - M * phi0,
                    k * E2 - M * phi2,
                    k * phi2 - dphi0 - M * E2,
                ]
            )

        return FirstOrderSystem(label, 3, JZERO_COMPONENTS, residual)

    raise ValueError(f"unknown system label {label!r}")


def residual_system(system: FirstOrderSystem, r, values, derivs):
    """Evaluate system residuals; thin call-through kept for discoverability."""
    return system.residual(r, values, derivs)
