"""Bound states of a spin-1 particle in a Coulomb field.

The ten radial amplitudes of the first-order matrix wave equation split by
parity into a 4-component and a 6-component sector; each reduces to
second-order equations whose bound-state spectra this package computes in
closed form and verifies with closed-form-blind numerical oracles.
"""

from .angular import (
    COMPONENT_NAMES,
    ParityConstraint,
    WignerIndex,
    parity_block,
    parity_constraints,
    unitarity_defect,
    verify_recurrences,
    wigner_small_d,
    wigner_small_d_dtheta,
)
from .fields import (
    FieldProfile,
    h1_dual_residual,
    lorentz_residual,
    reconstruct,
    system_residuals,
)
from .heun import (
    HeunCanonical,
    heun_local_series,
    map_to_heun,
    physical_series,
    polynomial_condition_residual,
    tail_ratio,
)
from .nonrel import (
    BigSmallSplit,
    DiagonalizedSystem,
    KummerReduction,
    big_small_split,
    coupled_residual,
    diagonalize_coupled,
    kummer_reduction,
    nonrel_big_equation,
    nonrel_effective_equation,
    nonrel_spectrum,
)
from .oracle import (
    OracleResult,
    ShootingConfig,
    fd_matrix_eigen,
    integrate_decaying,
    mismatch_scan,
    shoot_eigenvalue,
)
from .params import (
    CoulombParams,
    CouplingStrengthWarning,
    EnergyParams,
    ParitySign,
    derived_nu,
    to_energy_params,
)
from .radialeq import (
    FirstOrderSystem,
    ODELabel,
    RadialODE,
    SystemLabel,
    build_first_order,
    build_jzero,
    build_main_type1,
    build_main_type1_x,
    build_main_type2,
    build_main_type2_x,
    build_main_type2_y,
    build_scalar_like,
    residual_system,
    to_x_variable,
    to_y_variable,
)
from .series import (
    KummerParams,
    SeriesSolution,
    frobenius_indices,
    jzero_indices,
    jzero_recurrence,
    jzero_nontermination_margin,
    jzero_termination_ratio,
    kummer_eval,
    series_eval,
    series_eval_with_derivs,
    singular_limits,
)
from .spectra import (
    Branch,
    EnergyLevel,
    heun_energy_from_neff,
    nonrel_limit,
    spectrum_heun,
    spectrum_jzero,
    spectrum_scalar_like,
)
from .verify import CriterionResult, list_criteria, run_all, run_criterion

__version__ = "0.1.0"
