"""Single configuration record for every numeric tolerance in the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ToleranceConfig:
    """All tunable tolerances, with their package-wide defaults.

    Every module takes an optional ``config`` argument; passing one record
    everywhere keeps a run's thresholds mutually consistent.
    """

    # Minimum distance between distinct zeros (absolute, on |x| ~ O(1) data).
    separation: float = 1e-9
    # Clustering radius for root extraction, scaled by max(1, |center|).
    # A genuine mu-fold root of a double-precision polynomial splits into a
    # cluster of diameter ~eps**(1/mu), so the structural check also admits
    # that floor (see polynomials.zeros_from_coeffs).
    cluster_radius: float = 1e-6
    # Relative residual allowed when checking that coefficients admit a
    # multiplicity signature (forward map reproduction).
    structure_residual: float = 1e-8
    # Relative tolerance for the linear constraints on coefficient velocities.
    ydot_consistency: float = 1e-9
    # Stop the descending-modulus recursion below this magnitude.
    landen_stop: float = 1e-12
    # Iteration cap for the modulus recursion.
    landen_max_iter: int = 64
    # Newton residual required per accepted continuation step.
    continuation_residual: float = 1e-12
    # Maximum consecutive step halvings before a continuation stalls.
    continuation_max_halvings: int = 40
    # Default absolute tolerance for adaptive quadrature.
    quadrature_tol: float = 1e-12
    # Default local error per step for the embedded Runge-Kutta oracle.
    ode_local_error: float = 1e-10
    # |y| beyond which a trajectory is declared blown up.
    blowup_threshold: float = 1e8
    # Switch to series limit formulas when |Delta| or |A| is below this
    # times the problem scale.
    degenerate_switch: float = 1e-8
    # Residual accepted when matching elliptic parameters to initial data.
    elliptic_fit_residual: float = 1e-8
    # Residual of the common-zero condition accepted by the reduction,
    # scaled by the squared size of the coefficient table.
    conda_residual: float = 1e-9


DEFAULT_CONFIG = ToleranceConfig()
