"""Derivative identities linking zero velocities and coefficient velocities.

Differentiating the factored form of a multi-zero polynomial in time and
evaluating z-derivatives at each zero yields (a) M - N linear constraints
on the coefficient velocities and (b) one transfer row per zero giving its
velocity.  This module builds those systems, eliminates complementary
coefficient velocities in favor of a selected subset, and carries the
explicit closed forms of that elimination for the quartic two-zero cases.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import Collision, InconsistentYdot, SingularMinor
from .polynomials import MultiRootPolynomial, SelectedPair

_MINOR_COND_LIMIT = 1e12


@dataclass(frozen=True)
class DerivativeSystem:
    """Linear structure tying ydot to xdot at a fixed zero configuration."""

    polynomial: MultiRootPolynomial
    constraint_matrix: np.ndarray  # (M-N, M)
    transfer_matrix: np.ndarray  # (N, M)
    prefactors: np.ndarray  # (N,)

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def n_zeros(self) -> int:
        return self.polynomial.n_distinct


def _falling(total: int, steps: int) -> float:
    """(total)! / (total - steps)! as a float."""
    out = 1.0
    for i in range(steps):
        out *= total - i
    return out


def build_derivative_system(
    p: MultiRootPolynomial, config: ToleranceConfig = DEFAULT_CONFIG
) -> DerivativeSystem:
    """Populate constraint and transfer rows for the polynomial ``p``."""
    m_total = p.degree
    xs = p.values
    mus = p.signature
    n = len(xs)

    for (a, b) in itertools.combinations(range(n), 2):
        if abs(xs[a] - xs[b]) <= config.separation:
            raise Collision(f"zeros {xs[a]!r} and {xs[b]!r} too close")

    rows = []
    for x, mu_n in zip(xs, mus):
        for mu in range(mu_n - 1):
            row = np.zeros(m_total, dtype=complex)
            for m in range(1, m_total - mu + 1):
                row[m - 1] = _falling(m_total - m, mu) * x ** (m_total - m - mu)
            rows.append(row)
    constraint = (
        np.array(rows, dtype=complex)
        if rows
        else np.zeros((0, m_total), dtype=complex)
    )

    transfer = np.zeros((n, m_total), dtype=complex)
    prefactors = np.zeros(n, dtype=complex)
    for i, (x, mu_n) in enumerate(zip(xs, mus)):
        for m in range(1, m_total - mu_n + 2):
            transfer[i, m - 1] = _falling(m_total - m, mu_n - 1) * x ** (
                m_total - m - mu_n + 1
            )
        prod = 1.0 + 0.0j
        for j, (xl, mu_l) in enumerate(zip(xs, mus)):
            if j != i:
                prod *= (x - xl) ** mu_l
        prefactors[i] = -1.0 / (math.factorial(mu_n) * prod)
    return DerivativeSystem(p, constraint, transfer, prefactors)


def constraint_residual(sys: DerivativeSystem, ydot) -> float:
    """Largest normalized violation of the linear constraints by ``ydot``."""
    yd = np.asarray(ydot, dtype=complex)
    worst = 0.0
    for row in sys.constraint_matrix:
        scale = 1.0 + float(np.linalg.norm(row) * np.linalg.norm(yd))
        worst = max(worst, abs(row @ yd) / scale)
    return worst


def xdot_from_ydot(
    sys: DerivativeSystem, ydot, config: ToleranceConfig = DEFAULT_CONFIG
) -> tuple[complex, ...]:
    """Zero velocities from a full, constraint-consistent ydot vector."""
    yd = np.asarray(ydot, dtype=complex)
    if yd.shape != (sys.degree,):
        raise InconsistentYdot(f"expected {sys.degree} velocities, got {yd.shape}")
    resid = constraint_residual(sys, yd)
    if resid > config.ydot_consistency:
        raise InconsistentYdot(
            f"constraint violation {resid:.3g} exceeds {config.ydot_consistency}"
        )
    return tuple(sys.prefactors * (sys.transfer_matrix @ yd))


def complete_ydot(
    sys: DerivativeSystem,
    selected,
    ydot_selected,
    config: ToleranceConfig = DEFAULT_CONFIG,
) -> tuple[complex, ...]:
    """Extend the selected coefficient velocities to the full M-vector.

    ``selected`` is a SelectedPair or a tuple of 1-based coefficient
    indices, one per distinct zero.  The complementary velocities solve the
    constraint rows exactly (to linear-solve precision).
    """
    if isinstance(selected, SelectedPair):
        selected = selected.indices
    selected = tuple(int(m) for m in selected)
    m_total = sys.degree
    if len(selected) != sys.n_zeros or len(set(selected)) != len(selected):
        raise InconsistentYdot(
            f"need {sys.n_zeros} distinct selected indices, got {selected}"
        )
    if any(not 1 <= m <= m_total for m in selected):
        raise InconsistentYdot(f"selected indices {selected} out of range")
    vals = np.asarray(ydot_selected, dtype=complex)
    if vals.shape != (len(selected),):
        raise InconsistentYdot("one velocity per selected index is required")

    complement = [m for m in range(1, m_total + 1) if m not in selected]
    c_sel = sys.constraint_matrix[:, [m - 1 for m in selected]]
    c_comp = sys.constraint_matrix[:, [m - 1 for m in complement]]
    if complement:
        if np.linalg.cond(c_comp) > _MINOR_COND_LIMIT:
            raise SingularMinor(
                f"complementary minor for selection {selected} is singular"
            )
        comp_vals = np.linalg.solve(c_comp, -c_sel @ vals)
    else:
        comp_vals = np.zeros(0, dtype=complex)

    full = np.zeros(m_total, dtype=complex)
    for m, v in zip(selected, vals):
        full[m - 1] = v
    for m, v in zip(complement, comp_vals):
        full[m - 1] = v
    return tuple(full)


def ydot_from_xdot(p: MultiRootPolynomial, xdot) -> tuple[complex, ...]:
    """Coefficient velocities from zero velocities (chain rule)."""
    xd = np.asarray(xdot, dtype=complex)
    if xd.shape != (p.n_distinct,):
        raise InconsistentYdot(f"expected {p.n_distinct} velocities, got {xd.shape}")
    m_total = p.degree
    jac = np.zeros((m_total, p.n_distinct), dtype=complex)
    for i, (x_i, mu_i) in enumerate(p.zeros):
        # d/dx_i of prod (z - x_l)^mu_l, as a polynomial in z.
        coeffs = [complex(-mu_i)]
        for j, (x_j, mu_j) in enumerate(p.zeros):
            rep = mu_i - 1 if j == i else mu_j
            for _ in range(rep):
                nxt = [0j] * (len(coeffs) + 1)
                for k, c in enumerate(coeffs):
                    nxt[k] += c
                    nxt[k + 1] -= c * x_j
                coeffs = nxt
        # coeffs has degree M-1: entry for z^(M-m) is column value at row m.
        for m in range(1, m_total + 1):
            jac[m - 1, i] = coeffs[m - 1]
    return tuple(jac @ xd)


def completion_closed_forms(case_tag: str):
    """Explicit single-coefficient eliminations for the quartic cases.

    Returns a dict mapping ``(target, (m1, m2))`` to a callable
    ``f(zeros, (yd1, yd2))`` producing the eliminated velocity, where
    ``zeros`` are the distinct zero values.  Twelve forms per case.
    """
    if case_tag == "case-i":

        def fi(expr):
            return lambda zs, yd: expr(zs[0], yd[0], yd[1])

        return {
            (1, (2, 3)): fi(lambda x, a, b: -(2 * x * a + b) / (3 * x**3)),
            (1, (2, 4)): fi(lambda x, a, b: -(x**2 * a - b) / (2 * x**3)),
            (1, (3, 4)): fi(lambda x, a, b: (x * a + 2 * b) / x**3),
            (2, (1, 3)): fi(lambda x, a, b: -(3 * x**2 * a + b) / (2 * x)),
            (2, (1, 4)): fi(lambda x, a, b: -(2 * x**3 * a - b) / x**2),
            (2, (3, 4)): fi(lambda x, a, b: -(2 * x * a + 3 * b) / x**2),
            (3, (1, 2)): fi(lambda x, a, b: -3 * x**2 * a - 2 * x * b),
            (3, (1, 4)): fi(lambda x, a, b: (x**3 * a - 2 * b) / x),
            (3, (2, 4)): fi(lambda x, a, b: -(x**2 * a + 3 * b) / (2 * x)),
            (4, (1, 2)): fi(lambda x, a, b: 2 * x**3 * a + x**2 * b),
            (4, (1, 3)): fi(lambda x, a, b: (x**3 * a - x * b) / 2),
            (4, (2, 3)): fi(lambda x, a, b: -(x**2 * a + 2 * x * b) / 3),
        }
    if case_tag == "case-ii":

        def fii(expr):
            def call(zs, yd):
                x1, x2 = zs
                s = x1 + x2
                p = x1 * x2
                e = x1**2 + x1 * x2 + x2**2
                return expr(s, p, e, yd[0], yd[1])

            return call

        return {
            (1, (2, 3)): fii(lambda s, p, e, a, b: -(s * a + b) / e),
            (1, (2, 4)): fii(lambda s, p, e, a, b: -(p * a - b) / (p * s)),
            (1, (3, 4)): fii(lambda s, p, e, a, b: (p * a + s * b) / p**2),
            (2, (1, 3)): fii(lambda s, p, e, a, b: -(e * a + b) / s),
            (2, (1, 4)): fii(lambda s, p, e, a, b: -(p * s * a - b) / p),
            (2, (3, 4)): fii(lambda s, p, e, a, b: -(p * s * a + e * b) / p**2),
            (3, (1, 2)): fii(lambda s, p, e, a, b: -e * a - s * b),
            (3, (1, 4)): fii(lambda s, p, e, a, b: (p**2 * a - s * b) / p),
            (3, (2, 4)): fii(lambda s, p, e, a, b: -(p**2 * a + e * b) / (p * s)),
            (4, (1, 2)): fii(lambda s, p, e, a, b: p * s * a + p * b),
            (4, (1, 3)): fii(lambda s, p, e, a, b: (p**2 * a - p * b) / s),
            (4, (2, 3)): fii(lambda s, p, e, a, b: -(p**2 * a + p * s * b) / e),
        }
    raise ValueError(f"unknown case tag {case_tag!r}")
