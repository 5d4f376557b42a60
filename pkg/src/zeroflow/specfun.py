"""Numerical kernels: elliptic functions, residues, continuation, quadrature.

Everything here is branch-aware over the complex plane and free of global
state; these are the primitives the closed-form solvers are built from.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import ContinuationStall, ModulusSingular, NonConvergent, RepeatedRoot, StepCollapse

_ONE = 1.0 + 0.0j


def cexpm1(z: complex) -> complex:
    """exp(z) - 1 without cancellation for small |z|."""
    if abs(z) < 1e-4:
        # 1 + z/2 + z^2/6 + z^3/24 (times z) covers double precision here.
        return z * (1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0)))
    return cmath.exp(z) - 1.0


def tanhc(z: complex) -> complex:
    """tanh(z)/z, equal to 1 at z = 0."""
    if abs(z) < 1e-5:
        z2 = z * z
        return 1.0 - z2 / 3.0 + 2.0 * z2 * z2 / 15.0
    return cmath.tanh(z) / z


def jacobi_sn_cn_dn(
    z: complex, k: complex, config: ToleranceConfig = DEFAULT_CONFIG
) -> tuple[complex, complex, complex]:
    """Jacobi sn, cn, dn with complex argument and complex modulus.

    Uses the descending modulus (Landen/Gauss) recursion until the modulus
    is negligible, then unwinds from the circular base case.  Moduli with
    |k| > 1 are routed through the reciprocal-modulus transformation.
    """
    z = complex(z)
    k = complex(k)
    k2 = k * k
    if abs(k2) <= config.landen_stop:
        return cmath.sin(z), cmath.cos(z), _ONE
    if abs(k2 - 1.0) <= config.landen_stop:
        sech = 1.0 / cmath.cosh(z)
        return cmath.tanh(z), sech, sech
    if abs(k) > 1.0:
        s, c, d = jacobi_sn_cn_dn(k * z, 1.0 / k, config)
        return s / k, d, c

    moduli = []
    ki = k
    zi = z
    for _ in range(config.landen_max_iter):
        kp = cmath.sqrt(1.0 - ki * ki)
        k_next = (1.0 - kp) / (1.0 + kp)
        moduli.append(k_next)
        zi = zi / (1.0 + k_next)
        if abs(k_next) <= config.landen_stop:
            break
        ki = k_next
    else:
        raise ModulusSingular(
            f"modulus recursion did not converge for k = {k!r}"
        )

    s, c, d = cmath.sin(zi), cmath.cos(zi), _ONE
    for km in reversed(moduli):
        s2 = s * s
        den = 1.0 + km * s2
        s, c, d = (1.0 + km) * s / den, c * d / den, (1.0 - km * s2) / den
    return s, c, d


def inverse_sn(
    s0: complex, k: complex, config: ToleranceConfig = DEFAULT_CONFIG
) -> complex:
    """A value rho with sn(rho, k) = s0, located near asin(s0)."""
    rho = cmath.asin(s0)
    for _ in range(60):
        sn, cn, dn = jacobi_sn_cn_dn(rho, k, config)
        err = sn - s0
        if abs(err) < 1e-14 * (1.0 + abs(s0)):
            return rho
        deriv = cn * dn
        if abs(deriv) < 1e-14:
            break
        step = err / deriv
        if abs(step) > 1.0:
            step /= abs(step)
        rho -= step
    # Quadrature fallback along the straight segment from 0 to s0, with the
    # square-root branch carried by continuity from the origin.
    segs = 64
    total = 0j
    prev_sqrt = _ONE
    for i in range(segs):
        a = s0 * (i / segs)
        b = s0 * ((i + 1) / segs)

        def integrand(y, _prev=prev_sqrt):
            val = cmath.sqrt((1.0 - y * y) * (1.0 - k * k * y * y))
            if abs(val + _prev) < abs(val - _prev):
                val = -val
            return 1.0 / val

        total += adaptive_quadrature(integrand, a, b, 1e-13, config)
        val = cmath.sqrt((1.0 - b * b) * (1.0 - k * k * b * b))
        if abs(val + prev_sqrt) < abs(val - prev_sqrt):
            val = -val
        prev_sqrt = val
    sn, cn, dn = jacobi_sn_cn_dn(total, k, config)
    if abs(sn - s0) > 1e-9 * (1.0 + abs(s0)):
        raise ModulusSingular(f"could not invert sn at s0 = {s0!r}, k = {k!r}")
    return total


def partial_fractions(
    roots, config: ToleranceConfig = DEFAULT_CONFIG
) -> tuple[complex, ...]:
    """Residues r_n with 1/prod(y - r) = sum r_n/(y - root_n)."""
    roots = [complex(r) for r in roots]
    scale = max(1.0, max((abs(r) for r in roots), default=0.0))
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) < config.separation * scale:
                raise RepeatedRoot(
                    f"roots {roots[i]!r} and {roots[j]!r} nearly coincide"
                )
    out = []
    for i, ri in enumerate(roots):
        prod = _ONE
        for j, rj in enumerate(roots):
            if j != i:
                prod *= ri - rj
        out.append(1.0 / prod)
    return tuple(out)


# 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
_XGK = (
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0,
)
_WGK = (
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992,
)
_WG = (
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020,
)


def _gk15(f, a: complex, b: complex) -> tuple[complex, float]:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(mid)
    kron = _WGK[7] * fc
    gauss = _WG[3] * fc
    for i in range(7):
        x = half * _XGK[i]
        f1 = f(mid - x)
        f2 = f(mid + x)
        kron += _WGK[i] * (f1 + f2)
        if i % 2 == 1:
            gauss += _WG[i // 2] * (f1 + f2)
    kron *= half
    gauss *= half
    return kron, abs(kron - gauss)


def adaptive_quadrature(
    f, a: complex, b: complex, tol: float, config: ToleranceConfig = DEFAULT_CONFIG
) -> complex:
    """Integral of ``f`` over the straight segment from ``a`` to ``b``.

    Bisects until the nested-rule error estimate is below ``tol``; raises
    NonConvergent when the refinement budget is exhausted.
    """
    stack = [(complex(a), complex(b))]
    total = 0j
    budget = 4000
    while stack:
        lo, hi = stack.pop()
        budget -= 1
        if budget < 0:
            raise NonConvergent("quadrature refinement budget exhausted")
        val, err = _gk15(f, lo, hi)
        frac = abs(hi - lo) / max(abs(b - a), 1e-300)
        if err <= tol * max(frac, 1e-3) or abs(hi - lo) < 1e-15 * abs(b - a):
            total += val
        else:
            mid = 0.5 * (lo + hi)
            stack.append((lo, mid))
            stack.append((mid, hi))
    return total


def newton_continuation(
    f,
    dfdy,
    t_end: float,
    seed: complex,
    *,
    t_start: float = 0.0,
    predictor=None,
    on_step=None,
    initial_step: float | None = None,
    config: ToleranceConfig = DEFAULT_CONFIG,
) -> complex:
    """Track the solution of f(y, t) = 0 along t from ``t_start`` to ``t_end``.

    ``seed`` must solve the equation at ``t_start``.  Steps halve on Newton
    divergence; ``on_step(y, t_prev, t)`` runs after every accepted step
    (letting stateful equations advance their branch bookkeeping).  Raises
    ContinuationStall when the step collapses.
    """
    span = t_end - t_start
    if span == 0:
        return seed
    h = initial_step if initial_step is not None else span / 8.0
    t = t_start
    y = complex(seed)
    halvings = 0
    while (t_end - t) * math.copysign(1.0, span) > 1e-15 * abs(span):
        h = math.copysign(min(abs(h), abs(t_end - t)), span)
        t_next = t + h
        y_try = predictor(y, t, t_next) if predictor is not None else y
        ok = False
        for _ in range(30):
            resid = f(y_try, t_next)
            if abs(resid) <= config.continuation_residual * (1.0 + abs(y_try)):
                ok = True
                break
            d = dfdy(y_try, t_next)
            if d == 0 or not cmath.isfinite(d):
                break
            step = resid / d
            if not cmath.isfinite(step) or abs(step) > 10.0 * (1.0 + abs(y_try)):
                break
            y_try -= step
        if ok and cmath.isfinite(y_try):
            if on_step is not None:
                ok = on_step(y_try, t, t_next) is not False
        if not ok:
            halvings += 1
            if halvings > config.continuation_max_halvings:
                raise ContinuationStall(
                    f"continuation stalled at t = {t:.6g}", t_reached=t
                )
            h *= 0.5
            continue
        halvings = 0
        y = y_try
        t = t_next
        h *= 1.4
    return y


# Dormand-Prince 5(4) tableau.
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)


@dataclass
class OdeResult:
    """States sampled on the requested grid, plus how far the solver got."""

    times: list[float]
    states: list[tuple[complex, ...]]
    collapsed_at: float | None = None

    @property
    def complete(self) -> bool:
        return self.collapsed_at is None


def integrate_ode(
    f,
    y0,
    times,
    *,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    blowup: float = 1e8,
    max_steps: int = 2_000_000,
) -> OdeResult:
    """Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) over complex states.

    ``times`` must be increasing, starting at the initial time.  The solver
    lands exactly on every requested time.  On step-size collapse or state
    blow-up it stops early and records ``collapsed_at`` instead of raising.
    """
    times = [float(t) for t in times]
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValueError("times must be strictly increasing")
    y = tuple(complex(v) for v in y0)
    n = len(y)
    t = times[0]
    out = OdeResult([t], [y])
    span = times[-1] - t
    if span == 0:
        return out
    h = span / 100.0
    k1 = f(t, y)
    steps = 0
    next_idx = 1
    while next_idx < len(times):
        target = times[next_idx]
        h_try = h
        clipped = False
        if t + h_try >= target - 1e-14 * max(1.0, abs(target)):
            h_try = target - t
            clipped = True
        ks = [k1]
        for i in range(1, 7):
            yi = tuple(
                y[j] + h_try * sum(a * ks[m][j] for m, a in enumerate(_DP_A[i]))
                for j in range(n)
            )
            ks.append(f(t + _DP_C[i] * h_try, yi))
        y_new = tuple(
            y[j] + h_try * sum(b * ks[m][j] for m, b in enumerate(_DP_B) if b)
            for j in range(n)
        )
        err = 0.0
        for j in range(n):
            e = h_try * sum(c * ks[m][j] for m, c in enumerate(_DP_E) if c)
            sc = atol + rtol * max(abs(y[j]), abs(y_new[j]))
            err = max(err, abs(e) / sc)
        steps += 1
        if steps > max_steps:
            out.collapsed_at = t
            return out
        if err <= 1.0 and all(cmath.isfinite(v) for v in y_new):
            t = t + h_try
            y = y_new
            k1 = ks[6]  # FSAL
            if clipped:
                out.times.append(target)
                out.states.append(y)
                next_idx += 1
            if max(abs(v) for v in y) > blowup:
                out.collapsed_at = t
                return out
            growth = min(5.0, max(0.2, 0.9 * err ** -0.2 if err > 0 else 5.0))
            # Do not let landing on an output time shrink the working step.
            h = max(h, h_try * growth) if clipped else h_try * growth
        else:
            if not all(cmath.isfinite(v) for v in y_new):
                h = h_try * 0.2
            else:
                h = h_try * min(1.0, max(0.1, 0.9 * err ** -0.2))
            if abs(h) < 1e-14 * max(1.0, abs(t)):
                out.collapsed_at = t
                return out
            k1 = f(t, y)
    return out


def integrate_ode_strict(f, y0, times, **kw) -> list[tuple[complex, ...]]:
    """As integrate_ode, but raising StepCollapse on early termination."""
    res = integrate_ode(f, y0, times, **kw)
    if not res.complete:
        raise StepCollapse(
            f"integration collapsed at t = {res.collapsed_at:.6g}",
            t_reached=res.collapsed_at,
        )
    return res.states
