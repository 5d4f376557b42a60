"""Monic polynomials with prescribed zero multiplicities.

A polynomial is carried in one of two equivalent forms: the zero side
(distinct zeros with multiplicities) or the coefficient side (the M
coefficients of the monic expansion).  This module converts losslessly
between the two and keeps zero labels stable along continuous paths.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import Collision, Degenerate, StructureMismatch

_EPS = 2.2e-16


def _check_finite(value: complex, what: str) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise Degenerate(f"{what} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class MultiRootPolynomial:
    """Monic polynomial given by distinct zeros and their multiplicities.

    ``zeros`` is an ordered tuple of ``(value, multiplicity)`` pairs with
    multiplicities non-increasing; among equal multiplicities the order is
    whatever the caller (usually continuity tracking) established.
    """

    zeros: tuple[tuple[complex, int], ...]
    separation: float = field(default=DEFAULT_CONFIG.separation, compare=False)

    def __post_init__(self):
        zs = tuple((_check_finite(x, "zero"), int(mu)) for x, mu in self.zeros)
        if not zs:
            raise Degenerate("a polynomial needs at least one zero")
        for _, mu in zs:
            if mu < 1:
                raise Degenerate("multiplicities must be positive")
        mus = [mu for _, mu in zs]
        if any(mus[i] < mus[i + 1] for i in range(len(mus) - 1)):
            raise Degenerate("zeros must be ordered by non-increasing multiplicity")
        if sum(mus) > 8:
            raise Degenerate("total degree above 8 is not supported")
        for (a, _), (b, _) in itertools.combinations(zs, 2):
            if abs(a - b) <= self.separation:
                raise Degenerate(
                    f"zeros {a!r} and {b!r} closer than separation {self.separation}"
                )
        object.__setattr__(self, "zeros", zs)

    @property
    def n_distinct(self) -> int:
        return len(self.zeros)

    @property
    def degree(self) -> int:
        return sum(mu for _, mu in self.zeros)

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(mu for _, mu in self.zeros)

    @property
    def values(self) -> tuple[complex, ...]:
        return tuple(x for x, _ in self.zeros)


@dataclass(frozen=True)
class CoefficientSet:
    """Coefficients y_1..y_M of the monic polynomial z^M + sum y_m z^(M-m)."""

    y: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "y", tuple(_check_finite(v, "coefficient") for v in self.y)
        )

    @property
    def degree(self) -> int:
        return len(self.y)

    def full_coeffs(self) -> list[complex]:
        """Leading-one coefficient list, highest power first."""
        return [1.0 + 0.0j, *self.y]

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in self.full_coeffs():
            acc = acc * z + c
        return acc


@dataclass(frozen=True)
class SelectedPair:
    """The two coefficient indices whose evolution is prescribed (M = 4)."""

    m1: int
    m2: int
    case_tag: str  # "case-i" (mu = (3,1)) or "case-ii" (mu = (2,2))

    def __post_init__(self):
        if self.case_tag not in ("case-i", "case-ii"):
            raise Degenerate(f"unknown case tag {self.case_tag!r}")
        if not (1 <= self.m1 < self.m2 <= 4):
            raise Degenerate("selected indices must satisfy 1 <= m1 < m2 <= 4")

    @property
    def signature(self) -> tuple[int, int]:
        return (3, 1) if self.case_tag == "case-i" else (2, 2)

    @property
    def indices(self) -> tuple[int, int]:
        return (self.m1, self.m2)

    @property
    def complement(self) -> tuple[int, int]:
        return tuple(m for m in (1, 2, 3, 4) if m not in (self.m1, self.m2))


def coeffs_from_zeros(p: MultiRootPolynomial) -> CoefficientSet:
    """Expand prod (z - x_n)^mu_n into monic coefficients."""
    coeffs = [1.0 + 0.0j]
    for x, mu in p.zeros:
        for _ in range(mu):
            nxt = [0j] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] += c
                nxt[i + 1] -= c * x
            coeffs = nxt
    return CoefficientSet(tuple(coeffs[1:]))


def quartic_pair_coeffs(case_tag: str, x1: complex, x2: complex) -> tuple[complex, complex, complex, complex]:
    """Closed-form coefficients for the two quartic signatures with two zeros."""
    if case_tag == "case-i":
        return (
            -(3 * x1 + x2),
            3 * x1 * (x1 + x2),
            -(x1**2) * (x1 + 3 * x2),
            x1**3 * x2,
        )
    if case_tag == "case-ii":
        return (
            -2 * (x1 + x2),
            x1**2 + x2**2 + 4 * x1 * x2,
            -2 * x1 * x2 * (x1 + x2),
            (x1 * x2) ** 2,
        )
    raise Degenerate(f"unknown case tag {case_tag!r}")


def _multi_block_partitions(indices: list[int], sizes: list[int]):
    """Yield tuples of disjoint blocks (as tuples) with the given sizes."""
    if not sizes:
        yield ()
        return
    size = sizes[0]
    for block in itertools.combinations(indices, size):
        rest = [i for i in indices if i not in block]
        for tail in _multi_block_partitions(rest, sizes[1:]):
            yield (block, *tail)


def _relative_coeff_error(a, b) -> float:
    scale = max(1.0, max(abs(v) for v in a), max(abs(v) for v in b))
    return max(abs(u - v) for u, v in zip(a, b)) / scale


def signature_residual(
    c: CoefficientSet,
    signature: tuple[int, ...],
    config: ToleranceConfig = DEFAULT_CONFIG,
) -> tuple[MultiRootPolynomial, float]:
    """Cluster the roots of ``c`` by ``signature`` and report the residual.

    Returns the best candidate polynomial together with the relative error
    of its forward map against ``c``.  No structural threshold is applied;
    ``zeros_from_coeffs`` is the raising wrapper.
    """
    if sum(signature) != c.degree:
        raise StructureMismatch(
            f"signature {signature} does not sum to degree {c.degree}"
        )
    roots = [complex(r) for r in np.roots(np.array(c.full_coeffs(), dtype=complex))]
    multi = sorted((mu for mu in signature if mu > 1), reverse=True)
    n_single = sum(1 for mu in signature if mu == 1)

    best = None
    idx = list(range(len(roots)))
    for blocks in _multi_block_partitions(idx, multi):
        used = set(itertools.chain.from_iterable(blocks))
        centers = []
        spread = 0.0
        ok = True
        for block, mu in zip(blocks, multi):
            pts = [roots[i] for i in block]
            ctr = sum(pts) / mu
            d = max(abs(p - ctr) for p in pts)
            spread += sum(abs(p - ctr) ** 2 for p in pts)
            centers.append((ctr, mu, d))
        singles = [roots[i] for i in idx if i not in used]
        if len(singles) != n_single:
            ok = False
        if ok and (best is None or spread < best[0]):
            best = (spread, centers, singles)
    if best is None:
        raise StructureMismatch("no admissible clustering found")
    _, centers, singles = best

    # Structural sanity: a genuine mu-fold cluster is tight compared with its
    # distance to every other zero; a fake one has diameter ~ that distance.
    all_centers = [c0 for c0, _, _ in centers] + singles
    for (ctr, mu, diam) in centers:
        others = [z for z in all_centers if z is not ctr and abs(z - ctr) > 0]
        gap = min((abs(z - ctr) for z in others), default=math.inf)
        if diam > 0.25 * gap:
            raise StructureMismatch(
                f"cluster of multiplicity {mu} has diameter {diam:.3g} "
                f"comparable to nearest-zero distance {gap:.3g}",
                residual=diam / max(gap, _EPS),
            )

    zeros = [(ctr, mu) for ctr, mu, _ in centers] + [(z, 1) for z in singles]
    zeros.sort(key=lambda zm: (-zm[1], zm[0].real, zm[0].imag))
    for (a, _), (b, _) in itertools.combinations(zeros, 2):
        if abs(a - b) <= config.cluster_radius * max(1.0, abs(a)):
            raise Degenerate(f"cluster centers {a!r} and {b!r} collide")
    poly = MultiRootPolynomial(tuple(zeros), separation=config.separation)
    resid = _relative_coeff_error(coeffs_from_zeros(poly).y, c.y)
    return poly, resid


def zeros_from_coeffs(
    c: CoefficientSet,
    signature: tuple[int, ...],
    config: ToleranceConfig = DEFAULT_CONFIG,
) -> MultiRootPolynomial:
    """Recover the zeros of ``c`` under the declared multiplicity signature.

    Roots come from the companion-matrix eigenvalues; root groups are the
    minimum-spread clustering compatible with the signature, and each center
    is the multiplicity-weighted mean of its cluster (first-order error
    cancellation).  Raises StructureMismatch when the coefficients are not
    in the declared nongeneric variety.
    """
    poly, resid = signature_residual(c, signature, config)
    if resid > config.structure_residual:
        raise StructureMismatch(
            f"forward map residual {resid:.3g} exceeds {config.structure_residual}",
            residual=resid,
        )
    return poly


def track_roots(
    previous: MultiRootPolynomial,
    candidates: MultiRootPolynomial,
    config: ToleranceConfig = DEFAULT_CONFIG,
) -> MultiRootPolynomial:
    """Relabel ``candidates`` by continuity from ``previous``.

    Only zeros of equal multiplicity may be permuted; the permutation
    minimizing total displacement wins, with lexicographic (re, im)
    tie-breaking.  Raises Collision when labels are ambiguous.
    """
    if previous.signature != candidates.signature:
        raise StructureMismatch(
            f"signatures differ: {previous.signature} vs {candidates.signature}"
        )
    for poly in (previous, candidates):
        for (a, _), (b, _) in itertools.combinations(poly.zeros, 2):
            if abs(a - b) <= config.separation:
                raise Collision(f"zeros {a!r}, {b!r} within separation tolerance")

    prev = list(previous.zeros)
    cand = list(candidates.zeros)
    out: list[tuple[complex, int] | None] = [None] * len(cand)
    pos = 0
    while pos < len(prev):
        mu = prev[pos][1]
        end = pos
        while end < len(prev) and prev[end][1] == mu:
            end += 1
        group = list(range(pos, end))
        if len(group) > 7:
            raise Degenerate("too many equal multiplicities to track")
        best_cost = None
        best_perm = None
        for perm in itertools.permutations(group):
            cost = sum(abs(prev[g][0] - cand[p][0]) for g, p in zip(group, perm))
            key = tuple((cand[p][0].real, cand[p][0].imag) for p in perm)
            if best_cost is None or cost < best_cost[0] - 1e-15 * (1 + cost) or (
                abs(cost - best_cost[0]) <= 1e-15 * (1 + cost) and key < best_cost[1]
            ):
                best_cost = (cost, key)
                best_perm = perm
        for g, p in zip(group, best_perm):
            out[g] = cand[p]
        pos = end
    return MultiRootPolynomial(tuple(out), separation=candidates.separation)
