"""Seeded random instances shared by the test suite and the selftest runner.

Geometry is kept away from tolerance boundaries on purpose: strict
instances enforce pairwise gaps so their Gram spectra stay orders of
magnitude above the decision threshold, and degenerate instances are built
exactly singular (shared moduli under a diagonal exponent set, or a +/- z
point pair under an even-difference set).
"""

from __future__ import annotations

import numpy as np

from .exponents import ExponentFamily, ExponentPair, ExponentSetSpec
from .kernel import CoefficientModel, ComplexPointSet, FamilyWeight, WeightRule


def random_spec(rng: np.random.Generator, max_stride: int = 4, sphere: bool = False) -> ExponentSetSpec:
    """Random structured exponent set with bounded strides (p* stays small)."""
    n_points = int(rng.integers(0, 4))
    points = set()
    while len(points) < n_points:
        points.add((int(rng.integers(0, 7)), int(rng.integers(0, 7))))
    n_families = int(rng.integers(0, 4))
    families = set()
    while len(families) < n_families:
        start = (int(rng.integers(0, 4)), int(rng.integers(0, 4)))
        step = (int(rng.integers(0, max_stride + 1)), int(rng.integers(0, max_stride + 1)))
        if step == (0, 0):
            continue
        families.add(ExponentFamily(start, step))
    return ExponentSetSpec(points=sorted(points), families=sorted(families, key=repr), require_origin=not sphere)


def random_weights(rng: np.random.Generator, spec: ExponentSetSpec, rho_hi: float = 0.8) -> CoefficientModel:
    point_weights = {p: float(rng.uniform(0.5, 2.0)) for p in spec.points}
    family_weights = tuple(
        FamilyWeight(float(rng.uniform(0.5, 2.0)), float(rng.uniform(0.1, rho_hi))) for _ in spec.families
    )
    return CoefficientModel(spec, WeightRule(point_weights, family_weights))


def random_psd(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    """Random Hermitian PSD matrix of the given size and rank."""
    if rank is None:
        rank = n
    b = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    return b @ b.conj().T


def random_unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_point_set(rng: np.random.Generator, n: int, m: int, gap: float = 0.3) -> ComplexPointSet:
    """n random points in C^m with pairwise separation at least gap."""
    rows: list[np.ndarray] = []
    while len(rows) < n:
        z = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        if all(np.linalg.norm(z - w) > gap for w in rows):
            rows.append(z)
    return ComplexPointSet(np.asarray(rows))


def annulus_points(
    rng: np.random.Generator,
    n: int,
    lo: float = 0.4,
    hi: float = 0.95,
    gap: float = 0.2,
) -> np.ndarray:
    """n distinct scalars with lo <= |z| <= hi and pairwise gaps above gap."""
    pts: list[complex] = []
    while len(pts) < n:
        z = (lo + (hi - lo) * rng.random()) * np.exp(2j * np.pi * rng.random())
        if all(abs(z - w) > gap for w in pts):
            pts.append(complex(z))
    return np.asarray(pts)


def _axis_model(rng: np.random.Generator) -> CoefficientModel:
    spec = ExponentSetSpec(families=[ExponentFamily((0, 0), (1, 0)), ExponentFamily((0, 0), (0, 1))])
    w = float(rng.uniform(0.8, 1.5))
    rule = WeightRule({}, (FamilyWeight(w, 0.7), FamilyWeight(w, 0.7)))
    return CoefficientModel(spec, rule)


def equivalence_instance(rng: np.random.Generator) -> tuple[CoefficientModel, np.ndarray, bool]:
    """(model, points, expect_strict) for the rank-vs-spectrum comparison.

    Strict instances use the axis families (dense low-degree columns, tiny
    truncation tail) on well-separated points.  Degenerate instances are
    exactly singular: either a diagonal exponent set with two points sharing
    a modulus, or an even-difference set with a +/- z point pair; small rho
    keeps the tail mass below the guard at truncation 12.
    """
    n = int(rng.integers(2, 7))
    flavor = rng.integers(0, 3)
    if flavor == 0:
        return _axis_model(rng), annulus_points(rng, n), True
    if flavor == 1:
        spec = ExponentSetSpec(families=[ExponentFamily((0, 0), (1, 1))])
        rule = WeightRule({}, (FamilyWeight(float(rng.uniform(0.5, 1.5)), float(rng.uniform(0.05, 0.2))),))
        model = CoefficientModel(spec, rule)
        pts = annulus_points(rng, n - 1)
        clone = pts[0] * np.exp(1j * rng.uniform(0.5, 2 * np.pi - 0.5))
        return model, np.append(pts, clone), False
    spec = ExponentSetSpec(
        points=[(0, 0)],
        families=[ExponentFamily((0, 0), (2, 0)), ExponentFamily((0, 0), (0, 2))],
    )
    rho = float(rng.uniform(0.05, 0.2))
    rule = WeightRule(
        {ExponentPair(0, 0): 1.0},
        (FamilyWeight(1.0, rho), FamilyWeight(1.0, rho)),
    )
    model = CoefficientModel(spec, rule)
    pts = annulus_points(rng, n - 1)
    return model, np.append(pts, -pts[0]), False
