"""Structured exponent sets and the strictness criterion.

An exponent set describes which monomials ``z^k conj(z)^l`` carry positive
weight in a dot-product kernel.  It is given as finitely many explicit pairs
plus finitely many arithmetic families, which keeps membership and the
difference profile ``{k - l}`` decidable in closed form.  Strictness of the
induced kernel reduces to a residue-coverage condition on that profile: the
origin pair must belong to the set, and every residue class q mod p must
contain infinitely many distinct difference values.  The infinite quantifier
over p collapses to the divisors of a single effective modulus (the lcm of
the progression strides), which is what makes the check finite.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Optional


class ExponentPair(NamedTuple):
    k: int
    l: int

    @property
    def diff(self) -> int:
        return self.k - self.l


def _as_pair(value) -> ExponentPair:
    pair = ExponentPair(*value)
    if not isinstance(pair.k, int) or not isinstance(pair.l, int) or isinstance(pair.k, bool) or isinstance(pair.l, bool):
        raise ValueError(f"exponents must be integers, got {value!r}")
    if pair.k < 0 or pair.l < 0:
        raise ValueError(f"exponents must be nonnegative, got {value!r}")
    return pair


@dataclass(frozen=True)
class ExponentFamily:
    """Arithmetic family {start + s*step : s = 0, 1, 2, ...} inside Z+^2.

    Steps are componentwise nonnegative and not both zero, so every member
    stays in the nonnegative quadrant and members are pairwise distinct.
    """

    start: ExponentPair
    step: ExponentPair

    def __post_init__(self):
        object.__setattr__(self, "start", _as_pair(self.start))
        step = ExponentPair(*self.step)
        if not isinstance(step.k, int) or not isinstance(step.l, int):
            raise ValueError(f"family step must be integer, got {self.step!r}")
        if step.k < 0 or step.l < 0:
            raise ValueError(f"family step must be nonnegative, got {step!r}")
        if step == (0, 0):
            raise ValueError("family step must not be (0, 0)")
        object.__setattr__(self, "step", step)

    def member(self, s: int) -> ExponentPair:
        return ExponentPair(self.start.k + s * self.step.k, self.start.l + s * self.step.l)

    def index_of(self, e) -> Optional[int]:
        """Return s >= 0 with start + s*step == e, or None."""
        e = ExponentPair(*e)
        dk, dl = self.step
        if dk > 0:
            s, r = divmod(e.k - self.start.k, dk)
            if r != 0 or s < 0:
                return None
            return s if self.start.l + s * dl == e.l else None
        # dk == 0, dl > 0
        if e.k != self.start.k:
            return None
        s, r = divmod(e.l - self.start.l, dl)
        if r != 0 or s < 0:
            return None
        return s

    @property
    def diff_offset(self) -> int:
        return self.start.k - self.start.l

    @property
    def diff_stride(self) -> int:
        return self.step.k - self.step.l


@dataclass(frozen=True)
class ExponentSetSpec:
    """Exponent set J given as explicit points plus arithmetic families.

    ``require_origin`` is True for kernels on a full inner product space and
    False in unit-sphere mode, where the origin pair is not needed.
    """

    points: tuple[ExponentPair, ...] = ()
    families: tuple[ExponentFamily, ...] = ()
    require_origin: bool = True

    def __post_init__(self):
        pts = tuple(_as_pair(p) for p in self.points)
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points in exponent set")
        fams = tuple(f if isinstance(f, ExponentFamily) else ExponentFamily(*f) for f in self.families)
        if len(set(fams)) != len(fams):
            raise ValueError("duplicate families in exponent set")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "families", fams)

    def __contains__(self, e) -> bool:
        return membership(self, e)


@dataclass(frozen=True)
class DifferenceProfile:
    """The difference value set {k - l : (k, l) in J}, structurally.

    ``isolated`` holds values contributed finitely often (explicit points and
    families moving parallel to the diagonal); ``progressions`` holds
    (offset, stride) pairs, each standing for {offset + s*stride : s >= 0}
    with a nonzero stride and hence infinitely many distinct values.
    """

    isolated: frozenset[int]
    progressions: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class CriterionVerdict:
    holds: bool
    effective_modulus: int
    failing_class: Optional[tuple[int, int]] = None
    origin_missing: bool = False


def membership(spec: ExponentSetSpec, e) -> bool:
    """True iff e is an explicit point or lies on one of the families."""
    e = _as_pair(e)
    if e in spec.points:
        return True
    return any(fam.index_of(e) is not None for fam in spec.families)


def members_upto(spec: ExponentSetSpec, total_degree: int) -> list[ExponentPair]:
    """All (k, l) in J with k + l <= total_degree, lexicographic, deduplicated."""
    out = {p for p in spec.points if p.k + p.l <= total_degree}
    for fam in spec.families:
        deg0 = fam.start.k + fam.start.l
        if deg0 > total_degree:
            continue
        step_deg = fam.step.k + fam.step.l
        for s in range((total_degree - deg0) // step_deg + 1):
            out.add(fam.member(s))
    return sorted(out)


def difference_profile(spec: ExponentSetSpec) -> DifferenceProfile:
    isolated = {p.diff for p in spec.points}
    progressions = []
    for fam in spec.families:
        if fam.diff_stride == 0:
            isolated.add(fam.diff_offset)
        else:
            progressions.append((fam.diff_offset, fam.diff_stride))
    return DifferenceProfile(frozenset(isolated), tuple(sorted(set(progressions))))


def effective_modulus(profile: DifferenceProfile) -> int:
    """lcm of |stride| over all progressions; 1 when there are none.

    For any p, gcd(d, p) = gcd(d, gcd(p, p*)) since d divides p*, so residue
    coverage modulo an arbitrary p reduces to coverage modulo a divisor of
    p*, and full coverage modulo p* implies it for each of its divisors.
    """
    return math.lcm(*(abs(d) for _, d in profile.progressions))


def residue_coverage(profile: DifferenceProfile, p: int) -> set[int]:
    """Residues q mod p hit by infinitely many distinct difference values.

    A progression (offset, d) covers exactly the coset offset + gcd(|d|, p)Z;
    isolated values are single values and never count.
    """
    if p < 1:
        raise ValueError(f"modulus must be positive, got {p}")
    covered: set[int] = set()
    for offset, d in profile.progressions:
        g = math.gcd(abs(d), p)
        covered.update(range(offset % g, p, g))
    return covered


def residue_coverage_bruteforce(profile: DifferenceProfile, p: int, reps: int = 10) -> set[int]:
    """Independent enumeration oracle for residue_coverage.

    Walks the first reps*p distinct values of each progression and marks a
    residue covered once a single progression (the proof of infinitude) hits
    it at least twice.  Isolated values are excluded by construction.
    """
    if p < 1:
        raise ValueError(f"modulus must be positive, got {p}")
    covered: set[int] = set()
    for offset, d in profile.progressions:
        hits: Counter[int] = Counter()
        for s in range(reps * p):
            hits[(offset + s * d) % p] += 1
        covered.update(q for q, c in hits.items() if c >= 2)
    return covered


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def check_strict_criterion(spec: ExponentSetSpec) -> CriterionVerdict:
    """Decide strictness of the kernel induced by the exponent set.

    Holds iff the origin pair is present (unless the spec is in sphere mode)
    and every residue class mod every p contains infinitely many distinct
    difference values.  Coverage is checked at the effective modulus p* and,
    as a guard, at each of its divisors; on failure the smallest failing
    (p, q) located by an ascending scan over p = 1..p* is reported.
    """
    profile = difference_profile(spec)
    pstar = effective_modulus(profile)
    origin_missing = spec.require_origin and not membership(spec, (0, 0))
    failing: Optional[tuple[int, int]] = None
    fully_covered = all(len(residue_coverage(profile, p)) == p for p in _divisors(pstar))
    if not fully_covered:
        for p in range(1, pstar + 1):
            cov = residue_coverage(profile, p)
            if len(cov) < p:
                failing = (p, min(set(range(p)) - cov))
                break
        assert failing is not None, "coverage failure must show at a divisor of p*"
    holds = failing is None and not origin_missing
    return CriterionVerdict(
        holds=holds,
        effective_modulus=pstar,
        failing_class=failing,
        origin_missing=origin_missing,
    )


# --- canonical specs -------------------------------------------------------

def full_grid_spec() -> ExponentSetSpec:
    """The two axis families; differences cover every residue class."""
    return ExponentSetSpec(families=[ExponentFamily((0, 0), (1, 0)), ExponentFamily((0, 0), (0, 1))])


def diagonal_spec() -> ExponentSetSpec:
    """Only (k, k) pairs; the single difference value 0 recurs but is one value."""
    return ExponentSetSpec(families=[ExponentFamily((0, 0), (1, 1))])


def even_difference_spec() -> ExponentSetSpec:
    """Even differences only; odd residue classes mod 2 stay empty."""
    return ExponentSetSpec(
        points=[(0, 0)],
        families=[ExponentFamily((0, 0), (2, 0)), ExponentFamily((0, 0), (0, 2))],
    )


def mixed_stride_spec() -> ExponentSetSpec:
    """Strides {2, 3} arranged so coverage mod lcm = 6 is complete."""
    return ExponentSetSpec(
        families=[
            ExponentFamily((0, 0), (2, 0)),
            ExponentFamily((1, 0), (2, 0)),
            ExponentFamily((0, 0), (3, 0)),
        ]
    )


# --- JSON ------------------------------------------------------------------

def _require_keys(obj: dict, keys: set[str], what: str) -> None:
    if not isinstance(obj, dict):
        raise ValueError(f"{what} must be a JSON object")
    extra = set(obj) - keys
    if extra:
        raise ValueError(f"unknown fields in {what}: {sorted(extra)}")
    missing = keys - set(obj)
    if missing:
        raise ValueError(f"missing fields in {what}: {sorted(missing)}")


def _int_pair(value, what: str) -> tuple[int, int]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in value)
    ):
        raise ValueError(f"{what} must be a pair of integers, got {value!r}")
    return (value[0], value[1])


def spec_to_json(spec: ExponentSetSpec) -> dict:
    return {
        "points": [[p.k, p.l] for p in spec.points],
        "families": [
            {"start": [f.start.k, f.start.l], "step": [f.step.k, f.step.l]} for f in spec.families
        ],
        "require_origin": spec.require_origin,
    }


def spec_from_json(obj: dict) -> ExponentSetSpec:
    """Parse the exponent-set schema; unknown or missing fields are rejected."""
    _require_keys(obj, {"points", "families", "require_origin"}, "exponent set")
    if not isinstance(obj["points"], list) or not isinstance(obj["families"], list):
        raise ValueError("points and families must be lists")
    if not isinstance(obj["require_origin"], bool):
        raise ValueError("require_origin must be a boolean")
    points = [_int_pair(p, "point") for p in obj["points"]]
    families = []
    for fam in obj["families"]:
        _require_keys(fam, {"start", "step"}, "family")
        families.append(ExponentFamily(_int_pair(fam["start"], "family start"), _int_pair(fam["step"], "family step")))
    return ExponentSetSpec(points=points, families=families, require_origin=obj["require_origin"])
