#!/usr/bin/env python3
"""Deciding strictness for structured exponent sets.

A dot-product kernel f(z) = sum b(k,l) z^k conj(z)^l is strictly positive
definite exactly when the origin pair carries weight and every residue class
q mod p recurs infinitely often among the difference values {k - l}.  The
infinite family of moduli collapses to one effective modulus, so the check
runs in microseconds.
"""

from hermpd import (
    ExponentFamily,
    ExponentSetSpec,
    check_strict_criterion,
    diagonal_spec,
    difference_profile,
    effective_modulus,
    even_difference_spec,
    full_grid_spec,
    mixed_stride_spec,
    residue_coverage,
)

# The axis families generate every difference value with infinite multiplicity.
spec = full_grid_spec()
profile = difference_profile(spec)
print("full grid profile:", dict(isolated=sorted(profile.isolated), progressions=profile.progressions))
print("effective modulus:", effective_modulus(profile))
print("verdict:", check_strict_criterion(spec))
print()

# The diagonal kernel exp(|z|^2) realizes only the difference value 0, so
# already the single residue class mod 1 fails.
verdict = check_strict_criterion(diagonal_spec())
print("diagonal verdict:", verdict)
assert verdict.failing_class == (1, 0)
print()

# Even differences only: residue 1 mod 2 is empty.
verdict = check_strict_criterion(even_difference_spec())
print("even-difference verdict:", verdict)
assert verdict.failing_class == (2, 1)
print()

# Strides 2 and 3 interleave to cover everything mod 6 (and hence mod any p).
spec = mixed_stride_spec()
profile = difference_profile(spec)
for p in (2, 3, 6):
    print(f"coverage mod {p}:", sorted(residue_coverage(profile, p)))
print("mixed verdict:", check_strict_criterion(spec))
print()

# Sphere mode: the origin requirement is dropped, the coverage condition stays.
no_origin = ExponentSetSpec(
    families=[ExponentFamily((1, 0), (1, 0)), ExponentFamily((1, 0), (0, 1))],
)
print("missing origin, full space:", check_strict_criterion(no_origin))
sphere = ExponentSetSpec(no_origin.points, no_origin.families, require_origin=False)
print("missing origin, sphere   :", check_strict_criterion(sphere))
