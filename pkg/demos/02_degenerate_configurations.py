#!/usr/bin/env python3
"""Explicit point configurations that break non-strict kernels.

When the criterion fails at a residue class (p, q), finitely many difference
values a_1 < ... < a_N satisfy k - l = q + a*p.  Placing N+1 base angles in
one sector of width 2 pi / p, replicating them by p-th roots of unity, and
combining a small nullspace solve with closed-form character coefficients
yields p(N+1) distinct unit-circle points whose weighted monomial sums all
vanish.  The kernel quadratic form at those points is then numerically zero:
the kernel interpolation matrix is singular.
"""

import numpy as np

from hermpd import (
    build_counterexample,
    check_strict_criterion,
    diagonal_factorial_model,
    diagonal_spec,
    even_difference_spec,
    origin_counterexample,
    quadratic_form,
    unit_weights,
)
from hermpd.exponents import ExponentFamily, ExponentSetSpec

# --- diagonal kernel exp(|z|^2): two points suffice -------------------------
spec = diagonal_spec()
verdict = check_strict_criterion(spec)
witness = build_counterexample(spec, verdict, truncation=40, tol=1e-10)
print(f"failing class (p, q) = ({witness.p}, {witness.q})")
print("points      :", np.round(witness.points, 6))
print("coefficients:", np.round(witness.coefficients, 6))
print("max residual over monomials:", witness.max_residual)

model = diagonal_factorial_model()  # b(k, k) = 1/k!
coeff = witness.coefficients / np.linalg.norm(witness.coefficients)
form = quadratic_form(model, witness.points, coeff, 1e-12)
print("kernel quadratic form:", form)
assert abs(form) <= 1e-9
print()

# --- even differences: the +/- z pair annihilates every even monomial --------
spec = even_difference_spec()
witness = build_counterexample(spec, check_strict_criterion(spec), truncation=40)
print("even-difference points:", np.round(witness.points, 6))
print("column coefficients   :", np.round(witness.column_coefficients, 6))
form = quadratic_form(
    unit_weights(spec),
    witness.points,
    witness.coefficients / np.linalg.norm(witness.coefficients),
    1e-12,
)
print("kernel quadratic form :", form)
assert abs(form) <= 1e-9
print()

# --- missing origin: the zero point is already a witness ---------------------
spec = ExponentSetSpec(families=[ExponentFamily((1, 1), (1, 1))])
verdict = check_strict_criterion(spec)
print("diagonal-without-origin verdict:", verdict)
point, c = origin_counterexample(spec)
print("origin witness:", (point, c))
# every monomial with (k, l) != (0, 0) vanishes at z = 0, so the form is 0
