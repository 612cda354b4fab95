#!/usr/bin/env python3
"""Failure probabilities of the random model: union bounds, the exact
inclusion-exclusion value, and the oracles that cross-check them.

Run as: python demos/05_probabilities.py
"""

from fractions import Fraction

from superconc.probability import (
    alpha_coefficients,
    bassalygo_bound,
    boolean_identity_check,
    empirical_expansion_failure,
    exact_plr,
    expansion_fail_bound,
    montecarlo_plr,
    pair_fail_bound,
    plr_table,
)

# Union bounds on "some k-subset expands badly".  They can exceed 1; they
# only ever matter when they are small.
b = expansion_fail_bound(40, 5, "0.325", 8, 20)
print("expansion failure bound, n=40, k=8, m=20:")
print("  exact :", b.exact)
print("  log   :", b.log_value, f"(regime {b.regime})")

p = pair_fail_bound(40, 5, "0.325", 12, 12)
print("pair failure bound, n=40, k=12, m=12:", float(p.exact))

# For a fixed ell-subset, the probability that its neighborhood has size at
# most r admits an exact alternating-sum formula.  The weights come from
# inclusion-exclusion over all small right-sets.
print("\ninclusion-exclusion weights, n=6, r=3:", alpha_coefficients(6, 3))
exact = exact_plr(6, 2, 3, 2)
bound = bassalygo_bound(6, 2, 3, 2)
print("P(|Gamma({1,2})| <= 3) with d=2 overlays on n=6:")
print("  exact      :", exact)
print("  union bound:", bound, "(close, as usual)")

est, se = montecarlo_plr(6, 2, 3, 2, trials=100_000, seed=1)
print(f"  Monte Carlo: {est:.4f} +- {se:.4f}")

# The weights are an algebraic identity: against independent coin flips they
# must reproduce the binomial tail exactly.
print("\nbinomial-tail identity at n=12, r=5, q=7/10:",
      boolean_identity_check(12, 5, Fraction(7, 10)))

# At desk scale the union bounds are far above the empirical frequency.
bound = expansion_fail_bound(12, 3, 0, 3, 4)
freq, fails, samples = empirical_expansion_failure(12, 3, 0, 3, 4, samples=200, seed=0)
print(f"\nn=12, k=3, m=4: bound {float(bound.exact):.5f}, "
      f"empirical failures {fails}/{samples}")

# A CSV table collects everything per configuration.
print("\nCSV table:")
print(plr_table([(6, 2, 2, 2), (6, 2, 3, 2), (8, 2, 4, 3)], trials=20_000, seed=5))
