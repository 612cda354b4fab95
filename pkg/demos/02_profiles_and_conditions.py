#!/usr/bin/env python3
"""The piecewise-linear expansion profiles and the exact side conditions on
their anchor constants.

Run as: python demos/02_profiles_and_conditions.py
"""

from fractions import Fraction

from superconc.profiles import (
    alon_capalbo_profile,
    check_conditions,
    density253_constants,
    expansion_profile,
    overlap_profile,
)

# The classic profile asks size-n/4 sets to expand to n/2; the density-25.3
# parameter set weakens the required expansion but adds a pair condition.
classic = alon_capalbo_profile()
c = density253_constants()
e = expansion_profile(c)
o = overlap_profile(c)

print("anchor constants:")
for name in ("c1", "c2", "c3", "c4", "c5", "c6"):
    print(f"  {name} = {getattr(c, name)}")
print(f"  d = {c.d} (= {c.d_int} whole overlays + {c.delta} pinned fraction)")

print("\nprofiles at a few fractions (exact rationals):")
for t in (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
    print(f"  alpha={t}:  classic {classic.eval(t)},  e {e.eval(t)}")

print("\nsegment slopes of e (must strictly decrease, middle one exactly 1):")
print(" ", [str(s) for s in e.segment_slopes()])

# The overlap profile pins alpha - o(alpha) to c1 between c3 and c5.
print("\noverlap profile: alpha - o(alpha) on [c3, c5]:")
for t in range(0, 5):
    alpha = c.c3 + (c.c5 - c.c3) * Fraction(t, 4)
    print(f"  alpha={alpha}  alpha - o(alpha) = {alpha - o.eval(alpha)}")

# Two of the side conditions hold with equality, which is why the report
# works on exact rationals rather than floats.
print("\ncondition report:")
report = check_conditions(c)
for check in report.checks:
    mark = "ok " if check.passed else "BAD"
    print(f"  [{mark}] {check.name:<22} slack {check.slack:+.9f}")
print("all pass:", report.all_pass)

# Profiles serialize to a plain two-column text format.
print("\ntext form of e:")
print(e.to_text())
