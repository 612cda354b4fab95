"""Piecewise-linear expansion profiles and the numeric side conditions that
make the recursive construction go through.

Profile constants are kept as exact rationals: two of the conditions below
hold with equality for the density-25.3 parameter set, and float arithmetic
would misreport those zero-slack passes.
"""

from __future__ import annotations

import decimal
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "as_fraction",
    "PiecewiseLinear",
    "ProfileConstants",
    "density253_constants",
    "expansion_profile",
    "alon_capalbo_profile",
    "overlap_profile",
    "ConditionCheck",
    "ConditionReport",
    "check_conditions",
]


def as_fraction(x) -> Fraction:
    """Exact rational from int/str/Fraction; floats are read as their shortest
    decimal representation (0.325 -> 13/40), matching how such constants are
    written down."""
    if isinstance(x, float):
        return Fraction(decimal.Decimal(repr(x)))
    return Fraction(x)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Piecewise-linear function given by breakpoints with strictly increasing x.

    Evaluation interpolates linearly between breakpoints and is defined exactly
    on [first x, last x].  Arithmetic stays exact when breakpoints and argument
    are rationals.
    """

    breakpoints: tuple

    def __post_init__(self):
        pts = tuple((p[0], p[1]) for p in self.breakpoints)
        if len(pts) < 2:
            raise ValueError("need at least two breakpoints")
        xs = [p[0] for p in pts]
        if any(a >= b for a, b in zip(xs, xs[1:])) :
            raise ValueError(f"breakpoint x-coordinates must strictly increase: {xs}")
        object.__setattr__(self, "breakpoints", pts)

    @property
    def domain(self):
        return self.breakpoints[0][0], self.breakpoints[-1][0]

    def _segment(self, x) -> int:
        lo, hi = self.domain
        if x < lo or x > hi:
            raise ValueError(f"{x} outside profile domain [{lo}, {hi}]")
        xs = [p[0] for p in self.breakpoints]
        i = bisect_right(xs, x) - 1
        return min(i, len(xs) - 2)

    def eval(self, x):
        i = self._segment(x)
        (x0, y0), (x1, y1) = self.breakpoints[i], self.breakpoints[i + 1]
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0)

    __call__ = eval

    def slope(self, x):
        """Slope of the segment at x; at a breakpoint, the right-hand segment.

        The last breakpoint has no right-hand segment and reports the final
        segment's slope.
        """
        i = self._segment(x)
        (x0, y0), (x1, y1) = self.breakpoints[i], self.breakpoints[i + 1]
        return (y1 - y0) / (x1 - x0)

    def segment_slopes(self) -> list:
        return [
            (y1 - y0) / (x1 - x0)
            for (x0, y0), (x1, y1) in zip(self.breakpoints, self.breakpoints[1:])
        ]

    def to_text(self) -> str:
        """One "x y" pair per line."""
        return "\n".join(f"{p[0]} {p[1]}" for p in self.breakpoints) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PiecewiseLinear":
        """Parse the to_text format; every value becomes an exact Fraction."""
        pts = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            xs, ys = line.split()
            pts.append((Fraction(xs), Fraction(ys)))
        return cls(tuple(pts))


@dataclass(frozen=True)
class ProfileConstants:
    """The six anchor constants of the expansion profile, plus the average
    degree d (possibly fractional) and the pinned-edge fraction delta."""

    c1: Fraction
    c2: Fraction
    c3: Fraction
    c4: Fraction
    c5: Fraction
    c6: Fraction
    d: Fraction
    delta: Fraction

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "c4", "c5", "c6"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ValueError(f"{name}={v} must lie in (0, 1)")
        object.__setattr__(self, "d", as_fraction(self.d))
        object.__setattr__(self, "delta", as_fraction(self.delta))
        if not 0 <= self.delta <= 1:
            raise ValueError(f"delta={self.delta} must lie in [0, 1]")

    @classmethod
    def from_c1_c3(cls, c1, c3, d, delta) -> "ProfileConstants":
        """Derive the dependent constants: c2 = c5 = 1-c1-c3, c4 = 1-c2, c6 = 1-c3."""
        c1 = as_fraction(c1)
        c3 = as_fraction(c3)
        c2 = 1 - c1 - c3
        return cls(c1, c2, c3, 1 - c2, c2, 1 - c3, as_fraction(d), as_fraction(delta))

    @property
    def d_int(self) -> int:
        """Number of whole permutation overlays (the integer part of d)."""
        return math.floor(self.d)


def density253_constants() -> ProfileConstants:
    """Parameter set achieving asymptotic density 25.3 = 4*(5.325 + 1)."""
    return ProfileConstants.from_c1_c3("0.2301", "0.3322", d="5.325", delta="0.325")


def expansion_profile(c: ProfileConstants) -> PiecewiseLinear:
    """Five-anchor expansion profile through (0,0), (c1,c2), (c3,c4), (c5,c6), (1,1)."""
    if not c.c1 < c.c3 < c.c5:
        raise ValueError(f"need c1 < c3 < c5, got {c.c1}, {c.c3}, {c.c5}")
    one = Fraction(1)
    return PiecewiseLinear(
        ((Fraction(0), Fraction(0)), (c.c1, c.c2), (c.c3, c.c4), (c.c5, c.c6), (one, one))
    )


def alon_capalbo_profile() -> PiecewiseLinear:
    """The classic four-anchor profile (0,0), (1/4,1/2), (1/2,3/4), (1,1)."""
    f = Fraction
    return PiecewiseLinear(((f(0), f(0)), (f(1, 4), f(1, 2)), (f(1, 2), f(3, 4)), (f(1), f(1))))


def overlap_profile(c: ProfileConstants) -> PiecewiseLinear:
    """Overlap lower-bound profile on [c3, 1] through (c3, c3-c1), (c5, c5-c1), (1, 1)."""
    if not c.c1 < c.c3 < c.c5:
        raise ValueError(f"need c1 < c3 < c5, got {c.c1}, {c.c3}, {c.c5}")
    one = Fraction(1)
    return PiecewiseLinear(((c.c3, c.c3 - c.c1), (c.c5, c.c5 - c.c1), (one, one)))


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    passed: bool
    slack: float
    detail: str = ""


@dataclass(frozen=True)
class ConditionReport:
    checks: tuple

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> ConditionCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "all_pass": self.all_pass,
            "checks": [
                {"name": c.name, "passed": c.passed, "slack": c.slack, "detail": c.detail}
                for c in self.checks
            ],
        }


def check_conditions(c: ProfileConstants, gamma=1, eps1=Fraction(3, 10)) -> ConditionReport:
    """Evaluate every side condition on the constants with exact arithmetic.

    Inequalities that the density-25.3 constants meet with equality (the
    anchor sums below) are decided on rationals, so a zero-slack pass is
    reported as a pass.  Degree conditions on the profile slopes use the
    fractional d; the pair-expansion degree condition concerns the whole
    permutation overlays only and uses floor(d).
    """
    gamma = as_fraction(gamma)
    eps1 = as_fraction(eps1)
    s01 = c.c2 / c.c1                       # slope on (0, c1)
    s12 = (c.c4 - c.c2) / (c.c3 - c.c1)     # slope on (c1, c3)
    s23 = (c.c6 - c.c4) / (c.c5 - c.c3)     # slope on (c3, c5)
    s34 = (1 - c.c6) / (1 - c.c5)           # slope on (c5, 1)

    checks = [
        ConditionCheck(
            "c1<c3<c5",
            c.c1 < c.c3 < c.c5,
            float(min(c.c3 - c.c1, c.c5 - c.c3)),
            f"c1={c.c1}, c3={c.c3}, c5={c.c5}",
        ),
        ConditionCheck(
            "c2+c4>=1",
            c.c2 + c.c4 >= 1,
            float(c.c2 + c.c4 - 1),
            f"c2+c4={c.c2 + c.c4}",
        ),
        ConditionCheck(
            "c1+c2+c3<=1",
            c.c1 + c.c2 + c.c3 <= 1,
            float(1 - (c.c1 + c.c2 + c.c3)),
            f"c1+c2+c3={c.c1 + c.c2 + c.c3}",
        ),
        ConditionCheck("slope-chain-1", s01 > s12, float(s01 - s12), f"{s01} > {s12}"),
        ConditionCheck("slope-chain-2", s12 > s23, float(s12 - s23), f"{s12} > {s23}"),
        ConditionCheck(
            "middle-slope-unit",
            s23 == 1,
            -abs(float(s23 - 1)),
            f"slope on (c3, c5) = {s23}",
        ),
        ConditionCheck("final-slope<1", s34 < 1, float(1 - s34), f"slope on (c5, 1) = {s34}"),
        ConditionCheck(
            "degree>2+e'(0)",
            c.d > 2 + s01,
            float(c.d - 2 - s01),
            f"d={c.d} vs 2+e'(0)={float(2 + s01):.10f}",
        ),
        ConditionCheck(
            "degree>1+2/e'(1)",
            c.d > 1 + 2 / s34,
            float(c.d - 1 - 2 / s34),
            f"d={c.d} vs 1+2/e'(1)={float(1 + 2 / s34):.10f}",
        ),
    ]

    if 2 * gamma * eps1 >= 1:
        checks.append(
            ConditionCheck(
                "pair-degree",
                False,
                float("-inf"),
                f"pole: 2*gamma*eps1 = {2 * gamma * eps1} >= 1",
            )
        )
    else:
        threshold = 1 + gamma * (1 - eps1) / (1 - 2 * gamma * eps1)
        d_whole = Fraction(c.d_int)
        checks.append(
            ConditionCheck(
                "pair-degree",
                d_whole > threshold,
                float(d_whole - threshold),
                f"floor(d)={c.d_int} vs 1+gamma(1-eps1)/(1-2*gamma*eps1)={float(threshold):.10f}",
            )
        )

    return ConditionReport(tuple(checks))
