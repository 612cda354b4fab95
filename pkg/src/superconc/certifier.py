"""Grid certification of the two entropy inequalities behind the fractional
degree d = 5.325, plus direct (pointwise) checks of the closed-form degree
conditions.

The certified inequalities compare sums of weighted entropy terms H(V) where
every V is affine in the cell coordinates (x, y) or becomes affine after
multiplying by its weight.  On each grid cell the left-hand terms are replaced
by chords (below H on the enclosure of V) and the right-hand terms by midpoint
tangents (above H everywhere), which strengthens the inequality into an affine
one; an affine function attains its minimum over a convex cell polygon at an
extreme point, so checking the corner points certifies the whole cell.

Enclosures of the V expressions are interval images of the cell, truncated to
[0, 1].  The slack recorded for a cell is the minimum over its corners of
strengthened LHS minus strengthened RHS; certification requires every slack
to clear the margin.  An optional high-precision pass recomputes, with 60
extra mantissa bits, every cell whose double-precision slack lands within ten
times the margin.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .entropy import chord_coefficients, entropy, entropy_mp, tangent_coefficients
from .profiles import (
    PiecewiseLinear,
    ProfileConstants,
    as_fraction,
    density253_constants,
    expansion_profile,
)

__all__ = [
    "Cell",
    "corner_points",
    "CertReport",
    "certify_pair_inequality",
    "certify_expansion_inequality",
    "RatioCheckReport",
    "direct_check_ratio",
    "DegreeCheck",
    "check_pairexp_degree",
]

LN2 = math.log(2.0)
_FAIL_CAP = 10_000
_NEAR_CAP = 200_000
_EXTRA_BITS = 60


@dataclass(frozen=True)
class Cell:
    """One grid cell: an x-interval times a y-interval."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError(f"malformed cell {self}")


def corner_points(cell: Cell, gamma: float = 1.0) -> list:
    """Extreme points of the cell rectangle intersected with y <= gamma*x.

    Only gamma = 1 is supported; the corner geometry has not been worked out
    for other values.  An infeasible cell (y_min > x_max) returns no points.
    The feasible part of the y-range is capped at x_max, and when the diagonal
    crosses the left edge the vertex (x_min, x_min) joins the usual four
    corner candidates; without it the corner minimum would not dominate the
    whole polygon.
    """
    if gamma != 1.0:
        raise ValueError("only gamma = 1 is supported")
    if cell.y_min > cell.x_max:
        return []
    y_hi = min(cell.y_max, cell.x_max)
    pts = [
        (max(cell.x_min, cell.y_min), cell.y_min),
        (cell.x_max, cell.y_min),
        (max(cell.x_min, y_hi), y_hi),
        (cell.x_max, y_hi),
    ]
    if cell.y_min < cell.x_min < y_hi:
        pts.append((cell.x_min, cell.x_min))
    out = []
    for p in pts:
        if p not in out:
            out.append(p)
    return out


@dataclass
class CertReport:
    """Outcome of one certification run."""

    lemma: str
    params: dict
    grid: int
    margin: float
    min_slack: float
    argmin_cell: tuple  # (interval index, x cell index, y cell index)
    corners_evaluated: int
    cells_checked: int
    failing_cells: list  # [(interval, i, j, slack)], ascending, capped
    failing_count: int
    runtime_seconds: float
    recheck: dict | None = None

    @property
    def passed(self) -> bool:
        ok = self.failing_count == 0 and self.min_slack >= self.margin
        if self.recheck is not None:
            ok = ok and self.recheck["all_clear"]
        return ok

    def to_json_dict(self) -> dict:
        out = {
            "lemma": self.lemma,
            "params": self.params,
            "grid": self.grid,
            "margin": self.margin,
            "min_slack": self.min_slack,
            "argmin_cell": list(self.argmin_cell),
            "corners_evaluated": self.corners_evaluated,
            "cells_checked": self.cells_checked,
            "failing_count": self.failing_count,
            "failing_cells": [list(c) for c in self.failing_cells],
            "pass": self.passed,
        }
        if self.recheck is not None:
            out["recheck"] = self.recheck
        return out


def _corner_slacks(A, B, C, x_min, x_max, y_min, y_max):
    """Minimum of A + B*x + C*y over the corner points of each cell, vectorized
    over the y-cells of one x-cell.  Returns (per-cell minima, corner count)."""
    y_hi = np.minimum(y_max, x_max)
    s1 = A + B * np.maximum(x_min, y_min) + C * y_min
    s2 = A + B * x_max + C * y_min
    s3 = A + B * np.maximum(x_min, y_hi) + C * y_hi
    s4 = A + B * x_max + C * y_hi
    sl = np.minimum(np.minimum(s1, s2), np.minimum(s3, s4))
    corners = 4 * len(y_min)
    extra = (y_min < x_min) & (x_min < y_hi)
    n_extra = int(np.count_nonzero(extra))
    if n_extra:
        s5 = A + B * x_min + C * x_min
        sl = np.where(extra, np.minimum(sl, s5), sl)
        corners += n_extra
    return sl, corners


def _pair_row(i, xs, delta, p, grid_n):
    """Per-cell corner-minimum slacks for one x-cell of the pair inequality."""
    x_min, x_max = float(xs[i]), float(xs[i + 1])
    ys = np.linspace(0.0, min(x_max, delta), grid_n + 1)
    y_min, y_max = ys[:-1], ys[1:]

    c1a, c1b = chord_coefficients(x_min, x_max)          # H(x), lower
    c2a, c2b = chord_coefficients(y_min, y_max)          # H(y), lower
    t3a, t3b = tangent_coefficients(                     # H(y/delta), upper
        np.minimum(y_min / delta, 1.0), np.minimum(y_max / delta, 1.0)
    )
    t4a, t4b = tangent_coefficients(                     # H((x-y)/(1-delta)), upper
        np.clip((x_min - y_max) / (1.0 - delta), 0.0, 1.0),
        np.clip((x_max - y_min) / (1.0 - delta), 0.0, 1.0),
    )
    t5a, t5b = tangent_coefficients(                     # H(y/x), upper
        np.clip(y_min / x_max, 0.0, 1.0), np.clip(y_max / x_min, 0.0, 1.0)
    )
    # strengthened LHS - RHS = A + B*x + C*y
    A = (1.0 - p) * c1a + c2a - delta * t3a - (1.0 - delta) * t4a
    B = (1.0 - p) * c1b + 2.0 * p * LN2 - t4b - t5a
    C = c2b - t3b + t4b - t5b
    return _corner_slacks(A, B, C, x_min, x_max, y_min, y_max)


def _expansion_row(i, xs, delta, boost, ea, eb, grid_n):
    """Per-cell corner-minimum slacks for one x-cell of the expansion
    inequality, with e(x) = ea + eb*x affine on the whole x-interval."""
    x_min, x_max = float(xs[i]), float(xs[i + 1])
    e_min = ea + eb * x_min
    e_max = ea + eb * x_max
    ys = np.linspace(0.0, min(x_max, delta), grid_n + 1)
    y_min, y_max = ys[:-1], ys[1:]

    c1a, c1b = chord_coefficients(x_min, x_max)          # H(x), lower
    r0, r1 = x_min / e_min, x_max / e_max                # x/e(x) is monotone on the cell
    c2a, c2b = chord_coefficients(min(r0, r1), max(r0, r1))
    c3a, c3b = chord_coefficients(y_min, y_max)          # H(y), lower
    t4a, t4b = tangent_coefficients(                     # H(y/delta), upper
        np.minimum(y_min / delta, 1.0), np.minimum(y_max / delta, 1.0)
    )
    t5a, t5b = tangent_coefficients(                     # H((x-y)/(1-delta)), upper
        np.clip((x_min - y_max) / (1.0 - delta), 0.0, 1.0),
        np.clip((x_max - y_min) / (1.0 - delta), 0.0, 1.0),
    )
    t6a, t6b = tangent_coefficients(                     # H(y/e(x)), upper
        np.clip(y_min / e_max, 0.0, 1.0), np.clip(y_max / e_min, 0.0, 1.0)
    )
    A = (1.0 - boost) * c1a + boost * c2a * ea + c3a - delta * t4a - (1.0 - delta) * t5a - t6a * ea
    B = (1.0 - boost) * c1b + boost * (c2a * eb + c2b) - t5b - t6a * eb
    C = c3b - t4b + t5b - t6b
    return _corner_slacks(A, B, C, x_min, x_max, y_min, y_max)


def _scan_interval(row_fn, grid_n, margin, threads, slack_rows=None):
    """Run row_fn over all x-cells and fold the per-cell slacks.

    The fold happens in row order regardless of how many worker threads
    computed the rows, so the outcome is schedule independent.
    """
    near_cut = 10.0 * margin
    min_slack = math.inf
    argmin = None
    corners = 0
    failing = []
    fail_count = 0
    near = []

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = pool.map(row_fn, range(grid_n))
            rows = list(rows)
    else:
        rows = (row_fn(i) for i in range(grid_n))

    for i, (sl, ncorners) in enumerate(rows):
        corners += ncorners
        j = int(np.argmin(sl))
        if sl[j] < min_slack:
            min_slack = float(sl[j])
            argmin = (i, j)
        bad = np.nonzero(sl < margin)[0]
        fail_count += len(bad)
        for j_bad in bad:
            if len(failing) < _FAIL_CAP:
                failing.append((i, int(j_bad), float(sl[j_bad])))
        close = np.nonzero(sl < near_cut)[0]
        for j_close in close:
            if len(near) < _NEAR_CAP:
                near.append((i, int(j_close)))
        if slack_rows is not None:
            slack_rows.append(sl)
    return min_slack, argmin, corners, failing, fail_count, near


def _hp_chord(lo, hi):
    h_lo = entropy_mp(lo)
    if hi == lo:
        return h_lo, mpmath.mpf(0)
    slope = (entropy_mp(hi) - h_lo) / (hi - lo)
    return h_lo - slope * lo, slope


def _hp_tangent(lo, hi):
    m = (lo + hi) / 2
    if m <= 0 or m >= 1:
        return mpmath.mpf(0), mpmath.mpf(0)
    slope = mpmath.log((1 - m) / m)
    return entropy_mp(m) - slope * m, slope


def _hp_clip(v):
    return min(max(v, mpmath.mpf(0)), mpmath.mpf(1))


def _hp_pair_cell(xs_lo, xs_hi, grid_n, delta, p, i, j):
    x_min = xs_lo + (xs_hi - xs_lo) * mpmath.mpf(i) / grid_n
    x_max = xs_lo + (xs_hi - xs_lo) * mpmath.mpf(i + 1) / grid_n
    y_top = min(x_max, delta)
    y_min = y_top * mpmath.mpf(j) / grid_n
    y_max = y_top * mpmath.mpf(j + 1) / grid_n
    c1a, c1b = _hp_chord(x_min, x_max)
    c2a, c2b = _hp_chord(y_min, y_max)
    t3a, t3b = _hp_tangent(_hp_clip(y_min / delta), _hp_clip(y_max / delta))
    t4a, t4b = _hp_tangent(
        _hp_clip((x_min - y_max) / (1 - delta)), _hp_clip((x_max - y_min) / (1 - delta))
    )
    t5a, t5b = _hp_tangent(_hp_clip(y_min / x_max), _hp_clip(y_max / x_min))
    A = (1 - p) * c1a + c2a - delta * t3a - (1 - delta) * t4a
    B = (1 - p) * c1b + 2 * p * mpmath.log(2) - t4b - t5a
    C = c2b - t3b + t4b - t5b
    return _hp_corner_min(A, B, C, x_min, x_max, y_min, y_max)


def _hp_expansion_cell(xs_lo, xs_hi, grid_n, delta, boost, ea, eb, i, j):
    x_min = xs_lo + (xs_hi - xs_lo) * mpmath.mpf(i) / grid_n
    x_max = xs_lo + (xs_hi - xs_lo) * mpmath.mpf(i + 1) / grid_n
    e_min = ea + eb * x_min
    e_max = ea + eb * x_max
    y_top = min(x_max, delta)
    y_min = y_top * mpmath.mpf(j) / grid_n
    y_max = y_top * mpmath.mpf(j + 1) / grid_n
    c1a, c1b = _hp_chord(x_min, x_max)
    r0, r1 = x_min / e_min, x_max / e_max
    c2a, c2b = _hp_chord(min(r0, r1), max(r0, r1))
    c3a, c3b = _hp_chord(y_min, y_max)
    t4a, t4b = _hp_tangent(_hp_clip(y_min / delta), _hp_clip(y_max / delta))
    t5a, t5b = _hp_tangent(
        _hp_clip((x_min - y_max) / (1 - delta)), _hp_clip((x_max - y_min) / (1 - delta))
    )
    t6a, t6b = _hp_tangent(_hp_clip(y_min / e_max), _hp_clip(y_max / e_min))
    A = (1 - boost) * c1a + boost * c2a * ea + c3a - delta * t4a - (1 - delta) * t5a - t6a * ea
    B = (1 - boost) * c1b + boost * (c2a * eb + c2b) - t5b - t6a * eb
    C = c3b - t4b + t5b - t6b
    return _hp_corner_min(A, B, C, x_min, x_max, y_min, y_max)


def _hp_corner_min(A, B, C, x_min, x_max, y_min, y_max):
    y_hi = min(y_max, x_max)
    pts = [
        (max(x_min, y_min), y_min),
        (x_max, y_min),
        (max(x_min, y_hi), y_hi),
        (x_max, y_hi),
    ]
    if y_min < x_min < y_hi:
        pts.append((x_min, x_min))
    return min(A + B * px + C * py for px, py in pts)


def _recheck(cells, margin, cell_fn):
    """Recompute near-margin cells with extra mantissa bits."""
    if not cells:
        return {
            "cells": 0,
            "precision_bits": 53 + _EXTRA_BITS,
            "min_slack": None,
            "all_clear": True,
        }
    with mpmath.workprec(53 + _EXTRA_BITS):
        slacks = [cell_fn(*cell) for cell in cells]
        worst = min(slacks)
        all_clear = worst >= margin
        return {
            "cells": len(cells),
            "precision_bits": 53 + _EXTRA_BITS,
            "min_slack": float(worst),
            "all_clear": bool(all_clear),
        }


def _write_slack_csv(path, interval_index, rows):
    import csv as _csv

    with open(path, "a", newline="") as fh:
        writer = _csv.writer(fh)
        for i, sl in enumerate(rows):
            for j, s in enumerate(sl):
                writer.writerow([interval_index, i, j, repr(float(s))])


def certify_pair_inequality(
    delta=0.325,
    gamma=1.0,
    p=0.45,
    x_range=(0.3, 0.3322),
    grid_n: int = 1000,
    margin: float = 1e-4,
    threads: int = 1,
    confirm: bool = False,
    slack_csv: str | None = None,
) -> CertReport:
    """Certify, over x in x_range and y in [0, min(x, delta)], that

        H(x)(1-p) + 2*gamma*p*x*H(1/(2*gamma)) + H(y)
            > delta*H(y/delta) + (1-delta)*H((x-y)/(1-delta)) + gamma*x*H(y/(gamma*x))

    by at least ``margin``, using a grid_n x grid_n subdivision with chord and
    tangent strengthening and corner evaluation.  Only gamma = 1 is supported.
    """
    t0 = time.perf_counter()
    delta = float(delta)
    p = float(p)
    x_lo, x_hi = float(x_range[0]), float(x_range[1])
    if gamma != 1.0:
        raise ValueError("only gamma = 1 is supported")
    if not 0.0 < delta <= 0.5:
        raise ValueError(f"delta={delta} outside (0, 0.5]")
    if not 0.0 < x_lo < x_hi < 1.0:
        raise ValueError(f"x range [{x_lo}, {x_hi}] must be inside (0, 1)")
    if x_hi + delta - 1.0 > 0.0:
        raise ValueError(
            "the lower constraint y >= x + delta - 1 would become active; "
            "this range is not supported"
        )
    if grid_n < 1:
        raise ValueError(f"grid_n must be >= 1, got {grid_n}")

    xs = np.linspace(x_lo, x_hi, grid_n + 1)
    slack_rows = [] if slack_csv else None

    def row(i):
        return _pair_row(i, xs, delta, p, grid_n)

    min_slack, argmin, corners, failing, fail_count, near = _scan_interval(
        row, grid_n, margin, threads, slack_rows
    )
    if slack_csv:
        open(slack_csv, "w").close()
        _write_slack_csv(slack_csv, 0, slack_rows)

    recheck = None
    if confirm:
        recheck = _recheck(
            [(i, j) for i, j in near],
            margin,
            lambda i, j: _hp_pair_cell(
                mpmath.mpf(repr(x_lo)), mpmath.mpf(repr(x_hi)), grid_n,
                mpmath.mpf(repr(delta)), mpmath.mpf(repr(p)), i, j,
            ),
        )

    return CertReport(
        lemma="pair-expansion",
        params={"delta": delta, "gamma": 1.0, "p": p, "x_range": [x_lo, x_hi]},
        grid=grid_n,
        margin=margin,
        min_slack=min_slack,
        argmin_cell=(0,) + argmin,
        corners_evaluated=corners,
        cells_checked=grid_n * grid_n,
        failing_cells=[(0,) + f for f in failing],
        failing_count=fail_count,
        runtime_seconds=time.perf_counter() - t0,
        recheck=recheck,
    )


def _segment_for(profile: PiecewiseLinear, lo, hi):
    """Affine coefficients (ea, eb) of the profile on [lo, hi]; the interval
    must sit inside a single increasing, positive segment (the interval
    enclosures below rely on both)."""
    lo_f, hi_f = as_fraction(lo), as_fraction(hi)
    for (x0, y0), (x1, y1) in zip(profile.breakpoints, profile.breakpoints[1:]):
        if as_fraction(x0) <= lo_f and hi_f <= as_fraction(x1):
            eb = Fraction(as_fraction(y1) - as_fraction(y0)) / (as_fraction(x1) - as_fraction(x0))
            ea = as_fraction(y0) - eb * as_fraction(x0)
            if eb <= 0 or ea + eb * lo_f <= 0:
                raise ValueError(
                    f"profile must be increasing and positive on [{lo}, {hi}]"
                )
            return float(ea), float(eb)
    raise ValueError(f"[{lo}, {hi}] does not lie inside one linear segment of the profile")


def certify_expansion_inequality(
    delta=0.325,
    boost=0.18,
    constants: ProfileConstants | None = None,
    x_intervals=None,
    grid_n: int = 1000,
    margin: float = 1e-4,
    threads: int = 1,
    confirm: bool = False,
    slack_csv: str | None = None,
) -> CertReport:
    """Certify, over each given x-interval and y in [0, min(x, delta)], that

        H(x)(1-boost) + boost*e(x)*H(x/e(x)) + H(y)
            > delta*H(y/delta) + (1-delta)*H((x-y)/(1-delta)) + e(x)*H(y/e(x))

    by at least ``margin``, where e is the piecewise-linear expansion profile
    of ``constants``.  Every x-interval must lie inside one linear segment of
    e; by default the range [0.21, 0.48] is split at the profile anchors.
    """
    t0 = time.perf_counter()
    delta = float(delta)
    boost = float(boost)
    constants = constants if constants is not None else density253_constants()
    profile = expansion_profile(constants)
    if x_intervals is None:
        c1, c3, c5 = float(constants.c1), float(constants.c3), float(constants.c5)
        x_intervals = [(0.21, c1), (c1, c3), (c3, c5), (c5, 0.48)]
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta={delta} outside (0, 1)")
    if grid_n < 1:
        raise ValueError(f"grid_n must be >= 1, got {grid_n}")
    for lo, hi in x_intervals:
        if not 0.0 < float(lo) < float(hi) < 1.0:
            raise ValueError(f"x interval [{lo}, {hi}] must be inside (0, 1)")
        if float(hi) + delta - 1.0 > 0.0:
            raise ValueError(
                "the lower constraint y >= x + delta - 1 would become active; "
                "this range is not supported"
            )

    if slack_csv:
        open(slack_csv, "w").close()

    min_slack = math.inf
    argmin = None
    corners = 0
    cells = 0
    failing = []
    fail_count = 0
    recheck_cells = []
    segments = []

    for idx, (lo, hi) in enumerate(x_intervals):
        ea, eb = _segment_for(profile, lo, hi)
        segments.append((float(lo), float(hi), ea, eb))
        xs = np.linspace(float(lo), float(hi), grid_n + 1)
        slack_rows = [] if slack_csv else None

        def row(i, xs=xs, ea=ea, eb=eb):
            return _expansion_row(i, xs, delta, boost, ea, eb, grid_n)

        mn, am, crn, fl, fc, near = _scan_interval(row, grid_n, margin, threads, slack_rows)
        corners += crn
        cells += grid_n * grid_n
        if mn < min_slack:
            min_slack = mn
            argmin = (idx,) + am
        failing.extend((idx,) + f for f in fl[: max(0, _FAIL_CAP - len(failing))])
        fail_count += fc
        recheck_cells.extend((idx, i, j) for i, j in near)
        if slack_csv:
            _write_slack_csv(slack_csv, idx, slack_rows)

    recheck = None
    if confirm:
        def hp_cell(idx, i, j):
            lo, hi, ea, eb = segments[idx]
            return _hp_expansion_cell(
                mpmath.mpf(repr(lo)), mpmath.mpf(repr(hi)), grid_n,
                mpmath.mpf(repr(delta)), mpmath.mpf(repr(boost)),
                mpmath.mpf(repr(ea)), mpmath.mpf(repr(eb)), i, j,
            )

        recheck = _recheck(recheck_cells, margin, hp_cell)

    return CertReport(
        lemma="expansion",
        params={
            "delta": delta,
            "boost": boost,
            "x_intervals": [[float(lo), float(hi)] for lo, hi in x_intervals],
        },
        grid=grid_n,
        margin=margin,
        min_slack=min_slack,
        argmin_cell=argmin,
        corners_evaluated=corners,
        cells_checked=cells,
        failing_cells=failing,
        failing_count=fail_count,
        runtime_seconds=time.perf_counter() - t0,
        recheck=recheck,
    )


@dataclass(frozen=True)
class RatioCheckReport:
    """Pointwise minimum slack of a degree requirement over an alpha grid.

    This scan evaluates the requirement at grid points only; unlike the cell
    certification above it proves nothing between them.
    """

    kind: str
    d_plus_c: float
    alpha_range: tuple
    grid_n: int
    min_slack: float
    argmin_alpha: float
    certified: bool = False

    @property
    def passed(self) -> bool:
        return self.min_slack > 0.0


def direct_check_ratio(
    d_plus_c: float,
    *,
    profile: PiecewiseLinear | None = None,
    gamma=None,
    alpha_range,
    grid_n: int = 1000,
) -> RatioCheckReport:
    """Evaluate d_plus_c minus the governing entropy ratio on a grid.

    With ``profile`` the ratio is (H(a) + H(e(a))) / (H(a) - H(a/e(a))*e(a));
    with ``gamma`` it is (H(a) + H(2*gamma*a)/2) / (H(a) - 2*gamma*a*H(1/(2*gamma))).
    The denominator must be positive on the whole grid, otherwise the check is
    rejected as ill-posed.
    """
    if (profile is None) == (gamma is None):
        raise ValueError("give exactly one of profile or gamma")
    lo, hi = float(alpha_range[0]), float(alpha_range[1])
    if not 0.0 < lo <= hi < 1.0:
        raise ValueError(f"alpha range [{lo}, {hi}] must be inside (0, 1)")
    alphas = np.linspace(lo, hi, grid_n + 1)
    h_a = entropy(alphas)
    if profile is not None:
        e_vals = np.asarray([float(profile.eval(a)) for a in alphas])
        if np.any(e_vals <= alphas) or np.any(e_vals > 1.0):
            raise ValueError("profile must satisfy alpha < e(alpha) <= 1 on the range")
        numer = h_a + entropy(e_vals)
        denom = h_a - entropy(alphas / e_vals) * e_vals
        kind = "expansion"
    else:
        gamma = float(gamma)
        if gamma < 0.5:
            raise ValueError(f"gamma={gamma} must be at least 1/2")
        if 2.0 * gamma * hi > 1.0:
            raise ValueError(f"need 2*gamma*alpha <= 1 on the range, got {2 * gamma * hi}")
        numer = h_a + 0.5 * entropy(2.0 * gamma * alphas)
        denom = h_a - 2.0 * gamma * alphas * entropy(1.0 / (2.0 * gamma))
        kind = "pair"
    if np.any(denom <= 0.0):
        bad = float(alphas[int(np.argmin(denom))])
        raise ValueError(f"nonpositive denominator near alpha={bad}; requirement ill-posed there")
    slack = d_plus_c - numer / denom
    j = int(np.argmin(slack))
    return RatioCheckReport(
        kind=kind,
        d_plus_c=float(d_plus_c),
        alpha_range=(lo, hi),
        grid_n=grid_n,
        min_slack=float(slack[j]),
        argmin_alpha=float(alphas[j]),
    )


@dataclass(frozen=True)
class DegreeCheck:
    passed: bool
    slack: float
    threshold: float


def check_pairexp_degree(d, gamma, eps1) -> DegreeCheck:
    """Check d > 1 + gamma*(1-eps1)/(1-2*gamma*eps1) in exact arithmetic.

    The threshold has a pole at 2*gamma*eps1 = 1; arguments at or past it are
    rejected.
    """
    d = as_fraction(d)
    gamma = as_fraction(gamma)
    eps1 = as_fraction(eps1)
    if 2 * gamma * eps1 >= 1:
        raise ValueError(f"2*gamma*eps1 = {2 * gamma * eps1} >= 1: threshold diverges")
    threshold = 1 + gamma * (1 - eps1) / (1 - 2 * gamma * eps1)
    slack = d - threshold
    return DegreeCheck(passed=slack > 0, slack=float(slack), threshold=float(threshold))
