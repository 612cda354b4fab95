import json
import math
import random
from fractions import Fraction

import pytest

from superconc.certifier import (
    Cell,
    CertReport,
    certify_expansion_inequality,
    certify_pair_inequality,
    check_pairexp_degree,
    corner_points,
    direct_check_ratio,
)
from superconc.entropy import chord_lower, entropy, tangent_upper
from superconc.profiles import (
    PiecewiseLinear,
    density253_constants,
    expansion_profile,
)

C = density253_constants()
PROFILE = expansion_profile(C)


# --- corner geometry -----------------------------------------------------------


def test_corner_points_straddling_cell():
    cell = Cell(0.3, 0.31, 0.29, 0.305)
    pts = corner_points(cell)
    for want in [(0.3, 0.29), (0.31, 0.29), (0.305, 0.305), (0.31, 0.305)]:
        assert want in pts
    # the diagonal crosses the left edge, so its vertex joins the corner set
    assert (0.3, 0.3) in pts
    assert len(pts) == 5


def test_corner_points_cell_below_diagonal():
    cell = Cell(0.5, 0.6, 0.1, 0.2)
    assert corner_points(cell) == [(0.5, 0.1), (0.6, 0.1), (0.5, 0.2), (0.6, 0.2)]


def test_corner_points_infeasible_cell_is_empty():
    assert corner_points(Cell(0.1, 0.2, 0.3, 0.4)) == []


def test_corner_points_deduplicates():
    pts = corner_points(Cell(0.2, 0.2, 0.1, 0.1))
    assert pts == [(0.2, 0.1)]


def test_corner_points_only_unit_gamma():
    with pytest.raises(ValueError):
        corner_points(Cell(0.3, 0.4, 0.0, 0.1), gamma=2.0)


def test_corner_minimum_dominates_feasible_polygon():
    # an affine function over the clipped cell attains its minimum at one of
    # the reported corners
    rng = random.Random(11)
    for _ in range(200):
        x0 = rng.uniform(0.05, 0.8)
        x1 = x0 + rng.uniform(1e-4, 0.1)
        y0 = rng.uniform(0.0, 0.8)
        y1 = y0 + rng.uniform(1e-4, 0.1)
        cell = Cell(x0, x1, y0, y1)
        pts = corner_points(cell)
        if not pts:
            continue
        A, B, Cc = rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)
        corner_min = min(A + B * x + Cc * y for x, y in pts)
        for i in range(20):
            for j in range(20):
                x = x0 + (x1 - x0) * i / 19
                y = y0 + (y1 - y0) * j / 19
                if y > x:
                    continue
                assert A + B * x + Cc * y >= corner_min - 1e-12


# --- pair inequality -----------------------------------------------------------


def test_pair_certification_passes_on_coarse_grid():
    report = certify_pair_inequality(grid_n=100)
    assert report.passed
    assert report.min_slack >= report.margin
    assert report.failing_count == 0
    assert report.cells_checked == 100 * 100


def test_pair_certification_fails_when_margin_exceeds_min_slack():
    base = certify_pair_inequality(grid_n=100)
    report = certify_pair_inequality(grid_n=100, margin=base.min_slack + 1e-6)
    assert not report.passed
    assert report.failing_count >= 1
    assert report.failing_cells == sorted(report.failing_cells)
    worst = min(s for _, _, _, s in report.failing_cells)
    assert worst == pytest.approx(base.min_slack, abs=1e-15)


def test_pair_certification_validation():
    with pytest.raises(ValueError):
        certify_pair_inequality(gamma=0.75)
    with pytest.raises(ValueError):
        certify_pair_inequality(delta=0.6)
    with pytest.raises(ValueError):
        certify_pair_inequality(delta=0.325, x_range=(0.5, 0.8))  # lower y bound activates
    with pytest.raises(ValueError):
        certify_pair_inequality(grid_n=0)


def test_pair_grid_refinement_does_not_lose_slack():
    coarse = certify_pair_inequality(grid_n=100)
    fine = certify_pair_inequality(grid_n=200)
    assert fine.min_slack >= coarse.min_slack - 1e-12


def test_pair_certification_threads_are_schedule_independent():
    a = certify_pair_inequality(grid_n=150, threads=1)
    b = certify_pair_inequality(grid_n=150, threads=4)
    assert a.min_slack == b.min_slack
    assert a.argmin_cell == b.argmin_cell
    assert a.corners_evaluated == b.corners_evaluated


def test_pair_certification_report_is_reproducible():
    a = certify_pair_inequality(grid_n=80).to_json_dict()
    b = certify_pair_inequality(grid_n=80).to_json_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_pair_true_inequality_holds_at_interior_points_of_passing_cells():
    delta, p = 0.325, 0.45
    report = certify_pair_inequality(grid_n=50)
    assert report.passed
    xs = [0.3 + (0.3322 - 0.3) * i / 50 for i in range(51)]
    rng = random.Random(4)

    def true_slack(x, y):
        lhs = entropy(x) * (1 - p) + 2 * p * x * entropy(0.5) + entropy(y)
        rhs = (
            delta * entropy(y / delta)
            + (1 - delta) * entropy((x - y) / (1 - delta))
            + x * entropy(y / x)
        )
        return lhs - rhs

    for _ in range(30):
        i = rng.randrange(50)
        x_min, x_max = xs[i], xs[i + 1]
        y_hi = min(x_max, delta)
        for _ in range(10):
            x = rng.uniform(x_min, x_max)
            y = rng.uniform(0.0, min(x, y_hi))
            assert true_slack(x, y) >= 0.0


def test_pair_high_precision_recheck_confirms():
    base = certify_pair_inequality(grid_n=60)
    report = certify_pair_inequality(grid_n=60, margin=base.min_slack / 2, confirm=True)
    assert report.recheck is not None
    assert report.recheck["cells"] > 0
    assert report.recheck["all_clear"] is True
    assert report.recheck["min_slack"] == pytest.approx(base.min_slack, abs=1e-9)
    assert report.passed


def test_pair_recheck_skips_when_no_cell_is_close():
    report = certify_pair_inequality(grid_n=60, confirm=True)  # margin far below slack
    assert report.recheck == {
        "cells": 0,
        "precision_bits": 113,
        "min_slack": None,
        "all_clear": True,
    }


# --- expansion inequality --------------------------------------------------------


def test_expansion_certification_passes_on_coarse_grid():
    report = certify_expansion_inequality(grid_n=100)
    assert report.passed
    assert report.cells_checked == 4 * 100 * 100
    assert len(report.params["x_intervals"]) == 4


def test_expansion_zero_boost_regression():
    report = certify_expansion_inequality(boost=0.0, grid_n=200)
    assert report.passed
    assert report.failing_count == 0
    assert report.min_slack == pytest.approx(0.04959734098462151, abs=1e-9)
    assert report.argmin_cell == (0, 0, 34)


def test_expansion_single_cell_matches_scalar_envelope_oracle():
    c3, c5 = float(C.c3), float(C.c5)
    delta, boost = 0.325, 0.18
    report = certify_expansion_inequality(
        x_intervals=[(c3, c5)], grid_n=1, margin=1e-4
    )
    # oracle: assemble the strengthened inequality from scalar envelope objects
    ea = (float(C.c4) * c5 - float(C.c6) * c3) / (c5 - c3)
    eb = (float(C.c6) - float(C.c4)) / (c5 - c3)
    x_min, x_max = c3, c5
    y_min, y_max = 0.0, min(x_max, delta)
    e_min, e_max = ea + eb * x_min, ea + eb * x_max
    h1 = chord_lower(x_min, x_max)
    r0, r1 = x_min / e_min, x_max / e_max
    h2 = chord_lower(min(r0, r1), max(r0, r1))
    h3 = chord_lower(y_min, y_max)
    t4 = tangent_upper(min(y_min / delta, 1.0), min(y_max / delta, 1.0))
    t5 = tangent_upper(
        max((x_min - y_max) / (1 - delta), 0.0), min((x_max - y_min) / (1 - delta), 1.0)
    )
    t6 = tangent_upper(min(y_min / e_max, 1.0), min(y_max / e_min, 1.0))

    def slack(x, y):
        e = ea + eb * x
        lhs = (1 - boost) * h1(x) + boost * e * h2(x / e) + h3(y)
        rhs = delta * t4(y / delta) + (1 - delta) * t5((x - y) / (1 - delta)) + e * t6(y / e)
        return lhs - rhs

    pts = corner_points(Cell(x_min, x_max, y_min, y_max))
    assert len(pts) == 4
    want = min(slack(x, y) for x, y in pts)
    assert report.min_slack == pytest.approx(want, abs=1e-12)
    assert report.corners_evaluated == 4


def test_expansion_interval_must_fit_one_segment():
    with pytest.raises(ValueError):
        certify_expansion_inequality(x_intervals=[(0.21, 0.48)], grid_n=10)


def test_expansion_validation():
    with pytest.raises(ValueError):
        certify_expansion_inequality(delta=0.0, grid_n=10)
    with pytest.raises(ValueError):
        certify_expansion_inequality(
            x_intervals=[(float(C.c5), 0.9)], grid_n=10
        )  # activates the lower y constraint


def test_expansion_grid_refinement_does_not_lose_slack():
    coarse = certify_expansion_inequality(grid_n=60)
    fine = certify_expansion_inequality(grid_n=120)
    assert fine.min_slack >= coarse.min_slack - 1e-12


def test_expansion_recheck_confirms_near_margin_cells():
    base = certify_expansion_inequality(grid_n=40)
    report = certify_expansion_inequality(
        grid_n=40, margin=base.min_slack / 2, confirm=True
    )
    assert report.recheck["cells"] > 0
    assert report.recheck["all_clear"] is True
    assert report.passed


# --- report shape ---------------------------------------------------------------


def test_report_json_schema():
    d = certify_pair_inequality(grid_n=40).to_json_dict()
    for key in (
        "lemma",
        "params",
        "grid",
        "margin",
        "min_slack",
        "argmin_cell",
        "corners_evaluated",
        "pass",
    ):
        assert key in d
    assert d["lemma"] == "pair-expansion"
    json.dumps(d)


def test_slack_csv_dump(tmp_path):
    path = tmp_path / "slacks.csv"
    report = certify_pair_inequality(grid_n=20, slack_csv=str(path))
    rows = path.read_text().strip().splitlines()
    assert len(rows) == 20 * 20
    vals = [float(r.split(",")[3]) for r in rows]
    assert min(vals) == pytest.approx(report.min_slack, abs=1e-15)


# --- pointwise ratio checks -------------------------------------------------------


def test_direct_check_ratio_expansion_example():
    r = direct_check_ratio(5.18, profile=PROFILE, alpha_range=(0.3, 0.3), grid_n=1)
    assert r.min_slack == pytest.approx(0.0509, abs=2e-4)
    scan = direct_check_ratio(5.18, profile=PROFILE, alpha_range=(0.21, 0.48), grid_n=2000)
    assert scan.passed
    assert not scan.certified


def test_direct_check_ratio_pair_example():
    r = direct_check_ratio(5.45, gamma=1.0, alpha_range=(0.3, 0.3322), grid_n=1000)
    assert r.passed
    assert r.min_slack == pytest.approx(0.000402134732823, abs=1e-9)
    assert r.argmin_alpha == pytest.approx(0.3322, abs=1e-12)


def test_direct_check_ratio_rejects_flat_profile():
    flat = PiecewiseLinear(((Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(1)), (Fraction(1), Fraction(1))))
    with pytest.raises(ValueError):
        direct_check_ratio(5.0, profile=flat, alpha_range=(0.6, 0.9), grid_n=10)


def test_direct_check_ratio_rejects_profile_at_diagonal():
    diag = PiecewiseLinear(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))))
    with pytest.raises(ValueError):
        direct_check_ratio(5.0, profile=diag, alpha_range=(0.3, 0.4), grid_n=10)


def test_direct_check_ratio_argument_validation():
    with pytest.raises(ValueError):
        direct_check_ratio(5.0, alpha_range=(0.2, 0.3))
    with pytest.raises(ValueError):
        direct_check_ratio(5.0, profile=PROFILE, gamma=1.0, alpha_range=(0.2, 0.3))
    with pytest.raises(ValueError):
        direct_check_ratio(5.0, gamma=1.0, alpha_range=(0.2, 0.6))  # 2*gamma*alpha > 1


def test_check_pairexp_degree_examples():
    ok = check_pairexp_degree(5, 1, 0.3)
    assert ok.passed and ok.slack == 2.25 and ok.threshold == 2.75
    bad = check_pairexp_degree(2, 1, 0.3)
    assert not bad.passed and bad.slack == pytest.approx(-0.75)
    with pytest.raises(ValueError):
        check_pairexp_degree(5, 1, 0.5)
