"""The exact-identity suites pass on honest inputs and catch corruption."""

import pytest

from dyadisc import SignPattern
from dyadisc.verify import (
    SUITES,
    check_counting_sums,
    check_davenport_rows,
    check_net_property,
    check_symmetrized_coefficients,
    run_suites,
)

PRESETS = ("identity", "all-flip", "alternating", "random")


@pytest.mark.parametrize("preset", PRESETS)
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_suites_pass(preset, n):
    sg = SignPattern.from_preset(preset, n, seed=7)
    for check in (
        check_symmetrized_coefficients,
        check_davenport_rows,
        check_counting_sums,
        check_net_property,
    ):
        report = check(n, sg, label=preset)
        assert report.passed, (check.__name__, report.notes)
        assert report.checked > 0


def test_coefficient_counts_cover_all_positions():
    # levels -1..n+2 squared, all positions per level
    n = 2
    report = check_symmetrized_coefficients(n, SignPattern.identity(n))
    boxes = sum(
        (1 if j1 == -1 else 2**j1) * (1 if j2 == -1 else 2**j2)
        for j1 in range(-1, n + 3)
        for j2 in range(-1, n + 3)
    )
    # band levels add one deviating-count check each
    band_levels = sum(
        1
        for j1 in range(0, n)
        for j2 in range(0, n)
        if j1 + j2 >= n - 1
    )
    assert report.checked == boxes + band_levels


def test_observed_signs_recorded():
    report = check_symmetrized_coefficients(3, SignPattern.identity(3))
    assert any("observed sign" in note for note in report.notes)


def test_checker_flags_wrong_structure():
    # feeding the single-axis symmetrization where the full one is expected
    # must fail: its mixed rows are nonzero
    from dyadisc import HaarIndex, mu_discrepancy, predict_symmetrized
    from dyadisc import hammersley_type, symmetrize_davenport

    n = 3
    sg = SignPattern.identity(n)
    dav = symmetrize_davenport(hammersley_type(n, sg))
    pred = predict_symmetrized(n, HaarIndex(-1, -1, 0, 0))
    assert not pred.check(mu_discrepancy(dav, HaarIndex(-1, -1, 0, 0)))


def test_run_suites_aggregates():
    reports = run_suites(1, 3, ("identity", "alternating"))
    assert len(reports) == 3 * 2 * len(SUITES)
    assert all(r.passed for r in reports)
