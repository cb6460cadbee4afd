"""Exact verification suites for the predicted coefficient structure.

Each suite rebuilds its point set from (n, sign pattern), computes every
Haar coefficient in scope through the level-scan engine, and compares with
the closed-form predictions at zero tolerance. Coefficients are covered
sparsely but completely: positions hit by points are checked one by one,
and all remaining positions of a level share a single provable value, so
one comparison covers them all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .haar import (
    ABS_UPPER_BOUND,
    EXACT_ABS,
    HaarIndex,
    level_value_counts,
    low_level_sign,
    predict_davenport,
    predict_symmetrized,
)
from .pointsets import (
    PointMultiset,
    SignPattern,
    hammersley_type,
    is_net,
    symmetrize_davenport,
    symmetrize_full,
)

__all__ = [
    "CheckReport",
    "check_symmetrized_coefficients",
    "check_davenport_rows",
    "check_counting_sums",
    "check_net_property",
    "run_suites",
    "SUITES",
]

SUITES = ("coefficients", "davenport-rows", "counting-sums", "net")


@dataclass
class CheckReport:
    """Outcome of one suite run: counts plus the first few failure notes."""

    suite: str
    n: int
    sigma: str
    checked: int = 0
    failures: int = 0
    notes: List[str] = field(default_factory=list)

    def record(self, ok: bool, note: str = "", count: int = 1):
        self.checked += count
        if not ok:
            self.failures += count
            if note and len(self.notes) < 8:
                self.notes.append(note)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _level_matches(report: CheckReport, summary, prediction, note: str):
    """Compare every coefficient of a level against one prediction."""
    for value, count in summary.occupied_values:
        report.record(
            prediction.check(value),
            f"{note}: occupied value {value} vs {prediction}",
            count,
        )
    if summary.empty_boxes:
        report.record(
            prediction.check(summary.empty_value),
            f"{note}: empty value {summary.empty_value} vs {prediction}",
            summary.empty_boxes,
        )


def check_symmetrized_coefficients(
    n: int, sigma: SignPattern, extra_levels: int = 2, label: str = ""
) -> CheckReport:
    """All coefficients of the fully symmetrized set on levels up to n + extra.

    Low levels are checked against the exact signed value, the diagonal band
    against the magnitude bound together with the cap on positions deviating
    from the empty-box value, and everything else against exact magnitudes
    or exact zeros. Observed signs of the magnitude-only cases are recorded.
    """
    report = CheckReport("coefficients", n, label or "custom")
    points = symmetrize_full(hammersley_type(n, sigma))
    cap = len(points)
    sign_notes = set()
    for j1 in range(-1, n + extra_levels + 1):
        for j2 in range(-1, n + extra_levels + 1):
            prediction = predict_symmetrized(n, HaarIndex(j1, j2, 0, 0), sigma)
            summary = level_value_counts(points, j1, j2)
            note = f"level ({j1},{j2})"
            if prediction.kind == ABS_UPPER_BOUND:
                # diagonal band: bound every value, cap the deviating count
                deviating = 0
                for value, count in summary.occupied_values:
                    report.record(
                        abs(value) <= prediction.value,
                        f"{note}: |{value}| > {prediction.value}",
                        count,
                    )
                    if value != summary.empty_value:
                        deviating += count
                if summary.empty_boxes:
                    report.record(
                        abs(summary.empty_value) <= prediction.value,
                        f"{note}: empty value exceeds bound",
                        summary.empty_boxes,
                    )
                report.record(
                    deviating <= cap,
                    f"{note}: {deviating} deviating positions exceed {cap}",
                )
            else:
                _level_matches(report, summary, prediction, note)
                if prediction.kind == EXACT_ABS and prediction.value:
                    for value, _ in summary.occupied_values:
                        sign_notes.add(("occupied", j1 >= n or j2 >= n, value > 0))
                    if summary.empty_boxes:
                        sign_notes.add(("empty", j1 >= n or j2 >= n, summary.empty_value > 0))
    for kind, high, positive in sorted(sign_notes):
        report.notes.append(
            f"observed sign {'+' if positive else '-'} on {kind} boxes "
            f"({'level >= n' if high else 'mixed row'})"
        )
    return report


def check_davenport_rows(n: int, sigma: SignPattern, label: str = "") -> CheckReport:
    """Exact coefficients of the single-axis symmetrization on (-1, *) rows."""
    report = CheckReport("davenport-rows", n, label or "custom")
    points = symmetrize_davenport(hammersley_type(n, sigma))
    for k in range(-1, n):
        j1, j2 = (-1, k) if k >= 0 else (-1, -1)
        prediction = predict_davenport(n, sigma, HaarIndex(j1, j2, 0, 0))
        summary = level_value_counts(points, j1, j2)
        _level_matches(report, summary, prediction, f"row (-1,{k})")
    return report


def _level_counting_sums(points: PointMultiset, j1: int, j2: int):
    """Integer tent sums for every box of one level, batched.

    Returns three dicts keyed by (m1, m2): the x-sums scaled by
    2^(res-j1-1), the y-sums scaled by 2^(res-j2-1), and the product sums
    scaled by the product of the two. Membership is per-axis: a single-axis
    sum gates its own coordinate strictly and the other by the half-open
    box; the product needs both strict.
    """
    res = points.n_resolution
    kx, ky = points.coord_arrays()

    def tent(k, j):
        per = 1 << (res - j)
        half = per >> 1
        rem = k & (per - 1)
        num = np.where(rem == 0, 0, half - np.abs(rem - half))
        return num, k >> (res - j)

    nx, m1 = tent(kx, j1)
    ny, m2 = tent(ky, j2)
    width2 = 1 << j2

    def gather(mask, values):
        keys = m1[mask] * width2 + m2[mask]
        if keys.size == 0:
            return {}
        vals = values[mask]
        order = np.argsort(keys, kind="stable")
        keys, vals = keys[order], vals[order]
        cuts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
        sums = np.add.reduceat(vals, cuts)
        return {
            (int(k) // width2, int(k) % width2): int(v)
            for k, v in zip(keys[cuts], sums)
        }

    in_box_x = m1 < (1 << j1)
    in_box_y = m2 < width2
    sums_x = gather((nx != 0) & in_box_y, nx)
    sums_y = gather((ny != 0) & in_box_x, ny)
    sums_xy = gather((nx != 0) & (ny != 0), nx * ny)
    return sums_x, sums_y, sums_xy


def check_counting_sums(n: int, sigma: SignPattern, label: str = "") -> CheckReport:
    """Tent-sum identities over the base set, every box, exhaustively.

    Single-axis sums must equal 2^(n-j1-j2-1) whenever j1 + j2 < n; the
    product sum must equal 2^(n-j1-j2-2) + eps 2^(j1+j2-n) for j1 + j2 < n-1
    with the endpoint sign law of :func:`low_level_sign`.
    """
    report = CheckReport("counting-sums", n, label or "custom")
    points = hammersley_type(n, sigma)
    for j1 in range(n):
        for j2 in range(n - j1):
            sums_x, sums_y, sums_xy = _level_counting_sums(points, j1, j2)
            boxes = 1 << (j1 + j2)
            # integer targets at the scan's fixed scales
            single_x = 1 << (2 * n - 2 * j1 - j2 - 2)
            single_y = 1 << (2 * n - j1 - 2 * j2 - 2)
            note = f"level ({j1},{j2})"
            report.record(
                len(sums_x) == boxes and all(v == single_x for v in sums_x.values()),
                f"{note}: x-sums differ from 2^(n-j1-j2-1)",
                boxes,
            )
            report.record(
                len(sums_y) == boxes and all(v == single_y for v in sums_y.values()),
                f"{note}: y-sums differ from 2^(n-j1-j2-1)",
                boxes,
            )
            if j1 + j2 < n - 1:
                eps = low_level_sign(sigma, j1, j2)
                product = (1 << (3 * n - 2 * (j1 + j2) - 4)) + eps * (1 << (n - 2))
                report.record(
                    len(sums_xy) == boxes
                    and all(v == product for v in sums_xy.values()),
                    f"{note}: product sums differ from 2^(n-j1-j2-2) + eps 2^(j1+j2-n)",
                    boxes,
                )
    return report


def check_net_property(n: int, sigma: SignPattern, label: str = "") -> CheckReport:
    report = CheckReport("net", n, label or "custom")
    report.record(is_net(hammersley_type(n, sigma), n), "net property violated")
    return report


_CHECKS = {
    "coefficients": check_symmetrized_coefficients,
    "davenport-rows": check_davenport_rows,
    "counting-sums": check_counting_sums,
    "net": check_net_property,
}


def run_suites(
    n_min: int,
    n_max: int,
    presets: Tuple[str, ...],
    seed: int = 7,
    suites: Tuple[str, ...] = SUITES,
) -> List[CheckReport]:
    """All requested suites over an n-range and sigma presets."""
    reports = []
    for n in range(n_min, n_max + 1):
        for preset in presets:
            sigma = SignPattern.from_preset(preset, n, seed=seed)
            for suite in suites:
                reports.append(_CHECKS[suite](n, sigma, label=preset))
    return reports
