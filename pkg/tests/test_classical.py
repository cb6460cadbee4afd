"""Classical discrepancy norms against brute-force oracles."""

import math
from fractions import Fraction

import pytest

from dyadisc import (
    CellGrid,
    PointMultiset,
    SignPattern,
    build_family,
    hammersley_type,
    l2_warnock,
    local_discrepancy,
    lp_estimate,
    lp_exact_even,
    star_discrepancy,
    symmetrize_full,
)

PRESETS = ("identity", "all-flip", "alternating", "random")


def sigma(preset, n):
    return SignPattern.from_preset(preset, n, seed=7)


def fractions_of(points):
    return [(p.x.as_fraction(), p.y.as_fraction()) for p in points]


def brute_local(points, t1, t2):
    pts = fractions_of(points)
    count = sum(1 for x, y in pts if x < t1 and y < t2)
    return Fraction(count, len(pts)) - t1 * t2


def brute_lp_even(points, p):
    """Direct cell-by-cell Fraction quadrature of D^p (test oracle)."""
    pts = fractions_of(points)
    n = len(pts)
    xs = sorted({x for x, _ in pts} | {Fraction(0), Fraction(1)})
    ys = sorted({y for _, y in pts} | {Fraction(0), Fraction(1)})
    total = Fraction(0)
    for a in range(len(xs) - 1):
        for b in range(len(ys) - 1):
            c = Fraction(sum(1 for x, y in pts if x <= xs[a] and y <= ys[b]), n)
            for k in range(p + 1):
                ix = (xs[a + 1] ** (k + 1) - xs[a] ** (k + 1)) / (k + 1)
                iy = (ys[b + 1] ** (k + 1) - ys[b] ** (k + 1)) / (k + 1)
                total += math.comb(p, k) * (-1) ** k * c ** (p - k) * ix * iy
    return total


def test_local_discrepancy_examples():
    centre = PointMultiset([(0.5, 0.5)])
    assert local_discrepancy(centre, (0.5, 0.5)).as_fraction() == Fraction(-1, 4)
    origin = PointMultiset([(0.0, 0.0)])
    assert local_discrepancy(origin, (1.0, 1.0)).as_fraction() == 0
    rt1 = symmetrize_full(hammersley_type(1, SignPattern.identity(1)))
    assert local_discrepancy(rt1, (0.75, 0.75)).as_fraction() == Fraction(1, 16)
    assert local_discrepancy(rt1, (0.75, 0.75)).as_fraction() == brute_local(
        rt1, Fraction(3, 4), Fraction(3, 4)
    )


def test_local_discrepancy_random_anchors():
    import random

    rng = random.Random(4242)
    points = symmetrize_full(hammersley_type(3, sigma("random", 3)))
    from dyadisc import DyadicRational

    for _ in range(50):
        t1 = Fraction(rng.randrange(0, 129), 128)
        t2 = Fraction(rng.randrange(0, 129), 128)
        anchor = (DyadicRational.from_fraction(t1), DyadicRational.from_fraction(t2))
        assert local_discrepancy(points, anchor).as_fraction() == brute_local(points, t1, t2)


def test_local_discrepancy_guards():
    with pytest.raises(ValueError):
        local_discrepancy(PointMultiset([], resolution=0), (0.5, 0.5))
    with pytest.raises(ValueError):
        local_discrepancy(PointMultiset([(0.0, 0.0)]), (1.5, 0.5))


def test_l2_singletons():
    # direct integrals: (1 - t1 t2)^2 integrates to 11/18; (t1 t2)^2 to 1/9
    assert l2_warnock(PointMultiset([(0.0, 0.0)])) == Fraction(11, 18)
    assert l2_warnock(PointMultiset([(1.0, 1.0)])) == Fraction(1, 9)


def test_l2_matches_cell_quadrature():
    for preset in PRESETS:
        points = symmetrize_full(hammersley_type(2, sigma(preset, 2)))
        assert l2_warnock(points) == brute_lp_even(points, 2)


@pytest.mark.parametrize("family", ["hammersley", "davenport", "symmetrized"])
def test_warnock_equals_even_route(family):
    for n in (1, 2, 3, 4, 5, 6):
        points = build_family(family, n, sigma("alternating", n))
        assert l2_warnock(points) == lp_exact_even(points, 2)


def test_lp4_singleton():
    # integral of (1 - t1 t2)^4 = 1 - 1 + 2/3 - 1/4 + 1/25 = 137/300
    origin = PointMultiset([(0.0, 0.0)])
    assert lp_exact_even(origin, 4) == Fraction(137, 300)
    assert lp_exact_even(origin, 4) == brute_lp_even(origin, 4)


def test_lp_even_against_brute():
    points = symmetrize_full(hammersley_type(2, sigma("random", 2)))
    for p in (2, 4, 6):
        assert lp_exact_even(points, p) == brute_lp_even(points, p)


def test_lp_guards():
    with pytest.raises(ValueError):
        lp_exact_even(PointMultiset([], resolution=0), 2)
    with pytest.raises(ValueError):
        lp_exact_even(PointMultiset([(0.0, 0.0)]), 3)


def test_lp_estimate_tracks_exact():
    points = symmetrize_full(hammersley_type(3, sigma("identity", 3)))
    exact = float(lp_exact_even(points, 2))
    estimate, side = lp_estimate(points, 2, extra_depth=5)
    assert side == 2 ** (3 + 5)
    assert estimate == pytest.approx(exact, rel=0.02)


def test_star_examples():
    assert star_discrepancy(PointMultiset([(0.5, 0.5)])).as_fraction() == Fraction(3, 4)
    assert star_discrepancy(PointMultiset([(0.0, 0.0)])).as_fraction() == 1


def test_star_against_dense_scan():
    points = symmetrize_full(hammersley_type(2, sigma("alternating", 2)))
    exact = star_discrepancy(points).as_fraction()
    # dense one-sided scan can only approach the supremum from below
    best = Fraction(0)
    grid = 64
    for i in range(grid + 1):
        for j in range(grid + 1):
            t1, t2 = Fraction(i, grid), Fraction(j, grid)
            best = max(best, abs(brute_local(points, t1, t2)))
            # limits from above at cell corners
            eps = Fraction(1, 4 * grid)
            if i < grid and j < grid:
                best = max(best, abs(brute_local(points, t1 + eps, t2 + eps)))
    assert best <= exact
    assert exact - best <= Fraction(1, 8)


def test_monotone_norm_chain():
    for preset in ("identity", "random"):
        points = symmetrize_full(hammersley_type(3, sigma(preset, 3)))
        l2 = float(lp_exact_even(points, 2)) ** (1 / 2)
        l4 = float(lp_exact_even(points, 4)) ** (1 / 4)
        l6 = float(lp_exact_even(points, 6)) ** (1 / 6)
        star = float(star_discrepancy(points))
        assert l2 <= l4 <= l6 <= star


def test_star_dominates_l2():
    for n in (1, 2, 3, 4):
        points = build_family("davenport", n, sigma("random", n))
        assert float(star_discrepancy(points)) ** 2 >= float(l2_warnock(points))


def test_cell_grid_structure():
    points = hammersley_type(2, SignPattern.identity(2))
    grid = CellGrid.from_pointset(points)
    assert [b.as_fraction() for b in grid.x_breaks] == [
        Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1),
    ]
    # counting value on the open cell just right of (1/2, 1/2)
    assert grid.cell_count(2, 2).as_fraction() == Fraction(3, 4)
