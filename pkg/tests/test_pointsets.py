"""Construction, reflection and net structure of the point sets."""

from collections import Counter
from fractions import Fraction

import pytest

from dyadisc import (
    Point,
    PointMultiset,
    SignPattern,
    build_family,
    dyadic,
    hammersley_type,
    is_net,
    reflect,
    symmetrize_davenport,
    symmetrize_full,
)

PRESETS = ("identity", "all-flip", "alternating", "random")


def sigma(preset, n):
    return SignPattern.from_preset(preset, n, seed=7)


def brute_force_points(n, flips):
    """Digit-sum construction straight from the definition (test oracle)."""
    out = []
    for bits in range(1 << n):
        t = [(bits >> i) & 1 for i in range(n)]  # t[i-1] = t_i
        s = [t[i] ^ flips[i] for i in range(n)]
        x = sum(Fraction(t[n - i], 2**i) for i in range(1, n + 1))
        y = sum(Fraction(s[i - 1], 2**i) for i in range(1, n + 1))
        out.append((x, y))
    return Counter(out)


def as_fractions(points):
    return Counter((p.x.as_fraction(), p.y.as_fraction()) for p in points)


def test_base_set_n1():
    assert as_fractions(hammersley_type(1, SignPattern.identity(1))) == Counter(
        [(Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(1, 2))]
    )
    assert as_fractions(hammersley_type(1, SignPattern.all_flip(1))) == Counter(
        [(Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(0))]
    )


def test_base_set_n2():
    expected = Counter(
        [
            (Fraction(0), Fraction(0)),
            (Fraction(1, 2), Fraction(1, 4)),
            (Fraction(1, 4), Fraction(1, 2)),
            (Fraction(3, 4), Fraction(3, 4)),
        ]
    )
    assert as_fractions(hammersley_type(2, SignPattern.identity(2))) == expected


@pytest.mark.parametrize("preset", PRESETS)
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_base_set_matches_digit_sums(preset, n):
    sg = sigma(preset, n)
    assert as_fractions(hammersley_type(n, sg)) == brute_force_points(n, sg.flips)


def test_sign_pattern_validation():
    with pytest.raises(ValueError):
        SignPattern(2, (True,))
    with pytest.raises(ValueError):
        hammersley_type(3, SignPattern.identity(2))
    with pytest.raises(ValueError):
        SignPattern.from_preset("random", 4)  # seed required


def test_reflections():
    p = PointMultiset([(0.0, 0.0)])
    assert as_fractions(reflect(p, "Y")) == Counter([(Fraction(0), Fraction(1))])
    fixed = PointMultiset([(0.5, 0.25)], resolution=2)
    assert as_fractions(reflect(fixed, "X")) == Counter(
        [(Fraction(1, 2), Fraction(1, 4))]
    )
    corner = PointMultiset([(0.25, 0.0)], resolution=2)
    assert as_fractions(reflect(corner, "XY")) == Counter(
        [(Fraction(3, 4), Fraction(1))]
    )


@pytest.mark.parametrize("axis", ["X", "Y", "XY"])
def test_reflection_involution(axis):
    p = hammersley_type(4, sigma("random", 4))
    assert reflect(reflect(p, axis), axis).multiset() == p.multiset()


def test_symmetrize_full_n1():
    full = symmetrize_full(hammersley_type(1, SignPattern.identity(1)))
    assert len(full) == 8
    counts = as_fractions(full)
    assert counts[(Fraction(1, 2), Fraction(1, 2))] == 4
    for corner in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        assert counts[(Fraction(corner[0]), Fraction(corner[1]))] == 1


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_symmetrize_cardinalities(n):
    base = hammersley_type(n, sigma("alternating", n))
    assert len(symmetrize_full(base)) == 1 << (n + 2)
    assert len(symmetrize_davenport(base)) == 1 << (n + 1)


def test_symmetrize_empty():
    empty = PointMultiset([], resolution=0)
    assert len(symmetrize_full(empty)) == 0
    assert len(symmetrize_davenport(empty)) == 0


def test_symmetrize_davenport_n1():
    dav = symmetrize_davenport(hammersley_type(1, SignPattern.identity(1)))
    assert as_fractions(dav) == Counter(
        [
            (Fraction(0), Fraction(0)),
            (Fraction(1, 2), Fraction(1, 2)),
            (Fraction(0), Fraction(1)),
            (Fraction(1, 2), Fraction(1, 2)),
        ]
    )


@pytest.mark.parametrize("axis", ["X", "Y", "XY"])
def test_full_symmetrization_invariant(axis):
    full = symmetrize_full(hammersley_type(3, sigma("random", 3)))
    assert reflect(full, axis).multiset() == full.multiset()


def test_coordinate_ranges():
    n = 5
    base = hammersley_type(n, sigma("alternating", n))
    kx, ky = base.scaled_coords()
    assert all(0 <= k < (1 << n) for k in kx + ky)
    full = symmetrize_full(base)
    kx, ky = full.scaled_coords()
    assert all(0 <= k <= (1 << n) for k in kx + ky)


def test_generation_order_deterministic():
    a = symmetrize_full(hammersley_type(4, sigma("random", 4)))
    b = symmetrize_full(hammersley_type(4, sigma("random", 4)))
    assert a.scaled_coords() == b.scaled_coords()


@pytest.mark.parametrize("preset", PRESETS)
def test_net_property_small(preset):
    for n in range(1, 9):
        assert is_net(hammersley_type(n, sigma(preset, n)), n)


def test_net_property_counterexample():
    bad = PointMultiset([(0.0, 0.0), (0.0, 0.5), (0.5, 0.0), (0.5, 0.5)], resolution=2)
    assert not is_net(bad, 2)
    with pytest.raises(ValueError):
        is_net(bad, 3)


def test_point_on_coarser_grid_rejected():
    with pytest.raises(ValueError):
        PointMultiset([(dyadic(1, 3), dyadic(0))], resolution=2)
    with pytest.raises(ValueError):
        PointMultiset([(1.5, 0.0)])


def test_build_family():
    sg = SignPattern.identity(3)
    assert len(build_family("hammersley", 3, sg)) == 8
    assert len(build_family("davenport", 3, sg)) == 16
    assert len(build_family("symmetrized", 3, sg)) == 32
    with pytest.raises(ValueError):
        build_family("lattice", 3, sg)


def test_entries_are_points():
    p = hammersley_type(2, SignPattern.identity(2))
    entries = p.entries
    assert len(entries) == 4
    assert isinstance(entries[0], Point)
    assert entries[1].x.as_fraction() == Fraction(1, 4)
