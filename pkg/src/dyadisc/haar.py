"""Exact Haar coefficients of local discrepancies.

The 2-D Haar system is indexed by level pairs (j1, j2) with j_i >= -1 and
positions m_i in D_j (a single position 0 at level -1, else 2^j positions).
For a multiset P of N points the local discrepancy is the counting average
minus the anchored-box volume, and its coefficient against a Haar function
splits per point into a product of one-dimensional factors: the integral of
the Haar function over [z, 1]. On each axis that factor is a tent supported
on the open dyadic interval of the level, so a point contributes to at most
one position per level; positions never hit carry only the volume term.

Two structurally different factor computations coexist on purpose. The
closed tent form drives the fast paths; an independent evaluation via the
piecewise-linear antiderivative of the Haar function cross-checks it.
All values are exact dyadic rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .dyadic import DyadicRational, ONE, ZERO, dyadic
from .pointsets import PointMultiset, SignPattern

__all__ = [
    "HaarIndex",
    "CoefficientPrediction",
    "LevelCoefficients",
    "LevelSummary",
    "haar_eval",
    "mu_volume",
    "axis_factor",
    "mu_point",
    "mu_discrepancy",
    "oracle_mu",
    "mu_all_at_level",
    "level_value_counts",
    "mu_grid",
    "oracle_mu_grid",
    "predict_symmetrized",
    "predict_davenport",
    "low_level_sign",
    "counting_sums",
]


@dataclass(frozen=True)
class HaarIndex:
    """Level pair (j1, j2) >= -1 with positions m_i in D_{j_i}."""

    j1: int
    j2: int
    m1: int
    m2: int

    def __post_init__(self):
        for j, m in ((self.j1, self.m1), (self.j2, self.m2)):
            if j < -1:
                raise ValueError(f"level {j} below -1")
            limit = 1 if j == -1 else 1 << j
            if not 0 <= m < limit:
                raise ValueError(f"position {m} out of range for level {j}")

    @property
    def levels(self) -> Tuple[int, int]:
        return (self.j1, self.j2)


def _pow2_log(n: int, what: str = "cardinality") -> int:
    if n <= 0 or n & (n - 1):
        raise ValueError(f"{what} must be a positive power of two, got {n}")
    return n.bit_length() - 1


# -- pointwise evaluation ----------------------------------------------------


def _axis_eval(j: int, m: int, t) -> int:
    if j == -1:
        return 1
    # sign on the two halves of [m 2^-j, (m+1) 2^-j)
    scaled = t.scale_pow2(j + 1) if isinstance(t, DyadicRational) else None
    if scaled is None:
        scaled = DyadicRational.from_float(float(t)).scale_pow2(j + 1)
    if scaled < 2 * m or scaled >= 2 * m + 2:
        return 0
    return 1 if scaled < 2 * m + 1 else -1


def haar_eval(idx: HaarIndex, t) -> int:
    """Tensor-product Haar function value in {-1, 0, +1} at t in [0,1)^2."""
    t1, t2 = t
    for c in (t1, t2):
        value = float(c) if not isinstance(c, DyadicRational) else c
        if not (0 <= value < 1):
            raise ValueError(f"coordinate {c} outside [0, 1)")
    a = _axis_eval(idx.j1, idx.m1, t1 if isinstance(t1, DyadicRational) else DyadicRational.from_float(float(t1)))
    if a == 0:
        return 0
    b = _axis_eval(idx.j2, idx.m2, t2 if isinstance(t2, DyadicRational) else DyadicRational.from_float(float(t2)))
    return a * b


# -- coefficient of the volume term t1*t2 ------------------------------------


def _volume_axis(j: int) -> DyadicRational:
    # integral of t * h_{j,m}(t); independent of m
    if j == -1:
        return dyadic(1, 1)
    return dyadic(-1, 2 * j + 2)


def mu_volume(idx: HaarIndex) -> DyadicRational:
    """Haar coefficient of f(t) = t1 * t2."""
    return _volume_axis(idx.j1) * _volume_axis(idx.j2)


# -- per-point counting factors ----------------------------------------------


def axis_factor(j: int, m: int, z) -> DyadicRational:
    """Integral of the level-(j, m) Haar function over [z, 1], closed form.

    For j >= 0 the value is a downward tent on the open interval of the
    position and exactly zero outside (including both endpoints); for the
    level -1 indicator it is 1 - z for every z in [0, 1].
    """
    z = z if isinstance(z, DyadicRational) else _coerce_coord(z)
    if j == -1:
        return ONE - z
    limit = 1 if j == -1 else 1 << j
    if not 0 <= m < limit:
        raise ValueError(f"position {m} out of range for level {j}")
    u = z.scale_pow2(j + 1)  # z in units of half-intervals
    lo, hi = 2 * m, 2 * m + 2
    if u <= lo or u >= hi:
        return ZERO
    tent = ONE - abs(dyadic(2 * m + 1) - u)
    return tent.scale_pow2(-(j + 1)) * -1


def _coerce_coord(z) -> DyadicRational:
    if isinstance(z, int):
        return dyadic(z)
    if isinstance(z, float):
        return DyadicRational.from_float(z)
    raise TypeError(f"cannot interpret {z!r} as a coordinate")


def mu_point(idx: HaarIndex, z) -> DyadicRational:
    """Haar coefficient of t -> 1_{[0, t)}(z): product of the axis factors."""
    z1, z2 = z
    f1 = axis_factor(idx.j1, idx.m1, z1)
    if not f1:
        return ZERO
    return f1 * axis_factor(idx.j2, idx.m2, z2)


def _oracle_axis_factor(j: int, m: int, z: DyadicRational) -> DyadicRational:
    # Independent route: H(u) = int_0^u h_{j,m}; factor = H(1) - H(z).
    if j == -1:
        return ONE - z
    left = dyadic(m, j)
    mid = dyadic(2 * m + 1, j + 1)
    right = dyadic(m + 1, j)
    if z <= left or z >= right:
        height = ZERO
    elif z <= mid:
        height = z - left
    else:
        height = right - z
    return -height  # H(1) = 0 at every level j >= 0


# -- coefficients of the local discrepancy ------------------------------------


def mu_discrepancy(points: PointMultiset, idx: HaarIndex) -> DyadicRational:
    """Exact coefficient: counting average minus volume coefficient."""
    return _mu_from_factors(points, idx, axis_factor)


def oracle_mu(points: PointMultiset, idx: HaarIndex) -> DyadicRational:
    """Same value as :func:`mu_discrepancy` via the antiderivative route."""
    return _mu_from_factors(points, idx, _oracle_axis_factor)


def _mu_from_factors(points: PointMultiset, idx: HaarIndex, factor) -> DyadicRational:
    n = len(points)
    if n == 0:
        raise ValueError("empty point multiset")
    nu = _pow2_log(n)
    res = points.n_resolution
    kx, ky = points.scaled_coords()
    # memoize per distinct integer coordinate; worth it for repeated levels
    f1: Dict[int, DyadicRational] = {}
    f2: Dict[int, DyadicRational] = {}
    total = ZERO
    for x, y in zip(kx, ky):
        a = f1.get(x)
        if a is None:
            a = f1[x] = factor(idx.j1, idx.m1, dyadic(x, res))
        if not a:
            continue
        b = f2.get(y)
        if b is None:
            b = f2[y] = factor(idx.j2, idx.m2, dyadic(y, res))
        if b:
            total = total + a * b
    return total.scale_pow2(-nu) - mu_volume(idx)


# -- level-wise scans ---------------------------------------------------------
#
# On a fixed level every factor is num / 2^res with an integer num, so the
# per-position sums are plain integer accumulations:
#   j >= 0: num = -(half - |k mod 2^(res-j) - half|), half = 2^(res-j-1) < 0
#   j = -1: num = 2^res - k                                            >= 0
# A position therefore receives contributions of one sign only, which makes
# "occupied" equivalent to "coefficient differs from the empty-box value".


def _axis_scan_np(k: np.ndarray, j: int, res: int) -> Tuple[np.ndarray, np.ndarray]:
    if j == -1:
        num = (1 << res) - k
        return num, np.zeros_like(k)
    if j >= res:
        return np.zeros_like(k), np.zeros_like(k)
    per = 1 << (res - j)
    half = per >> 1
    rem = k & (per - 1)
    num = np.where(rem == 0, 0, -(half - np.abs(rem - half)))
    return num, k >> (res - j)


def _axis_scan_py(k_list, j: int, res: int) -> Tuple[List[int], List[int]]:
    if j == -1:
        full = 1 << res
        return [full - k for k in k_list], [0] * len(k_list)
    if j >= res:
        return [0] * len(k_list), [0] * len(k_list)
    per = 1 << (res - j)
    half = per >> 1
    nums, ms = [], []
    for k in k_list:
        rem = k & (per - 1)
        nums.append(0 if rem == 0 else -(half - abs(rem - half)))
        ms.append(k >> (res - j))
    return nums, ms


def _scan_level(points: PointMultiset, j1: int, j2: int) -> Dict[Tuple[int, int], int]:
    """Per-position sums of the signed scaled factor products.

    Returned integers are Sum_z f1 * f2 scaled by 2^(2 res); only positions
    with at least one nonzero contribution appear.
    """
    res = points.n_resolution
    if j1 >= res or j2 >= res:
        return {}  # interval interiors at or beyond the resolution are empty
    arrays = points.coord_arrays()
    # int64 stays exact while |sum| <= N * 2^(2 res) < 2^62
    if arrays is not None and 2 * res + max(1, len(points)).bit_length() <= 62:
        kx, ky = arrays
        n1, m1 = _axis_scan_np(kx, j1, res)
        n2, m2 = _axis_scan_np(ky, j2, res)
        mask = (n1 != 0) & (n2 != 0)
        if not mask.any():
            return {}
        vals = n1[mask] * n2[mask]
        width2 = 1 if j2 == -1 else 1 << j2
        keys = m1[mask] * width2 + m2[mask]
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        vals = vals[order]
        boundaries = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
        sums = np.add.reduceat(vals, boundaries)
        out = {}
        for key, acc in zip(keys[boundaries].tolist(), sums.tolist()):
            out[(key // width2, key % width2)] = acc
        return out
    kx, ky = points.scaled_coords()
    n1, m1 = _axis_scan_py(kx, j1, res)
    n2, m2 = _axis_scan_py(ky, j2, res)
    out: Dict[Tuple[int, int], int] = {}
    for a, b, p, q in zip(n1, n2, m1, m2):
        if a and b:
            key = (p, q)
            out[key] = out.get(key, 0) + a * b
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class LevelCoefficients:
    """All coefficients on one level: sparse map plus shared empty value."""

    j1: int
    j2: int
    occupied: Dict[Tuple[int, int], DyadicRational]
    empty_value: DyadicRational
    box_count: int


@dataclass(frozen=True)
class LevelSummary:
    """Value multiplicities on one level, for norm assembly and checks."""

    j1: int
    j2: int
    occupied_values: Tuple[Tuple[DyadicRational, int], ...]
    occupied_boxes: int
    empty_boxes: int
    empty_value: DyadicRational
    box_count: int


def _level_geometry(points: PointMultiset, j1: int, j2: int):
    n = len(points)
    if n == 0:
        raise ValueError("empty point multiset")
    if j1 < -1 or j2 < -1:
        raise ValueError("levels must be >= -1")
    nu = _pow2_log(n)
    boxes = (1 if j1 == -1 else 1 << j1) * (1 if j2 == -1 else 1 << j2)
    vol = mu_volume(HaarIndex(j1, j2, 0, 0))
    return nu, boxes, vol


def mu_all_at_level(points: PointMultiset, j1: int, j2: int) -> LevelCoefficients:
    """Every coefficient on the level, sparsely.

    Positions missed by all points share the value -mu_volume; positions in
    the map carry their individually accumulated exact coefficient.
    """
    nu, boxes, vol = _level_geometry(points, j1, j2)
    scale = 2 * points.n_resolution + nu
    occupied = {
        key: dyadic(acc, scale) - vol
        for key, acc in _scan_level(points, j1, j2).items()
    }
    return LevelCoefficients(j1, j2, occupied, -vol, boxes)


def level_value_counts(points: PointMultiset, j1: int, j2: int) -> LevelSummary:
    """Grouped coefficient values on the level, memoized per multiset."""
    cached = points._cache.get(("level", j1, j2))
    if cached is not None:
        return cached
    nu, boxes, vol = _level_geometry(points, j1, j2)
    scale = 2 * points.n_resolution + nu
    groups: Dict[int, int] = {}
    for acc in _scan_level(points, j1, j2).values():
        groups[acc] = groups.get(acc, 0) + 1
    values = tuple(
        (dyadic(acc, scale) - vol, count) for acc, count in sorted(groups.items())
    )
    occupied = sum(count for _, count in values)
    summary = LevelSummary(j1, j2, values, occupied, boxes - occupied, -vol, boxes)
    points._cache[("level", j1, j2)] = summary
    return summary


# -- batch per-index tables ----------------------------------------------------


def _axis_pairs(j_max: int) -> List[Tuple[int, int]]:
    pairs = [(-1, 0)]
    for j in range(j_max + 1):
        pairs.extend((j, m) for m in range(1 << j))
    return pairs


def _factor_matrix(points: PointMultiset, j_max: int, axis: int, factor) -> Tuple[List[Tuple[int, int]], np.ndarray]:
    res = points.n_resolution
    ks = points.scaled_coords()[axis]
    pairs = _axis_pairs(j_max)
    memo: Dict[Tuple[int, int, int], int] = {}
    rows = np.empty((len(pairs), len(ks)), dtype=np.int64)
    for r, (j, m) in enumerate(pairs):
        for c, k in enumerate(ks):
            key = (j, m, k)
            val = memo.get(key)
            if val is None:
                f = factor(j, m, dyadic(k, res))
                shift = res - f.exponent
                assert shift >= 0
                val = memo[key] = f.mantissa << shift
            rows[r, c] = val
    return pairs, rows


def _grid_from_factors(points: PointMultiset, j_max: int, factor) -> Dict[HaarIndex, DyadicRational]:
    n = len(points)
    nu = _pow2_log(n)
    res = points.n_resolution
    if 2 * res + n.bit_length() > 62:
        raise ValueError("grid path needs 2*resolution + log2(N) <= 62")
    pairs1, f1 = _factor_matrix(points, j_max, 0, factor)
    pairs2, f2 = _factor_matrix(points, j_max, 1, factor)
    sums = f1 @ f2.T
    scale = 2 * res + nu
    out = {}
    for r, (j1, m1) in enumerate(pairs1):
        for c, (j2, m2) in enumerate(pairs2):
            idx = HaarIndex(j1, j2, m1, m2)
            out[idx] = dyadic(int(sums[r, c]), scale) - mu_volume(idx)
    return out


def mu_grid(points: PointMultiset, j_max: int) -> Dict[HaarIndex, DyadicRational]:
    """mu_discrepancy for every index with levels in [-1, j_max], batched."""
    return _grid_from_factors(points, j_max, axis_factor)


def oracle_mu_grid(points: PointMultiset, j_max: int) -> Dict[HaarIndex, DyadicRational]:
    """oracle_mu for every index with levels in [-1, j_max], batched."""
    return _grid_from_factors(points, j_max, _oracle_axis_factor)


# -- predicted coefficients -----------------------------------------------------

EXACT_VALUE = "exact-value"
EXACT_ABS = "exact-abs"
ABS_UPPER_BOUND = "abs-upper-bound"


@dataclass(frozen=True)
class CoefficientPrediction:
    """Either an exact value, an exact magnitude, or a magnitude bound."""

    kind: str
    value: DyadicRational

    def __post_init__(self):
        if self.kind not in (EXACT_VALUE, EXACT_ABS, ABS_UPPER_BOUND):
            raise ValueError(f"unknown prediction kind {self.kind!r}")
        if self.kind != EXACT_VALUE and self.value < 0:
            raise ValueError("magnitude predictions must be nonnegative")

    def check(self, mu: DyadicRational) -> bool:
        if self.kind == EXACT_VALUE:
            return mu == self.value
        if self.kind == EXACT_ABS:
            return abs(mu) == self.value
        return abs(mu) <= self.value


def low_level_sign(sigma: SignPattern, j1: int, j2: int) -> int:
    """Sign of the low-level coefficients of the fully symmetrized set.

    On levels with j1 + j2 < n - 1 the coefficient magnitude is constant and
    the sign compares the flip of the lowest digit the second axis reads
    (position j2 + 1) with the flip of the highest digit the first axis
    reads (position n - j1): equal flips give +1, unequal give -1. Verified
    exhaustively over all sign patterns up to n = 7.
    """
    n = sigma.n
    if not (0 <= j1 and 0 <= j2 and j1 + j2 < n - 1):
        raise ValueError("sign law applies to j1, j2 >= 0 with j1 + j2 < n - 1")
    return 1 if sigma.flips[j2] == sigma.flips[n - j1 - 1] else -1


def predict_symmetrized(
    n: int, idx: HaarIndex, sigma: Optional[SignPattern] = None
) -> CoefficientPrediction:
    """Coefficient classification for the fully symmetrized set of order n.

    Constant magnitude 2^-2(n+1) on low levels (exact signed value when the
    sign pattern is supplied, via :func:`low_level_sign`), a magnitude bound
    on the diagonal band, exact magnitudes once a level reaches n, exact
    zero on the mixed rows below n and at the constant index.
    """
    if n < 1:
        raise ValueError("n must be positive")
    j1, j2 = idx.j1, idx.j2
    if j1 >= 0 and j2 >= 0:
        if j1 >= n or j2 >= n:
            return CoefficientPrediction(EXACT_ABS, dyadic(1, 2 * (j1 + j2 + 2)))
        if j1 + j2 < n - 1:
            if sigma is None:
                return CoefficientPrediction(EXACT_ABS, dyadic(1, 2 * (n + 1)))
            return CoefficientPrediction(
                EXACT_VALUE, dyadic(low_level_sign(sigma, j1, j2), 2 * (n + 1))
            )
        return CoefficientPrediction(ABS_UPPER_BOUND, dyadic(1, n + j1 + j2))
    if j1 == -1 and j2 == -1:
        return CoefficientPrediction(EXACT_VALUE, ZERO)
    k = j2 if j1 == -1 else j1
    if k < n:
        return CoefficientPrediction(EXACT_VALUE, ZERO)
    return CoefficientPrediction(EXACT_ABS, dyadic(1, 2 * k + 3))


def predict_davenport(n: int, sigma: SignPattern, idx: HaarIndex) -> CoefficientPrediction:
    """Exact coefficients of the single-axis symmetrization on (-1, *) rows.

    Covers the constant index and the rows (-1, k) with k < n, where the
    sign of the correction term follows the k+1-st digit choice.
    """
    if sigma.n != n:
        raise ValueError(f"sign pattern has length {sigma.n}, expected {n}")
    if idx.j1 == -1 and idx.j2 == -1:
        return CoefficientPrediction(EXACT_VALUE, dyadic(1, n + 2))
    if idx.j1 == -1 and 0 <= idx.j2 < n:
        k = idx.j2
        t_k = -1 if sigma.flips[k] else 1
        return CoefficientPrediction(
            EXACT_VALUE, dyadic(-1, n + 2 * k + 3) + dyadic(t_k, 2 * n + 2)
        )
    raise ValueError(f"no closed form for index {idx} of the symmetrized pair")


# -- counting-sum identities ------------------------------------------------


def counting_sums(
    points: PointMultiset, j1: int, j2: int, m1: int, m2: int
) -> Tuple[DyadicRational, DyadicRational, DyadicRational]:
    """Tent sums over the points of one dyadic box.

    Returns the two single-axis sums and the product sum of the unnormalized
    tents 1 - |2 m + 1 - 2^(j+1) z|. A point enters a single-axis sum when
    its tent coordinate is strictly interior and the other coordinate lies
    in the half-open interval of the box; the product sum needs both tent
    coordinates strictly interior (where its factors are nonzero anyway).
    """
    if j1 < 0 or j2 < 0:
        raise ValueError("box levels must be nonnegative")
    res = points.n_resolution
    kx, ky = points.scaled_coords()
    sum_x = sum_y = sum_xy = ZERO
    for x, y in zip(kx, ky):
        mx = _open_interval_tent(x, j1, m1, res)
        my = _open_interval_tent(y, j2, m2, res)
        if mx is not None and _in_half_open(y, j2, m2, res):
            sum_x = sum_x + mx
        if my is not None and _in_half_open(x, j1, m1, res):
            sum_y = sum_y + my
        if mx is not None and my is not None:
            sum_xy = sum_xy + mx * my
    return sum_x, sum_y, sum_xy


def _open_interval_tent(k: int, j: int, m: int, res: int) -> Optional[DyadicRational]:
    if j >= res:
        return None  # interval interiors miss the 2^-res grid entirely
    per = 1 << (res - j)
    if k >> (res - j) != m or k & (per - 1) == 0:
        return None
    half = per >> 1
    return dyadic(half - abs((k & (per - 1)) - half), res - j - 1)


def _in_half_open(k: int, j: int, m: int, res: int) -> bool:
    if res >= j:
        return (k >> (res - j)) == m
    return (k << (j - res)) == m
