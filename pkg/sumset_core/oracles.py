# -*- coding: utf-8 -*-
"""*Brute-force oracles for checking geometric guarantees on small instances.*

The oracles are deliberately naive: exhaustive Minkowski sums, greedy explicit witnesses and
exact 1-dimensional interval arithmetic. They serve as independent cross-checks of the
constructive procedures and are capped by `core_opts.oracle_cap`.
"""
from typing import List, Optional, Sequence, Tuple, Union
import numpy as np
from loguru import logger as log
from scipy.spatial import cKDTree
import sumset_core as sc


__all__ = [
    "sum_distance",
    "sum_witness_distance",
    "interval_union_sum",
    "absorption_oracle_1d",
]

Interval = Tuple[float, float]


def sum_distance(clouds, p):
    # type: (Sequence[sc.CloudLike], sc.PointLike) -> float
    """
    Exact distance from a point to the Minkowski sum of finite clouds.

    :param Sequence[CloudLike] clouds: Summand clouds
    :param PointLike p: Query point
    :return: Distance to the nearest sum point
    :rtype: float
    :raises CapExceededError: If the exhaustive sum exceeds `core_opts.oracle_cap`
    """
    total = sc.minkowski_sum_points(clouds)
    dist, _ = cKDTree(total.points).query(sc.as_point(p, total.dim))
    return float(dist)


def sum_witness_distance(clouds, points):
    # type: (Sequence[sc.CloudLike], Union[sc.PointLike, np.ndarray]) -> Union[float, np.ndarray]
    """
    Upper bound on the distance to a Minkowski sum via an explicit greedy witness.

    For each query point the summands are visited in order; with `t` the part of the target not
    yet covered and `k` the number of remaining summands, the point of the next cloud nearest to
    `t / k` is chosen. The distance between the target and the resulting sum point bounds the
    true distance from above and scales to sums far too large to enumerate.

    :param Sequence[CloudLike] clouds: Summand clouds
    :param points: A single point or an array of points of shape (m, d)
    :return: Distance per query point (a float for a single point)
    """
    clouds = [sc.as_cloud(c) for c in clouds]
    d = clouds[0].dim
    arr = np.asarray(points, dtype=np.float64)
    single = arr.ndim <= 1 and (d > 1 or arr.size == 1)
    targets = arr.reshape(-1, d).copy()
    trees = {}
    n = len(clouds)
    for i, cloud in enumerate(clouds):
        key = cloud.digest
        if key not in trees:
            trees[key] = cKDTree(cloud.points)
        _, idx = trees[key].query(targets / (n - i))
        targets -= cloud.points[idx]
    dist = np.linalg.norm(targets, axis=1)
    return float(dist[0]) if single else dist


def _merge(intervals, tol):
    # type: (List[Interval], float) -> List[Interval]
    intervals = sorted(intervals)
    merged = [list(intervals[0])]
    for lo, hi in intervals[1:]:
        if lo <= merged[-1][1] + tol:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [(a, b) for a, b in merged]


def interval_union_sum(unions):
    # type: (Sequence[Sequence[Interval]]) -> List[Interval]
    """
    Minkowski sum of finite unions of closed intervals on the real line.

    :param unions: One union per summand, each a sequence of (lo, hi) pairs
    :return: Sorted disjoint intervals whose union is the sum
    :rtype: List[Tuple[float, float]]
    """
    if not unions:
        raise ValueError("Need at least one union of intervals")
    tol = sc.core_opts.tolerance
    cap = sc.core_opts.oracle_cap
    for union in unions:
        if any(lo > hi for lo, hi in union) or not union:
            raise ValueError(f"Malformed union of intervals: {union!r}")
    acc = _merge([tuple(map(float, iv)) for iv in unions[0]], tol)
    for union in unions[1:]:
        if len(acc) * len(union) > cap:
            raise sc.CapExceededError(len(acc) * len(union), cap)
        acc = _merge([(a + c, b + e) for a, b in acc for c, e in union], tol)
    return acc


def absorption_oracle_1d(left, unions, samples=None, seed=None):
    # type: (Interval, Sequence[Sequence[Interval]], Optional[int], Optional[int]) -> dict
    """
    Check that an interval lies in a Minkowski sum of interval unions.

    The inclusion is decided exactly from the merged sum and, independently, by testing the two
    endpoints and `samples` uniform random points of `left`.

    :param Interval left: Interval (lo, hi) to be absorbed
    :param unions: One union of intervals per summand
    :param int samples: Number of random sample points (default `core_opts.absorption_samples`)
    :param int seed: Random seed (default `core_opts.seed`)
    :return: Report with keys `covered`, `samples`, `misses`, `seed`
    :rtype: dict
    """
    samples = sc.core_opts.absorption_samples if samples is None else samples
    seed = sc.core_opts.seed if seed is None else seed
    tol = sc.core_opts.tolerance
    lo, hi = float(left[0]), float(left[1])
    total = interval_union_sum(unions)
    covered = any(a - tol <= lo and hi <= b + tol for a, b in total)

    rng = np.random.default_rng(seed)
    points = np.concatenate([[lo, hi], rng.uniform(lo, hi, samples)])
    starts = np.array([a for a, _ in total])
    ends = np.array([b for _, b in total])
    slot = np.searchsorted(starts, points + tol, side="right") - 1
    hit = (slot >= 0) & (points <= ends[np.maximum(slot, 0)] + tol)
    misses = int(np.sum(~hit))
    log.debug(f"Absorption oracle: covered={covered} misses={misses}/{len(points)}")
    return dict(covered=covered, samples=len(points), misses=misses, seed=seed)
