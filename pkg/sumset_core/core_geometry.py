# -*- coding: utf-8 -*-
"""*Tolerance-aware convex geometry primitives on finite point clouds.*

Support functions, facet enumeration, Chebyshev centers, ball-in-hull decisions, covering checks
and brute-force Minkowski sums. Every other module reduces its geometric questions to these
functions.

All comparisons use the single absolute tolerance `core_opts.tolerance`. Convex hulls in
dimension two and above are enumerated with Quickhull (`scipy.spatial.ConvexHull`); hulls of
1-dimensional clouds are computed directly.

!!! example
    ```python
    >>> import sumset_core as sc
    >>> square = sc.PointCloud([[-1, -1], [1, -1], [1, 1], [-1, 1]])
    >>> sc.chebyshev_center(square).radius
    1.0
    >>> bool(sc.ball_in_hull(square, sc.Ball([0, 0], 1.01)))
    False

    ```
"""
from typing import Sequence, Tuple
import numpy as np
from loguru import logger as log
from scipy.spatial import ConvexHull, QhullError, cKDTree
from scipy.spatial.distance import pdist
import sumset_core as sc


__all__ = [
    "support_function",
    "affine_dimension",
    "convex_hull",
    "ball_in_hull",
    "chebyshev_center",
    "covering_check",
    "minkowski_sum_points",
    "diameter",
    "hull_vertices",
    "greedy_net",
    "dedupe_points",
    "support_perturbation",
]


def support_function(cloud, u):
    # type: (sc.CloudLike, sc.PointLike) -> float
    """
    Evaluate the support function h(u) = max <x, u> over the points of a cloud.

    The support function of a set equals that of its convex hull, so this is also the support
    function of conv(cloud).

    :param CloudLike cloud: Point cloud
    :param PointLike u: Direction (need not be unit length)
    :return: Maximum of the inner products
    :rtype: float
    """
    cloud = sc.as_cloud(cloud)
    u = sc.as_point(u, cloud.dim)
    return float(np.max(cloud.points @ u))


def _affine_frame(points):
    # type: (np.ndarray) -> Tuple[np.ndarray, np.ndarray]
    """Origin and orthonormal basis rows of the affine hull of `points`."""
    origin = points[0]
    centered = points - origin
    if len(points) == 1:
        return origin, np.zeros((0, points.shape[1]))
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    rank = int(np.sum(s > sc.core_opts.tolerance * max(1.0, s[0])))
    return origin, vt[:rank]


def affine_dimension(cloud):
    # type: (sc.CloudLike) -> int
    """
    Dimension of the affine hull of a cloud at tolerance.

    :param CloudLike cloud: Point cloud
    :return: Affine dimension (0 for a single point)
    :rtype: int
    """
    cloud = sc.as_cloud(cloud)
    if cloud.dim == 1:
        spread = float(np.ptp(cloud.points))
        return int(spread > sc.core_opts.tolerance)
    return len(_affine_frame(cloud.points)[1])


def convex_hull(cloud):
    # type: (sc.CloudLike) -> sc.HRepresentation
    """
    Enumerate the facets of conv(cloud) as an H-representation.

    Facets are returned with unit normals, coplanar facets merged, and sorted lexicographically
    by normal so that identical clouds always produce identical facet lists.

    :param CloudLike cloud: Full-dimensional point cloud with `dim <= core_opts.hull_max_dim`
    :return: Facet description {x : <normal, x> <= offset}
    :rtype: HRepresentation
    :raises DegenerateHullError: If the cloud is lower-dimensional (carries the affine dimension)
    """
    cloud = sc.as_cloud(cloud)
    pts = cloud.points
    d = cloud.dim
    if d > sc.core_opts.hull_max_dim:
        raise sc.DimensionError(
            f"Convex hull in R^{d} exceeds hull_max_dim={sc.core_opts.hull_max_dim}"
        )
    affine_dim = affine_dimension(cloud)
    if affine_dim < d:
        raise sc.DegenerateHullError(affine_dim, d)

    if d == 1:
        return sc.HRepresentation([[-1.0], [1.0]], [-float(pts.min()), float(pts.max())])

    try:
        hull = ConvexHull(pts)
    except QhullError as e:
        log.debug(f"Qhull rejected nearly flat cloud: {e}")
        raise sc.DegenerateHullError(d - 1, d) from e

    normals = hull.equations[:, :-1]
    offsets = -hull.equations[:, -1]
    # Quickhull triangulates, so one geometric facet may appear several times
    scale = max(1.0, float(np.max(np.abs(offsets))))
    keep = sc.greedy_thin(np.column_stack([normals, offsets / scale]), sc.core_opts.tolerance)
    normals, offsets = normals[keep], offsets[keep]
    order = np.lexsort(normals.T[::-1])
    return sc.HRepresentation(normals[order], offsets[order])


def _point_in_hull_margin(points, center):
    # type: (np.ndarray, np.ndarray) -> float
    """Signed margin of a point against conv(points) computed within its affine hull."""
    origin, basis = _affine_frame(points)
    offset = center - origin
    residual = float(np.linalg.norm(offset - basis.T @ (basis @ offset)))
    if len(basis) == 0:
        return -residual
    reduced = sc.PointCloud((points - origin) @ basis.T, dedupe=False)
    hrep = convex_hull(reduced)
    inner = float(np.min(hrep.slack(basis @ offset)))
    return min(inner, -residual) if residual > sc.core_opts.tolerance else inner


def ball_in_hull(cloud, ball):
    # type: (sc.CloudLike, sc.Ball) -> sc.HullDecision
    """
    Decide whether a closed ball lies inside conv(cloud).

    The margin is `min_f (offset_f - <normal_f, center>) - radius`; it is negative when the
    center is outside the hull. For lower-dimensional clouds a ball of radius zero is decided
    within the affine hull, positive radii are rejected with a diagnostic.

    :param CloudLike cloud: Point cloud
    :param Ball ball: Query ball
    :return: Decision with signed margin
    :rtype: HullDecision
    """
    cloud = sc.as_cloud(cloud)
    if ball.dim != cloud.dim:
        raise sc.DimensionError(f"Ball in R^{ball.dim} against cloud in R^{cloud.dim}")
    tol = sc.core_opts.tolerance
    try:
        hrep = convex_hull(cloud)
    except sc.DegenerateHullError as e:
        margin = _point_in_hull_margin(cloud.points, ball.center)
        if ball.radius <= tol:
            diagnostic = f"decided in affine hull of dimension {e.affine_dim}"
            return sc.HullDecision(margin >= -tol, margin, diagnostic)
        return sc.HullDecision(
            False, min(margin, 0.0) - ball.radius, f"hull has affine dimension {e.affine_dim}"
        )
    margin = float(np.min(hrep.slack(ball.center))) - ball.radius
    return sc.HullDecision(margin >= -tol, margin)


def chebyshev_center(cloud):
    # type: (sc.CloudLike) -> sc.Ball
    """
    Compute the largest ball contained in conv(cloud).

    Solves `max rho s.t. <normal_f, y> + rho <= offset_f` over all facets with the Bland-rule
    simplex. Degenerate clouds yield a ball of radius zero centered at their first point.

    :param CloudLike cloud: Point cloud
    :return: Chebyshev ball
    :rtype: Ball
    """
    cloud = sc.as_cloud(cloud)
    pts = cloud.points
    if cloud.dim == 1:
        lo, hi = float(pts.min()), float(pts.max())
        return sc.Ball([(lo + hi) / 2], (hi - lo) / 2)
    try:
        hrep = convex_hull(cloud)
    except sc.DegenerateHullError as e:
        log.debug(f"Chebyshev center of degenerate cloud: {e}")
        return sc.Ball(pts[0], 0.0)

    # Work relative to the centroid so the origin is interior and all offsets are positive
    centroid = pts.mean(axis=0)
    normals = hrep.normals
    offsets = hrep.offsets - normals @ centroid
    d = cloud.dim
    A_ub = np.column_stack([normals, np.ones(len(normals))])
    c = np.zeros(d + 1)
    c[-1] = -1.0
    res = sc.linprog_bland(c, A_ub=A_ub, b_ub=offsets, free=range(d))
    if not res.success:
        raise sc.InfeasibleError(f"Chebyshev LP ended with status {res.status}")
    return sc.Ball(res.x[:d] + centroid, max(float(res.x[d]), 0.0))


def covering_check(a, f, eps):
    # type: (sc.CloudLike, sc.CloudLike, float) -> bool
    """
    Check the covering A ⊂ F + B(0, eps) at tolerance.

    :param CloudLike a: Points to be covered
    :param CloudLike f: Covering centers
    :param float eps: Covering radius (> 0)
    :return: Whether every point of `a` is within `eps` of some point of `f`
    :rtype: bool
    """
    a, f = sc.as_cloud(a), sc.as_cloud(f)
    if a.dim != f.dim:
        raise sc.DimensionError(f"Cloud in R^{a.dim} against cloud in R^{f.dim}")
    if eps <= 0:
        raise ValueError(f"Covering radius must be positive: {eps!r}")
    dist, _ = cKDTree(f.points).query(a.points)
    return bool(np.max(dist) <= eps + sc.core_opts.tolerance)


def minkowski_sum_points(clouds):
    # type: (Sequence[sc.CloudLike]) -> sc.PointCloud
    """
    Enumerate the Minkowski sum A_1 + ... + A_n of finite clouds.

    The result is deduplicated at tolerance and sorted lexicographically, so any permutation of
    the summands gives the same output.

    :param Sequence[CloudLike] clouds: Summand clouds of equal dimension
    :return: All sums of one point per cloud
    :rtype: PointCloud
    :raises CapExceededError: If the product of cardinalities exceeds `core_opts.oracle_cap`
    """
    clouds = [sc.as_cloud(c) for c in clouds]
    if not clouds:
        raise ValueError("Minkowski sum needs at least one cloud")
    dims = {c.dim for c in clouds}
    if len(dims) != 1:
        raise sc.DimensionError(f"Summands of mixed dimensions {sorted(dims)}")
    size = 1
    for c in clouds:
        size *= c.size
    if size > sc.core_opts.oracle_cap:
        raise sc.CapExceededError(size, sc.core_opts.oracle_cap)

    acc = clouds[0].points
    for c in clouds[1:]:
        acc = (acc[:, None, :] + c.points[None, :, :]).reshape(-1, acc.shape[1])
        acc = acc[sc.greedy_thin(acc, sc.core_opts.tolerance)]
    acc = acc[np.lexsort(acc.T[::-1])]
    return sc.PointCloud(acc)


def diameter(cloud):
    # type: (sc.CloudLike) -> float
    """
    Maximum pairwise Euclidean distance of a cloud (zero for a single point).

    :param CloudLike cloud: Point cloud
    :return: Diameter
    :rtype: float
    """
    cloud = sc.as_cloud(cloud)
    pts = cloud.points
    if len(pts) == 1:
        return 0.0
    if cloud.dim == 1:
        return float(np.ptp(pts))
    if len(pts) > 2000:
        pts = hull_vertices(cloud).points
    return float(np.max(pdist(pts)))


def _hull_vertex_indices(points):
    # type: (np.ndarray) -> np.ndarray
    if len(points) <= 2:
        return np.arange(len(points))
    if points.shape[1] == 1:
        return np.unique([np.argmin(points[:, 0]), np.argmax(points[:, 0])])
    origin, basis = _affine_frame(points)
    if len(basis) == 0:
        return np.array([0])
    if len(basis) < points.shape[1]:
        return _hull_vertex_indices((points - origin) @ basis.T)
    return np.sort(ConvexHull(points).vertices)


def hull_vertices(cloud):
    # type: (sc.CloudLike) -> sc.PointCloud
    """
    Extreme points of conv(cloud), in input order.

    Lower-dimensional clouds are handled within their affine hull.

    :param CloudLike cloud: Point cloud
    :return: Sub-cloud of extreme points
    :rtype: PointCloud
    """
    cloud = sc.as_cloud(cloud)
    return cloud.subset(_hull_vertex_indices(cloud.points))


def greedy_net(cloud, eps):
    # type: (sc.CloudLike, float) -> sc.PointCloud
    """
    First-seen-wins `eps`-net of a cloud: every input point lies within `eps` of a kept point.

    :param CloudLike cloud: Point cloud
    :param float eps: Net radius (>= 0)
    :return: Sub-cloud forming the net
    :rtype: PointCloud
    """
    cloud = sc.as_cloud(cloud)
    return cloud.subset(sc.greedy_thin(cloud.points, eps))


def dedupe_points(points, tol=None):
    # type: (np.ndarray, float) -> np.ndarray
    """Remove duplicates at tolerance keeping first occurrences in input order."""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    tol = sc.core_opts.tolerance if tol is None else tol
    return points[sc.greedy_thin(points, tol)]


def support_perturbation(a, f, ball, eps):
    # type: (sc.CloudLike, sc.CloudLike, sc.Ball, float) -> Tuple[sc.Ball, sc.HullDecision]
    """
    Transfer an inscribed ball from conv(A) to conv(F) when A ⊂ F + B(0, eps).

    Support functions satisfy h_F >= h_A - eps, hence B(z, r) ⊂ conv(A) implies
    B(z, r - eps) ⊂ conv(F). Both premises are checked and the shrunk ball is replayed through
    `ball_in_hull` on F.

    :param CloudLike a: Cloud whose hull contains `ball`
    :param CloudLike f: Covering cloud
    :param Ball ball: Ball inside conv(a)
    :param float eps: Covering radius
    :return: Shrunk ball and its decision against conv(f)
    :rtype: Tuple[Ball, HullDecision]
    """
    a, f = sc.as_cloud(a), sc.as_cloud(f)
    if not covering_check(a, f, eps):
        raise sc.SumsetError(f"Cloud is not covered by F + B(0, {eps!r})")
    premise = ball_in_hull(a, ball)
    if not premise:
        raise sc.HullMembershipError(f"{ball} not inside conv(A): margin {premise.margin!r}")
    shrunk = ball.shrink(eps)
    decision = ball_in_hull(f, shrunk)
    if not decision:
        raise AssertionError(f"Perturbed {shrunk} escapes conv(F): margin {decision.margin!r}")
    return shrunk, decision
