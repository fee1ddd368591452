# -*- coding: utf-8 -*-
"""*Thick compact sets at finite resolution.*

Compact sets enter the toolkit as finite discretizations: a point cloud together with a
resolution `δ` such that every point of the intended set lies within `δ` of the cloud. Clouds
come either from iterated function systems of contracting similarities (Cantor-type sets,
intervals, products) or directly from user data.

Thickness of a set `E` is the largest `c` such that for every `x ∈ E` and every
`0 < r <= diam(E)` the hull `conv(E ∩ B(x, r))` contains a ball of radius `c r`. No finite
computation can quantify over all scales, so `certify_thickness` evaluates Chebyshev balls on a
grid of centers and geometric scales `r_j = ρ^j diam` down to a declared floor, and transfers
the grid minimum `c_raw` to all intermediate scales as `c_raw ρ`.

!!! note
    A certificate is a statement about the cloud down to its floor scale. Whether the true
    attractor is thicker than every finite-depth certificate is not decided here.
"""
from typing import Optional, Sequence, Tuple, Union
import numpy as np
from loguru import logger as log
from scipy.spatial import cKDTree
import sumset_core as sc


__all__ = [
    "IfsMap",
    "IfsModel",
    "DiscretizedSet",
    "ThicknessCertificate",
    "cantor_model",
    "interval_model",
    "product_model",
    "discretize",
    "from_cloud",
    "finite_discretization_witness",
    "certify_thickness",
]


class IfsMap:
    """Contracting similarity `x -> ratio * orthogonal @ x + offset`."""

    def __init__(self, ratio, offset, orthogonal=None):
        # type: (float, sc.PointLike, Optional[np.ndarray]) -> None
        ratio = float(ratio)
        if not 0 < ratio < 1:
            raise ValueError(f"Similarity ratio must be in (0, 1): {ratio!r}")
        self.ratio = ratio
        self.offset = sc.as_point(offset)
        d = self.offset.size
        if orthogonal is None:
            orthogonal = np.eye(d)
        orthogonal = np.asarray(orthogonal, dtype=np.float64)
        if orthogonal.shape != (d, d):
            raise sc.DimensionError(f"Orthogonal part of shape {orthogonal.shape} in R^{d}")
        if not np.allclose(orthogonal @ orthogonal.T, np.eye(d), atol=1e-9):
            raise ValueError("Linear part of a similarity must be orthogonal")
        self.orthogonal = orthogonal

    def __repr__(self):
        return f"IfsMap(ratio={self.ratio!r}, offset={self.offset.tolist()})"

    @property
    def dim(self):
        # type: () -> int
        return self.offset.size

    def apply(self, points):
        # type: (np.ndarray) -> np.ndarray
        return self.ratio * points @ self.orthogonal.T + self.offset

    def fixed_point(self):
        # type: () -> np.ndarray
        """Unique fixed point, solving `(I - ratio O) p = offset`."""
        return np.linalg.solve(np.eye(self.dim) - self.ratio * self.orthogonal, self.offset)

    def dict(self):
        # type: () -> dict
        result = dict(ratio=self.ratio, offset=self.offset.tolist())
        if not np.array_equal(self.orthogonal, np.eye(self.dim)):
            result["orthogonal"] = self.orthogonal.tolist()
        return result


class IfsModel:
    """
    Iterated function system of contracting similarities with a default discretization depth.

    The base cloud consists of the fixed points of the maps, so every discretization is a subset
    of the attractor.
    """

    def __init__(self, dim, maps, depth=0):
        # type: (int, Sequence[IfsMap], int) -> None
        if not maps:
            raise ValueError("IFS needs at least one map")
        if any(m.dim != dim for m in maps):
            raise sc.DimensionError(f"IFS maps must act on R^{dim}")
        if depth < 0:
            raise ValueError(f"Depth must be non-negative: {depth!r}")
        self.dim = dim
        self.maps = list(maps)
        self.depth = depth

    def __repr__(self):
        return f"IfsModel(dim={self.dim}, maps={len(self.maps)}, depth={self.depth})"

    @property
    def max_ratio(self):
        # type: () -> float
        return max(m.ratio for m in self.maps)

    def base_points(self):
        # type: () -> np.ndarray
        return sc.dedupe_points(np.array([m.fixed_point() for m in self.maps]))

    def dict(self):
        # type: () -> dict
        return dict(dim=self.dim, maps=[m.dict() for m in self.maps], depth=self.depth)


class DiscretizedSet:
    """
    Finite stand-in for a compact set: a cloud, a resolution `δ` and the diameter used for scales.

    Every point of the intended set lies within `δ` of the cloud. With `δ = 0` the cloud is the
    set itself.
    """

    def __init__(self, cloud, resolution=0.0, diam=None):
        # type: (sc.CloudLike, float, Optional[float]) -> None
        self.cloud = sc.as_cloud(cloud)
        resolution = float(resolution)
        if not np.isfinite(resolution) or resolution < 0:
            raise ValueError(f"Resolution must be non-negative: {resolution!r}")
        self.resolution = resolution
        measured = sc.diameter(self.cloud)
        diam = measured if diam is None else float(diam)
        tol = sc.core_opts.tolerance
        if not measured - tol <= diam <= measured + 2 * resolution + tol:
            raise ValueError(
                f"Diameter {diam!r} outside [{measured!r}, {measured + 2 * resolution!r}]"
            )
        self.diam = diam

    def __repr__(self):
        return (
            f"DiscretizedSet(dim={self.dim}, size={self.cloud.size}, "
            f"resolution={self.resolution!r}, diam={self.diam!r})"
        )

    @property
    def dim(self):
        # type: () -> int
        return self.cloud.dim

    @property
    def digest(self):
        # type: () -> str
        return self.cloud.digest

    def dict(self):
        # type: () -> dict
        return dict(
            dim=self.dim,
            size=self.cloud.size,
            resolution=self.resolution,
            diam=self.diam,
            digest=self.digest,
        )


def cantor_model(depth=0):
    # type: (int) -> IfsModel
    """Middle-thirds Cantor set: maps x/3 and x/3 + 2/3."""
    return IfsModel(1, [IfsMap(1 / 3, [0.0]), IfsMap(1 / 3, [2 / 3])], depth)


def interval_model(depth=0):
    # type: (int) -> IfsModel
    """Unit interval as the attractor of x/2 and x/2 + 1/2."""
    return IfsModel(1, [IfsMap(0.5, [0.0]), IfsMap(0.5, [0.5])], depth)


def product_model(a, b):
    # type: (IfsModel, IfsModel) -> IfsModel
    """
    Product of two systems whose maps all share one ratio.

    The product attractor is generated by the maps `(x, y) -> (f(x), g(y))` for all pairs; a
    common ratio keeps them similarities.
    """
    ratios = {m.ratio for m in a.maps} | {m.ratio for m in b.maps}
    if len(ratios) != 1:
        raise ValueError(f"Product of similarity systems needs one common ratio, got {ratios}")
    maps = []
    for f in a.maps:
        for g in b.maps:
            ortho = np.zeros((a.dim + b.dim, a.dim + b.dim))
            ortho[: a.dim, : a.dim] = f.orthogonal
            ortho[a.dim :, a.dim :] = g.orthogonal
            maps.append(IfsMap(f.ratio, np.concatenate([f.offset, g.offset]), ortho))
    return IfsModel(a.dim + b.dim, maps, max(a.depth, b.depth))


def discretize(model, depth=None):
    # type: (IfsModel, Optional[int]) -> DiscretizedSet
    """
    Apply all words of length `depth` to the base cloud of an IFS.

    The resolution is `ρ^k diam(base) / (1 - ρ)` with `ρ` the largest ratio.

    :param IfsModel model: Iterated function system
    :param int depth: Word length (default `model.depth`)
    :return: Discretized attractor
    :rtype: DiscretizedSet
    :raises CapExceededError: If the point count would exceed `core_opts.discretize_cap`
    """
    depth = model.depth if depth is None else depth
    if depth < 0:
        raise ValueError(f"Depth must be non-negative: {depth!r}")
    cap = sc.core_opts.discretize_cap
    base = model.base_points()
    pts = base
    for level in range(depth):
        size = len(pts) * len(model.maps)
        if size > cap:
            raise sc.CapExceededError(size, cap)
        pts = sc.dedupe_points(np.vstack([m.apply(pts) for m in model.maps]))
    rho = model.max_ratio
    base_diam = sc.diameter(sc.PointCloud(base, dedupe=False))
    resolution = rho**depth * base_diam / (1 - rho)
    log.debug(f"Discretized IFS at depth {depth}: {len(pts)} points, resolution {resolution!r}")
    return DiscretizedSet(sc.PointCloud(pts, dedupe=False), resolution)


def from_cloud(cloud, resolution=0.0):
    # type: (sc.CloudLike, float) -> DiscretizedSet
    """Wrap an explicit cloud (a set sampled at `resolution`) as a discretized set."""
    return DiscretizedSet(cloud, resolution)


def _check_near(dset, x):
    # type: (DiscretizedSet, np.ndarray) -> None
    dist, _ = cKDTree(dset.cloud.points).query(x)
    if dist > dset.resolution + sc.core_opts.tolerance:
        raise ValueError(f"Center {x.tolist()} is {dist!r} away from the set")


def finite_discretization_witness(dset, x, r, alpha, beta=None):
    # type: (DiscretizedSet, sc.PointLike, float, float, Optional[float]) -> Tuple[sc.PointCloud, sc.Ball]
    """
    Finite witness set Y ⊂ E ∩ B(x, r) and a ball B(z, αr) ⊂ conv(Y).

    The Chebyshev ball of `conv(cloud ∩ B(x, r))` must reach radius `βr` (β defaults to the
    achieved ratio). With `witness_mode="extreme"` Y is the set of extreme points of that hull;
    with `"net"` Y is a greedy `(β - α) r`-net of the sub-cloud, and the support perturbation
    bound shrinks the Chebyshev ball by at most `(β - α) r`. Either way `B(z, αr) ⊂ conv(Y)`.

    :param DiscretizedSet dset: Discretized set
    :param PointLike x: Center within resolution of the cloud
    :param float r: Scale with `0 < r <= diam`
    :param float alpha: Required ratio (> 0)
    :param float beta: Intermediate ratio with `alpha < beta`
    :return: Witness cloud Y and the ball of radius exactly `alpha * r`
    :rtype: Tuple[PointCloud, Ball]
    :raises ThicknessError: If the Chebyshev radius falls short of the required ratio
    """
    tol = sc.core_opts.tolerance
    x = sc.as_point(x, dset.dim)
    if not 0 < r <= dset.diam + tol:
        raise ValueError(f"Scale {r!r} outside (0, {dset.diam!r}]")
    if alpha <= 0:
        raise ValueError(f"Ratio alpha must be positive: {alpha!r}")
    if beta is not None and beta <= alpha:
        raise ValueError(f"Need alpha < beta, got alpha={alpha!r} beta={beta!r}")
    _check_near(dset, x)

    pts = dset.cloud.points
    idx = np.flatnonzero(np.linalg.norm(pts - x, axis=1) <= r + tol)
    if len(idx) == 0:
        raise sc.ThicknessError(x, r, 0.0, alpha)
    sub = dset.cloud.subset(idx)
    cheb = sc.chebyshev_center(sub)
    achieved = cheb.radius / r
    required = alpha if beta is None else beta
    if achieved < required:
        raise sc.ThicknessError(x, r, achieved, required)

    if sc.core_opts.witness_mode == "net":
        beta = achieved if beta is None else beta
        witnesses = sc.greedy_net(sub, (beta - alpha) * r)
    else:
        witnesses = sc.hull_vertices(sub)
    return witnesses, sc.Ball(cheb.center, alpha * r)


class ThicknessCertificate:
    """
    Grid-based lower bound on thickness down to a floor scale.

    For every center `centers[i]` and scale `scales[j]` the Chebyshev ball of
    `conv(cloud ∩ B(x, r_j))` has radius at least `c_raw * r_j`; `c_certified = c_raw * ratio`
    transfers the bound to all scales between grid scales.
    """

    def __init__(
        self,
        c_certified,
        c_raw,
        c_target,
        ratio,
        scales,
        centers,
        worst,
        floor,
        resolution,
        witness_centers=None,
    ):
        # type: (float, float, float, float, np.ndarray, np.ndarray, dict, float, float, Optional[np.ndarray]) -> None
        self.c_certified = c_certified
        self.c_raw = c_raw
        self.c_target = c_target
        self.ratio = ratio
        self.scales = scales
        self.centers = centers
        self.worst = worst
        self.floor = floor
        self.resolution = resolution
        self.witness_centers = witness_centers

    @property
    def passed(self):
        # type: () -> bool
        return self.c_certified >= self.c_target

    @property
    def caveat_floor(self):
        # type: () -> float
        """Finest certified scale; nothing is claimed below it."""
        return float(self.scales[-1])

    def witness(self, center_index, scale_index):
        # type: (int, int) -> sc.Ball
        """Stored witness ball of radius `c_raw * r_j` for one grid cell."""
        if self.witness_centers is None:
            raise ValueError("Certificate was created without witnesses")
        r = float(self.scales[scale_index])
        return sc.Ball(self.witness_centers[center_index, scale_index], self.c_raw * r)

    def __repr__(self):
        return f"ThicknessCertificate(c_certified={self.c_certified!r}, passed={self.passed})"

    def dict(self):
        # type: () -> dict
        return dict(
            c_certified=self.c_certified,
            c_raw=self.c_raw,
            c_target=self.c_target,
            passed=self.passed,
            ratio=self.ratio,
            scales=len(self.scales),
            centers=len(self.centers),
            caveat_floor=self.caveat_floor,
            floor=self.floor,
            resolution=self.resolution,
            worst=self.worst,
        )


def _plan_centers(dset, centers):
    # type: (DiscretizedSet, Union[None, int, np.ndarray]) -> np.ndarray
    pts = dset.cloud.points
    if centers is None:
        return pts
    if isinstance(centers, (int, np.integer)):
        if centers <= 0:
            raise ValueError(f"Center stride must be positive: {centers!r}")
        return pts[:: int(centers)]
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    if centers.shape[1] != dset.dim:
        raise sc.DimensionError(f"Centers in R^{centers.shape[1]} for a set in R^{dset.dim}")
    dist, _ = cKDTree(pts).query(centers)
    if np.any(dist > dset.resolution + sc.core_opts.tolerance):
        raise ValueError("Every center must lie within resolution of the cloud")
    return centers


class _ScaleColumns:
    """Chebyshev balls of `cloud ∩ B(x, r)` for a fixed list of centers, one scale at a time."""

    def __init__(self, cloud, centers):
        # type: (sc.PointCloud, np.ndarray) -> None
        self.cloud = cloud
        self.centers = centers
        if cloud.dim == 1:
            self.sorted = np.sort(cloud.points[:, 0])
        else:
            self.tree = cKDTree(cloud.points)

    def column(self, r, tol):
        # type: (float, float) -> Tuple[np.ndarray, np.ndarray]
        if self.cloud.dim == 1:
            s, x = self.sorted, self.centers[:, 0]
            lo = np.searchsorted(s, x - r - tol, side="left")
            hi = np.searchsorted(s, x + r + tol, side="right") - 1
            ok = lo <= hi
            lo, hi = np.minimum(lo, len(s) - 1), np.maximum(hi, 0)
            radii = np.where(ok, (s[hi] - s[lo]) / 2, 0.0)
            mids = np.where(ok, (s[hi] + s[lo]) / 2, x)
            return radii, mids[:, None]
        radii = np.zeros(len(self.centers))
        mids = np.zeros_like(self.centers)
        for i, x in enumerate(self.centers):
            idx = sorted(self.tree.query_ball_point(x, r + tol))
            ball = sc.chebyshev_center(self.cloud.subset(idx))
            radii[i], mids[i] = ball.radius, ball.center
        return radii, mids


def certify_thickness(dset, c_target, ratio, centers=None, floor=None, keep_witnesses=True):
    # type: (DiscretizedSet, float, float, Union[None, int, np.ndarray], Optional[float], bool) -> ThicknessCertificate
    """
    Certify a thickness lower bound of a discretized set down to a floor scale.

    Scales are `r_j = ratio^j * diam` for all `r_j >= floor`, closed by the floor itself when the
    grid stops above it. For each center and scale the Chebyshev ball of
    `conv(cloud ∩ B(x, r_j))` is computed; `c_raw` is the smallest radius to scale ratio on the
    grid and `c_certified = c_raw * ratio`. The certificate passes when `c_certified >= c_target`;
    otherwise its `worst` cell reports the failing center, scale and achieved ratio.

    :param DiscretizedSet dset: Discretized set of positive diameter
    :param float c_target: Target thickness in (0, 1]
    :param float ratio: Scale ratio ρ in (0, 1)
    :param centers: None (all cloud points), an int stride, or explicit points of the set
    :param float floor: Finest scale (default: the resolution), at least the resolution
    :param bool keep_witnesses: Store witness centers for replay
    :return: Certificate (check `passed`)
    :rtype: ThicknessCertificate
    :raises SingletonError: If the set has zero diameter
    """
    tol = sc.core_opts.tolerance
    if dset.diam <= tol:
        raise sc.SingletonError()
    if not 0 < ratio < 1:
        raise ValueError(f"Scale ratio must be in (0, 1): {ratio!r}")
    if not 0 < c_target <= 1:
        raise ValueError(f"Target thickness must be in (0, 1]: {c_target!r}")
    floor = dset.resolution if floor is None else float(floor)
    if floor <= 0:
        raise ValueError("A positive floor scale is required for sets without resolution")
    if floor < dset.resolution:
        raise ValueError(
            f"Resolution {dset.resolution!r} too coarse for requested scale floor {floor!r}"
        )
    if floor > dset.diam:
        raise ValueError(f"Floor {floor!r} exceeds the diameter {dset.diam!r}")

    count = int(np.floor(np.log(floor / dset.diam) / np.log(ratio) + 1e-12)) + 1
    scales = dset.diam * ratio ** np.arange(count)
    scales = scales[scales >= floor * (1 - 1e-12)]
    if scales[-1] > floor * (1 + 1e-12):
        # Last scale ratio lies above ρ, so the ρ discount still covers it
        scales = np.append(scales, floor)
    plan = _plan_centers(dset, centers)
    log.debug(f"Certifying thickness on {len(plan)} centers x {len(scales)} scales")

    columns = _ScaleColumns(dset.cloud, plan)
    c_raw, worst_cell, previous, mids_all = np.inf, (0, 0), None, []
    for j, r in enumerate(scales):
        radii, mids = columns.column(r, tol)
        # Hulls shrink with the scale, so radii must not grow towards finer scales
        if previous is not None and np.any(radii - previous > tol * max(1.0, dset.diam)):
            i = int(np.argmax(radii - previous))
            raise AssertionError(f"Chebyshev radius not monotone at center {i}, scale {j}")
        previous = radii
        ratios = radii / r
        i = int(np.argmin(ratios))
        if ratios[i] < c_raw:
            c_raw, worst_cell = float(ratios[i]), (i, j)
        if keep_witnesses:
            mids_all.append(mids)

    i, j = worst_cell
    worst = dict(x=plan[i].tolist(), r=float(scales[j]), achieved=c_raw)
    cert = ThicknessCertificate(
        c_certified=c_raw * ratio,
        c_raw=c_raw,
        c_target=c_target,
        ratio=ratio,
        scales=scales,
        centers=plan,
        worst=worst,
        floor=floor,
        resolution=dset.resolution,
        witness_centers=np.stack(mids_all, axis=1) if keep_witnesses else None,
    )
    log.debug(f"Thickness c_raw={c_raw!r} c_certified={cert.c_certified!r} at {worst}")
    return cert
