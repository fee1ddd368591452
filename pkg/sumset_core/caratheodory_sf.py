# -*- coding: utf-8 -*-
"""*Shapley-Folkman decompositions and their radius form.*

A point `x = x_1 + ... + x_n` with `x_i ∈ conv(A_i)` can be rewritten so that all but at most
`d` summands are genuine points of their clouds. The reduction lifts every cloud point `a` of
`A_i` to `(a, e_i)` in `R^(d+n)` and runs a conic Carathéodory elimination there. The few
remaining convexified summands are then rounded to cloud points by a derandomized greedy choice
whose error never exceeds `R √min(n, d)`, where `R` is the largest circumradius of the clouds.

!!! example
    ```python
    >>> import sumset_core as sc
    >>> clouds = [[0, 1]] * 3
    >>> res = sc.sf_round_radius(clouds, [[0.5, 0.5]] * 3)
    >>> res.error <= res.bound
    True

    ```

Which minimal representation is returned among several valid ones depends on the pivot order
of the elimination (first null-space vector, lowest index on ties). No canonical choice is
claimed.
"""
import math
from typing import Dict, List, Optional, Sequence
import numpy as np
from loguru import logger as log
from scipy.spatial import cKDTree
import sumset_core as sc


__all__ = [
    "ConicCombination",
    "SFDecomposition",
    "RoundingResult",
    "ResidualMeasurement",
    "conic_reduce",
    "hull_membership",
    "sf_decompose",
    "sf_decompose_point",
    "greedy_round",
    "sf_round_radius",
    "rad",
    "radius_bound",
    "coarse_residual_bound",
    "residual_measure",
    "residual_report",
]


class ConicCombination:
    """
    Non-negative combination Σ λ_j s_j of points in R^m.

    `labels` optionally record where each term came from (for example the index of the point
    within its cloud) and survive reductions.
    """

    def __init__(self, coeffs, points, labels=None):
        # type: (Sequence[float], np.ndarray, Optional[Sequence[int]]) -> None
        coeffs = np.asarray(coeffs, dtype=np.float64).reshape(-1)
        points = np.asarray(points, dtype=np.float64)
        if points.ndim == 1:
            points = points.reshape(len(coeffs), -1) if len(coeffs) else points.reshape(0, 1)
        if points.ndim != 2 or len(points) != len(coeffs):
            raise sc.DimensionError(
                f"{len(coeffs)} coefficients for points of shape {points.shape}"
            )
        if not (np.all(np.isfinite(coeffs)) and np.all(np.isfinite(points))):
            raise sc.InvalidCombinationError("Combination has non-finite entries")
        if np.any(coeffs < 0):
            raise sc.InvalidCombinationError(f"Negative coefficient {float(coeffs.min())!r}")
        self.coeffs = coeffs
        self.points = points
        self.labels = np.arange(len(coeffs)) if labels is None else np.asarray(labels)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"ConicCombination(terms={len(self)}, dim={self.dim})"

    @property
    def dim(self):
        # type: () -> int
        return self.points.shape[1]

    @property
    def total(self):
        # type: () -> float
        """Sum of coefficients (1 for a convex combination)."""
        return float(self.coeffs.sum())

    def value(self):
        # type: () -> np.ndarray
        return self.coeffs @ self.points if len(self) else np.zeros(self.dim)

    def dict(self):
        # type: () -> dict
        return dict(
            coeffs=self.coeffs.tolist(),
            points=self.points.tolist(),
            labels=[int(v) for v in self.labels],
        )


class SFDecomposition:
    """
    Classical Shapley-Folkman decomposition of `x ∈ Σ conv(A_i)`.

    Summands outside the exceptional set are exact cloud points (`exact[i]` with point index
    `exact_index[i]`), summands inside are convex combinations of their cloud (`convexified[i]`).
    """

    def __init__(self, target, exceptional, exact, exact_index, convexified):
        # type: (np.ndarray, List[int], Dict[int, np.ndarray], Dict[int, int], Dict[int, ConicCombination]) -> None
        self.target = target
        self.exceptional = exceptional
        self.exact = exact
        self.exact_index = exact_index
        self.convexified = convexified

    def reconstruct(self):
        # type: () -> np.ndarray
        total = np.zeros_like(self.target)
        for a in self.exact.values():
            total = total + a
        for comb in self.convexified.values():
            total = total + comb.value()
        return total

    @property
    def residual(self):
        # type: () -> float
        """Distance between the reconstruction and the target."""
        return float(np.linalg.norm(self.reconstruct() - self.target))

    def dict(self):
        # type: () -> dict
        return dict(
            target=self.target.tolist(),
            exceptional=list(self.exceptional),
            exact={
                str(i): dict(index=self.exact_index[i], point=a.tolist())
                for i, a in self.exact.items()
            },
            convexified={str(i): c.dict() for i, c in self.convexified.items()},
        )


class RoundingResult:
    """Cloud points chosen for a convexified sum, with achieved error and guaranteed bound."""

    def __init__(self, chosen, indices, target, error, bound, decomposition=None):
        # type: (List[np.ndarray], List[int], np.ndarray, float, float, Optional[SFDecomposition]) -> None
        self.chosen = chosen
        self.indices = indices
        self.target = target
        self.error = error
        self.bound = bound
        self.decomposition = decomposition

    @property
    def total(self):
        # type: () -> np.ndarray
        return np.sum(self.chosen, axis=0)

    def __repr__(self):
        return f"RoundingResult(error={self.error!r}, bound={self.bound!r})"

    def dict(self):
        # type: () -> dict
        result = dict(
            chosen=[a.tolist() for a in self.chosen],
            indices=list(self.indices),
            target=self.target.tolist(),
            error=self.error,
            bound=self.bound,
        )
        if self.decomposition is not None:
            dec = self.decomposition.dict()
            result.update(
                exceptional=dec["exceptional"], exact=dec["exact"], convexified=dec["convexified"]
            )
        return result


class ResidualMeasurement:
    """Sampled almost-convexity residual with the sampling setup that reproduces it."""

    def __init__(self, measured, samples, seed, worst=None):
        # type: (float, int, int, Optional[np.ndarray]) -> None
        self.measured = measured
        self.samples = samples
        self.seed = seed
        self.worst = worst

    def __repr__(self):
        return f"ResidualMeasurement(measured={self.measured!r}, seed={self.seed!r})"

    def dict(self):
        # type: () -> dict
        worst = None if self.worst is None else self.worst.tolist()
        return dict(measured=self.measured, samples=self.samples, seed=self.seed, worst=worst)


def _prefix_dependence(points, tol):
    # type: (np.ndarray, float) -> np.ndarray
    """
    Dependence `Σ a_j s_j = 0` over the shortest linearly dependent prefix of the term points.

    The prefix without its last term is independent, so the dependence is unique up to scale. It
    is returned with unit norm and its largest entry positive.
    """
    m = points.shape[1]
    for k in range(1, len(points) + 1):
        _, s, vt = np.linalg.svd(points[:k].T)
        if k > m or s[-1] <= tol * max(1.0, s[0]):
            a = vt[-1]
            return -a if a[np.argmax(np.abs(a))] < 0 else a
    raise AssertionError("Term points are linearly independent")


def conic_reduce(comb, m=None):
    # type: (ConicCombination, Optional[int]) -> ConicCombination
    """
    Rewrite a conic combination in R^m with at most `m` strictly positive terms.

    While more than `m` terms remain, the term points are linearly dependent: take the dependence
    `Σ a_j s_j = 0` of the shortest dependent prefix, step `t = min λ_j / a_j` over
    `a_j > 0` and replace `λ` by `λ - t a`. The value is unchanged and at least one coefficient
    drops to zero (all tied terms drop together). The outcome depends only on the term order.

    :param ConicCombination comb: Combination with non-negative coefficients
    :param int m: Ambient dimension (defaults to the dimension of the term points)
    :return: Equivalent combination with at most `m` terms
    :rtype: ConicCombination
    """
    m = comb.dim if m is None else m
    if comb.dim != m:
        raise sc.DimensionError(f"Term points of dimension {comb.dim} in R^{m}")
    tol = sc.core_opts.tolerance
    keep = comb.coeffs > 0
    coeffs, points, labels = comb.coeffs[keep], comb.points[keep], comb.labels[keep]
    if len(coeffs) == 0 or np.linalg.norm(coeffs @ points) <= tol:
        return ConicCombination([], np.zeros((0, m)), [])

    steps = 0
    while len(coeffs) > m:
        a = _prefix_dependence(points, tol)
        k = len(a)
        positive = np.flatnonzero(a > tol)
        ratios = coeffs[positive] / a[positive]
        t = ratios.min()
        coeffs[:k] = np.maximum(coeffs[:k] - t * a, 0.0)
        coeffs[positive[ratios <= t * (1 + tol)]] = 0.0
        keep = coeffs > 0
        coeffs, points, labels = coeffs[keep], points[keep], labels[keep]
        steps += 1
    log.debug(f"Conic reduction to {len(coeffs)} terms in R^{m} after {steps} eliminations")
    return ConicCombination(coeffs, points, labels)


def hull_membership(cloud, y):
    # type: (sc.CloudLike, sc.PointLike) -> ConicCombination
    """
    Express `y` as a convex combination of at most `d + 1` cloud points.

    Feasibility of `Σ λ_j a_j = y, Σ λ_j = 1, λ >= 0` is decided with the Bland-rule simplex;
    the witness is then reduced by Carathéodory elimination. Labels are point indices in the
    cloud.

    :param CloudLike cloud: Point cloud
    :param PointLike y: Query point
    :return: Convex combination with value `y`
    :rtype: ConicCombination
    :raises HullMembershipError: If `y` is not in conv(cloud) at tolerance
    """
    cloud = sc.as_cloud(cloud)
    y = sc.as_point(y, cloud.dim)
    pts = cloud.points
    tol = sc.core_opts.tolerance
    if cloud.dim == 1:
        v = float(y[0])
        lo, hi = float(pts.min()), float(pts.max())
        if v < lo - tol or v > hi + tol:
            raise sc.HullMembershipError(f"{v!r} outside [{lo!r}, {hi!r}]")
        v = min(max(v, lo), hi)
        below = np.flatnonzero(pts[:, 0] <= v)
        above = np.flatnonzero(pts[:, 0] >= v)
        i = below[np.argmax(pts[below, 0])]
        j = above[np.argmin(pts[above, 0])]
        if i == j or pts[j, 0] == pts[i, 0]:
            return ConicCombination([1.0], pts[[i]], [i])
        w = (v - pts[i, 0]) / (pts[j, 0] - pts[i, 0])
        coeffs, idx = np.array([1.0 - w, w]), np.array([i, j])
        keep = coeffs > 0
        return ConicCombination(coeffs[keep], pts[idx[keep]], idx[keep])

    A_eq = np.vstack([pts.T, np.ones(len(pts))])
    b_eq = np.concatenate([y, [1.0]])
    res = sc.linprog_bland(np.zeros(len(pts)), A_eq=A_eq, b_eq=b_eq)
    if not res.success:
        raise sc.HullMembershipError(f"Point {y.tolist()} not in convex hull ({res.status})")
    lifted = ConicCombination(np.maximum(res.x, 0.0), np.column_stack([pts, np.ones(len(pts))]))
    reduced = conic_reduce(lifted)
    coeffs = reduced.coeffs / reduced.total
    return ConicCombination(coeffs, pts[reduced.labels], reduced.labels)


def _validate_coeffs(clouds, coeffs):
    # type: (List[sc.PointCloud], Sequence[Sequence[float]]) -> List[np.ndarray]
    if len(coeffs) != len(clouds):
        raise sc.InvalidCombinationError(f"{len(coeffs)} combinations for {len(clouds)} clouds")
    tol = sc.core_opts.tolerance
    result = []
    for i, (cloud, lam) in enumerate(zip(clouds, coeffs)):
        lam = np.asarray(lam, dtype=np.float64).reshape(-1)
        if len(lam) != cloud.size:
            raise sc.InvalidCombinationError(
                f"Combination {i} has {len(lam)} coefficients for {cloud.size} points"
            )
        if np.any(lam < 0):
            raise sc.InvalidCombinationError(f"Combination {i} has a negative coefficient")
        if abs(lam.sum() - 1.0) > tol:
            raise sc.InvalidCombinationError(
                f"Combination {i} coefficients sum to {lam.sum()!r}, not 1"
            )
        result.append(lam)
    return result


def _as_clouds(clouds):
    # type: (Sequence[sc.CloudLike]) -> List[sc.PointCloud]
    clouds = [sc.as_cloud(c) for c in clouds]
    if not clouds:
        raise ValueError("At least one cloud is required")
    dims = {c.dim for c in clouds}
    if len(dims) != 1:
        raise sc.DimensionError(f"Clouds of mixed dimensions {sorted(dims)}")
    return clouds


def sf_decompose(clouds, coeffs):
    # type: (Sequence[sc.CloudLike], Sequence[Sequence[float]]) -> SFDecomposition
    """
    Classical Shapley-Folkman decomposition from explicit convex-combination witnesses.

    Each cloud is first centered on its minimal enclosing ball `c_i`, then every point `a_ij` with
    weight `λ_ij` is lifted to `(a_ij - c_i, e_i)`. The lifted conic combination has value
    `(x - Σ c_i, 1, ..., 1)` and is reduced to at most `d + n` terms. Centering makes the result
    equivariant: translating `A_i` by `t_i` translates every chosen point of summand i by `t_i`.
    Every index keeps at least one term (its `e_i` coordinate is 1), so at most `d` indices keep
    more than one. Those form the exceptional set.

    :param Sequence[CloudLike] clouds: Clouds A_1..A_n in R^d
    :param Sequence[Sequence[float]] coeffs: Convex weights of x_i over the points of A_i
    :return: Decomposition with exceptional set of size at most d
    :rtype: SFDecomposition
    """
    clouds = _as_clouds(clouds)
    coeffs = _validate_coeffs(clouds, coeffs)
    n, d = len(clouds), clouds[0].dim

    rows, weights, origin = [], [], []
    target = np.zeros(d)
    for i, (cloud, lam) in enumerate(zip(clouds, coeffs)):
        target = target + lam @ cloud.points
        center = rad(cloud).center
        for j in np.flatnonzero(lam > 0):
            lift = np.zeros(d + n)
            lift[:d] = cloud.points[j] - center
            lift[d + i] = 1.0
            rows.append(lift)
            weights.append(lam[j])
            origin.append((i, int(j)))
    reduced = conic_reduce(ConicCombination(weights, np.array(rows)), d + n)

    groups = {}  # type: Dict[int, List[tuple]]
    for coeff, label in zip(reduced.coeffs, reduced.labels):
        i, j = origin[int(label)]
        groups.setdefault(i, []).append((coeff, j))

    exceptional, exact, exact_index, convexified = [], {}, {}, {}
    for i in range(n):
        if i not in groups:
            raise AssertionError(f"Summand {i} lost all terms during reduction")
        terms = groups[i]
        if len(terms) == 1:
            j = terms[0][1]
            exact[i] = clouds[i].points[j]
            exact_index[i] = j
        else:
            exceptional.append(i)
            lam = np.array([c for c, _ in terms])
            idx = [j for _, j in terms]
            convexified[i] = ConicCombination(lam / lam.sum(), clouds[i].points[idx], idx)
    if len(exceptional) > d:
        raise AssertionError(f"Exceptional set of size {len(exceptional)} exceeds dimension {d}")
    log.debug(f"Shapley-Folkman decomposition: n={n} d={d} exceptional={exceptional}")
    return SFDecomposition(target, exceptional, exact, exact_index, convexified)


def sf_decompose_point(clouds, x):
    # type: (Sequence[sc.CloudLike], sc.PointLike) -> SFDecomposition
    """
    Decompose a point of conv(A_1) + ... + conv(A_n) without given witnesses.

    Witness weights are found with one feasibility LP over all clouds, then `sf_decompose` runs.

    :param Sequence[CloudLike] clouds: Clouds A_1..A_n in R^d
    :param PointLike x: Point of the convexified sum
    :return: Decomposition of x
    :rtype: SFDecomposition
    :raises HullMembershipError: If x is not in the sum of the hulls
    """
    clouds = _as_clouds(clouds)
    d = clouds[0].dim
    x = sc.as_point(x, d)
    sizes = [c.size for c in clouds]
    total = sum(sizes)
    A_eq = np.zeros((d + len(clouds), total))
    col = 0
    for i, cloud in enumerate(clouds):
        A_eq[:d, col : col + cloud.size] = cloud.points.T
        A_eq[d + i, col : col + cloud.size] = 1.0
        col += cloud.size
    b_eq = np.concatenate([x, np.ones(len(clouds))])
    res = sc.linprog_bland(np.zeros(total), A_eq=A_eq, b_eq=b_eq)
    if not res.success:
        raise sc.HullMembershipError(
            f"Point {x.tolist()} not in the convexified sum ({res.status})"
        )
    lam = np.maximum(res.x, 0.0)
    coeffs = np.split(lam, np.cumsum(sizes)[:-1])
    return sf_decompose(clouds, [c / c.sum() for c in coeffs])


def greedy_round(clouds, ys, centers, R):
    # type: (Sequence[sc.CloudLike], Sequence[sc.PointLike], Sequence[sc.PointLike], float) -> RoundingResult
    """
    Round convexified points `y_i ∈ conv(A_i)` to cloud points with error at most `R √m`.

    Clouds are processed in order keeping the running sum `S` of deviations `a_i - y_i`; each step
    picks the cloud point minimizing `|S + a_i - y_i|²` (lowest index on ties). The minimum is at
    most the average under the convex weights of `y_i`, which is `|S|² + E|a_i - y_i|²` and the
    second term is at most `R²`, so `|S|² <= m R²` after all m steps.

    :param Sequence[CloudLike] clouds: Clouds A_1..A_m with `A_i ⊂ B(centers[i], R)`
    :param Sequence[PointLike] ys: Points y_i ∈ conv(A_i)
    :param Sequence[PointLike] centers: Ball centers
    :param float R: Common radius
    :return: Chosen points with error |Σ y_i - Σ a_i| and bound R √m
    :rtype: RoundingResult
    """
    clouds = _as_clouds(clouds)
    m, d = len(clouds), clouds[0].dim
    if len(ys) != m or len(centers) != m:
        raise sc.DimensionError(f"{m} clouds with {len(ys)} points and {len(centers)} centers")
    if R <= 0:
        raise ValueError(f"Radius must be positive: {R!r}")
    tol = sc.core_opts.tolerance
    ys = [sc.as_point(y, d) for y in ys]
    centers = [sc.as_point(c, d) for c in centers]
    for i, (cloud, c) in enumerate(zip(clouds, centers)):
        worst = float(np.max(np.linalg.norm(cloud.points - c, axis=1)))
        if worst > R + tol:
            raise sc.ContainmentError(i, worst, R)
    for cloud, y in zip(clouds, ys):
        hull_membership(cloud, y)

    s = np.zeros(d)
    chosen, indices = [], []
    for cloud, y in zip(clouds, ys):
        cost = np.sum((s + cloud.points - y) ** 2, axis=1)
        j = int(np.argmin(cost))
        s = s + cloud.points[j] - y
        chosen.append(cloud.points[j])
        indices.append(j)
    error = float(np.linalg.norm(s))
    bound = R * math.sqrt(m)
    if error > bound + tol * m:
        raise AssertionError(f"Greedy rounding error {error!r} exceeds bound {bound!r}")
    return RoundingResult(chosen, indices, np.sum(ys, axis=0), error, bound)


def sf_round_radius(clouds, coeffs):
    # type: (Sequence[sc.CloudLike], Sequence[Sequence[float]]) -> RoundingResult
    """
    Shapley-Folkman theorem in radius form.

    Decomposes `x = Σ x_i` and rounds only the exceptional summands with `greedy_round`, centered
    at their minimal enclosing balls. The resulting sum of cloud points is within
    `R √min(n, d)` of `x`, R the largest circumradius.

    :param Sequence[CloudLike] clouds: Clouds A_1..A_n in R^d
    :param Sequence[Sequence[float]] coeffs: Convex weights of x_i over the points of A_i
    :return: Chosen points with error and bound, carrying the decomposition
    :rtype: RoundingResult
    """
    clouds = _as_clouds(clouds)
    dec = sf_decompose(clouds, coeffs)
    n, d = len(clouds), clouds[0].dim
    balls = [rad(c) for c in clouds]
    R = max(b.radius for b in balls)
    bound = R * math.sqrt(min(n, d))

    chosen = {i: a for i, a in dec.exact.items()}
    indices = dict(dec.exact_index)
    if dec.exceptional:
        sub = greedy_round(
            [clouds[i] for i in dec.exceptional],
            [dec.convexified[i].value() for i in dec.exceptional],
            [balls[i].center for i in dec.exceptional],
            R,
        )
        for i, a, j in zip(dec.exceptional, sub.chosen, sub.indices):
            chosen[i] = a
            indices[i] = j
    points = [chosen[i] for i in range(n)]
    error = float(np.linalg.norm(dec.target - np.sum(points, axis=0)))
    if error > bound + sc.core_opts.tolerance * n:
        raise AssertionError(f"Radius-form error {error!r} exceeds bound {bound!r}")
    return RoundingResult(points, [indices[i] for i in range(n)], dec.target, error, bound, dec)


def _circumball(support):
    # type: (np.ndarray) -> tuple
    """Center and radius of the smallest sphere through all support points."""
    origin = support[0]
    if len(support) == 1:
        return origin.copy(), 0.0
    u = support[1:] - origin
    b = np.sum(u**2, axis=1) / 2
    coef = np.linalg.lstsq(u @ u.T, b, rcond=None)[0]
    center = origin + coef @ u
    return center, float(np.linalg.norm(support[0] - center))


def _move_to_front(points, order, end, support, dim):
    # type: (np.ndarray, List[int], int, List[int], int) -> tuple
    if support:
        center, radius = _circumball(points[support])
    else:
        center, radius = None, -1.0
    if len(support) == dim + 1:
        return center, radius
    k = 0
    while k < end:
        idx = order[k]
        p = points[idx]
        if center is None or np.linalg.norm(p - center) > radius + 1e-12 * max(1.0, radius):
            center, radius = _move_to_front(points, order, k, support + [idx], dim)
            order.insert(0, order.pop(k))
        k += 1
    return center, radius


def rad(cloud):
    # type: (sc.CloudLike) -> sc.Ball
    """
    Minimal enclosing ball of a cloud (its circumradius and Chebyshev center in the inf-sup sense).

    Uses Welzl's move-to-front recursion, whose depth is bounded by `d + 1`. The returned radius is
    recomputed as the largest distance to the center, so every point is contained exactly.

    :param CloudLike cloud: Point cloud
    :return: Minimal enclosing ball
    :rtype: Ball
    """
    cloud = sc.as_cloud(cloud)
    pts = cloud.points
    if len(pts) == 1:
        return sc.Ball(pts[0], 0.0)
    if cloud.dim == 1:
        lo, hi = float(pts.min()), float(pts.max())
        return sc.Ball([(lo + hi) / 2], (hi - lo) / 2)
    # Seeded shuffle, identical order on every run
    order = np.random.default_rng(0).permutation(len(pts)).tolist()
    center, _ = _move_to_front(pts, order, len(pts), [], cloud.dim)
    radius = float(np.max(np.linalg.norm(pts - center, axis=1)))
    return sc.Ball(center, radius)


def radius_bound(clouds):
    # type: (Sequence[sc.CloudLike]) -> float
    """Radius-form bound R √min(n, d) for a family of clouds, R the largest circumradius."""
    clouds = _as_clouds(clouds)
    R = max(rad(c).radius for c in clouds)
    return R * math.sqrt(min(len(clouds), clouds[0].dim))


def coarse_residual_bound(R, d):
    # type: (float, int) -> float
    """Coarser common-radius constant R √d, independent of the number of summands."""
    return R * math.sqrt(d)


def residual_report(clouds, samples=None, seed=None):
    # type: (Sequence[sc.CloudLike], Optional[int], Optional[int]) -> ResidualMeasurement
    """
    Empirical almost-convexity residual of a Minkowski sum, reported with its sampling setup.

    Draws random points of conv(A_1 + ... + A_n) as Dirichlet-weighted combinations of at most
    `d + 1` distinct sum points and measures the largest distance from a sample to the exact sum.
    The measurement never exceeds `radius_bound(clouds)` and is reproduced by the recorded
    `samples` and `seed`.

    :param Sequence[CloudLike] clouds: Summand clouds
    :param int samples: Number of hull samples (default `core_opts.residual_samples`)
    :param int seed: Random seed (default `core_opts.seed`)
    :return: Measurement with the farthest sample as `worst`
    :rtype: ResidualMeasurement
    """
    clouds = _as_clouds(clouds)
    samples = sc.core_opts.residual_samples if samples is None else samples
    seed = sc.core_opts.seed if seed is None else seed
    total = sc.minkowski_sum_points(clouds)
    if total.size == 1:
        return ResidualMeasurement(0.0, samples, seed)
    rng = np.random.default_rng(seed)
    k = min(total.dim + 1, total.size)
    draws = np.empty((samples, total.dim))
    for s in range(samples):
        idx = rng.choice(total.size, size=k, replace=False)
        draws[s] = rng.dirichlet(np.ones(k)) @ total.points[idx]
    dist, _ = cKDTree(total.points).query(draws)
    i = int(np.argmax(dist))
    return ResidualMeasurement(float(dist[i]), samples, seed, worst=draws[i])


def residual_measure(clouds, samples=None, seed=None):
    # type: (Sequence[sc.CloudLike], Optional[int], Optional[int]) -> float
    """
    Empirical almost-convexity residual of a Minkowski sum.

    The largest distance from a random hull point to the exact sum, as in `residual_report`,
    which also returns the seed and sample count. The result never exceeds
    `radius_bound(clouds)`.

    :param Sequence[CloudLike] clouds: Summand clouds
    :param int samples: Number of hull samples (default `core_opts.residual_samples`)
    :param int seed: Random seed (default `core_opts.seed`)
    :return: Largest observed distance
    :rtype: float
    """
    return residual_report(clouds, samples, seed).measured
