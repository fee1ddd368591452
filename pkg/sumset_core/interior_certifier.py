# -*- coding: utf-8 -*-
"""*Finite-depth certificates that a sum of thick sets has interior.*

For every summand `E_i` a multiscale tree is grown: a vertex `v` at depth `k` carries a point
`x_v ∈ E_i` and the center `z_v` of a ball `B(z_v, α r_k) ⊂ conv(children x-points)`, with
scales `r_k = λ^k r_0`. Its children are the witness points of that ball at scale `r_k`.

The local premises are then checked at every vertex:

- **step 1** the children's z-points convexly span `B(z_v, q_k)`, `q_k = (α - λ) r_k`
- **step 2** the children's z-points stay within `R_k = (1 + λ) r_k` of `x_v`
- **step 3** `n λ (α - λ) > √d (1 + λ)`, the scale-free counting inequality

Together they let each ball-sum at depth `k` be absorbed by the ball-sums at depth `k + 1`, so
`B(Σ z_root, n q_0)` lies within `n (1 - λ) r_K` of the sum of the clouds. The certificate
records that gap instead of passing to a limit.

!!! example
    ```python
    >>> import sumset_core as sc
    >>> params = sc.CertifierParams(alpha=0.49, lam=sc.lambda_star(0.49), depth=2, n=21, d=1)
    >>> sc.verify_step3_inequality(params).passed
    True

    ```
"""
import math
from collections import deque
from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import numpy as np
from loguru import logger as log
from scipy.spatial import cKDTree
import sumset_core as sc


__all__ = [
    "CertifierParams",
    "TreeVertex",
    "StepReport",
    "InteriorCertificate",
    "build_tree",
    "iter_vertices",
    "tree_size",
    "verify_step1",
    "verify_step2",
    "verify_step3_inequality",
    "absorption_check",
    "certify_interior",
    "depth_for_gap",
]


class CertifierParams:
    """
    Parameters of the multiscale construction.

    Only `0 < λ < α <= 1` is enforced here. The counting inequality on `n` is checked by
    `verify_step3_inequality`, and `α` against the thickness of the inputs by the certifier.
    """

    def __init__(self, alpha, lam, depth, n, d):
        # type: (float, float, int, int, int) -> None
        alpha, lam = float(alpha), float(lam)
        if not 0 < lam < alpha <= 1:
            raise ValueError(f"Parameters must satisfy 0 < lambda < alpha <= 1: {lam!r}, {alpha!r}")
        if int(depth) != depth or depth < 0:
            raise ValueError(f"Depth must be a non-negative integer: {depth!r}")
        if int(n) != n or n < 1 or int(d) != d or d < 1:
            raise ValueError(f"n and d must be positive integers: n={n!r} d={d!r}")
        self.alpha = alpha
        self.lam = lam
        self.depth = int(depth)
        self.n = int(n)
        self.d = int(d)

    def __repr__(self):
        return (
            f"CertifierParams(alpha={self.alpha!r}, lam={self.lam!r}, depth={self.depth}, "
            f"n={self.n}, d={self.d})"
        )

    def r(self, k, r0):
        # type: (int, float) -> float
        return self.lam**k * r0

    def q(self, k, r0):
        # type: (int, float) -> float
        return (self.alpha - self.lam) * self.r(k, r0)

    def big_r(self, k, r0):
        # type: (int, float) -> float
        return (1 + self.lam) * self.r(k, r0)

    def dict(self):
        # type: () -> dict
        return dict(alpha=self.alpha, lam=self.lam, depth=self.depth, n=self.n, d=self.d)


class TreeVertex:
    """Tree vertex at `depth` with scale `r`, point `x ∈ E` and ball center `z`."""

    def __init__(self, depth, x, r, path=()):
        # type: (int, np.ndarray, float, Tuple[int, ...]) -> None
        self.depth = depth
        self.x = x
        self.r = r
        self.path = tuple(path)
        self.z = None  # type: Optional[np.ndarray]
        self.children = []  # type: List[TreeVertex]

    def __repr__(self):
        return f"TreeVertex(depth={self.depth}, path={list(self.path)}, children={len(self.children)})"

    @property
    def is_leaf(self):
        # type: () -> bool
        return not self.children

    def child_x(self):
        # type: () -> np.ndarray
        return np.array([c.x for c in self.children])

    def child_z(self):
        # type: () -> np.ndarray
        return np.array([c.z for c in self.children])


class StepReport:
    """Outcome of one local check with its worst margin and the vertex it was attained at."""

    def __init__(self, step, passed, margin, path=(), detail="", extra=None):
        # type: (str, bool, float, Tuple[int, ...], str, Optional[dict]) -> None
        self.step = step
        self.passed = bool(passed)
        self.margin = float(margin)
        self.path = tuple(path)
        self.detail = detail
        self.extra = extra or {}

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return f"StepReport({self.step!r}, passed={self.passed}, margin={self.margin!r})"

    def dict(self):
        # type: () -> dict
        result = dict(step=self.step, passed=self.passed, margin=self.margin, path=list(self.path))
        if self.detail:
            result["detail"] = self.detail
        result.update(self.extra)
        return result


class InteriorCertificate:
    """
    Ball `B(Σ z_root, n (α - λ) r_0)` every point of which lies within `residual_gap` of the
    Minkowski sum of the input clouds.
    """

    def __init__(self, ball, residual_gap, depth, r0, params, checks, tree_sizes):
        # type: (sc.Ball, float, int, float, CertifierParams, dict, List[int]) -> None
        self.ball = ball
        self.residual_gap = residual_gap
        self.depth = depth
        self.r0 = r0
        self.params = params
        self.checks = checks
        self.tree_sizes = tree_sizes

    def __repr__(self):
        return f"InteriorCertificate(ball={self.ball!r}, gap={self.residual_gap!r})"

    def dict(self):
        # type: () -> dict
        return dict(
            ball=self.ball.dict(),
            gap=self.residual_gap,
            depth=self.depth,
            r0=self.r0,
            params=self.params.dict(),
            checks=self.checks,
            tree_sizes=list(self.tree_sizes),
        )


def iter_vertices(root):
    # type: (TreeVertex) -> Iterator[TreeVertex]
    """Breadth-first traversal of a tree."""
    queue = deque([root])
    while queue:
        v = queue.popleft()
        yield v
        queue.extend(v.children)


def tree_size(root):
    # type: (TreeVertex) -> int
    return sum(1 for _ in iter_vertices(root))


def build_tree(dset, params, r0=None, certificate=None):
    # type: (sc.DiscretizedSet, CertifierParams, Optional[float], Optional[sc.ThicknessCertificate]) -> TreeVertex
    """
    Grow the multiscale tree of a discretized set to depth `params.depth`.

    The root point is the first cloud point. Every vertex at depth `k` gets its ball center `z`
    from `finite_discretization_witness` at scale `r_k`; vertices above the last level get one
    child per witness point. Witnesses are cached per (point, depth).

    :param DiscretizedSet dset: Discretized thick set
    :param CertifierParams params: Construction parameters
    :param float r0: Top scale (default: diameter of the set)
    :param ThicknessCertificate certificate: Thickness certificate that must exceed alpha
    :return: Root vertex
    :rtype: TreeVertex
    """
    if dset.diam <= sc.core_opts.tolerance:
        raise sc.SingletonError()
    r0 = dset.diam if r0 is None else float(r0)
    r_last = params.r(params.depth, r0)
    if certificate is not None:
        if certificate.c_certified <= params.alpha:
            raise sc.SumsetError(
                f"alpha={params.alpha!r} is not below the certified thickness "
                f"{certificate.c_certified!r}"
            )
        if r_last < certificate.caveat_floor * (1 - 1e-12):
            raise ValueError(
                f"Finest tree scale {r_last!r} is below the certified floor "
                f"{certificate.caveat_floor!r}"
            )
    if r_last < dset.resolution:
        raise ValueError(
            f"Depth {params.depth} reaches scale {r_last!r} below resolution {dset.resolution!r}"
        )

    cap = sc.core_opts.tree_cap
    cache = {}  # type: Dict[Tuple[bytes, int], tuple]
    root = TreeVertex(0, dset.cloud.points[0], r0)
    queue = deque([root])
    count = 1
    while queue:
        v = queue.popleft()
        key = (v.x.tobytes(), v.depth)
        if key not in cache:
            try:
                cache[key] = sc.finite_discretization_witness(dset, v.x, v.r, params.alpha)
            except sc.ThicknessError as e:
                raise sc.ThicknessError(e.x, e.r, e.achieved, e.required, path=v.path) from None
        witnesses, ball = cache[key]
        v.z = ball.center
        if v.depth < params.depth:
            r_next = params.r(v.depth + 1, r0)
            for i, y in enumerate(witnesses.points):
                child = TreeVertex(v.depth + 1, y, r_next, v.path + (i,))
                v.children.append(child)
                queue.append(child)
            count += len(witnesses)
            if count > cap:
                raise sc.CapExceededError(count, cap)
    log.debug(f"Built tree of depth {params.depth} with {count} vertices")
    return root


def _alpha_ball(v, params):
    # type: (TreeVertex, CertifierParams) -> float
    """Margin of B(z_v, α r_k) inside the hull of the children's x-points."""
    cloud = sc.PointCloud(v.child_x(), dedupe=False)
    return sc.ball_in_hull(cloud, sc.Ball(v.z, params.alpha * v.r)).margin


def verify_step1(v, params):
    # type: (TreeVertex, CertifierParams) -> StepReport
    """
    Check that the children's z-points convexly span `B(z_v, q_k)`.

    First each child must satisfy `|z_u - x_u| <= (1 - α) r_{k+1}`, then
    `B(z_v, q_k) ⊂ conv({z_u})` is decided by `ball_in_hull`. Leaves pass vacuously.

    :param TreeVertex v: Vertex to check
    :param CertifierParams params: Construction parameters
    :return: Report with the worst margin of both checks
    :rtype: StepReport
    """
    tol = sc.core_opts.tolerance
    if v.is_leaf:
        return StepReport("step1", True, 0.0, v.path, "vacuous")
    r_next = params.lam * v.r
    offsets = np.linalg.norm(v.child_z() - v.child_x(), axis=1)
    displacement = (1 - params.alpha) * r_next - float(offsets.max())
    q = (params.alpha - params.lam) * v.r
    zs = sc.PointCloud(v.child_z(), dedupe=False)
    hull = sc.ball_in_hull(zs, sc.Ball(v.z, q)).margin
    margin = min(displacement, hull)
    detail = "" if margin >= -tol else f"displacement {displacement!r}, hull margin {hull!r}"
    return StepReport(
        "step1", margin >= -tol, margin, v.path, detail, dict(hull_margin=hull)
    )


def verify_step2(v, params):
    # type: (TreeVertex, CertifierParams) -> StepReport
    """
    Check that the children's z-points lie in `B(x_v, (1 + λ) r_k)`.

    The sharper radius `(1 + λ - αλ) r_k` is checked as well and reported as `sharp_margin`.
    Leaves pass vacuously.

    :param TreeVertex v: Vertex to check
    :param CertifierParams params: Construction parameters
    :return: Report with margin against `(1 + λ) r_k`
    :rtype: StepReport
    """
    tol = sc.core_opts.tolerance
    if v.is_leaf:
        return StepReport("step2", True, 0.0, v.path, "vacuous")
    reach = float(np.max(np.linalg.norm(v.child_z() - v.x, axis=1)))
    margin = (1 + params.lam) * v.r - reach
    sharp = (1 + params.lam - params.alpha * params.lam) * v.r - reach
    detail = "" if margin >= -tol else f"child reaches {reach!r} from x"
    return StepReport(
        "step2", margin >= -tol, margin, v.path, detail, dict(sharp_margin=sharp)
    )


def verify_step3_inequality(params):
    # type: (CertifierParams) -> StepReport
    """
    Evaluate the counting inequality `n λ (α - λ) - √d (1 + λ) > 0`.

    Both sides scale with `r_k`, so one evaluation covers every depth.

    :param CertifierParams params: Construction parameters
    :return: Report whose margin is the left-hand side
    :rtype: StepReport
    """
    p = params
    value = p.n * p.lam * (p.alpha - p.lam) - math.sqrt(p.d) * (1 + p.lam)
    detail = "" if value > 0 else f"n={p.n} does not exceed {sc.phi(p.alpha, p.lam, p.d)!r}"
    return StepReport("step3", value > 0, value, (), detail)


def absorption_check(parents, params, seed=None):
    # type: (Sequence[TreeVertex], CertifierParams, Optional[int]) -> dict
    """
    Verify the premises of one-step absorption for a tuple of same-depth vertices.

    With `b_i = z_{v_i}`, `c_i = x_{v_i}`, `q = q_k`, `Q = q_{k+1}` and the children's z-points
    as `C_i`: `B(b_i, q) ⊂ conv(C_i)`, `C_i ⊂ B(c_i, R_k)` and `R_k √d <= n Q`. These imply
    `Σ B(b_i, q) ⊂ Σ (C_i + B(0, Q))`. In dimension one the inclusion is also checked directly
    by the interval oracle.

    :param Sequence[TreeVertex] parents: One vertex per summand, all at the same depth
    :param CertifierParams params: Construction parameters
    :param int seed: Seed for the sampling oracle
    :return: Report with per-premise margins and the oracle outcome
    :rtype: dict
    """
    tol = sc.core_opts.tolerance
    if len(parents) != params.n:
        raise ValueError(f"Absorption tuple of {len(parents)} vertices for n={params.n}")
    depths = {v.depth for v in parents}
    if len(depths) != 1:
        raise ValueError(f"Absorption tuple mixes depths {sorted(depths)}")
    if any(v.is_leaf for v in parents):
        raise ValueError("Absorption needs vertices with children")

    hull = min(verify_step1(v, params).extra["hull_margin"] for v in parents)
    radius = min(verify_step2(v, params).margin for v in parents)
    r = min(v.r for v in parents)
    inequality = params.n * (params.alpha - params.lam) * params.lam * r - math.sqrt(
        params.d
    ) * (1 + params.lam) * r
    premises = dict(hull=hull, radius=radius, inequality=inequality)
    passed = hull >= -tol and radius >= -tol and inequality >= -tol

    oracle = None
    if params.d == 1 and passed:
        q = (params.alpha - params.lam) * parents[0].r
        q_next = params.lam * q
        center = float(sum(v.z[0] for v in parents))
        unions = [[(z - q_next, z + q_next) for z in v.child_z()[:, 0]] for v in parents]
        oracle = sc.absorption_oracle_1d(
            (center - params.n * q, center + params.n * q), unions, seed=seed
        )
        passed = oracle["covered"] and oracle["misses"] == 0
    report = dict(depth=depths.pop(), passed=passed, premises=premises)
    if oracle is not None:
        report["oracle"] = oracle
    return report


def _vertex_failure(report):
    # type: (StepReport) -> sc.PremiseError
    return sc.PremiseError(report.step, report.path, report.detail or f"margin {report.margin!r}")


def certify_interior(sets, params, certificates=None, seed=None):
    # type: (Sequence[sc.DiscretizedSet], CertifierParams, Optional[Sequence[sc.ThicknessCertificate]], Optional[int]) -> InteriorCertificate
    """
    Certify that `B(Σ z_root, n (α - λ) r_0)` lies within `n (1 - λ) λ^K r_0` of the sum.

    Identical inputs share a tree. Sets without a supplied thickness certificate are certified
    with ratio `core_opts.thickness_ratio` down to the finest tree scale. A
    `core_opts.thickness_center_stride` above 1 certifies on every k-th cloud point only; tree
    vertices still get their own witness balls. Every vertex is checked for the alpha-ball, steps 1
    and 2 and containment of its ball in the fattened set; absorption runs per depth on the tuple
    of worst step-1 vertices.

    :param Sequence[DiscretizedSet] sets: The n summands
    :param CertifierParams params: Construction parameters (n must match the number of sets)
    :param certificates: Optional thickness certificates aligned with `sets`
    :param int seed: Seed for the absorption oracle (default `core_opts.seed`)
    :return: Interior certificate
    :rtype: InteriorCertificate
    :raises SingletonError: If a set has zero diameter
    :raises ThresholdError: If step 3 fails
    :raises PremiseError: If a local premise fails at some vertex
    """
    tol = sc.core_opts.tolerance
    seed = sc.core_opts.seed if seed is None else seed
    sets = [s if isinstance(s, sc.DiscretizedSet) else sc.from_cloud(s) for s in sets]
    if len(sets) != params.n:
        raise ValueError(f"{len(sets)} sets given for n={params.n}")
    for i, s in enumerate(sets):
        if s.diam <= tol:
            raise sc.SingletonError(i)
        if s.dim != params.d:
            raise sc.DimensionError(f"Set {i} lives in R^{s.dim}, expected R^{params.d}")
    if certificates is not None and len(certificates) != len(sets):
        raise ValueError(f"{len(certificates)} certificates for {len(sets)} sets")

    step3 = verify_step3_inequality(params)
    if not step3.passed:
        raise sc.ThresholdError(
            f"Parametric bound violated: need n > √d (1 + λ) / (λ (α - λ)), {step3.detail}",
            report=step3,
        )

    r0 = min(s.diam for s in sets)
    r_last = params.r(params.depth, r0)
    keys, trees = [], {}  # type: List[tuple], Dict[tuple, TreeVertex]
    for i, s in enumerate(sets):
        key = (s.digest, s.resolution)
        keys.append(key)
        if key in trees:
            continue
        if certificates is not None:
            cert = certificates[i]
        else:
            # Last grid scale must not exceed the finest tree scale
            floor = max(r_last * sc.core_opts.thickness_ratio, s.resolution)
            stride = sc.core_opts.thickness_center_stride
            cert = sc.certify_thickness(
                s,
                params.alpha,
                sc.core_opts.thickness_ratio,
                centers=stride if stride > 1 else None,
                floor=floor,
                keep_witnesses=False,
            )
        try:
            trees[key] = build_tree(s, params, r0, cert)
        except sc.ThicknessError as e:
            raise sc.PremiseError("witness", e.path or (), str(e)) from e

    checks = dict(step3=step3.dict())
    worst = {}  # type: Dict[str, StepReport]
    worst_by_depth = {}  # type: Dict[tuple, Dict[int, TreeVertex]]
    step1_margin = {}  # type: Dict[int, float]
    for key, root in trees.items():
        cloud_tree = cKDTree(sets[keys.index(key)].cloud.points)
        per_depth = worst_by_depth.setdefault(key, {})
        for v in iter_vertices(root):
            s1, s2 = verify_step1(v, params), verify_step2(v, params)
            dist, _ = cloud_tree.query(v.z)
            slack = (1 - params.alpha) * v.r - float(dist)
            contain = StepReport("containment", slack >= -tol, slack, v.path)
            reports = [contain]
            if not v.is_leaf:
                a = _alpha_ball(v, params)
                reports += [s1, s2, StepReport("alpha_ball", a >= -tol, a, v.path)]
            for rep in reports:
                if not rep.passed:
                    raise _vertex_failure(rep)
                if rep.step not in worst or rep.margin < worst[rep.step].margin:
                    worst[rep.step] = rep
            if not v.is_leaf:
                best = per_depth.get(v.depth)
                if best is None or s1.extra["hull_margin"] < step1_margin[id(best)]:
                    per_depth[v.depth] = v
                    step1_margin[id(v)] = s1.extra["hull_margin"]
    for name, rep in worst.items():
        checks[name] = rep.dict()

    absorption = []
    for k in range(params.depth):
        parents = [worst_by_depth[key][k] for key in keys]
        report = absorption_check(parents, params, seed=seed)
        if not report["passed"]:
            raise sc.PremiseError("absorption", parents[0].path, f"premises {report['premises']}")
        absorption.append(report)
    checks["absorption"] = absorption

    center = np.sum([trees[key].z for key in keys], axis=0)
    radius = params.n * (params.alpha - params.lam) * r0
    gap = params.n * (1 - params.lam) * params.lam**params.depth * r0
    sizes = [tree_size(trees[key]) for key in keys]
    log.info(f"Certified interior ball radius {radius!r} with gap {gap!r} at depth {params.depth}")
    return InteriorCertificate(sc.Ball(center, radius), gap, params.depth, r0, params, checks, sizes)


def depth_for_gap(params, r0, gap):
    # type: (CertifierParams, float, float) -> int
    """
    Smallest depth K with `n (1 - λ) λ^K r_0 <= gap`.

    :param CertifierParams params: Construction parameters (depth is ignored)
    :param float r0: Top scale
    :param float gap: Requested residual gap (> 0)
    :return: Required depth
    :rtype: int
    """
    if gap <= 0:
        raise ValueError(f"Gap must be positive: {gap!r}")
    top = params.n * (1 - params.lam) * r0
    k = max(0, math.ceil(math.log(gap / top) / math.log(params.lam)))
    while k > 0 and top * params.lam ** (k - 1) <= gap:
        k -= 1
    while top * params.lam**k > gap:
        k += 1
    return k
