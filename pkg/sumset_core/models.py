# -*- coding: utf-8 -*-
"""Immutable geometric value types shared by all modules."""
from typing import List, Optional, Tuple
import numpy as np
from loguru import logger as log
import sumset_core as sc


__all__ = [
    "as_point",
    "as_cloud",
    "PointCloud",
    "Ball",
    "HRepresentation",
    "HullDecision",
]


def _frozen(arr):
    # type: (np.ndarray) -> np.ndarray
    arr = np.array(arr, dtype=np.float64)
    arr.setflags(write=False)
    return arr


def as_point(value, dim=None):
    # type: (sc.PointLike, Optional[int]) -> np.ndarray
    """
    Convert a coordinate sequence or scalar into a read-only float64 vector.

    :param PointLike value: Coordinates (a bare number counts as a point in R^1)
    :param Optional[int] dim: Expected dimension
    :return: Read-only point vector
    :rtype: ndarray
    """
    arr = np.atleast_1d(np.asarray(value, dtype=np.float64))
    if arr.ndim != 1 or arr.size == 0:
        raise sc.DimensionError(f"Point must be a non-empty flat coordinate sequence: {value!r}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"Point has non-finite coordinates: {arr.tolist()}")
    if dim is not None and arr.size != dim:
        raise sc.DimensionError(f"Point of dimension {arr.size} where {dim} was expected")
    return _frozen(arr)


def as_cloud(value, dim=None):
    # type: (sc.CloudLike, Optional[int]) -> PointCloud
    """Coerce any supported representation into a `PointCloud` (identity for clouds)."""
    if isinstance(value, PointCloud):
        if dim is not None and value.dim != dim:
            raise sc.DimensionError(f"Cloud of dimension {value.dim} where {dim} was expected")
        return value
    return PointCloud(value, dim=dim)


class PointCloud:
    """
    A finite, non-empty set of points in R^d.

    Points are stored as a read-only `(N, d)` float64 array. Duplicates at tolerance are removed
    on construction (first occurrence wins), so indices refer to the deduplicated order.

    !!! example
        ```python
        >>> import sumset_core as sc
        >>> sc.PointCloud([0, 1, 1]).points.tolist()
        [[0.0], [1.0]]

        ```
    """

    def __init__(self, points, dim=None, dedupe=True):
        # type: (sc.CloudLike, Optional[int], bool) -> None
        """
        Initialize a PointCloud from a cloud, a nested sequence, or a flat sequence of 1-d points.

        :param CloudLike points: Point coordinates.
        :param Optional[int] dim: Expected ambient dimension.
        :param bool dedupe: Remove duplicates at `core_opts.tolerance`.
        """
        if isinstance(points, PointCloud):
            arr = points.points
        else:
            arr = np.asarray(points, dtype=np.float64)
            if arr.ndim == 1:
                arr = arr.reshape(-1, 1)
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise sc.DimensionError(f"Point cloud must be a non-empty (N, d) array: {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Point cloud has non-finite coordinates")
        if dim is not None and arr.shape[1] != dim:
            raise sc.DimensionError(
                f"Point cloud of dimension {arr.shape[1]} where {dim} was expected"
            )
        if dedupe and len(arr) > 1:
            keep = sc.greedy_thin(arr, sc.core_opts.tolerance)
            if len(keep) < len(arr):
                log.warning(f"Dropped {len(arr) - len(keep)} duplicate points from cloud")
                arr = arr[keep]
        self._points = _frozen(arr)

    def __repr__(self):
        return f"PointCloud(dim={self.dim}, size={self.size})"

    def __len__(self):
        return len(self._points)

    def __iter__(self):
        return iter(self._points)

    @property
    def points(self):
        # type: () -> np.ndarray
        """Read-only `(N, d)` coordinate array."""
        return self._points

    @property
    def dim(self):
        # type: () -> int
        return self._points.shape[1]

    @property
    def size(self):
        # type: () -> int
        return self._points.shape[0]

    @property
    def digest(self):
        # type: () -> str
        """Blake3 fingerprint of the point array."""
        return sc.cloud_digest(self._points)

    def subset(self, mask):
        # type: (np.ndarray) -> PointCloud
        """Sub-cloud selected by boolean mask or index array (no re-deduplication)."""
        return PointCloud(self._points[mask], dedupe=False)

    def translate(self, t):
        # type: (sc.PointLike) -> PointCloud
        return PointCloud(self._points + as_point(t, self.dim), dedupe=False)

    def transform(self, matrix, scale=1.0, shift=None):
        # type: (np.ndarray, float, Optional[sc.PointLike]) -> PointCloud
        """Apply x -> scale * matrix @ x + shift to every point."""
        arr = scale * self._points @ np.asarray(matrix, dtype=np.float64).T
        if shift is not None:
            arr = arr + as_point(shift, self.dim)
        return PointCloud(arr, dedupe=False)

    def dict(self):
        # type: () -> dict
        return dict(dim=self.dim, points=self._points.tolist())


class Ball:
    """Closed Euclidean ball B(center, radius)."""

    def __init__(self, center, radius):
        # type: (sc.PointLike, float) -> None
        radius = float(radius)
        if not np.isfinite(radius) or radius < 0:
            raise ValueError(f"Ball radius must be finite and non-negative: {radius!r}")
        self._center = as_point(center)
        self._radius = radius

    def __repr__(self):
        return f"Ball(center={self._center.tolist()}, radius={self._radius!r})"

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return self._radius == other.radius and np.array_equal(self._center, other.center)

    @property
    def center(self):
        # type: () -> np.ndarray
        return self._center

    @property
    def radius(self):
        # type: () -> float
        return self._radius

    @property
    def dim(self):
        # type: () -> int
        return self._center.size

    def shrink(self, eps):
        # type: (float) -> Ball
        """Concentric ball of radius `radius - eps` (clamped at zero)."""
        return Ball(self._center, max(self._radius - eps, 0.0))

    def dict(self):
        # type: () -> dict
        return dict(center=self._center.tolist(), radius=self._radius)


class HRepresentation:
    """
    Facet description {x : <normal_f, x> <= offset_f for all f} of a full-dimensional polytope.

    Normals are unit vectors stored as a read-only `(F, d)` array, offsets as an `(F,)` array.
    """

    def __init__(self, normals, offsets):
        # type: (np.ndarray, np.ndarray) -> None
        normals = np.atleast_2d(np.asarray(normals, dtype=np.float64))
        offsets = np.asarray(offsets, dtype=np.float64).reshape(-1)
        if len(normals) != len(offsets):
            raise sc.DimensionError(f"{len(normals)} normals but {len(offsets)} offsets")
        self._normals = _frozen(normals)
        self._offsets = _frozen(offsets)

    def __repr__(self):
        return f"HRepresentation(dim={self.dim}, facets={len(self)})"

    def __len__(self):
        return len(self._offsets)

    @property
    def normals(self):
        # type: () -> np.ndarray
        return self._normals

    @property
    def offsets(self):
        # type: () -> np.ndarray
        return self._offsets

    @property
    def dim(self):
        # type: () -> int
        return self._normals.shape[1]

    @property
    def facets(self):
        # type: () -> List[Tuple[np.ndarray, float]]
        return [(n, float(o)) for n, o in zip(self._normals, self._offsets)]

    def slack(self, point):
        # type: (sc.PointLike) -> np.ndarray
        """Per-facet slack `offset - <normal, point>` (negative where the point violates)."""
        return self._offsets - self._normals @ as_point(point, self.dim)

    def dict(self):
        # type: () -> dict
        return dict(normals=self._normals.tolist(), offsets=self._offsets.tolist())


class HullDecision:
    """Outcome of a ball-in-hull test with its signed margin."""

    def __init__(self, inside, margin, diagnostic=None):
        # type: (bool, float, Optional[str]) -> None
        self.inside = bool(inside)
        self.margin = float(margin)
        self.diagnostic = diagnostic

    def __bool__(self):
        return self.inside

    def __repr__(self):
        return f"HullDecision(inside={self.inside}, margin={self.margin!r})"

    def dict(self):
        # type: () -> dict
        result = dict(inside=self.inside, margin=self.margin)
        if self.diagnostic:
            result["diagnostic"] = self.diagnostic
        return result
