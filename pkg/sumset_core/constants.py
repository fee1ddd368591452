# -*- coding: utf-8 -*-
import enum
from typing import Optional, Sequence, Tuple, Union


########################################################################################
# Type definitions and constants                                                       #
########################################################################################


PointLike = Union[Sequence[float], "numpy.ndarray"]
CloudLike = Union["PointCloud", Sequence[Sequence[float]], Sequence[float], "numpy.ndarray"]
Facet = Tuple["numpy.ndarray", float]

#: Feng-Wu constant 2^11 of the sequential construction threshold
FW_CONSTANT = 2048

#: Constant of the simplified sufficient threshold n > 6 √d / c²
SIMPLE_CONSTANT = 6


class EXIT(enum.IntEnum):
    """
    ## EXIT - Process exit codes of the `sumset` command line

    | Uint | Symbol     | Purpose                                              |
    |----- |:-----------|------------------------------------------------------|
    | 0    | OK         | Command succeeded                                    |
    | 2    | PREMISE    | A certificate premise failed at some tree vertex     |
    | 3    | VALIDATION | Parameters or inputs violate a stated hypothesis     |
    | 64   | USAGE      | Unknown command or malformed command line            |
    | 65   | DATA       | Missing or malformed input file                      |
    """

    OK = 0
    PREMISE = 2
    VALIDATION = 3
    USAGE = 64
    DATA = 65


########################################################################################
# Exceptions                                                                           #
########################################################################################


class SumsetError(ValueError):
    """Base class for all input and verification errors raised by sumset-core."""


class DimensionError(SumsetError):
    """Points, directions or clouds do not share the ambient dimension."""


class DegenerateHullError(SumsetError):
    """Point cloud is not full-dimensional in its ambient space."""

    def __init__(self, affine_dim, dim):
        # type: (int, int) -> None
        self.affine_dim = affine_dim
        self.dim = dim
        super().__init__(f"Degenerate point cloud: affine dimension {affine_dim} in R^{dim}")


class CapExceededError(SumsetError):
    """A brute-force enumeration would exceed its configured cap."""

    def __init__(self, size, cap):
        # type: (int, int) -> None
        self.size = size
        self.cap = cap
        super().__init__(f"Enumeration of {size} points exceeds cap {cap}")


class ContainmentError(SumsetError):
    """A cloud is not contained in its declared ball."""

    def __init__(self, index, worst, radius):
        # type: (int, float, float) -> None
        self.index = index
        self.worst = worst
        self.radius = radius
        super().__init__(
            f"Cloud {index} not contained in ball of radius {radius!r}: "
            f"worst distance {worst!r}"
        )


class HullMembershipError(SumsetError):
    """A point is not in the convex hull of a cloud."""


class InvalidCombinationError(SumsetError):
    """Coefficients do not form a valid (convex or conic) combination."""


class ThicknessError(SumsetError):
    """Thickness witness failed at a center and scale."""

    def __init__(self, x, r, achieved, required, path=None):
        # type: (Sequence[float], float, float, float, Optional[Tuple[int, ...]]) -> None
        self.x = [float(v) for v in x]
        self.path = None if path is None else tuple(path)
        self.r = float(r)
        self.achieved = float(achieved)
        self.required = float(required)
        super().__init__(
            f"Thickness witness failed at x={self.x} r={self.r!r}: "
            f"achieved ratio {self.achieved!r} < {self.required!r}"
        )


class SingletonError(SumsetError):
    """Summand of zero diameter (positive-diameter hypothesis violated)."""

    def __init__(self, index=None):
        # type: (int) -> None
        self.index = index
        where = "" if index is None else f" (set {index})"
        super().__init__(
            f"Set of zero diameter{where}: the positive-diameter hypothesis is genuine, "
            "singletons carry maximal formal thickness yet contribute no geometric content"
        )


class ThresholdError(SumsetError):
    """Number of summands does not exceed the parametric bound."""

    def __init__(self, message, report=None):
        # type: (str, object) -> None
        self.report = report
        super().__init__(message)


class PremiseError(SumsetError):
    """A local premise of the interior certificate failed at a tree vertex."""

    def __init__(self, step, path, detail):
        # type: (str, Tuple[int, ...], str) -> None
        self.step = step
        self.path = tuple(path)
        self.detail = detail
        super().__init__(f"{step} failed at vertex {list(self.path)}: {detail}")


class InfeasibleError(SumsetError):
    """Linear program has no feasible point."""


class UnboundedError(SumsetError):
    """Linear program objective is unbounded."""


class DataError(ValueError):
    """Input document is missing or malformed."""

    def __init__(self, path, detail):
        # type: (str, str) -> None
        self.path = str(path)
        self.detail = detail
        super().__init__(f"{self.path}: {detail}")
