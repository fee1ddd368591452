# -*- coding: utf-8 -*-
"""*Closed-form thresholds for the number of summands.*

A sum of `n` sets of thickness at least `c` in `R^d` has interior once `n` strictly exceeds

    n_main(c, d) = √d (√(1+c) + 1)² / c² = √d / (√(1+c) - 1)²

which is obtained by minimizing the parametric bound `Φ(α, λ) = √d (1+λ) / (λ (α-λ))` at
`λ* = √(1+α) - 1` and letting `α ↑ c`. The older sequential construction needs
`n > 2^11 c^-3 + 1` instead; the two cross at `d = (1024/3)² c^-2`.

All thresholds are returned as exact reals. Use `min_summands` for the smallest admissible
integer.

!!! example
    ```python
    >>> import sumset_core as sc
    >>> round(sc.n_main(1, 1), 6)
    5.828427
    >>> sc.min_summands(sc.n_main(1, 1))
    6

    ```
"""
import math
from typing import Tuple
from loguru import logger as log
import sumset_core as sc


__all__ = [
    "phi",
    "lambda_star",
    "n_main",
    "n_fw",
    "n_simple",
    "crossover_dim",
    "min_summands",
    "alpha_min",
    "suggest_params",
    "ThresholdReport",
    "threshold_report",
]


def _check_c(c):
    # type: (float) -> float
    c = float(c)
    if not 0 < c <= 1:
        raise sc.SumsetError(f"Thickness must be in (0, 1]: {c!r}")
    return c


def _check_d(d):
    # type: (int) -> int
    if int(d) != d or d < 1:
        raise sc.SumsetError(f"Dimension must be a positive integer: {d!r}")
    return int(d)


def phi(alpha, lam, d):
    # type: (float, float, int) -> float
    """
    Parametric bound `√d (1+λ) / (λ (α-λ))` on the number of summands.

    :param float alpha: Thickness parameter α
    :param float lam: Scale ratio λ with `0 < λ < α`
    :param int d: Ambient dimension
    :return: Value of the bound
    :rtype: float
    """
    d = _check_d(d)
    if not 0 < lam < alpha:
        raise sc.SumsetError(f"Need 0 < lambda < alpha: lambda={lam!r} alpha={alpha!r}")
    return math.sqrt(d) * (1 + lam) / (lam * (alpha - lam))


def lambda_star(alpha):
    # type: (float) -> float
    """
    Minimizer `√(1+α) - 1` of the parametric bound over `λ ∈ (0, α)`.

    It is the positive root of `α - λ = λ (1 + λ)`, at which `Φ(α, λ*) = √d / λ*²`.

    :param float alpha: Thickness parameter α > 0
    :return: Optimal scale ratio
    :rtype: float
    """
    if alpha <= 0:
        raise sc.SumsetError(f"Alpha must be positive: {alpha!r}")
    # Cancellation-free form of sqrt(1 + a) - 1
    lam = alpha / (math.sqrt(1 + alpha) + 1)
    tol = sc.core_opts.tolerance
    assert abs((alpha - lam) - lam * (1 + lam)) <= tol, "Identity α - λ* = λ*(1 + λ*) violated"
    return lam


def n_main(c, d):
    # type: (float, int) -> float
    """
    Threshold `√d (√(1+c) + 1)² / c²` of the multiscale construction.

    :param float c: Thickness lower bound in (0, 1]
    :param int d: Ambient dimension
    :return: Threshold that n must strictly exceed
    :rtype: float
    """
    c, d = _check_c(c), _check_d(d)
    root = math.sqrt(1 + c)
    value = math.sqrt(d) * (root + 1) ** 2 / c**2
    other = math.sqrt(d) / lambda_star(c) ** 2
    assert math.isclose(value, other, rel_tol=1e-12), f"Threshold forms disagree: {value} {other}"
    assert value < n_simple(c, d), f"Threshold {value} not below the simplified bound"
    return value


def n_fw(c):
    # type: (float) -> float
    """Threshold `2^11 c^-3 + 1` of the sequential construction."""
    c = _check_c(c)
    return sc.FW_CONSTANT / c**3 + 1


def n_simple(c, d):
    # type: (float, int) -> float
    """Simplified sufficient threshold `6 √d / c²`."""
    c, d = _check_c(c), _check_d(d)
    return sc.SIMPLE_CONSTANT * math.sqrt(d) / c**2


def crossover_dim(c):
    # type: (float) -> float
    """
    Dimension `(1024/3)² c^-2` below which the simplified bound beats the sequential one.

    :param float c: Thickness lower bound in (0, 1]
    :return: Crossover dimension (a real number)
    :rtype: float
    """
    c = _check_c(c)
    value = (1024 / 3) ** 2 / c**2
    below = max(1, math.ceil(value) - 1)
    assert n_simple(c, below) < sc.FW_CONSTANT / c**3, "Crossover check failed"
    return value


def min_summands(threshold):
    # type: (float) -> int
    """Smallest integer strictly above `threshold`."""
    return math.floor(threshold) + 1


def alpha_min(n, d):
    # type: (int, int) -> float
    """
    Smallest α with `n > √d / (√(1+α) - 1)²`, namely `(1 + d^(1/4) / √n)² - 1`.

    Every α strictly above this value admits the construction with `n` summands.
    """
    d = _check_d(d)
    if n < 1:
        raise sc.SumsetError(f"Number of summands must be positive: {n!r}")
    return (1 + d**0.25 / math.sqrt(n)) ** 2 - 1


def suggest_params(c, d, n):
    # type: (float, int, int) -> Tuple[float, float]
    """
    Pick construction parameters for `n` summands of thickness `c` in `R^d`.

    :param float c: Thickness lower bound in (0, 1]
    :param int d: Ambient dimension
    :param int n: Number of summands
    :return: Tuple (α, λ*(α)) with α midway between `alpha_min(n, d)` and c
    :rtype: Tuple[float, float]
    :raises ThresholdError: If n does not exceed `n_main(c, d)`
    """
    bound = n_main(c, d)
    if n <= bound:
        raise sc.ThresholdError(f"n={n} does not exceed the threshold {bound!r} for c={c} d={d}")
    alpha = (alpha_min(n, d) + c) / 2
    lam = lambda_star(alpha)
    log.debug(f"Suggested alpha={alpha!r} lambda={lam!r} for n={n}")
    return alpha, lam


class ThresholdReport:
    """All thresholds for thickness `c` in dimension `d`."""

    def __init__(self, c, d):
        # type: (float, int) -> None
        self.c = _check_c(c)
        self.d = _check_d(d)
        self.n_main = n_main(c, d)
        self.n_fw = n_fw(c)
        self.n_simple = n_simple(c, d)
        self.n_min = min(self.n_main, self.n_fw)
        self.lambda_star_at_c = lambda_star(c)
        self.crossover_dim = crossover_dim(c)

    @property
    def winner(self):
        # type: () -> str
        return "main" if self.n_main <= self.n_fw else "feng-wu"

    def __repr__(self):
        return f"ThresholdReport(c={self.c!r}, d={self.d}, n_min={self.n_min!r})"

    def dict(self):
        # type: () -> dict
        return dict(
            c=self.c,
            d=self.d,
            n_main=self.n_main,
            n_fw=self.n_fw,
            n_simple=self.n_simple,
            n_min=self.n_min,
            min_summands=min_summands(self.n_min),
            lambda_star_at_c=self.lambda_star_at_c,
            crossover_dim=self.crossover_dim,
            winner=self.winner,
        )


def threshold_report(c, d):
    # type: (float, int) -> ThresholdReport
    return ThresholdReport(c, d)
