# -*- coding: utf-8 -*-
"""Options for the sumset-core package can be configured using environment variables. Variables
are loaded as class-attributes on the `CoreOptions` instance. Environment variables are named like
the class-attribute but prefixed with `SUMSET_CORE_` and upper-cased.

!!! example "Example how to access configuration options"
    ```python
    import sumset_core as sc

    # To access SUMSET_CORE_TOLERANCE setting use
    tol: float = sc.core_opts.tolerance
    ```
"""
from loguru import logger as log

try:
    from pydantic.v1 import BaseSettings, Field
except ImportError:  # pragma: no cover
    from pydantic import BaseSettings, Field


class CoreOptions(BaseSettings):
    """Parameters with defaults for geometric computations and certificates."""

    class Config:
        env_prefix = "SUMSET_CORE_"
        env_file = "sumset-core.env"
        env_file_encoding = "utf-8"

    tolerance: float = Field(
        1e-9, gt=0, description="Global absolute tolerance for all geometric comparisons"
    )

    lp_pivot_tolerance: float = Field(
        1e-12, gt=0, description="Magnitude below which simplex tableau entries count as zero"
    )

    lp_max_iterations: int = Field(10000, gt=0, description="Pivot limit per simplex phase")

    hull_max_dim: int = Field(6, gt=0, description="Largest dimension accepted for convex hulls")

    oracle_cap: int = Field(
        10**6, gt=0, description="Maximum number of candidate points for brute-force sums"
    )

    discretize_cap: int = Field(
        10**6, gt=0, description="Maximum number of points produced by IFS discretization"
    )

    tree_cap: int = Field(200000, gt=0, description="Maximum number of vertices per certifier tree")

    seed: int = Field(0, description="Seed for all sampling oracles")

    residual_samples: int = Field(
        1000, gt=0, description="Number of hull samples drawn by the residual oracle"
    )

    absorption_samples: int = Field(
        128, gt=0, description="Number of ball points sampled by the 1-d absorption oracle"
    )

    thickness_ratio: float = Field(
        0.99,
        gt=0,
        lt=1,
        description="Scale ratio used when the interior certifier certifies thickness itself",
    )

    thickness_center_stride: int = Field(
        1,
        gt=0,
        description="Center stride used when the interior certifier certifies thickness itself",
    )

    witness_mode: str = Field(
        "extreme",
        regex="^(extreme|net)$",
        description="Children selection for discretization witnesses: hull vertices or an ε-net",
    )


# Options that change numerical verdicts if changed
numerics_critical = {
    "tolerance",
    "lp_pivot_tolerance",
}
has_logged_nonstandard = False


def conformance_check_options(opts):
    # type: (CoreOptions) -> bool
    """Check and log if options have non-default numerically critical values"""
    global has_logged_nonstandard
    result = True
    for key, value in opts.dict(exclude_defaults=True).items():
        if key in numerics_critical:
            if not has_logged_nonstandard:
                log.warning(f"Non-standard numerical option {key}={value}")
            result = False
    has_logged_nonstandard = True
    return result


core_opts = CoreOptions()
conformant_options = conformance_check_options(core_opts)
