# -*- coding: utf-8 -*-
import os

# ENV Variables must be set before import of sumset_core package
os.environ["SUMSET_CORE_LP_PIVOT_TOLERANCE"] = "1e-11"


def test_options_nonstandard():
    import sumset_core

    assert sumset_core.core_opts.lp_pivot_tolerance == 1e-11
    assert sumset_core.conformant_options is False
    sumset_core.core_opts.lp_pivot_tolerance = 1e-12


def test_options():
    import sumset_core

    assert sumset_core.core_opts.tolerance == 1e-9
    assert sumset_core.core_opts.witness_mode == "extreme"
    assert sumset_core.core_opts.thickness_ratio == 0.99
    assert sumset_core.core_opts.thickness_center_stride == 1


def test_conformance_check_options_default():
    from sumset_core.options import CoreOptions, conformance_check_options

    assert conformance_check_options(CoreOptions(lp_pivot_tolerance=1e-12)) is True


def test_options_validation():
    import pytest
    from sumset_core.options import CoreOptions

    with pytest.raises(ValueError):
        CoreOptions(witness_mode="random")
    with pytest.raises(ValueError):
        CoreOptions(thickness_ratio=1.0)
    with pytest.raises(ValueError):
        CoreOptions(thickness_center_stride=0)
