# -*- coding: utf-8 -*-
import math
import numpy as np
import pytest
import sumset_core as sc

ALPHA = 0.49
LAM = sc.lambda_star(ALPHA)


def _params(depth=3, n=21, d=1, alpha=ALPHA, lam=LAM):
    return sc.CertifierParams(alpha, lam, depth, n, d)


def _line_grid():
    return sc.from_cloud(np.linspace(0, 1, 101), 0.005)


def test_params_validation():
    with pytest.raises(ValueError):
        sc.CertifierParams(0.3, 0.4, 1, 21, 1)
    with pytest.raises(ValueError):
        sc.CertifierParams(1.2, 0.4, 1, 21, 1)
    with pytest.raises(ValueError):
        sc.CertifierParams(0.5, 0.2, -1, 21, 1)
    with pytest.raises(ValueError):
        sc.CertifierParams(0.5, 0.2, 1.5, 21, 1)
    with pytest.raises(ValueError):
        sc.CertifierParams(0.5, 0.2, 1, 0, 1)
    with pytest.raises(ValueError):
        sc.CertifierParams(0.5, 0.2, 1, 21, 0)


def test_params_scales():
    p = _params()
    for k in range(5):
        assert p.r(k + 1, 2.0) == pytest.approx(LAM * p.r(k, 2.0), rel=1e-15)
        assert p.q(k, 2.0) == pytest.approx((ALPHA - LAM) * p.r(k, 2.0), rel=1e-15)
        assert p.big_r(k, 2.0) == pytest.approx((1 + LAM) * p.r(k, 2.0), rel=1e-15)
    assert p.dict() == {"alpha": ALPHA, "lam": LAM, "depth": 3, "n": 21, "d": 1}


def test_step3_inequality():
    passing = sc.verify_step3_inequality(_params(n=21))
    assert passing.passed
    assert passing.margin == pytest.approx(0.0275, abs=1e-3)
    failing = sc.verify_step3_inequality(_params(n=20))
    assert not failing
    assert failing.margin == pytest.approx(-0.0319, abs=1e-3)
    assert "does not exceed" in failing.detail
    assert sc.verify_step3_inequality(_params(n=1000)).passed


def test_step3_agrees_with_phi():
    for n in range(15, 30):
        passed = sc.verify_step3_inequality(_params(n=n)).passed
        assert passed == (n > sc.phi(ALPHA, LAM, 1))


def test_build_tree_interval(unit_grid):
    params = _params(depth=2)
    root = sc.build_tree(unit_grid, params)
    assert root.x.tolist() == [0.0]
    assert root.z.tolist() == pytest.approx([0.5])
    assert sc.tree_size(root) == 7
    for v in sc.iter_vertices(root):
        assert v.r == pytest.approx(params.r(v.depth, 1.0))
        if v.is_leaf:
            assert v.depth == 2
            continue
        cloud = sc.PointCloud(v.child_x(), dedupe=False)
        assert sc.ball_in_hull(cloud, sc.Ball(v.z, ALPHA * v.r))
        assert np.all(np.abs(v.child_x() - v.x) <= v.r + 1e-9)


def test_build_tree_depth_zero(unit_grid):
    root = sc.build_tree(unit_grid, _params(depth=0))
    assert root.is_leaf
    assert sc.tree_size(root) == 1


def test_build_tree_preconditions():
    grid = _line_grid()
    with pytest.raises(ValueError):
        sc.build_tree(grid, _params(depth=4))
    weak = sc.certify_thickness(grid, 0.2, 0.5, floor=0.01)
    with pytest.raises(sc.SumsetError):
        sc.build_tree(grid, _params(depth=1), certificate=weak)
    with pytest.raises(sc.SingletonError):
        sc.build_tree(sc.from_cloud([[0.5]]), _params(depth=1))


def test_build_tree_reports_failing_vertex():
    cantor = sc.discretize(sc.cantor_model(), 6)
    with pytest.raises(sc.ThicknessError) as excinfo:
        sc.build_tree(cantor, _params(depth=1))
    assert excinfo.value.path == (0,)
    assert excinfo.value.achieved < ALPHA


def test_build_tree_cap(unit_grid):
    sc.core_opts.tree_cap = 5
    try:
        with pytest.raises(sc.CapExceededError):
            sc.build_tree(unit_grid, _params(depth=3))
    finally:
        sc.core_opts.tree_cap = 200000


def test_steps_on_built_tree(unit_grid):
    params = _params(depth=3)
    root = sc.build_tree(unit_grid, params)
    for v in sc.iter_vertices(root):
        s1, s2 = sc.verify_step1(v, params), sc.verify_step2(v, params)
        assert s1.passed and s2.passed
        if v.is_leaf:
            assert s1.detail == "vacuous"
        else:
            assert s1.margin >= -1e-9
            assert s2.extra["sharp_margin"] >= -1e-9
            assert s2.extra["sharp_margin"] <= s2.margin


def test_step1_negative_control(unit_grid):
    params = _params(depth=2)
    root = sc.build_tree(unit_grid, params)
    v = root.children[0]
    v.children[0].z = v.children[0].z + 2 * v.r
    report = sc.verify_step1(v, params)
    assert not report
    assert report.path == (0,)
    assert report.margin < 0
    assert "displacement" in report.dict()["detail"]


def test_step2_negative_control(unit_grid):
    params = _params(depth=2)
    root = sc.build_tree(unit_grid, params)
    root.children[1].z = root.x + (1 + 2 * LAM) * root.r
    report = sc.verify_step2(root, params)
    assert not report.passed
    assert report.margin == pytest.approx(-LAM * root.r)


def test_absorption_check(unit_grid):
    params = _params(depth=2)
    root = sc.build_tree(unit_grid, params)
    report = sc.absorption_check([root] * 21, params, seed=3)
    assert report["passed"]
    assert report["depth"] == 0
    assert set(report["premises"]) == {"hull", "radius", "inequality"}
    assert report["oracle"]["covered"]
    assert report["oracle"]["misses"] == 0
    assert report["oracle"]["seed"] == 3
    inner = sc.absorption_check([root.children[0]] * 21, params)
    assert inner["passed"] and inner["depth"] == 1


def test_absorption_check_below_threshold(unit_grid):
    root = sc.build_tree(unit_grid, _params(depth=1))
    report = sc.absorption_check([root] * 20, _params(depth=1, n=20))
    assert not report["passed"]
    assert report["premises"]["inequality"] < 0
    assert "oracle" not in report


def test_absorption_check_arguments(unit_grid):
    params = _params(depth=1)
    root = sc.build_tree(unit_grid, params)
    with pytest.raises(ValueError):
        sc.absorption_check([root] * 20, params)
    with pytest.raises(ValueError):
        sc.absorption_check([root.children[0]] * 21, params)
    with pytest.raises(ValueError):
        sc.absorption_check([root] * 20 + [root.children[0]], params)


def test_certify_interior_21_intervals(unit_grid):
    params = _params(depth=3)
    cert = sc.certify_interior([unit_grid] * 21, params)
    assert cert.ball.center.tolist() == pytest.approx([10.5])
    assert cert.ball.radius == pytest.approx(21 * (ALPHA - LAM))
    assert cert.ball.radius == pytest.approx(5.656, abs=1e-3)
    assert cert.residual_gap == pytest.approx(21 * (1 - LAM) * LAM**3)
    assert cert.residual_gap == pytest.approx(0.176, abs=1e-3)
    assert cert.tree_sizes == [15] * 21
    assert set(cert.checks) == {"step1", "step2", "step3", "alpha_ball", "containment", "absorption"}
    assert len(cert.checks["absorption"]) == 3

    rng = np.random.default_rng(11)
    samples = cert.ball.center[0] + rng.uniform(-1, 1, 1000) * cert.ball.radius
    dist = sc.sum_witness_distance([unit_grid.cloud] * 21, samples[:, None])
    assert np.all(dist <= cert.residual_gap)


def test_certify_interior_below_threshold(unit_grid):
    with pytest.raises(sc.ThresholdError) as excinfo:
        sc.certify_interior([unit_grid] * 20, _params(n=20))
    assert "Parametric bound" in str(excinfo.value)
    assert excinfo.value.report.step == "step3"


def test_certify_interior_gap_shrinks_by_lambda(unit_grid):
    shallow = sc.certify_interior([unit_grid] * 21, _params(depth=1))
    deep = sc.certify_interior([unit_grid] * 21, _params(depth=2))
    assert deep.residual_gap / shallow.residual_gap == pytest.approx(LAM)
    assert deep.ball == shallow.ball


def test_certify_interior_is_deterministic(unit_grid):
    sets = [unit_grid] * 21
    first = sc.certify_interior(sets, _params(depth=1))
    second = sc.certify_interior(sets, _params(depth=1))
    assert sc.certificate_digest(first) == sc.certificate_digest(second)
    assert first.dict()["params"]["n"] == 21


def test_certify_interior_resolution_between_last_scales(unit_grid):
    params = _params(depth=3)
    r_last = params.r(3, 1.0)
    coarse = sc.DiscretizedSet(unit_grid.cloud, resolution=0.0107)
    assert sc.core_opts.thickness_ratio * r_last < coarse.resolution < r_last
    cert = sc.certify_interior([coarse] * 21, params)
    assert cert.ball.radius == pytest.approx(21 * (ALPHA - LAM))
    assert cert.residual_gap == pytest.approx(21 * (1 - LAM) * r_last)
    assert cert.tree_sizes == [15] * 21


def test_certify_interior_center_stride(unit_grid):
    full = sc.certify_interior([unit_grid] * 21, _params(depth=1))
    sc.core_opts.thickness_center_stride = 50
    try:
        strided = sc.certify_interior([unit_grid] * 21, _params(depth=1))
    finally:
        sc.core_opts.thickness_center_stride = 1
    assert strided.ball == full.ball
    assert strided.residual_gap == pytest.approx(full.residual_gap)
    assert strided.tree_sizes == full.tree_sizes


def test_certify_interior_depth_zero():
    cert = sc.certify_interior([_line_grid()] * 21, _params(depth=0))
    assert cert.residual_gap == pytest.approx(21 * (1 - LAM))
    assert cert.checks["absorption"] == []


def test_certify_interior_input_validation():
    grid = _line_grid()
    with pytest.raises(ValueError):
        sc.certify_interior([grid] * 20, _params(depth=1))
    with pytest.raises(sc.SingletonError) as excinfo:
        sc.certify_interior([grid] * 20 + [sc.from_cloud([[0.5]])], _params(depth=1))
    assert excinfo.value.index == 20
    with pytest.raises(sc.DimensionError):
        sc.certify_interior([grid] * 21, _params(depth=1, d=2))
    with pytest.raises(ValueError):
        sc.certify_interior([grid] * 21, _params(depth=1), certificates=[None])


def test_certify_interior_rejects_weak_certificates():
    grid = _line_grid()
    weak = sc.certify_thickness(grid, 0.2, 0.5, floor=0.01)
    with pytest.raises(sc.SumsetError):
        sc.certify_interior([grid] * 21, _params(depth=1), certificates=[weak] * 21)


def test_certify_interior_witness_failure():
    cantor = sc.discretize(sc.cantor_model(), 6)
    claimed = sc.ThicknessCertificate(
        c_certified=0.9,
        c_raw=1.0,
        c_target=0.5,
        ratio=0.9,
        scales=np.array([0.1]),
        centers=np.zeros((1, 1)),
        worst={},
        floor=0.1,
        resolution=cantor.resolution,
    )
    with pytest.raises(sc.PremiseError) as excinfo:
        sc.certify_interior([cantor] * 21, _params(depth=1), certificates=[claimed] * 21)
    assert excinfo.value.step == "witness"
    assert excinfo.value.path == (0,)


def test_depth_for_gap():
    params = _params(depth=0)
    assert sc.depth_for_gap(params, 1.0, 0.2) == 3
    assert sc.depth_for_gap(params, 1.0, 0.176) == 3
    assert sc.depth_for_gap(params, 1.0, 100.0) == 0
    for gap in (1.0, 0.05, 1e-4):
        k = sc.depth_for_gap(params, 1.0, gap)
        assert 21 * (1 - LAM) * LAM**k <= gap
        assert k == 0 or 21 * (1 - LAM) * LAM ** (k - 1) > gap
    with pytest.raises(ValueError):
        sc.depth_for_gap(params, 1.0, 0)


def test_certificate_dict(unit_grid):
    cert = sc.certify_interior([unit_grid] * 21, _params(depth=1))
    data = cert.dict()
    assert set(data) == {"ball", "gap", "depth", "r0", "params", "checks", "tree_sizes"}
    assert data["r0"] == 1.0
    assert data["checks"]["step3"]["passed"] is True
    assert math.isclose(data["gap"], cert.residual_gap)
