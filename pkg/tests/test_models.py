# -*- coding: utf-8 -*-
import numpy as np
import pytest
import sumset_core as sc
from tests.conftest import TRIANGLE


def test_as_point():
    p = sc.as_point(3)
    assert p.tolist() == [3.0]
    assert not p.flags.writeable
    assert sc.as_point([1, 2], 2).tolist() == [1.0, 2.0]


def test_as_point_errors():
    with pytest.raises(sc.DimensionError):
        sc.as_point([1, 2], 3)
    with pytest.raises(sc.DimensionError):
        sc.as_point([[1, 2]])
    with pytest.raises(ValueError):
        sc.as_point([1, float("inf")])


def test_point_cloud_flat_list_is_one_dimensional():
    cloud = sc.PointCloud([0, 0.5, 1])
    assert cloud.dim == 1
    assert cloud.size == 3
    assert cloud.points.tolist() == [[0.0], [0.5], [1.0]]


def test_point_cloud_dedupes_first_seen():
    cloud = sc.PointCloud([[1, 1], [0, 0], [1, 1 + 1e-12]])
    assert cloud.points.tolist() == [[1.0, 1.0], [0.0, 0.0]]
    assert len(sc.PointCloud([[1, 1], [1, 1]], dedupe=False)) == 2


def test_point_cloud_read_only():
    cloud = sc.PointCloud(TRIANGLE)
    with pytest.raises(ValueError):
        cloud.points[0, 0] = 5.0


def test_point_cloud_validation():
    with pytest.raises(ValueError):
        sc.PointCloud([[0, 0], [1]])
    with pytest.raises(sc.DimensionError):
        sc.PointCloud([])
    with pytest.raises(ValueError):
        sc.PointCloud([[0, float("nan")]])
    with pytest.raises(sc.DimensionError):
        sc.PointCloud(TRIANGLE, dim=3)
    with pytest.raises(sc.DimensionError):
        sc.as_cloud(sc.PointCloud(TRIANGLE), dim=1)


def test_point_cloud_digest_and_dict():
    a = sc.PointCloud(TRIANGLE)
    assert a.digest == sc.PointCloud(TRIANGLE).digest
    assert a.dict() == {"dim": 2, "points": TRIANGLE}
    assert sc.as_cloud(a) is a


def test_point_cloud_subset_translate_transform():
    cloud = sc.PointCloud(TRIANGLE)
    assert cloud.subset([0, 2]).points.tolist() == [[0.0, 0.0], [0.0, 1.0]]
    assert cloud.translate([1, 1]).points.tolist()[0] == [1.0, 1.0]
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    moved = cloud.transform(rot, scale=2.0, shift=[1, 0])
    assert np.allclose(moved.points, [[1.0, 0.0], [1.0, 2.0], [-1.0, 0.0]])


def test_ball():
    ball = sc.Ball([0, 0], 1)
    assert ball.dim == 2
    assert ball.shrink(0.25).radius == 0.75
    assert ball.shrink(2).radius == 0.0
    assert ball == sc.Ball([0.0, 0.0], 1.0)
    assert ball != sc.Ball([0.0, 0.0], 2.0)
    assert ball.dict() == {"center": [0.0, 0.0], "radius": 1.0}
    with pytest.raises(ValueError):
        sc.Ball([0, 0], -1)


def test_h_representation():
    hrep = sc.HRepresentation([[1, 0], [0, 1]], [1, 2])
    assert len(hrep) == 2
    assert hrep.dim == 2
    assert hrep.slack([0.5, 0.5]).tolist() == [0.5, 1.5]
    assert hrep.facets[1][1] == 2.0
    assert hrep.dict() == {"normals": [[1.0, 0.0], [0.0, 1.0]], "offsets": [1.0, 2.0]}
    with pytest.raises(sc.DimensionError):
        sc.HRepresentation([[1, 0]], [1, 2])


def test_hull_decision():
    assert sc.HullDecision(True, 0.5)
    assert not sc.HullDecision(False, -0.5, "outside")
    assert sc.HullDecision(False, -0.5, "outside").dict() == {
        "inside": False,
        "margin": -0.5,
        "diagnostic": "outside",
    }
