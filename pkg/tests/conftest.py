# -*- coding: utf-8 -*-
import numpy as np
import pytest

TRIANGLE = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
SQUARE = [[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [2.0, 2.0]]
GRID_STEP = 2.5e-5


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture(scope="session", name="unit_grid")
def unit_grid_():
    """Unit interval sampled on a regular grid (fixture wrapper around `unit_grid`)."""
    return unit_grid()


def unit_grid(step=GRID_STEP):
    """Discretized [0, 1] with resolution half the grid step."""
    import sumset_core as sc

    count = int(round(1 / step)) + 1
    return sc.DiscretizedSet(np.linspace(0.0, 1.0, count), resolution=step / 2)


def random_clouds(rng, n, d, max_points=5):
    """n random clouds in R^d with 1..max_points points each."""
    return [rng.normal(size=(rng.integers(1, max_points + 1), d)) for _ in range(n)]


def random_weights(rng, clouds):
    """Random convex weights, sometimes sparse, one row per cloud."""
    rows = []
    for cloud in clouds:
        w = rng.dirichlet(np.ones(len(cloud)))
        if len(cloud) > 1 and rng.random() < 0.3:
            w[rng.integers(len(cloud))] = 0.0
            w = w / w.sum()
        rows.append(w)
    return rows
