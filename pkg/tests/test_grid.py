import math

import numpy as np
import pytest

from neumannheat import (Field1D, Field2D, Grid1D, Grid2D, GridMismatchError,
                         inner, inner2d, mean, mean2d, norm2d, norm_l2, ones,
                         ones2d, project, project2d)
from neumannheat.exact import cosine_mode
from neumannheat.spectral import eigenvector


def test_grid_geometry():
    g = Grid1D(5, 2.0)
    assert g.dx * (g.J - 1) == pytest.approx(g.L, abs=1e-15)
    assert g.node(0) == 0.0
    assert g.node(4) == pytest.approx(2.0, abs=1e-15)
    assert np.allclose(g.nodes(), [0.0, 0.5, 1.0, 1.5, 2.0])
    with pytest.raises(IndexError):
        g.node(5)


def test_grid_degenerate_and_invalid():
    Grid1D(2, 1.0)  # smallest legal grid
    with pytest.raises(ValueError):
        Grid1D(1, 1.0)
    with pytest.raises(ValueError):
        Grid1D(4, 0.0)


def test_field_validation():
    g = Grid1D(4, 1.0)
    with pytest.raises(ValueError):
        Field1D(g, np.zeros(5))
    with pytest.raises(ValueError):
        Field1D(g, np.array([0.0, np.inf, 0.0, 0.0]))


def test_inner_examples():
    g = Grid1D(4, 1.0)
    assert inner(ones(g), ones(g)) == 1.0
    e0 = Field1D(g, np.array([1.0, 0.0, 0.0, 0.0]))
    assert inner(e0, ones(g)) == 0.25


def test_inner_eigenvector_orthogonality():
    g = Grid1D(8, 1.0)
    w1, w2 = eigenvector(g, 1), eigenvector(g, 2)
    # independent check: evaluate the cosine formula and sum directly
    j = np.arange(8)
    ref = math.fsum(2.0 * np.cos(1 * (j + 0.5) * np.pi / 8)
                    * np.cos(2 * (j + 0.5) * np.pi / 8)) / 8
    assert abs(ref) < 1e-12
    assert abs(inner(w1, w2)) < 1e-12


def test_inner_grid_mismatch():
    with pytest.raises(GridMismatchError):
        inner(ones(Grid1D(4, 1.0)), ones(Grid1D(5, 1.0)))


def test_mean_examples():
    g = Grid1D(10, 1.0)
    assert mean(ones(g)) == 1.0
    e0 = Field1D(g, np.eye(10)[0])
    assert mean(e0) == pytest.approx(0.1, abs=1e-16)
    for ell in range(1, 10):
        assert abs(mean(eigenvector(g, ell))) < 1e-12


def test_mean_is_inner_with_ones_bitwise():
    rng = np.random.default_rng(7)
    g = Grid1D(33, 2.0)
    for _ in range(20):
        v = Field1D(g, rng.standard_normal(33))
        assert mean(v) == inner(v, ones(g))


def test_norm_examples():
    g = Grid1D(16, 1.0)
    assert norm_l2(ones(g)) == 1.0
    assert norm_l2(Field1D(g, 2.0 * np.ones(16))) == 2.0
    for ell in range(1, 16):
        assert norm_l2(eigenvector(g, ell)) == pytest.approx(1.0, abs=1e-12)


def test_cauchy_schwarz_random():
    rng = np.random.default_rng(1234)
    g = Grid1D(21, 3.0)
    for _ in range(200):
        v = Field1D(g, rng.standard_normal(21))
        w = Field1D(g, rng.standard_normal(21))
        assert abs(inner(v, w)) <= norm_l2(v) * norm_l2(w) * (1 + 1e-15)


def test_project_examples():
    g = Grid1D(3, 1.0)
    assert np.array_equal(project(g, lambda x: np.ones_like(x)).values, [1, 1, 1])
    assert np.allclose(project(g, lambda x: x).values, [0.0, 0.5, 1.0], atol=1e-15)
    g2 = Grid1D(2, 1.0)
    c1 = cosine_mode(1, 1.0)
    assert np.allclose(project(g2, c1).values, [math.sqrt(2), -math.sqrt(2)], atol=1e-15)


def test_project_scalar_only_callable():
    g = Grid1D(4, 1.0)
    v = project(g, lambda x: float(np.sin(x)) if np.isscalar(x) or x.ndim == 0 else 3.5)
    # the vectorized call returns the wrong shape, so sampling falls back per node
    assert np.allclose(v.values, np.sin(g.nodes()))


def test_project_linearity():
    rng = np.random.default_rng(5)
    g = Grid1D(17, 1.5)
    a, b = rng.standard_normal(2)
    f = lambda x: np.sin(3 * x) + 0.5
    h = lambda x: np.cos(x) * x
    combo = project(g, lambda x: a * f(x) + b * h(x))
    split = a * project(g, f).values + b * project(g, h).values
    assert np.abs(combo.values - split).max() < 1e-14


def test_2d_basics():
    g = Grid2D(3, 5, 2.0, 4.0)
    assert g.dx == 1.0 and g.dy == 1.0
    v = ones2d(g)
    assert inner2d(v, v) == 1.0
    assert mean2d(v) == 1.0
    assert norm2d(Field2D(g, 3.0 * np.ones((5, 3)))) == 3.0
    w = project2d(g, lambda x, y: x + 10 * y)
    assert w.values.shape == (5, 3)
    assert w.values[2, 1] == pytest.approx(1.0 + 20.0, abs=1e-15)


def test_2d_mismatch_and_validation():
    with pytest.raises(GridMismatchError):
        inner2d(ones2d(Grid2D(3, 4, 1, 1)), ones2d(Grid2D(3, 5, 1, 1)))
    with pytest.raises(ValueError):
        Field2D(Grid2D(3, 4, 1, 1), np.zeros((3, 4)))  # transposed shape
