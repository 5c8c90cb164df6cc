"""Velocity-lattice geometry and index bookkeeping."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landau.errors import ConfigurationError
from landau.grid import embed_index, make_grid, storage_index


def test_basic_geometry():
    g = make_grid(8, 7.0)
    assert g.T == 14.0
    assert g.h == 14.0 / 8.0
    assert g.size() == 8
    assert g.size(extended=True) == 16


def test_axis_nodes_cover_half_open_box():
    g = make_grid(8, 7.0)
    nodes = g.axis_nodes()
    assert nodes[0] == -7.0
    assert nodes[-1] == 7.0 - g.h
    assert np.all(np.diff(nodes) == g.h)
    ext = g.axis_nodes(extended=True)
    assert ext[0] == -14.0
    assert ext[-1] == 14.0 - g.h
    assert len(ext) == 16


def test_node_mesh_broadcasts():
    g = make_grid(6, 3.0)
    X, Y, Z = g.node_mesh()
    assert X.shape == (6, 1, 1)
    assert Y.shape == (1, 6, 1)
    assert Z.shape == (1, 1, 6)
    np.testing.assert_array_equal(X.ravel(), g.axis_nodes())
    assert (X + Y + Z).shape == (6, 6, 6)


def test_storage_convention_centers_zero_mode():
    g = make_grid(8, 7.0)
    assert storage_index(g, (0, 0, 0)) == (4, 4, 4)
    assert storage_index(g, (-4, 0, 3)) == (0, 4, 7)
    assert storage_index(g, (0, 0, 0), extended=True) == (8, 8, 8)


def test_embed_index_preserves_node_coordinates():
    g = make_grid(8, 2.0)
    j = (-4, 0, 3)
    assert embed_index(g, j) == j
    inner = g.axis_nodes()
    extended = g.axis_nodes(extended=True)
    si = storage_index(g, j)
    se = storage_index(g, embed_index(g, j), extended=True)
    for a in range(3):
        assert inner[si[a]] == extended[se[a]]


def test_embed_index_rejects_out_of_range():
    g = make_grid(8, 2.0)
    with pytest.raises(IndexError):
        embed_index(g, (4, 0, 0))
    with pytest.raises(IndexError):
        embed_index(g, (0, -5, 0))
    with pytest.raises(IndexError):
        embed_index(g, (0, 0))


@pytest.mark.parametrize("n", [3, 7, 2, 0, -8])
def test_rejects_bad_resolution(n):
    with pytest.raises(ConfigurationError):
        make_grid(n, 1.0)


@pytest.mark.parametrize("R", [0.0, -1.0, float("nan"), float("inf")])
def test_rejects_bad_halfwidth(R):
    with pytest.raises(ConfigurationError):
        make_grid(8, R)


@settings(max_examples=50, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=24).map(lambda k: 2 * k),
    R=st.floats(min_value=0.1, max_value=50.0, allow_nan=False),
)
def test_lattice_symmetry(n, R):
    """Nodes come in exact +/- pairs apart from the unpaired -R endpoint."""
    g = make_grid(n, R)
    nodes = g.axis_nodes()
    assert len(nodes) == n
    np.testing.assert_array_equal(nodes[1:], -nodes[1:][::-1])
    assert g.h * n == pytest.approx(2 * R, rel=1e-15)
