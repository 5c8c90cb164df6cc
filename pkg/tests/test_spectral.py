"""Centered-transform pair, trigonometric derivatives, and grid embedding."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landau import spectral
from landau.errors import SpectralRealnessError
from landau.grid import make_grid
from landau.spectral import (
    DistributionField,
    SpectralCoeffs,
    analyze,
    derive,
    sample_inner,
    synthesize,
    zero_extend,
)


def test_constant_field_is_pure_zero_mode():
    g = make_grid(8, 3.0)
    c = analyze(np.full((8, 8, 8), 2.5), g.R)
    assert c.data[4, 4, 4] == pytest.approx(2.5, rel=1e-15)
    off = c.data.copy()
    off[4, 4, 4] = 0.0
    assert np.abs(off).max() < 1e-15


def test_cosine_splits_into_conjugate_pair():
    g = make_grid(8, 3.0)
    x = g.axis_nodes()
    vals = np.broadcast_to(
        np.cos(np.pi * 2 * x / g.R)[:, None, None], (8, 8, 8)
    ).copy()
    c = analyze(vals, g.R)
    # mode k = +-2 on the x axis, storage offset n/2 = 4
    assert c.data[6, 4, 4] == pytest.approx(0.5, abs=1e-15)
    assert c.data[2, 4, 4] == pytest.approx(0.5, abs=1e-15)


def test_roundtrip_identity(bumpy_field):
    g = make_grid(16, 5.0)
    vals = bumpy_field(g, seed=11)
    back = synthesize(analyze(vals, g.R))
    np.testing.assert_allclose(back, vals, rtol=0, atol=1e-12 * np.abs(vals).max())


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_roundtrip_identity_random(seed):
    rng = np.random.default_rng(seed)
    vals = rng.standard_normal((8, 8, 8))
    back = synthesize(analyze(vals, 2.0))
    np.testing.assert_allclose(back, vals, rtol=0, atol=1e-12 * np.abs(vals).max())


def test_parseval():
    rng = np.random.default_rng(4)
    g = make_grid(16, 2.0)
    vals = rng.standard_normal((16,) * 3)
    c = analyze(vals, g.R)
    lhs = g.h**3 * np.sum(vals**2)
    rhs = g.T**3 * np.sum(np.abs(c.data) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-13)


def test_gaussian_derivative_is_spectrally_accurate():
    g = make_grid(32, 7.0)
    X, Y, Z = g.node_mesh()
    vals = np.exp(-(X**2 + Y**2 + Z**2) / 2.0) + np.zeros((32,) * 3)
    dx = synthesize(derive(analyze(vals, g.R), (1, 0, 0)))
    exact = -X * vals
    assert np.abs(dx - exact).max() < 1e-9


def test_zero_order_derivative_is_identity():
    rng = np.random.default_rng(9)
    c = analyze(rng.standard_normal((8, 8, 8)), 1.5)
    d = derive(c, (0, 0, 0))
    np.testing.assert_array_equal(d.data, c.data)


def test_derive_validates_alpha():
    c = analyze(np.zeros((8, 8, 8)), 1.0)
    with pytest.raises(ValueError):
        derive(c, (1, 1))
    with pytest.raises(ValueError):
        derive(c, (-1, 0, 0))
    with pytest.raises(ValueError):
        derive(c, (2, 1, 1))


def test_odd_order_zeroes_unpaired_mode():
    """The k = -n/2 column has no conjugate partner; odd derivatives drop it."""
    g = make_grid(8, 3.0)
    x = g.axis_nodes()
    alternating = np.broadcast_to(
        np.cos(np.pi * 4 * x / g.R)[:, None, None], (8, 8, 8)
    ).copy()
    c = analyze(alternating, g.R)
    assert abs(c.data[0, 4, 4]) == pytest.approx(1.0, rel=1e-12)
    first = derive(c, (1, 0, 0))
    assert np.abs(first.data).max() == 0.0
    second = derive(c, (2, 0, 0))
    assert abs(second.data[0, 4, 4]) > 1.0


def test_mixed_partials_commute():
    g = make_grid(8, 3.0)
    X, Y, Z = g.node_mesh()
    vals = np.exp(-((X - 0.4) ** 2 + 2 * (Y + 0.2) ** 2 + 1.5 * Z**2) / 2.0)
    c = analyze(vals, g.R)
    xy = derive(derive(c, (1, 0, 0)), (0, 1, 0)).data
    yx = derive(derive(c, (0, 1, 0)), (1, 0, 0)).data
    single = derive(c, (1, 1, 0)).data
    # nesting in canonical axis order reproduces the one-shot multi-index
    # bit for bit; the opposite nesting reassociates two scalar products
    # and may differ in the last ulp.
    np.testing.assert_array_equal(xy, single)
    assert np.abs(xy - yx).max() <= 8 * np.finfo(float).eps * np.abs(xy).max()


def test_zero_extend_places_inner_block():
    g = make_grid(8, 3.0)
    rng = np.random.default_rng(3)
    vals = rng.standard_normal((8, 8, 8))
    ext = zero_extend(DistributionField(g, vals))
    assert ext.shape == (16, 16, 16)
    s = slice(4, 12)
    np.testing.assert_array_equal(ext[s, s, s], vals)
    ext[s, s, s] = 0.0
    assert np.abs(ext).max() == 0.0


def test_extension_roundtrip(bumpy_field):
    g = make_grid(8, 3.0)
    vals = bumpy_field(g, seed=21)
    c = analyze(zero_extend(DistributionField(g, vals)), g.T)
    back = sample_inner(c)
    np.testing.assert_allclose(back, vals, rtol=0, atol=1e-12 * np.abs(vals).max())


def test_synthesize_rejects_non_hermitian_coefficients():
    data = np.zeros((8, 8, 8), dtype=complex)
    data[5, 4, 4] = 1.0  # k = (1, 0, 0) with no conjugate partner
    with pytest.raises(SpectralRealnessError):
        synthesize(SpectralCoeffs(size=8, halfwidth=3.0, data=data))


def test_field_shape_validation():
    g = make_grid(8, 3.0)
    with pytest.raises(ValueError):
        DistributionField(g, np.zeros((8, 8, 4)))


def test_transform_tally_counts():
    spectral.tally.reset()
    g = make_grid(8, 3.0)
    vals = np.ones((8, 8, 8))
    synthesize(analyze(vals, g.R))
    assert spectral.tally.count("forward", 8) == 1
    assert spectral.tally.count("inverse", 8) == 1
    assert spectral.tally.count("forward", 16) == 0
