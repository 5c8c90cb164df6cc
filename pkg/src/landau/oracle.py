"""Slow reference implementations used to validate the fast solver.

Two independent routes are kept alongside the production path:

* :func:`dense_collision` evaluates the same drift-diffusion algebra as
  :func:`landau.collision.collision_operator` but computes every
  transform as an explicit dense DFT summation (matrix contractions, no
  FFT).  It must agree with the fast path to near machine precision and
  guards the index bookkeeping, normalization, and mode conventions.

* :func:`direct_landau` discretizes the primitive double-integral form of
  the operator with the projection tensor written out explicitly.  With
  ``derivatives="differences"`` (the default) every derivative is a
  centered second-order stencil and the route shares nothing with the
  spectral machinery; it is low-order, so agreement is checked in
  direction (cosine similarity), not to tight tolerance.  With
  ``derivatives="spectral"`` the stencils are swapped for trigonometric
  differentiation, which isolates the pair-sum quadrature itself and
  agrees with the production path far more tightly.

Both are O(N^2)-ish in the node count and gated to small lattices; they
are test equipment, not production code paths.
"""

from __future__ import annotations

import numpy as np

from .kernel import KernelTable
from .spectral import DistributionField, analyze, derive, synthesize

DENSE_MAX_N = 12
DIRECT_MAX_N = 10


def landau_matrix(z) -> np.ndarray:
    """Coulomb projection tensor A(z) = (I - zhat zhat^T) / |z| for z != 0."""
    z = np.asarray(z, dtype=np.float64).reshape(3)
    r2 = float(z @ z)
    if r2 == 0.0:
        raise ValueError("landau_matrix is singular at z = 0")
    return (np.eye(3) - np.outer(z, z) / r2) / np.sqrt(r2)


def _dense_axis_matrices(size: int):
    """Analysis/synthesis DFT matrices for one axis in centered storage order."""
    idx = np.arange(size) - size // 2
    phase = np.outer(idx, idx) * (2.0 * np.pi / size)
    fwd = np.exp(-1j * phase)
    inv = np.exp(1j * phase)
    return fwd, inv


def _dense_analyze(values: np.ndarray) -> np.ndarray:
    size = values.shape[0]
    fwd, _ = _dense_axis_matrices(size)
    out = np.einsum("Ka,abc->Kbc", fwd, values.astype(np.complex128))
    out = np.einsum("Lb,abc->aLc", fwd, out)
    out = np.einsum("Mc,abc->abM", fwd, out)
    return out / float(size) ** 3


def _dense_synthesize(coeffs: np.ndarray) -> np.ndarray:
    size = coeffs.shape[0]
    _, inv = _dense_axis_matrices(size)
    out = np.einsum("Ja,abc->Jbc", inv, coeffs)
    out = np.einsum("Jb,abc->aJc", inv, out)
    out = np.einsum("Jc,abc->abJ", inv, out)
    return out


def _dense_derivative_factor(size: int, halfwidth: float, orders) -> np.ndarray:
    """3D multiplier for d^orders with the unpaired-mode convention.

    Mirrors the production rule: odd-order axes zero the k = -size/2 mode
    (it has no conjugate partner), even orders keep it.
    """
    k = np.arange(size, dtype=np.float64) - size // 2
    factors = []
    for order in orders:
        fac = (1j * np.pi * k / halfwidth) ** order
        if order % 2 == 1:
            fac = fac.copy()
            fac[0] = 0.0
        factors.append(fac)
    return (
        factors[0][:, None, None]
        * factors[1][None, :, None]
        * factors[2][None, None, :]
    )


def dense_collision(f: DistributionField, kernel: KernelTable) -> np.ndarray:
    """Collision operator via dense DFT summations; small lattices only."""
    grid = f.grid
    n = grid.n
    if n > DENSE_MAX_N:
        raise ValueError(f"dense_collision is gated to n <= {DENSE_MAX_N}, got n={n}")
    if kernel.n != n or kernel.T != grid.T:
        raise ValueError("kernel table does not match the field's grid")
    T, R = grid.T, grid.R

    ext = np.zeros((2 * n,) * 3)
    s = slice(n // 2, n // 2 + n)
    ext[s, s, s] = f.values
    g = _dense_analyze(ext) * kernel.values

    def sampled(orders):
        full = _dense_synthesize(g * _dense_derivative_factor(2 * n, T, orders)).real
        return full[s, s, s]

    hess = [[None] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(a, 3):
            orders = [0, 0, 0]
            orders[a] += 1
            orders[b] += 1
            hess[a][b] = hess[b][a] = sampled(orders)
    third = []
    for a in range(3):
        total = np.zeros((2 * n,) * 3, dtype=np.complex128)
        for b in range(3):
            orders = [0, 0, 0]
            orders[a] += 1
            orders[b] += 2
            total += g * _dense_derivative_factor(2 * n, T, orders)
        third.append(_dense_synthesize(total).real[s, s, s])

    cf = _dense_analyze(f.values)
    grad = [
        _dense_synthesize(cf * _dense_derivative_factor(n, R, (int(a == 0), int(a == 1), int(a == 2)))).real
        for a in range(3)
    ]

    div = np.zeros((n,) * 3, dtype=np.complex128)
    for a in range(3):
        flux = sum(hess[a][b] * grad[b] for b in range(3)) - third[a] * f.values
        e_a = (int(a == 0), int(a == 1), int(a == 2))
        div += _dense_analyze(flux) * _dense_derivative_factor(n, R, e_a)
    return _dense_synthesize(div).real


def direct_landau(f: DistributionField, *, derivatives: str = "differences") -> np.ndarray:
    """Double-sum discretization of the primitive collision integral.

    Builds the pair flux
        Phi(v) = h^3 sum_w A(v - w) [grad f(v) f(w) - grad f(w) f(v)]
    with the diagonal (v = w) term omitted, then takes its divergence.
    ``derivatives`` selects how grad f and the divergence are computed:
    ``"differences"`` uses second-order centered stencils throughout, a
    genuinely different discretization from the production path (expect
    directional agreement, not digits — the stencils cannot resolve a
    unit-width Gaussian on the coarse lattices the cost gate allows);
    ``"spectral"`` uses trigonometric differentiation so that only the
    pair-sum quadrature differs from the production path.
    """
    grid = f.grid
    n = grid.n
    if n > DIRECT_MAX_N:
        raise ValueError(f"direct_landau is gated to n <= {DIRECT_MAX_N}, got n={n}")
    if derivatives not in ("differences", "spectral"):
        raise ValueError(f"unknown derivatives mode: {derivatives!r}")
    h = grid.h
    nodes = grid.axis_nodes()
    X, Y, Z = np.meshgrid(nodes, nodes, nodes, indexing="ij")
    pts = np.stack([X, Y, Z], axis=-1).reshape(-1, 3)
    w = f.values.reshape(-1)

    if derivatives == "spectral":
        coeffs = analyze(f.values, grid.R)
        parts = [synthesize(derive(coeffs, _unit_alpha(a))) for a in range(3)]
        gradf = np.stack(parts, axis=-1).reshape(-1, 3)
    else:
        gx, gy, gz = np.gradient(f.values, h, edge_order=2)
        gradf = np.stack([gx, gy, gz], axis=-1).reshape(-1, 3)

    zvec = pts[:, None, :] - pts[None, :, :]
    r2 = np.einsum("ijc,ijc->ij", zvec, zvec)
    diag = r2 == 0.0
    r2_safe = np.where(diag, 1.0, r2)
    r = np.sqrt(r2_safe)

    # d_ij = grad f(v_i) f(v_j) - grad f(v_j) f(v_i)
    d = gradf[:, None, :] * w[None, :, None] - gradf[None, :, :] * w[:, None, None]
    zd = np.einsum("ijc,ijc->ij", zvec, d) / r2_safe
    ad = (d - zvec * zd[:, :, None]) / r[:, :, None]
    ad[diag] = 0.0
    flux = h ** 3 * ad.sum(axis=1)
    flux = flux.reshape(n, n, n, 3)

    out = np.zeros((n, n, n))
    for a in range(3):
        if derivatives == "spectral":
            out += synthesize(derive(analyze(flux[..., a], grid.R), _unit_alpha(a)))
        else:
            out += np.gradient(flux[..., a], h, axis=a, edge_order=2)
    return out


def _unit_alpha(axis: int) -> tuple[int, int, int]:
    return tuple(int(axis == i) for i in range(3))  # type: ignore[return-value]
