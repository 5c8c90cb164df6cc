"""Collision operator for Coulomb interactions in drift-diffusion form.

For the Coulomb potential the collision integral can be written as

    C(f, f) = div_v( Hess(g) grad(f) - grad(lap(g)) f ),

where g = |z| * f is the Rosenbluth-type potential of f.  On the lattice
the convolution is evaluated with the precomputed kernel table on the
doubled cube (where zero padding makes the periodic convolution exact for
supported distributions), the second and third derivatives of g are
sampled back at inner nodes, and the divergence of the pointwise flux is
taken spectrally on the inner lattice.  Taking the divergence in
coefficient space zeroes the mean mode identically, so the lattice mass
h^3 sum C is conserved to roundoff regardless of resolution.

One evaluation costs exactly one forward and nine inverse transforms on
the doubled lattice (six Hessian entries, three third-derivative entries)
plus eight transforms on the inner lattice; the counts are recorded in
:data:`landau.spectral.tally`.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigurationError
from .grid import VelocityGrid
from .kernel import KernelTable
from .spectral import (
    DistributionField,
    SpectralCoeffs,
    analyze,
    derive,
    sample_inner,
    synthesize,
    zero_extend,
)

#: Unique second-derivative index pairs; the mixed entries are mirrored.
HESSIAN_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


class CollisionWorkspace:
    """Grid/kernel pairing reused across evaluations.

    Owns nothing mutable besides scratch, so a workspace may be reused for
    any number of sequential evaluations; concurrent evaluations need one
    workspace each (they may share the immutable kernel table).
    """

    def __init__(self, grid: VelocityGrid, kernel: KernelTable):
        if kernel.n != grid.n or kernel.T != grid.T:
            raise ConfigurationError(
                f"kernel table (n={kernel.n}, T={kernel.T!r}) does not match "
                f"grid (n={grid.n}, T={grid.T!r})"
            )
        self.grid = grid
        self.kernel = kernel


def maxwellian_field(rho: float, u, temp: float, grid: VelocityGrid) -> DistributionField:
    """Nodal values of the Maxwellian with density rho, bulk velocity u, temperature temp."""
    rho = float(rho)
    temp = float(temp)
    if rho <= 0.0 or temp <= 0.0:
        raise ConfigurationError(f"Maxwellian needs rho > 0 and temp > 0, got {rho}, {temp}")
    u = np.asarray(u, dtype=np.float64).reshape(3)
    vx, vy, vz = grid.node_mesh()
    q2 = (vx - u[0]) ** 2 + (vy - u[1]) ** 2 + (vz - u[2]) ** 2
    vals = rho * (2.0 * np.pi * temp) ** -1.5 * np.exp(-q2 / (2.0 * temp))
    return DistributionField(grid, vals)


def rosenbluth_potential(f: DistributionField, ws: CollisionWorkspace) -> SpectralCoeffs:
    """Extended-lattice coefficients of g = |z| * f (doubled-cube convolution)."""
    if f.grid != ws.grid:
        raise ConfigurationError("field grid does not match workspace grid")
    coeffs = analyze(zero_extend(f), ws.grid.T)
    coeffs.data *= ws.kernel.values
    return coeffs


def _alpha(*axes: int) -> list[int]:
    order = [0, 0, 0]
    for a in axes:
        order[a] += 1
    return order


def _g_second_derivatives(g: SpectralCoeffs) -> dict:
    """Inner-node samples of the six unique Hessian entries of g.

    The mixed entries are stored once under the sorted key, so the Hessian
    used downstream is symmetric by construction rather than by arithmetic.
    """
    return {(a, b): sample_inner(derive(g, _alpha(a, b))) for a, b in HESSIAN_PAIRS}


def _g_third_derivatives(g: SpectralCoeffs) -> list:
    """Inner-node samples of grad(lap(g)), one field per component.

    Each component sums three coefficient-space derivatives before a single
    synthesis, keeping the inverse-transform count at one per component.
    """
    out = []
    for a in range(3):
        acc = None
        for b in range(3):
            term = derive(g, _alpha(a, b, b)).data
            acc = term if acc is None else acc + term
        out.append(sample_inner(SpectralCoeffs(g.size, g.halfwidth, acc)))
    return out


def collision_operator(f: DistributionField, ws: CollisionWorkspace) -> np.ndarray:
    """Evaluate the collision operator at the inner nodes of f's grid."""
    grid = ws.grid
    g = rosenbluth_potential(f, ws)
    hess = _g_second_derivatives(g)
    third = _g_third_derivatives(g)

    cf = analyze(f.values, grid.R)
    grad = [synthesize(derive(cf, _alpha(a))) for a in range(3)]

    div_data = None
    for a in range(3):
        flux = (
            hess[(min(a, 0), max(a, 0))] * grad[0]
            + hess[(min(a, 1), max(a, 1))] * grad[1]
            + hess[(min(a, 2), max(a, 2))] * grad[2]
            - third[a] * f.values
        )
        term = derive(analyze(flux, grid.R), _alpha(a)).data
        div_data = term if div_data is None else div_data + term
    return synthesize(SpectralCoeffs(grid.n, grid.R, div_data))


def steady_state_operator(
    f: DistributionField,
    m_n: DistributionField,
    ws: CollisionWorkspace,
    maxwellian_term: np.ndarray | None = None,
) -> np.ndarray:
    """Collision operator with its own equilibrium defect subtracted.

    Evaluates C(f) - C(m_n), where m_n is the nodal Maxwellian sharing f's
    initial invariants.  The discrete operator does not annihilate m_n
    exactly (truncation and quadrature leave a small residue), so plain
    stepping drifts away from equilibrium; subtracting the residue makes
    m_n a fixed point of the scheme while changing the dynamics only at
    the level of the discretization error.

    The m_n term is constant during a run and may be passed precomputed.
    """
    if m_n.grid != f.grid:
        raise ConfigurationError("equilibrium field grid does not match f")
    if maxwellian_term is None:
        maxwellian_term = collision_operator(m_n, ws)
    return collision_operator(f, ws) - maxwellian_term
