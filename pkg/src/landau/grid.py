"""Velocity-space collocation lattice and its zero-padded extension.

The solver works on a uniform n^3 lattice covering the cube [-R, R]^3 on
which the distribution lives, together with a 2n^3 lattice covering
[-T, T]^3 with T = 2R on which convolutions are evaluated.  Both lattices
share the spacing h = 2R/n, so every inner node is also a node of the
extended lattice and restriction between them never interpolates.

Storage convention
------------------
Arrays over either lattice are C-ordered with axes (x, y, z).  Along each
axis the node with integer index j (j in [-size/2, size/2 - 1]) is stored
at position s = j + size/2, i.e. coordinates v = j*h increase monotonically
from -L to L - h.  The same convention applies to coefficient arrays, with
the mode index k taking the place of j.  Binary dumps use this layout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class VelocityGrid:
    """Cubic velocity lattice of n points per axis on [-R, R]^3.

    Parameters
    ----------
    n : int
        Points per axis on the inner lattice; must be even and >= 4 so the
        doubled lattice and the centered index sets are well defined.
    R : float
        Half-width of the inner cube.  The distribution is assumed to be
        (numerically) supported in the ball of radius R, which makes the
        truncated kernel on [-T, T]^3 with T = 2R exact for the collision
        integral.
    """

    n: int
    R: float

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise ConfigurationError(f"grid resolution must be an integer, got {self.n!r}")
        if self.n % 2 != 0 or self.n < 4:
            raise ConfigurationError(f"grid resolution must be even and >= 4, got n={self.n}")
        R = float(self.R)
        if not np.isfinite(R) or R <= 0.0:
            raise ConfigurationError(f"grid half-width must be positive and finite, got R={self.R!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "R", R)

    @property
    def T(self) -> float:
        """Half-width of the extended (doubled) cube."""
        return 2.0 * self.R

    @property
    def h(self) -> float:
        """Lattice spacing, shared by the inner and extended lattices."""
        return 2.0 * self.R / self.n

    def size(self, extended: bool = False) -> int:
        """Points per axis: n for the inner lattice, 2n for the extended one."""
        return 2 * self.n if extended else self.n

    def axis_nodes(self, extended: bool = False) -> np.ndarray:
        """1D node coordinates j*h in storage order (monotone increasing)."""
        size = self.size(extended)
        return np.arange(-(size // 2), size // 2, dtype=np.float64) * self.h

    def node_mesh(self, extended: bool = False):
        """Broadcastable (vx, vy, vz) coordinate arrays over the lattice.

        Returned arrays have shapes (size,1,1), (1,size,1) and (1,1,size);
        arithmetic with them broadcasts to the full lattice without
        materializing three dense cubes.
        """
        ax = self.axis_nodes(extended)
        return ax[:, None, None], ax[None, :, None], ax[None, None, :]


def make_grid(n: int, R: float) -> VelocityGrid:
    """Validate (n, R) and build the velocity grid."""
    return VelocityGrid(n=n, R=R)


def embed_index(grid: VelocityGrid, j) -> tuple:
    """Map a multi-index of the inner lattice into the extended lattice.

    Because both lattices share the spacing and are centered the same way,
    a node keeps its integer index under embedding; this helper only
    validates the range.  Raises IndexError for indices outside
    [-n/2, n/2 - 1]^3.
    """
    idx = tuple(int(c) for c in j)
    if len(idx) != 3:
        raise IndexError(f"expected a 3-component multi-index, got {j!r}")
    half = grid.n // 2
    for c in idx:
        if c < -half or c > half - 1:
            raise IndexError(f"index {idx} outside the inner lattice range [-{half}, {half - 1}]")
    return idx


def storage_index(grid: VelocityGrid, j, extended: bool = False) -> tuple:
    """Array position of integer multi-index j under the storage convention."""
    half = grid.size(extended) // 2
    idx = tuple(int(c) + half for c in j)
    if any(s < 0 or s >= 2 * half for s in idx):
        raise IndexError(f"index {tuple(j)} outside the lattice of size {2 * half}")
    return idx
