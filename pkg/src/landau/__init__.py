"""Spectral collocation solver for the space-homogeneous Coulomb collision equation.

The package advances df/dt = C(f, f) for the Coulomb interaction on a
uniform velocity lattice: the Rosenbluth-type potential g = |z| * f is
evaluated as an exact lattice convolution on a doubled cube with a
precomputed kernel table, the operator is assembled in drift-diffusion
form from spectral derivatives of g and f, and time is advanced with a
strong-stability-preserving third-order Runge-Kutta stepper.  Mass is
conserved to roundoff by construction; an equilibrium-preserving variant
of the operator additionally pins the discrete Maxwellian.
"""

__version__ = "0.1.0"

from .collision import (
    CollisionWorkspace,
    collision_operator,
    maxwellian_field,
    rosenbluth_potential,
    steady_state_operator,
)
from .config import ExperimentConfig, build_initial_condition, resolve_config
from .diagnostics import (
    ErrorNorms,
    MomentSet,
    collect,
    cross_section_z,
    entropy,
    error_norms,
    moments,
    projection_xy,
    relative_entropy,
)
from .driver import run_experiment
from .errors import (
    BlowUpError,
    ConfigurationError,
    DegenerateStateError,
    FieldFormatError,
    InvalidReferenceError,
    KernelCacheError,
    KernelQuadratureError,
    LandauError,
    SpectralRealnessError,
)
from .fieldio import read_field, write_field
from .grid import VelocityGrid, embed_index, make_grid
from .integrator import StepperConfig, parabolic_dt, rk3_step
from .kernel import KernelTable, compute_kernel_table, default_fine, load_kernel, store_kernel
from .spectral import (
    DistributionField,
    SpectralCoeffs,
    analyze,
    derive,
    sample_inner,
    synthesize,
    zero_extend,
)

__all__ = [
    "__version__",
    "BlowUpError",
    "CollisionWorkspace",
    "ConfigurationError",
    "DegenerateStateError",
    "DistributionField",
    "ErrorNorms",
    "ExperimentConfig",
    "FieldFormatError",
    "InvalidReferenceError",
    "KernelCacheError",
    "KernelQuadratureError",
    "KernelTable",
    "LandauError",
    "MomentSet",
    "SpectralCoeffs",
    "SpectralRealnessError",
    "StepperConfig",
    "VelocityGrid",
    "analyze",
    "build_initial_condition",
    "collect",
    "collision_operator",
    "compute_kernel_table",
    "cross_section_z",
    "default_fine",
    "derive",
    "embed_index",
    "entropy",
    "error_norms",
    "load_kernel",
    "make_grid",
    "maxwellian_field",
    "moments",
    "parabolic_dt",
    "projection_xy",
    "read_field",
    "relative_entropy",
    "resolve_config",
    "rk3_step",
    "rosenbluth_potential",
    "run_experiment",
    "sample_inner",
    "steady_state_operator",
    "store_kernel",
    "synthesize",
    "write_field",
    "zero_extend",
]
