"""Exception types shared across the solver."""


class LandauError(Exception):
    """Base class for all solver-specific failures."""


class ConfigurationError(LandauError):
    """Invalid grid, preset, or run parameters."""


class KernelQuadratureError(LandauError):
    """Kernel coefficient quadrature violated its realness bound."""


class KernelCacheError(LandauError):
    """Kernel cache file failed header, size, or checksum validation."""


class SpectralRealnessError(LandauError):
    """Synthesis of a nominally real field left a non-negligible imaginary part."""


class FieldFormatError(LandauError):
    """Field dump failed header, size, or checksum validation."""


class DegenerateStateError(LandauError):
    """Field has nonpositive mass, so bulk observables are undefined."""


class InvalidReferenceError(LandauError):
    """Reference distribution for relative entropy must be positive everywhere."""


class BlowUpError(LandauError):
    """Time integration produced non-finite values."""

    def __init__(self, t: float, stage: int):
        super().__init__(f"non-finite field values at t={t:.8g} (RK stage {stage})")
        self.t = t
        self.stage = stage
