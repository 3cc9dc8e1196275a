"""Exception hierarchy.

Numerical failures are real outcomes here, not bugs: an adaptive integrator
that cannot meet its tolerance usually signals an inadmissible jump measure,
and a variation sum that keeps growing signals a measure the regularity
assumption excludes.  Each failure mode gets its own class so callers (and
the CLI exit-code mapping) can react without string matching.
"""


class LevyDecayError(Exception):
    """Base class for all package errors."""


class ConfigError(LevyDecayError):
    """Malformed configuration or input document."""


class InvalidMeasure(LevyDecayError):
    """Jump measure violates an integrability requirement."""


class NumericalError(LevyDecayError):
    """Base class for numerical non-convergence failures."""


class QuadratureNonconvergent(NumericalError):
    """Adaptive quadrature failed to meet its tolerance."""


class NonConvergent(NumericalError):
    """Adaptive refinement (variation sums, ladders) did not stabilize."""


class Oscillatory(NumericalError):
    """Extrapolation toward 0+ does not contract; the input oscillates."""


class CFUnderflow(NumericalError):
    """|phi(u)| underflowed; use the log-magnitude route instead."""


class NoSampler(LevyDecayError):
    """Neither an exact nor a truncated sampling route applies."""


class NonIntegrableCF(LevyDecayError):
    """The characteristic function is not absolutely integrable."""


class DiffusionPresent(LevyDecayError):
    """Operation requires a purely non-Gaussian triplet (sigma2 == 0)."""


class GridOverflow(LevyDecayError):
    """Convolution support exceeds the working grid."""


class UnderflowGuard(LevyDecayError):
    """|phi| dipped below the underflow guard inside the active band."""


class BandwidthTooSmall(UnderflowGuard):
    """Noise CF underflows on [-1/h, 1/h]; increase the bandwidth."""


class SpectrumClipped(LevyDecayError):
    """Input has non-negligible spectrum beyond the partition ceiling."""
