"""Exception and warning types raised by the simulator.

Validation errors mean the inputs are outside a model's domain; simulation
errors mean a well-formed scenario has no meaningful answer (e.g. zero
drain rate). Sweeps catch validation errors per point and log them to the
sidecar report instead of aborting.
"""


class ValidationError(ValueError):
    """Input violates a documented model invariant."""


class AltitudeOutOfModelRange(ValidationError):
    """UAV altitude outside the (22.5 m, 300 m) validity window."""


class FrequencyOutsideFitRange(ValidationError):
    """Carrier frequency outside the 275-400 GHz absorption-fit window."""


class InvalidPropulsionParams(ValidationError):
    """Propulsion constants produce a non-physical power curve."""


class InvalidComputeParams(ValidationError):
    """Compute parameters are inconsistent (e.g. zero cycles/bit)."""


class ParseError(ValidationError):
    """Config file could not be parsed; message carries location detail."""


class SimulationError(RuntimeError):
    """A well-formed scenario cannot be evaluated."""


class ZeroTotalRate(SimulationError):
    """Combined drain rate is zero; the workload never completes."""


class NoSolution(SimulationError):
    """The move-and-return time equation has no finite solution."""


class IntegrationNotConverged(RuntimeError):
    """Refining the quadrature grid moved the result beyond tolerance."""


class NonMonotoneRateWarning(UserWarning):
    """Sampled throughput is not non-increasing in distance (numerical guard)."""
