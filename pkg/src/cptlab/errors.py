"""Exception hierarchy for cptlab."""

from __future__ import annotations


class CPTError(Exception):
    """Base class for all errors raised by cptlab."""


class DomainError(CPTError, ValueError):
    """An argument lies outside the domain of an operation."""


class DegenerateDriveError(DomainError):
    """Both Rabi frequencies vanish, so the mixing angle is undefined."""


class PreconditionError(DomainError):
    """A documented precondition (valid initial state, resonance, ...) is violated."""


class ConfigError(CPTError, ValueError):
    """Malformed or inconsistent run configuration."""


class IntegrationError(CPTError, RuntimeError):
    """The adaptive integrator could not continue (step-size underflow)."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} (t = {t:.17g})")
        self.t = t


class NonConvergenceError(CPTError, RuntimeError):
    """Propagation did not settle to a stationary state before ``t_max``."""

    def __init__(self, message: str, state, residual: float):
        super().__init__(f"{message} (residual = {residual:.3e})")
        self.state = state
        self.residual = residual


class NonUniqueSteadyStateError(CPTError, RuntimeError):
    """The generator has a null space of dimension two or more."""

    def __init__(self, message: str, singular_values):
        super().__init__(message)
        self.singular_values = singular_values


class ConsistencyError(CPTError, RuntimeError):
    """A computed curve violates a structural property it must satisfy."""


class EstimationError(CPTError, ValueError):
    """The measured dip height cannot be inverted to a noise parameter."""


class NoiselessMeasurementError(EstimationError):
    """A non-positive dip height corresponds to an unbounded tau2."""


class OutOfBracketError(EstimationError):
    def __init__(self, measured: float, bracket, heights):
        lo, hi = bracket
        h_lo, h_hi = heights
        super().__init__(
            f"measured p00 = {measured:.6g} outside achievable range "
            f"[{h_hi:.6g} (tau2={hi:g}), {h_lo:.6g} (tau2={lo:g})]"
        )
        self.measured = measured
        self.bracket = tuple(bracket)
        self.heights = (h_lo, h_hi)


class SaturationBelowThresholdError(CPTError):
    """The fidelity plateau is below the requested preparation quality."""

    def __init__(self, plateau: float, min_fidelity: float):
        super().__init__(
            f"fidelity saturates at {plateau:.6f}, below required {min_fidelity:.6f}"
        )
        self.plateau = plateau
        self.min_fidelity = min_fidelity
