"""Noisy coherent population trapping in a three-level Lambda system.

The package builds the Lindblad generator with a classical-noise
dissipator, propagates it, finds steady states and runs the spectroscopy
and dark-state-preparation workflows on top.
"""

from ._backend import BACKEND
from .analysis import cpt_spectrum, dip_curve, dip_height, estimate_tau2
from .dynamics import Trajectory, converge_to_steady, excited_population, propagate
from .errors import (
    CPTError,
    ConfigError,
    ConsistencyError,
    DegenerateDriveError,
    DomainError,
    EstimationError,
    IntegrationError,
    NoiselessMeasurementError,
    NonConvergenceError,
    NonUniqueSteadyStateError,
    OutOfBracketError,
    PreconditionError,
    SaturationBelowThresholdError,
)
from .generator import GeneratorSpec, build_full, build_noiseless, classical_dissipator
from .model import SystemParams, dark_state, mixing_angle, validate_density
from .noise import NOISELESS, CorrelationModel, NoiseStrength, alpha_t, markov_strength
from .state_prep import (
    fidelity,
    fidelity_g,
    fidelity_vs_omega2,
    fidelity_vs_ratio,
    fidelity_vs_tau2,
    minimal_adequate_omega2,
)
from .steady_state import SteadySolution, solve_steady, steady_excited_population, steady_state

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
