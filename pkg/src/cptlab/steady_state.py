"""Direct steady states of constant generators.

The trace-preserving generator has linearly dependent population rows, so
one of them is swapped for the trace constraint and the resulting square
system is solved.  The singular values of the generator double as the
uniqueness diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonUniqueSteadyStateError
from .generator import GeneratorSpec, build_full
from .model import SystemParams, devectorize, validate_density
from .noise import CorrelationModel

TRACE_ROW = np.array([1, 0, 0, 0, 1, 0, 0, 0, 1], dtype=complex)

# second-smallest singular value below this fraction of ||A|| means nullity >= 2
NULLITY_RTOL = 1e-10


@dataclass(frozen=True)
class SteadySolution:
    state: np.ndarray
    residual: float
    nullity_gap: float  # sigma_min / sigma_second; tiny for a unique steady state
    singular_values: np.ndarray
    method: str

    @property
    def excited_population(self) -> float:
        return float(self.state[0, 0].real)


def solve_steady(A: np.ndarray) -> SteadySolution:
    """Solve ``A rho = 0`` with unit trace.

    Raises
    ------
    NonUniqueSteadyStateError
        If the null space has dimension two or more (for example gamma = 0).
    """
    A = np.asarray(A, dtype=complex)
    if A.shape != (9, 9):
        raise DomainError(f"expected a 9x9 generator, got {A.shape}")
    sv = np.linalg.svd(A, compute_uv=False)
    norm = sv[0]
    if norm == 0.0 or sv[-2] <= NULLITY_RTOL * norm:
        raise NonUniqueSteadyStateError(
            "non-unique steady state: generator null space has dimension >= 2", sv
        )
    gap = sv[-1] / sv[-2]

    M = A.copy()
    M[0] = TRACE_ROW
    rhs = np.zeros(9, dtype=complex)
    rhs[0] = 1.0
    method = "trace-row"
    try:
        vec = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError:
        vec = None
    if vec is None or not np.all(np.isfinite(vec)):
        _, _, vh = np.linalg.svd(A)
        vec = vh[-1].conj()
        vec = vec / (vec[0] + vec[4] + vec[8])
        method = "svd"

    rho = devectorize(vec)
    rho = 0.5 * (rho + rho.conj().T)
    residual = float(np.max(np.abs(A @ rho.reshape(9))))
    return SteadySolution(rho, residual, float(gap), sv, method)


def steady_state(spec: GeneratorSpec) -> SteadySolution:
    """Steady state for a noiseless or Markovian spec."""
    if isinstance(spec.noise, CorrelationModel):
        raise DomainError(
            "time-varying noise has no constant generator; use dynamics.converge_to_steady"
        )
    return solve_steady(build_full(spec))


def steady_excited_population(params: SystemParams, noise=None, delta: float = 0.0) -> float:
    """Steady rho00 with ``delta1 = delta`` and ``delta2 = 0``."""
    if not params.gamma > 0:
        raise DomainError("gamma must be positive")
    spec = GeneratorSpec(params.replace(delta1=float(delta), delta2=0.0), noise)
    return steady_state(spec).excited_population


def check_physical(sol: SteadySolution, tol: float = 1e-8) -> bool:
    return validate_density(sol.state, tol).ok
