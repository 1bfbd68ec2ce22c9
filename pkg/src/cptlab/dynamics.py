"""Time propagation of the vectorized master equation.

Integration is an adaptive Dormand-Prince 5(4) scheme with dense output,
run by a compiled kernel when available (see :mod:`cptlab._backend`).
States are never renormalized during propagation; the trace defect is
recorded as a diagnostic instead.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import DomainError, IntegrationError, NonConvergenceError, PreconditionError
from .generator import GeneratorSpec, build_noiseless, dephasing_pattern
from .model import devectorize, validate_density, vectorize
from .noise import NoiseStrength

DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-12
# tighter pair for steady-state detection: chunked restarts must stay below tol
STEADY_RTOL = 1e-11
STEADY_ATOL = 1e-14

TRAJECTORY_COLUMNS = (
    "t", "rho00", "rho11", "rho22",
    "re_rho01", "im_rho01", "re_rho02", "im_rho02", "re_rho12", "im_rho12",
    "trace_defect",
)


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (n, 3, 3)
    observables: dict = field(default_factory=dict)
    description: str = ""
    nsteps: int = 0

    def __post_init__(self):
        if "rho00" not in self.observables:
            self.observables["rho00"] = self.states[:, 0, 0].real.copy()
        if "trace_defect" not in self.observables:
            traces = np.trace(self.states, axis1=1, axis2=2)
            self.observables["trace_defect"] = np.abs(traces - 1.0)

    def __len__(self):
        return len(self.times)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def worst_defects(self) -> dict:
        """Largest Hermiticity/trace defect and most negative eigenvalue over all states."""
        reports = [validate_density(rho, 1.0) for rho in self.states]
        return {
            "hermiticity": max(r.hermiticity_defect for r in reports),
            "trace": max(r.trace_defect for r in reports),
            "min_eigenvalue": min(r.min_eigenvalue for r in reports),
        }

    def rows(self):
        for t, rho, tdef in zip(self.times, self.states, self.observables["trace_defect"]):
            yield (
                t, rho[0, 0].real, rho[1, 1].real, rho[2, 2].real,
                rho[0, 1].real, rho[0, 1].imag, rho[0, 2].real, rho[0, 2].imag,
                rho[1, 2].real, rho[1, 2].imag, tdef,
            )

    def to_csv(self, fh=None, metadata: dict | None = None) -> str | None:
        """Write the trajectory as CSV; returns the text when ``fh`` is None."""
        from .io import format_number, write_metadata

        buf = io.StringIO() if fh is None else fh
        write_metadata(buf, metadata or {"description": self.description})
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TRAJECTORY_COLUMNS)
        for row in self.rows():
            writer.writerow([format_number(v) for v in row])
        return buf.getvalue() if fh is None else None


def _kernel_terms(spec: GeneratorSpec):
    A0 = build_noiseless(spec.params)
    noise = spec.noise
    if noise is None:
        return A0, np.zeros(9), 0, 0.0, 0.0, 1.0
    if isinstance(noise, NoiseStrength):
        return A0, dephasing_pattern(noise.gamma_e), 0, noise.alpha, 0.0, 1.0
    return A0, dephasing_pattern(spec.params.gamma_e), 1, 0.0, noise.c0 ** 2, noise.tau_c


def _check_rho0(rho0):
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (3, 3):
        raise PreconditionError(f"initial state must be 3x3, got {rho0.shape}")
    report = validate_density(rho0, 1e-9)
    if not report.ok:
        raise PreconditionError(f"invalid initial density matrix: {report}")
    return rho0


def _evolve(spec, y0, t_grid, rtol, atol, backend):
    kernel = _backend.get_kernel(backend)
    A0, dvec, mode, alpha_const, c0sq, tau_c = _kernel_terms(spec)
    ys, status, t_stop, nsteps, _ = kernel(
        A0, dvec, mode, alpha_const, c0sq, tau_c, y0, t_grid, rtol, atol
    )
    if status == 1:
        raise IntegrationError("step size underflow", t_stop)
    if status == 2:
        raise IntegrationError("maximum number of steps exceeded", t_stop)
    return ys, nsteps


def propagate(
    spec: GeneratorSpec,
    rho0,
    t_end: float,
    output_grid=None,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    backend: str | None = None,
) -> Trajectory:
    """Integrate from t = 0 to ``t_end`` and sample on ``output_grid``.

    Parameters
    ----------
    spec : GeneratorSpec
        System and noise mode.  Time-varying noise starts with alpha(0) = 0.
    rho0 : array_like, shape (3, 3)
        Valid initial density matrix.
    t_end : float
        Final time (us).
    output_grid : array_like, optional
        Strictly increasing sample times in ``[0, t_end]``; defaults to 2000
        evenly spaced points over ``(0, t_end]`` plus ``t = 0``.
    rtol, atol : float
        Local error tolerances of the embedded pair.
    backend : {"cython", "python"}, optional
        Kernel override; defaults to the import-time selection.

    Raises
    ------
    IntegrationError
        If the step size underflows; carries the failure time.
    """
    if not (math.isfinite(t_end) and t_end > 0):
        raise DomainError(f"t_end must be positive, got {t_end!r}")
    if not (rtol > 0 and atol > 0):
        raise DomainError("tolerances must be positive")
    rho0 = _check_rho0(rho0)
    if output_grid is None:
        output_grid = np.linspace(0.0, t_end, 2001)
    grid = np.asarray(output_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("output grid must be a non-empty 1-D array")
    if np.any(np.diff(grid) <= 0):
        raise DomainError("output grid must be strictly increasing")
    if grid[0] < 0 or grid[-1] > t_end:
        raise DomainError("output grid must lie within [0, t_end]")

    internal = grid
    lead = grid[0] > 0
    if lead:
        internal = np.concatenate(([0.0], internal))
    if internal[-1] < t_end:
        internal = np.concatenate((internal, [t_end]))
    ys, nsteps = _evolve(spec, vectorize(rho0), internal, rtol, atol, backend)
    ys = ys[1:] if lead else ys
    ys = ys[: grid.size]
    states = ys.reshape(-1, 3, 3)
    return Trajectory(grid.copy(), states, description=spec.describe(), nsteps=nsteps)


def moving_average(values, window: int) -> np.ndarray:
    """Centered moving average; the window shrinks symmetrically at the edges."""
    values = np.asarray(values, dtype=float)
    if window < 1:
        raise DomainError("window must be >= 1")
    if window == 1 or values.size == 0:
        return values.copy()
    half = window // 2
    csum = np.concatenate(([0.0], np.cumsum(values)))
    idx = np.arange(values.size)
    width = np.minimum(np.minimum(idx, values.size - 1 - idx), half)
    lo = idx - width
    hi = idx + width + 1
    return (csum[hi] - csum[lo]) / (hi - lo)


def excited_population(traj: Trajectory, window: int | None = None) -> np.ndarray:
    """rho00 along the trajectory, optionally smoothed with a moving average."""
    if len(traj) == 0:
        raise DomainError("empty trajectory")
    raw = traj.states[:, 0, 0].real.copy()
    if window is None:
        return raw
    return moving_average(raw, window)


def converge_to_steady(
    spec: GeneratorSpec,
    rho0,
    tol: float = 1e-10,
    t_max: float = 1000.0,
    probe: float | None = None,
    rtol: float = STEADY_RTOL,
    atol: float = STEADY_ATOL,
    backend: str | None = None,
) -> np.ndarray:
    """Propagate until the state changes by less than ``tol`` over one probe interval.

    The probe interval defaults to ``1 / gamma``.  Works for every noise
    mode, including time-varying alpha(t).  The default integrator
    tolerances are tighter than for :func:`propagate` so that the per-chunk
    error stays well below ``tol``.

    Raises
    ------
    NonConvergenceError
        When ``t_max`` is reached first; carries the last state and residual.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    rho0 = _check_rho0(rho0)
    if probe is None:
        probe = 1.0 / spec.params.gamma if spec.params.gamma > 0 else 1.0
    y = vectorize(rho0)
    t = 0.0
    residual = math.inf
    while t + probe <= t_max:
        ys, _ = _evolve(spec, y, np.array([t, t + probe]), rtol, atol, backend)
        y_next = ys[-1]
        residual = float(np.max(np.abs(y_next - y)))
        y = y_next
        t += probe
        if residual < tol:
            return devectorize(y)
    raise NonConvergenceError(f"no convergence by t_max = {t_max:g}", devectorize(y), residual)
