"""Dark-state preparation fidelity under the classical bath.

The fidelity is ``<d| rho_eq |d>`` with ``rho_eq`` the Markovian steady
state on two-photon resonance.  Because only the Markovian limit enters,
results depend on the bath through tau2 alone, not on tau_c.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .errors import ConsistencyError, DomainError, PreconditionError, SaturationBelowThresholdError
from .generator import GeneratorSpec
from .model import SystemParams, dark_state
from .noise import NOISELESS, NoiseStrength, is_noiseless
from .steady_state import steady_state
from .sweep import SweepResult, check_grid, map_grid

PRESET_GAMMA = 1.0
PRESET_OMEGA2 = 10.0
PRESET_TAU2 = 300.0
DEFAULT_THRESHOLD_DEFECT = 1e-3
TARGET_FIDELITY = 0.98


def fidelity(params: SystemParams, noise=None) -> float:
    """Overlap of the steady state with the target dark state.

    Raises
    ------
    PreconditionError
        If either detuning is non-zero.
    """
    if not params.on_resonance:
        raise PreconditionError("fidelity is defined on resonance (delta1 = delta2 = 0)")
    if not params.gamma > 0:
        raise DomainError("gamma must be positive")
    d = dark_state(params.omega1, params.omega2, params.phi)
    rho = steady_state(GeneratorSpec(params, None if is_noiseless(noise) else noise)).state
    return float((d.conj() @ rho @ d).real)


def fidelity_g(ratio: float, omega2: float, tau2: float, gamma: float = PRESET_GAMMA,
               phi: float = 0.0) -> float:
    """Fidelity in (Rabi ratio, omega2, tau2) coordinates; ``tau2 = inf`` is noiseless."""
    noise = NOISELESS if math.isinf(tau2) else NoiseStrength.from_tau2(tau2)
    params = SystemParams(gamma=gamma, omega1=ratio * omega2, omega2=omega2, phi1=phi)
    return fidelity(params, noise)


def _point(gamma, noise, pair):
    omega1, omega2 = pair
    return fidelity(SystemParams(gamma=gamma, omega1=omega1, omega2=omega2), noise)


def _tau2_point(gamma, omega1, omega2, tau2):
    noise = NOISELESS if math.isinf(tau2) else NoiseStrength.from_tau2(tau2)
    return fidelity(SystemParams(gamma=gamma, omega1=omega1, omega2=omega2), noise)


def _meta(gamma, noise, **extra):
    meta = {"gamma": float(gamma), "noise": "noiseless" if is_noiseless(noise) else noise.describe()}
    meta.update({k: float(v) for k, v in extra.items()})
    return meta


def fidelity_vs_ratio(omega2: float, ratio_grid, noise, gamma: float = PRESET_GAMMA,
                      jobs: int = 1) -> SweepResult:
    """Fidelity against the Rabi ratio omega1/omega2 at fixed omega2.

    When the grid spans [0.1, 10] and the bath is present the minimum must
    sit within one grid step of ratio 1 (maximal dark-bright mixing).
    """
    if not omega2 > 0:
        raise DomainError("omega2 must be positive")
    grid = check_grid(ratio_grid, "ratio grid", positive=True)
    pairs = [(r * omega2, omega2) for r in grid]
    values = np.array(map_grid(functools.partial(_point, gamma, noise), pairs, jobs))
    if not is_noiseless(noise) and grid[0] <= 0.1 and grid[-1] >= 10:
        nearest = int(np.argmin(np.abs(np.log(grid))))
        if abs(int(np.argmin(values)) - nearest) > 1:
            raise ConsistencyError(
                f"fidelity minimum at ratio {grid[np.argmin(values)]:g}, expected near 1"
            )
    return SweepResult("ratio", grid, values, _meta(gamma, noise, omega2=omega2), "fidelity")


def plateau_saturated(values, tol: float = DEFAULT_THRESHOLD_DEFECT) -> bool:
    """Last value within ``tol`` of the 90th-percentile value."""
    values = np.asarray(values, dtype=float)
    return bool(abs(values[-1] - np.percentile(values, 90)) < tol)


def fidelity_vs_omega2(ratio: float, omega2_grid, noise, gamma: float = PRESET_GAMMA,
                       jobs: int = 1) -> SweepResult:
    """Fidelity against omega2 at a fixed Rabi ratio.

    ``metadata["saturated"]`` reports whether the curve has flattened out
    (see :func:`plateau_saturated`); single-point sweeps skip the check.
    """
    if not ratio > 0:
        raise DomainError("ratio must be positive")
    grid = check_grid(omega2_grid, "omega2 grid", positive=True)
    pairs = [(ratio * w, w) for w in grid]
    values = np.array(map_grid(functools.partial(_point, gamma, noise), pairs, jobs))
    meta = _meta(gamma, noise, ratio=ratio)
    if grid.size > 1:
        meta["saturated"] = plateau_saturated(values)
    return SweepResult("omega2", grid, values, meta, "fidelity")


def fidelity_vs_tau2(ratio: float, omega2: float, tau2_grid, gamma: float = PRESET_GAMMA,
                     jobs: int = 1) -> SweepResult:
    """Fidelity against tau2; must be strictly increasing."""
    if not (ratio > 0 and omega2 > 0):
        raise DomainError("ratio and omega2 must be positive")
    grid = check_grid(tau2_grid, "tau2 grid", positive=True)
    values = np.array(
        map_grid(functools.partial(_tau2_point, gamma, ratio * omega2, omega2), grid, jobs)
    )
    if np.any(np.diff(values) <= 0):
        i = int(np.flatnonzero(np.diff(values) <= 0)[0])
        raise ConsistencyError(
            f"fidelity not increasing between tau2={grid[i]:g} and tau2={grid[i + 1]:g}"
        )
    meta = _meta(gamma, None, ratio=ratio, omega2=omega2)
    meta["noise"] = "markovian sweep over tau2"
    return SweepResult("tau2", grid, values, meta, "fidelity")


def minimal_adequate_omega2(ratio: float, noise, gamma: float = PRESET_GAMMA,
                            threshold_defect: float = DEFAULT_THRESHOLD_DEFECT,
                            omega2_range=(0.1, 100.0), n_grid: int = 41,
                            min_fidelity: float | None = None,
                            refine_tol: float = 1e-3) -> float:
    """Smallest omega2 whose fidelity is within ``threshold_defect`` of the plateau.

    The plateau is the fidelity at the top of ``omega2_range``.  A log grid
    locates the first adequate point, then bisection refines between it and
    its predecessor to relative width ``refine_tol``.

    Raises
    ------
    SaturationBelowThresholdError
        If ``min_fidelity`` is given and the plateau falls short of it.
    """
    if not threshold_defect > 0:
        raise DomainError("threshold_defect must be positive")
    lo, hi = omega2_range
    if not 0 < lo < hi:
        raise DomainError(f"invalid omega2 range {omega2_range!r}")

    def f(w):
        return _point(gamma, noise, (ratio * w, w))

    plateau = f(hi)
    if min_fidelity is not None and plateau < min_fidelity:
        raise SaturationBelowThresholdError(plateau, min_fidelity)

    def adequate(w):
        return plateau - f(w) < threshold_defect

    grid = np.geomspace(lo, hi, n_grid)
    first = next(k for k, w in enumerate(grid) if adequate(w))
    if first == 0:
        return float(grid[0])
    a, b = grid[first - 1], grid[first]
    while b / a - 1.0 > refine_tol:
        mid = math.sqrt(a * b)
        if adequate(mid):
            b = mid
        else:
            a = mid
    return float(b)
