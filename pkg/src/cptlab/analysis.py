"""CPT spectra, dip heights and inversion of dip height to the noise parameter tau2."""

from __future__ import annotations

import functools
import math

import numpy as np

from .errors import (
    ConsistencyError,
    DomainError,
    NoiselessMeasurementError,
    OutOfBracketError,
)
from .model import SystemParams
from .noise import NOISELESS, NoiseStrength, is_noiseless
from .steady_state import steady_excited_population
from .sweep import SweepResult, check_grid, map_grid

DEFAULT_DELTA_GRID = np.linspace(-100.0, 100.0, 401)
DEFAULT_BRACKET = (0.1, 1e4)


def _metadata(params: SystemParams, noise) -> dict:
    meta = {f"param.{k}": float(v) for k, v in params.as_dict().items()}
    meta["noise"] = "noiseless" if is_noiseless(noise) else noise.describe()
    return meta


def _spectrum_point(params, noise, delta):
    return steady_excited_population(params, noise, delta)


def cpt_spectrum(params: SystemParams, noise=None, delta_grid=DEFAULT_DELTA_GRID,
                 jobs: int = 1) -> SweepResult:
    """Steady excited-state population versus detuning (``delta2 = 0``)."""
    if not params.gamma > 0:
        raise DomainError("gamma must be positive")
    grid = check_grid(delta_grid, "delta grid")
    values = map_grid(functools.partial(_spectrum_point, params, noise), grid, jobs)
    meta = _metadata(params, noise)
    meta["delta2"] = 0.0
    return SweepResult("delta", grid, values, meta, value_name="rho00")


def dip_height(params: SystemParams, noise=None) -> float:
    """Steady rho00 at two-photon resonance under Markovian noise."""
    if not params.gamma > 0:
        raise DomainError("gamma must be positive")
    return steady_excited_population(params, None if is_noiseless(noise) else noise, 0.0)


def _dip_point(params, tau2):
    if math.isinf(tau2):
        return dip_height(params, NOISELESS)
    return dip_height(params, NoiseStrength.from_tau2(tau2, params.gamma_e or 1.0))


def dip_curve(params: SystemParams, tau2_grid, jobs: int = 1) -> SweepResult:
    """Dip height for every tau2 in the grid (``inf`` allowed for the noiseless point).

    The map must be strictly decreasing; a violation indicates a solver
    failure and raises :class:`ConsistencyError`.
    """
    grid = check_grid(tau2_grid, "tau2 grid", positive=True)
    values = np.array(map_grid(functools.partial(_dip_point, params), grid, jobs))
    bad = np.flatnonzero(np.diff(values) >= 0)
    if bad.size:
        i = int(bad[0])
        raise ConsistencyError(
            f"dip height not strictly decreasing between tau2={grid[i]:g} "
            f"({values[i]:.6g}) and tau2={grid[i + 1]:g} ({values[i + 1]:.6g})"
        )
    meta = _metadata(params, None)
    meta["noise"] = "markovian sweep over tau2"
    return SweepResult("tau2", grid, values, meta, value_name="rho00_dip")


def estimate_tau2(params: SystemParams, measured_p00: float,
                  bracket=DEFAULT_BRACKET, rel_tol: float = 1e-6) -> float:
    """Invert the monotone map tau2 -> dip height by bisection in log tau2.

    Parameters
    ----------
    params : SystemParams
        Drive and decay parameters of the measurement (detunings ignored).
    measured_p00 : float
        Excited-state population observed at the CPT dip.
    bracket : (float, float)
        Search interval ``(tau2_lo, tau2_hi)`` in us.
    rel_tol : float
        Stop once ``tau2_hi / tau2_lo - 1 <= rel_tol``.

    Returns
    -------
    float
        Estimated tau2 (us).  Multiply out with ``gamma_e`` to get alpha,
        and use :func:`cptlab.noise.model_from_tau2` with a known
        correlation time to recover c0.
    """
    if not rel_tol > 0:
        raise DomainError("rel_tol must be positive")
    if not measured_p00 > 0:
        raise NoiselessMeasurementError(
            f"measured p00 = {measured_p00!r} <= 0: noiseless or unphysical, tau2 unbounded"
        )
    lo, hi = (float(b) for b in bracket)
    if not (0 < lo < hi and math.isfinite(hi)):
        raise DomainError(f"invalid bracket {bracket!r}")
    params = params.replace(delta1=0.0, delta2=0.0)
    h_lo, h_hi = _dip_point(params, lo), _dip_point(params, hi)
    if not (h_hi < measured_p00 < h_lo):
        raise OutOfBracketError(measured_p00, (lo, hi), (h_lo, h_hi))
    while hi / lo - 1.0 > rel_tol:
        mid = math.sqrt(lo * hi)
        if _dip_point(params, mid) > measured_p00:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)
