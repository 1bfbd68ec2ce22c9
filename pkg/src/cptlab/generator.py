"""9x9 generators acting on row-major vectorized density matrices.

Rotating-frame Hamiltonian (basis |0>, |1>, |2>)::

    H = delta2 |1><1| + delta1 |2><2|
        + (omega1/2) (exp(-i phi1) |1><0| + h.c.)
        + (omega2/2) (exp(-i phi2) |2><0| + h.c.)

With ``delta1 = delta``, ``delta2 = phi1 = phi2 = 0`` the equations of
motion reduce to the textbook Lambda-system set, in which the detuning
enters the rho02 and rho12 coherences.  Two-photon resonance is
``delta1 == delta2``.

Vacuum decay uses ``L_i = sqrt(gamma/2) |i><0|`` for i = 1, 2.  The
classical bath adds ``-gamma_e**2 alpha [Z12, [Z12, rho]]``.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DomainError
from .model import SystemParams, vec_index
from .noise import NOISELESS, CorrelationModel, NoiseStrength, alpha_t

# z-eigenvalues of Z12 on (|0>, |1>, |2>)
_Z = (0.0, 1.0, -1.0)

# (row, col, delta) added to one coefficient of the noiseless generator; debug only.
_fault: Optional[tuple] = None


@contextlib.contextmanager
def perturbed_coefficient(row: int, col: int, amount: complex = 1e-3):
    """Temporarily corrupt one entry of :func:`build_noiseless` (fault injection)."""
    global _fault
    previous = _fault
    _fault = (row, col, amount)
    try:
        yield
    finally:
        _fault = previous


def build_noiseless(params: SystemParams) -> np.ndarray:
    """Lindblad generator of the driven Lambda system without classical noise.

    Coefficients are written out equation by equation rather than derived
    from Kronecker products; :func:`cptlab.oracles.lindblad_superoperator`
    is the independent construction used to check them.
    """
    g = params.gamma
    h1, h2 = params.delta2, params.delta1
    a = 0.5 * params.omega1 * np.exp(-1j * params.phi1)  # <1|H|0>
    b = 0.5 * params.omega2 * np.exp(-1j * params.phi2)  # <2|H|0>
    ac, bc = np.conj(a), np.conj(b)

    A = np.zeros((9, 9), dtype=complex)

    def put(i, j, k, l, coef):
        A[vec_index(i, j), vec_index(k, l)] += coef

    # d rho00
    put(0, 0, 0, 0, -g)
    put(0, 0, 1, 0, -1j * ac)
    put(0, 0, 2, 0, -1j * bc)
    put(0, 0, 0, 1, 1j * a)
    put(0, 0, 0, 2, 1j * b)
    # d rho11
    put(1, 1, 0, 0, g / 2)
    put(1, 1, 0, 1, -1j * a)
    put(1, 1, 1, 0, 1j * ac)
    # d rho22
    put(2, 2, 0, 0, g / 2)
    put(2, 2, 0, 2, -1j * b)
    put(2, 2, 2, 0, 1j * bc)
    # d rho01
    put(0, 1, 0, 1, -g / 2 + 1j * h1)
    put(0, 1, 0, 0, 1j * ac)
    put(0, 1, 1, 1, -1j * ac)
    put(0, 1, 2, 1, -1j * bc)
    # d rho10
    put(1, 0, 1, 0, -g / 2 - 1j * h1)
    put(1, 0, 0, 0, -1j * a)
    put(1, 0, 1, 1, 1j * a)
    put(1, 0, 1, 2, 1j * b)
    # d rho02
    put(0, 2, 0, 2, -g / 2 + 1j * h2)
    put(0, 2, 0, 0, 1j * bc)
    put(0, 2, 2, 2, -1j * bc)
    put(0, 2, 1, 2, -1j * ac)
    # d rho20
    put(2, 0, 2, 0, -g / 2 - 1j * h2)
    put(2, 0, 0, 0, -1j * b)
    put(2, 0, 2, 2, 1j * b)
    put(2, 0, 2, 1, 1j * a)
    # d rho12
    put(1, 2, 1, 2, -1j * (h1 - h2))
    put(1, 2, 0, 2, -1j * a)
    put(1, 2, 1, 0, 1j * bc)
    # d rho21
    put(2, 1, 2, 1, 1j * (h1 - h2))
    put(2, 1, 2, 0, 1j * ac)
    put(2, 1, 0, 1, -1j * b)

    if _fault is not None:
        row, col, amount = _fault
        A[row, col] += amount
    return A


def dephasing_pattern(gamma_e: float = 1.0) -> np.ndarray:
    """Diagonal of the classical dissipator per unit alpha: ``-gamma_e**2 (z_i - z_j)**2``."""
    return np.array(
        [-(gamma_e ** 2) * (_Z[i] - _Z[j]) ** 2 for i in range(3) for j in range(3)]
    )


def classical_dissipator(gamma_e: float, alpha_value: float) -> np.ndarray:
    """Superoperator of ``-gamma_e**2 alpha (Z^2 rho + rho Z^2 - 2 Z rho Z)``.

    Populations are untouched; rho01 and rho02 decay at ``gamma_e**2 alpha``
    and rho12 at four times that.
    """
    if alpha_value < 0:
        raise DomainError(f"alpha must be non-negative, got {alpha_value!r}")
    return np.diag(alpha_value * dephasing_pattern(gamma_e)).astype(complex)


NoiseMode = Union[None, NoiseStrength, CorrelationModel]


@dataclass(frozen=True)
class GeneratorSpec:
    """System parameters plus a noise mode.

    ``noise`` is ``None``/``NOISELESS`` (vacuum decay only), a
    :class:`NoiseStrength` (Markovian limit, constant generator) or a
    :class:`CorrelationModel` (time-varying alpha(t) using ``params.gamma_e``).
    A :class:`NoiseStrength` carries its own ``gamma_e``.
    """

    params: SystemParams
    noise: NoiseMode = None

    def __post_init__(self):
        if self.noise is NOISELESS:
            object.__setattr__(self, "noise", None)
        if isinstance(self.noise, CorrelationModel) and not self.params.gamma_e > 0:
            raise DomainError("time-varying noise requires gamma_e > 0")
        if self.noise is not None and not isinstance(self.noise, (NoiseStrength, CorrelationModel)):
            raise DomainError(f"unsupported noise mode {self.noise!r}")

    @property
    def time_varying(self) -> bool:
        return isinstance(self.noise, CorrelationModel)

    def describe(self) -> str:
        if self.noise is None:
            return "noiseless"
        if isinstance(self.noise, NoiseStrength):
            return self.noise.describe()
        m = self.noise
        return f"time-varying({m.kind.value}, c0={m.c0:.17g}, tau_c={m.tau_c:.17g} us)"


def build_full(spec: GeneratorSpec, t: Optional[float] = None) -> np.ndarray:
    """Total generator at time ``t`` (``t`` only needed for time-varying noise)."""
    A = build_noiseless(spec.params)
    noise = spec.noise
    if noise is None:
        return A
    if isinstance(noise, NoiseStrength):
        return A + classical_dissipator(noise.gamma_e, noise.alpha)
    if t is None:
        raise TypeError("build_full needs a time t for time-varying noise")
    return A + classical_dissipator(spec.params.gamma_e, alpha_t(noise, t))
