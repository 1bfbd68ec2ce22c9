"""Classical dephasing bath: correlation function, spectrum and noise strength.

Only the exponential (Ornstein-Uhlenbeck) family is built in.  The field
``b(t)`` is zero-mean and stationary; its unit is absorbed into ``gamma_e``
so that ``gamma_e * c0`` (MHz) and ``gamma_e**2 * alpha`` (MHz) carry the
physics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError


class CorrelationKind(enum.Enum):
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class CorrelationModel:
    """Two-point correlation ``C(tau) = c0**2 * exp(-|tau| / tau_c)``."""

    c0: float
    tau_c: float
    kind: CorrelationKind = CorrelationKind.EXPONENTIAL

    def __post_init__(self):
        if not (math.isfinite(self.c0) and self.c0 >= 0):
            raise DomainError(f"c0 must be finite and non-negative, got {self.c0!r}")
        if not (math.isfinite(self.tau_c) and self.tau_c > 0):
            raise DomainError(f"tau_c must be finite and positive, got {self.tau_c!r}")

    @property
    def alpha(self) -> float:
        """Markovian strength, the integral of C over [0, inf)."""
        return self.c0 ** 2 * self.tau_c


@dataclass(frozen=True)
class NoiseStrength:
    """Markovian noise strength ``alpha`` together with the coupling it was made with."""

    alpha: float
    gamma_e: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(
                f"alpha must be finite and positive, got {self.alpha!r}; use NOISELESS for alpha = 0"
            )
        if not (math.isfinite(self.gamma_e) and self.gamma_e > 0):
            raise DomainError(f"gamma_e must be finite and positive, got {self.gamma_e!r}")

    @property
    def rate(self) -> float:
        """Dephasing rate gamma_e**2 * alpha (MHz)."""
        return self.gamma_e ** 2 * self.alpha

    @property
    def tau2(self) -> float:
        return 1.0 / (self.gamma_e ** 2 * self.alpha)

    @classmethod
    def from_tau2(cls, tau2: float, gamma_e: float = 1.0) -> "NoiseStrength":
        if not (math.isfinite(tau2) and tau2 > 0):
            raise DomainError(f"tau2 must be finite and positive, got {tau2!r}")
        if not gamma_e > 0:
            raise DomainError("gamma_e must be positive")
        return cls(alpha=1.0 / (gamma_e ** 2 * tau2), gamma_e=gamma_e)

    def describe(self) -> str:
        return f"markovian(tau2={self.tau2:.17g} us, alpha={self.alpha:.17g}, gamma_e={self.gamma_e:.17g})"


class _Noiseless:
    """Marker for the tau2 -> infinity limit (no classical bath)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NOISELESS"

    def __reduce__(self):
        return (_Noiseless, ())

    def describe(self) -> str:
        return "noiseless"


NOISELESS = _Noiseless()


def is_noiseless(noise) -> bool:
    return noise is None or noise is NOISELESS


def correlation(model: CorrelationModel, tau: float) -> float:
    """C(|tau|)."""
    return model.c0 ** 2 * math.exp(-abs(tau) / model.tau_c)


def spectral_density(model: CorrelationModel, omega: float) -> float:
    """S(omega) = (1/2pi) * integral of C(tau) exp(-i omega tau); a Lorentzian here."""
    x = omega * model.tau_c
    return model.c0 ** 2 * model.tau_c / (math.pi * (1.0 + x * x))


def alpha_t(model: CorrelationModel, t: float) -> float:
    """Running strength alpha(t) = integral of C over [0, t]."""
    if t < 0:
        raise DomainError(f"alpha(t) is defined for t >= 0, got {t!r}")
    return model.c0 ** 2 * model.tau_c * -math.expm1(-t / model.tau_c)


def markov_strength(model: CorrelationModel, gamma_e: float):
    """Long-time strength of ``model``; ``NOISELESS`` when ``c0 == 0``."""
    if not gamma_e > 0:
        raise DomainError(f"gamma_e must be positive, got {gamma_e!r}")
    if model.c0 == 0:
        return NOISELESS
    return NoiseStrength(alpha=model.alpha, gamma_e=gamma_e)


def model_from_tau2(tau2: float, tau_c: float, gamma_e: float) -> CorrelationModel:
    """Exponential model with correlation time ``tau_c`` whose Markovian limit has ``tau2``."""
    for name, value in (("tau2", tau2), ("tau_c", tau_c), ("gamma_e", gamma_e)):
        if not (math.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be finite and positive, got {value!r}")
    return CorrelationModel(c0=1.0 / math.sqrt(gamma_e ** 2 * tau2 * tau_c), tau_c=tau_c)
