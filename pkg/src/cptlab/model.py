"""Parameters, state representations and special states of the driven Lambda system.

Units: hbar = 1, rates and frequencies are angular frequencies in MHz and
times are in microseconds.  The basis order is fixed as
``(|0>, |1>, |2>) = (excited, ground+, ground-)`` throughout the package.
Density matrices are plain ``(3, 3)`` complex arrays and vectorized states
are length-9 arrays in row-major order ``(rho00, rho01, ..., rho22)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DegenerateDriveError, DomainError

DIM = 3

KET0 = np.array([1.0, 0.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0, 0.0], dtype=complex)
KET2 = np.array([0.0, 0.0, 1.0], dtype=complex)

# Z_12 = |1><1| - |2><2|, the operator through which the classical field couples.
Z12 = np.diag([0.0, 1.0, -1.0]).astype(complex)


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of the driven Lambda system.

    Attributes
    ----------
    gamma : float
        Excited-state decay rate into each ground state (MHz).
    omega1, omega2 : float
        Rabi frequencies of the |1>-|0> and |2>-|0> drives (MHz).
    phi1, phi2 : float
        Drive phases (rad).
    delta1, delta2 : float
        Detunings (MHz).  Two-photon resonance is ``delta1 == delta2``; see
        :mod:`cptlab.generator` for the rotating-frame convention.
    gamma_e : float
        Coupling of the classical field to the ground states.  Field units
        are absorbed: only ``gamma_e * c0`` and ``gamma_e**2 * alpha`` are
        physical.
    """

    gamma: float
    omega1: float
    omega2: float
    phi1: float = 0.0
    phi2: float = 0.0
    delta1: float = 0.0
    delta2: float = 0.0
    gamma_e: float = 1.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        for name in ("gamma", "omega1", "omega2", "gamma_e"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be non-negative, got {getattr(self, name)!r}")

    @property
    def omega(self) -> float:
        """Effective Rabi frequency sqrt(omega1**2 + omega2**2)."""
        return math.hypot(self.omega1, self.omega2)

    @property
    def phi(self) -> float:
        """Relative drive phase phi1 - phi2."""
        return self.phi1 - self.phi2

    @property
    def on_resonance(self) -> bool:
        return self.delta1 == 0.0 and self.delta2 == 0.0

    def replace(self, **changes) -> "SystemParams":
        values = asdict(self)
        values.update(changes)
        return SystemParams(**values)

    def as_dict(self) -> dict:
        return asdict(self)


def mixing_angle(omega1: float, omega2: float) -> float:
    """Return theta with tan(theta) = omega1 / omega2."""
    if omega1 == 0 and omega2 == 0:
        raise DegenerateDriveError("degenerate drive: omega1 = omega2 = 0 leaves theta undefined")
    return math.atan2(omega1, omega2)


def dark_state(omega1: float, omega2: float, phi: float = 0.0) -> np.ndarray:
    """Dark state ``cos(theta)|1> - exp(i phi) sin(theta)|2>``.

    The state has no amplitude on the excited level and depends on the
    Rabi frequencies only through their ratio.
    """
    theta = mixing_angle(omega1, omega2)
    return np.array(
        [0.0, math.cos(theta), -np.exp(1j * phi) * math.sin(theta)], dtype=complex
    )


def projector(ket: np.ndarray) -> np.ndarray:
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Row-major flattening of a 3x3 density matrix (pure reordering)."""
    rho = np.asarray(rho)
    if rho.shape != (DIM, DIM):
        raise DomainError(f"expected a 3x3 matrix, got shape {rho.shape}")
    return rho.reshape(DIM * DIM).copy()


def devectorize(vec: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vectorize`.  Does not check Hermiticity."""
    vec = np.asarray(vec)
    if vec.shape != (DIM * DIM,):
        raise DomainError(f"expected 9 components, got shape {vec.shape}")
    return vec.reshape(DIM, DIM).copy()


def vec_index(i: int, j: int) -> int:
    """Position of rho_ij in the vectorized state."""
    return DIM * i + j


@dataclass(frozen=True)
class DensityReport:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    tol: float

    @property
    def hermitian(self) -> bool:
        return self.hermiticity_defect <= self.tol

    @property
    def unit_trace(self) -> bool:
        return self.trace_defect <= self.tol

    @property
    def positive(self) -> bool:
        return self.min_eigenvalue >= -self.tol

    @property
    def ok(self) -> bool:
        return self.hermitian and self.unit_trace and self.positive

    def __bool__(self) -> bool:
        return self.ok


def validate_density(rho: np.ndarray, tol: float = 1e-10) -> DensityReport:
    """Report Hermiticity, trace and positivity defects of ``rho``.

    The smallest eigenvalue is taken from the Hermitian part of ``rho`` so
    that it stays real when the matrix itself is slightly non-Hermitian.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    rho = np.asarray(rho, dtype=complex)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    trace_defect = float(abs(np.trace(rho) - 1.0))
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    return DensityReport(herm, trace_defect, min_eig, tol)


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """0.5 * ||rho - sigma||_1 for Hermitian arguments."""
    diff = np.asarray(rho, dtype=complex) - np.asarray(sigma, dtype=complex)
    diff = 0.5 * (diff + diff.conj().T)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


def basis_state(label) -> np.ndarray:
    """Density matrix for a named initial preparation.

    ``label`` is one of ``0``, ``1``, ``2`` (basis projectors) or
    ``"mixed"`` (maximally mixed ground manifold).
    """
    key = str(label).strip().lower()
    if key in ("0", "1", "2"):
        return projector(np.eye(DIM, dtype=complex)[int(key)])
    if key == "mixed":
        return np.diag([0.0, 0.5, 0.5]).astype(complex)
    raise DomainError(f"unknown initial state {label!r}")
