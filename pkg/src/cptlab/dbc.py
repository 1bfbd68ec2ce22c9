"""Dark / bright / common basis of the resonantly driven Lambda system.

In this basis the drive couples only bright <-> common with strength
Omega/2, while the classical field splits into a dephasing part
(proportional to cos 2theta) and a dark-bright mixing part (proportional to
sin 2theta).  Everything here is evaluated on two-photon resonance, where
the basis change is time independent, and for a frozen field value b0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .model import KET0, KET1, KET2, Z12, SystemParams, mixing_angle
from .oracles import decay_operators, double_commutator_dissipator, lindblad_superoperator


@dataclass(frozen=True)
class DbcBasis:
    c: np.ndarray
    d: np.ndarray
    b: np.ndarray
    theta: float
    phi1: float
    phi2: float

    @property
    def matrix(self) -> np.ndarray:
        """Unitary whose columns are (c, d, b) in the lab basis."""
        return np.column_stack([self.c, self.d, self.b])

    def to_dbc(self, op: np.ndarray) -> np.ndarray:
        W = self.matrix
        return W.conj().T @ op @ W

    def to_lab(self, op: np.ndarray) -> np.ndarray:
        W = self.matrix
        return W @ op @ W.conj().T


def basis_from_angles(theta: float, phi1: float = 0.0, phi2: float = 0.0) -> DbcBasis:
    ct, st = math.cos(theta), math.sin(theta)
    d = np.exp(1j * phi2) * ct * KET1 - np.exp(1j * phi1) * st * KET2
    b = np.exp(-1j * phi1) * st * KET1 + np.exp(-1j * phi2) * ct * KET2
    return DbcBasis(KET0.copy(), d, b, theta, phi1, phi2)


def dbc_basis(params: SystemParams) -> DbcBasis:
    return basis_from_angles(mixing_angle(params.omega1, params.omega2), params.phi1, params.phi2)


@dataclass(frozen=True)
class EffectiveHamiltonian:
    matrix: np.ndarray  # (c, d, b) order
    terms: dict
    basis: DbcBasis


def effective_hamiltonian(params: SystemParams, b_value: float = 0.0) -> EffectiveHamiltonian:
    """H_eff in the (c, d, b) basis from its closed form.

    Terms: ``dephasing`` ``-gamma_e cos2theta b0 (P_dd - P_bb)``, ``coupling``
    ``-gamma_e sin2theta b0 (e^{-i(phi1+phi2)} P_db + h.c.)`` and ``drive``
    ``(Omega/2)(P_bc + P_cb)``.
    """
    basis = dbc_basis(params)
    th = basis.theta
    ge = params.gamma_e
    phase = np.exp(-1j * (params.phi1 + params.phi2))
    C, D, B = 0, 1, 2

    dephasing = np.zeros((3, 3), dtype=complex)
    dephasing[D, D] = -ge * math.cos(2 * th) * b_value
    dephasing[B, B] = ge * math.cos(2 * th) * b_value

    coupling = np.zeros((3, 3), dtype=complex)
    coupling[D, B] = -ge * math.sin(2 * th) * b_value * phase
    coupling[B, D] = np.conj(coupling[D, B])

    drive = np.zeros((3, 3), dtype=complex)
    drive[B, C] = drive[C, B] = 0.5 * params.omega

    terms = {"dephasing": dephasing, "coupling": coupling, "drive": drive}
    return EffectiveHamiltonian(dephasing + coupling + drive, terms, basis)


def lab_hamiltonian(params: SystemParams, b_value: float = 0.0) -> np.ndarray:
    """Resonant rotating-frame drive plus the frozen field term ``-gamma_e b0 Z12``."""
    H = -params.gamma_e * b_value * Z12
    H[1, 0] += 0.5 * params.omega1 * np.exp(-1j * params.phi1)
    H[2, 0] += 0.5 * params.omega2 * np.exp(-1j * params.phi2)
    H[0, 1] = np.conj(H[1, 0])
    H[0, 2] = np.conj(H[2, 0])
    return H


def equivalence_defect(params: SystemParams, b_value: float) -> float:
    """Max entry of ``W^dag H_lab W - H_eff``."""
    heff = effective_hamiltonian(params, b_value)
    return float(np.max(np.abs(heff.basis.to_dbc(lab_hamiltonian(params, b_value)) - heff.matrix)))


def verify_decomposition(theta: float, phi1: float = 0.0, phi2: float = 0.0) -> float:
    """Max defect of the projector identity for P11 - P22 in the dbc basis."""
    basis = basis_from_angles(theta, phi1, phi2)
    d, b = basis.d, basis.b

    def P(u, v):
        return np.outer(u, v.conj())

    phase = np.exp(-1j * (phi1 + phi2))
    rhs = math.cos(2 * theta) * (P(d, d) - P(b, b)) + math.sin(2 * theta) * (
        phase * P(d, b) + np.conj(phase) * P(b, d)
    )
    lhs = np.outer(KET1, KET1) - np.outer(KET2, KET2)
    return float(np.max(np.abs(lhs - rhs)))


def coupling_strengths(theta: float, gamma_e: float = 1.0) -> tuple:
    """(dephasing, mixing) magnitudes ``gamma_e |cos 2theta|`` and ``gamma_e |sin 2theta|``."""
    return gamma_e * abs(math.cos(2 * theta)), gamma_e * abs(math.sin(2 * theta))


def generator_from_dbc(params: SystemParams, dephasing_rate: float = 0.0) -> np.ndarray:
    """Resonant lab-frame generator rebuilt from H_eff.

    The drive is read off ``H_eff(b0 = 0)`` and the noise operator off the
    linear response of ``H_eff`` to ``b0``, both mapped back to the lab
    frame; dissipators are then assembled with Kronecker products.  This
    path shares no code with :func:`cptlab.generator.build_noiseless`.
    """
    if not params.on_resonance:
        raise PreconditionError("the dbc construction assumes two-photon resonance with zero detunings")
    if params.gamma_e == 0:
        params = params.replace(gamma_e=1.0)
    h0 = effective_hamiltonian(params, 0.0)
    h1 = effective_hamiltonian(params, 1.0)
    H_drive = h0.basis.to_lab(h0.matrix)
    S = lindblad_superoperator(H_drive, decay_operators(params.gamma))
    if dephasing_rate:
        noise_op = h1.basis.to_lab(h1.matrix - h0.matrix) / params.gamma_e
        S = S + double_commutator_dissipator(noise_op, dephasing_rate)
    return S
