"""Independent reference constructions used to cross-check the main code paths.

Nothing here is used by the production paths; the self-check and the test
suite compare against these.
"""

from __future__ import annotations

import math

import numpy as np

from .model import Z12, SystemParams

_I3 = np.eye(3, dtype=complex)


def drive_hamiltonian(params: SystemParams) -> np.ndarray:
    """Rotating-frame Hamiltonian as an explicit 3x3 matrix."""
    H = np.zeros((3, 3), dtype=complex)
    H[1, 1] = params.delta2
    H[2, 2] = params.delta1
    H[1, 0] = 0.5 * params.omega1 * np.exp(-1j * params.phi1)
    H[2, 0] = 0.5 * params.omega2 * np.exp(-1j * params.phi2)
    H[0, 1] = np.conj(H[1, 0])
    H[0, 2] = np.conj(H[2, 0])
    return H


def decay_operators(gamma: float) -> list:
    ops = []
    for i in (1, 2):
        L = np.zeros((3, 3), dtype=complex)
        L[i, 0] = math.sqrt(gamma / 2.0)
        ops.append(L)
    return ops


def left(X):
    """Superoperator of rho -> X rho (row-major vectorization)."""
    return np.kron(X, _I3)


def right(X):
    """Superoperator of rho -> rho X (row-major vectorization)."""
    return np.kron(_I3, X.T)


def lindblad_superoperator(H: np.ndarray, lindblad_ops=()) -> np.ndarray:
    """-i[H, .] + sum_k D[L_k] built from Kronecker identities."""
    S = -1j * (left(H) - right(H))
    for L in lindblad_ops:
        LdL = L.conj().T @ L
        S += left(L) @ right(L.conj().T) - 0.5 * (left(LdL) + right(LdL))
    return S


def double_commutator_dissipator(X: np.ndarray, rate: float) -> np.ndarray:
    """Superoperator of rho -> -rate [X, [X, rho]] for Hermitian X."""
    comm = left(X) - right(X)
    return -rate * comm @ comm


def reference_generator(params: SystemParams, dephasing_rate: float = 0.0) -> np.ndarray:
    """Full generator from the Kronecker route; ``dephasing_rate`` is gamma_e**2 * alpha."""
    S = lindblad_superoperator(drive_hamiltonian(params), decay_operators(params.gamma))
    if dephasing_rate:
        S = S + double_commutator_dissipator(Z12, dephasing_rate)
    return S


def superoperator_by_action(channel) -> np.ndarray:
    """Tabulate a linear map on 3x3 matrices column by column."""
    S = np.zeros((9, 9), dtype=complex)
    for col in range(9):
        E = np.zeros(9, dtype=complex)
        E[col] = 1.0
        S[:, col] = np.asarray(channel(E.reshape(3, 3))).reshape(9)
    return S


def rk4(rhs, y0, t_grid, substeps: int = 200) -> np.ndarray:
    """Fixed-step classical Runge-Kutta; debug oracle for the adaptive integrator."""
    t_grid = np.asarray(t_grid, dtype=float)
    y = np.asarray(y0, dtype=complex).copy()
    out = np.empty((len(t_grid), y.size), dtype=complex)
    out[0] = y
    for n in range(1, len(t_grid)):
        t0, t1 = t_grid[n - 1], t_grid[n]
        h = (t1 - t0) / substeps
        t = t0
        for _ in range(substeps):
            k1 = rhs(t, y)
            k2 = rhs(t + h / 2, y + h / 2 * k1)
            k3 = rhs(t + h / 2, y + h / 2 * k2)
            k4 = rhs(t + h, y + h * k3)
            y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            t += h
        out[n] = y
    return out


def null_vector_svd(A: np.ndarray) -> np.ndarray:
    """Right singular vector for the smallest singular value, trace-normalized."""
    _, _, vh = np.linalg.svd(A)
    v = vh[-1].conj()
    return v / (v[0] + v[4] + v[8])
