"""Pure-Python Dormand-Prince 5(4) kernel for rho' = (A0 + alpha(t) diag(d)) rho.

This is the fallback for :mod:`cptlab._dopri_c`; both implement the same
algorithm (same step controller, same dense output) and take the same
arguments.

``mode`` selects alpha(t): 0 for a constant ``alpha_const``, 1 for the
exponential-family running integral ``c0sq * tau_c * (1 - exp(-t/tau_c))``.
Returns ``(ys, status, t_fail, nsteps, nfev)`` with status 0 on success,
1 on step-size underflow and 2 when ``max_steps`` is exhausted.
"""

import math

import numpy as np

C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0])
A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
]
A = [np.array(row) for row in A]
B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84])
# difference between the 5th- and embedded 4th-order weights, 7 stages (FSAL)
E = np.array([-71 / 57600, 0.0, 71 / 16695, -71 / 1920, 17253 / 339200, -22 / 525, 1 / 40])
# continuous extension: y(t + x h) = y + h * K^T P [x, x^2, x^3, x^4]
P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 10.0
ERR_EXP = -1.0 / 5.0


def _rms(x):
    return math.sqrt(float(np.mean(np.abs(x) ** 2)))


def integrate(A0, dvec, mode, alpha_const, c0sq, tau_c, y0, t_eval,
              rtol, atol, max_step=math.inf, max_steps=10_000_000):
    A0 = np.ascontiguousarray(A0, dtype=complex)
    dvec = np.ascontiguousarray(dvec, dtype=float)
    t_eval = np.ascontiguousarray(t_eval, dtype=float)
    y = np.array(y0, dtype=complex)
    n = y.size
    ys = np.empty((t_eval.size, n), dtype=complex)
    nfev = 0

    def alpha(t):
        if mode == 1:
            return -c0sq * tau_c * math.expm1(-t / tau_c)
        return alpha_const

    def f(t, y):
        return A0 @ y + (alpha(t) * dvec) * y

    t = float(t_eval[0])
    t_end = float(t_eval[-1])
    ys[0] = y
    k_out = 1
    if t_eval.size == 1:
        return ys, 0, t, 0, 0

    fy = f(t, y)
    nfev += 1

    # initial step (Hairer, Norsett & Wanner II.4)
    scale = atol + np.abs(y) * rtol
    d0 = _rms(y / scale)
    d1 = _rms(fy / scale)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, t_end - t)
    f1 = f(t + h0, y + h0 * fy)
    nfev += 1
    d2 = _rms((f1 - fy) / scale) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1.0 / 5.0)
    h = min(100 * h0, h1, max_step)

    K = np.empty((7, n), dtype=complex)
    nsteps = 0
    while t < t_end:
        if nsteps >= max_steps:
            return ys[:k_out], 2, t, nsteps, nfev
        min_step = 10 * np.spacing(t)
        h = min(h, max_step)
        if h < min_step:
            return ys[:k_out], 1, t, nsteps, nfev
        rejected = False
        while True:
            if h < min_step:
                return ys[:k_out], 1, t, nsteps, nfev
            t_new = t + h
            if t_new >= t_end:
                t_new = t_end
            step = t_new - t
            K[0] = fy
            for s in range(1, 6):
                dy = step * (A[s] @ K[:s])
                K[s] = f(t + C[s] * step, y + dy)
            y_new = y + step * (B @ K[:6])
            K[6] = f(t_new, y_new)
            nfev += 6
            err = step * (E @ K)
            scale = atol + np.maximum(np.abs(y), np.abs(y_new)) * rtol
            err_norm = _rms(err / scale)
            if err_norm < 1.0:
                if err_norm == 0.0:
                    factor = MAX_FACTOR
                else:
                    factor = min(MAX_FACTOR, SAFETY * err_norm ** ERR_EXP)
                if rejected:
                    factor = min(1.0, factor)
                h = step * factor
                break
            h = step * max(MIN_FACTOR, SAFETY * err_norm ** ERR_EXP)
            rejected = True

        # dense output on (t, t_new]
        if k_out < t_eval.size and t_eval[k_out] <= t_new:
            Q = K.T @ P
            while k_out < t_eval.size and t_eval[k_out] <= t_new:
                if t_eval[k_out] == t_new:
                    ys[k_out] = y_new
                else:
                    x = (t_eval[k_out] - t) / step
                    p = np.array([x, x * x, x ** 3, x ** 4])
                    ys[k_out] = y + step * (Q @ p)
                k_out += 1

        t = t_new
        y = y_new
        fy = K[6].copy()
        nsteps += 1

    return ys, 0, t, nsteps, nfev
