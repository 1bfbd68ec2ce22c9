# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Dormand-Prince 5(4) kernel; same contract as cptlab._dopri.integrate."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, expm1, fmin, fmax, pow, nextafter, INFINITY

cnp.import_array()

DEF NSTAGE = 7
DEF NMAX = 16

cdef double SAFETY = 0.9
cdef double MIN_FACTOR = 0.2
cdef double MAX_FACTOR = 10.0
cdef double ERR_EXP = -1.0 / 5.0

cdef double C[6]
C[:] = [0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0]

cdef double AA[6][5]
AA[0][:] = [0.0, 0.0, 0.0, 0.0, 0.0]
AA[1][:] = [1.0 / 5, 0.0, 0.0, 0.0, 0.0]
AA[2][:] = [3.0 / 40, 9.0 / 40, 0.0, 0.0, 0.0]
AA[3][:] = [44.0 / 45, -56.0 / 15, 32.0 / 9, 0.0, 0.0]
AA[4][:] = [19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0.0]
AA[5][:] = [9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656]

cdef double B[6]
B[:] = [35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84]

cdef double E[7]
E[:] = [-71.0 / 57600, 0.0, 71.0 / 16695, -71.0 / 1920, 17253.0 / 339200, -22.0 / 525, 1.0 / 40]

cdef double P[7][4]
P[0][:] = [1.0, -8048581381.0 / 2820520608, 8663915743.0 / 2820520608, -12715105075.0 / 11282082432]
P[1][:] = [0.0, 0.0, 0.0, 0.0]
P[2][:] = [0.0, 131558114200.0 / 32700410799, -68118460800.0 / 10900136933, 87487479700.0 / 32700410799]
P[3][:] = [0.0, -1754552775.0 / 470086768, 14199869525.0 / 1410260304, -10690763975.0 / 1880347072]
P[4][:] = [0.0, 127303824393.0 / 49829197408, -318862633887.0 / 49829197408, 701980252875.0 / 199316789632]
P[5][:] = [0.0, -282668133.0 / 205662961, 2019193451.0 / 616988883, -1453857185.0 / 822651844]
P[6][:] = [0.0, 40617522.0 / 29380423, -110615467.0 / 29380423, 69997945.0 / 29380423]


cdef inline double cabs(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef struct Rhs:
    int n
    int mode
    double alpha_const
    double c0sq
    double tau_c


cdef inline double alpha_at(Rhs* r, double t) nogil:
    if r.mode == 1:
        return -r.c0sq * r.tau_c * expm1(-t / r.tau_c)
    return r.alpha_const


cdef inline void rhs(Rhs* r, const double complex[:, ::1] A0, const double[::1] d,
                     double t, double complex* y, double complex* out) nogil:
    cdef int i, j
    cdef double a = alpha_at(r, t)
    cdef double complex acc
    for i in range(r.n):
        acc = a * d[i] * y[i]
        for j in range(r.n):
            acc = acc + A0[i, j] * y[j]
        out[i] = acc


cdef inline double rms_scaled(int n, double complex* v, double* scale) nogil:
    cdef double s = 0.0, q
    cdef int i
    for i in range(n):
        q = cabs(v[i]) / scale[i]
        s += q * q
    return sqrt(s / n)


def integrate(A0, dvec, int mode, double alpha_const, double c0sq, double tau_c,
              y0, t_eval, double rtol, double atol, double max_step=INFINITY,
              long max_steps=10_000_000):
    cdef const double complex[:, ::1] A = np.ascontiguousarray(A0, dtype=np.complex128)
    cdef const double[::1] d = np.ascontiguousarray(dvec, dtype=np.float64)
    cdef const double[::1] te = np.ascontiguousarray(t_eval, dtype=np.float64)
    cdef int n = A.shape[0]
    if n > NMAX:
        raise ValueError("system too large for the compiled kernel")
    cdef Py_ssize_t n_eval = te.shape[0]
    out_arr = np.empty((n_eval, n), dtype=np.complex128)
    cdef double complex[:, ::1] ys = out_arr

    cdef Rhs r
    r.n = n
    r.mode = mode
    r.alpha_const = alpha_const
    r.c0sq = c0sq
    r.tau_c = tau_c

    cdef double complex y[NMAX]
    cdef double complex y_new[NMAX]
    cdef double complex tmp[NMAX]
    cdef double complex err[NMAX]
    cdef double complex K[NSTAGE][NMAX]
    cdef double scale[NMAX]
    cdef double complex acc
    cdef int i, s, j, status = 0
    cdef long nsteps = 0, nfev = 0
    cdef Py_ssize_t k_out = 1
    cdef double t, t_end, t_new, h, step, h0, h1, d0, d1, d2, err_norm, factor, min_step, x
    cdef double px[4]
    cdef bint rejected

    for i in range(n):
        y[i] = y0[i]
        ys[0, i] = y[i]
    t = te[0]
    t_end = te[n_eval - 1]
    if n_eval == 1:
        return out_arr, 0, t, 0, 0

    with nogil:
        rhs(&r, A, d, t, y, K[0])
        nfev += 1
        for i in range(n):
            scale[i] = atol + cabs(y[i]) * rtol
        d0 = rms_scaled(n, y, scale)
        d1 = rms_scaled(n, K[0], scale)
        if d0 < 1e-5 or d1 < 1e-5:
            h0 = 1e-6
        else:
            h0 = 0.01 * d0 / d1
        h0 = fmin(h0, t_end - t)
        for i in range(n):
            tmp[i] = y[i] + h0 * K[0][i]
        rhs(&r, A, d, t + h0, tmp, K[1])
        nfev += 1
        for i in range(n):
            err[i] = K[1][i] - K[0][i]
        d2 = rms_scaled(n, err, scale) / h0
        if fmax(d1, d2) <= 1e-15:
            h1 = fmax(1e-6, h0 * 1e-3)
        else:
            h1 = pow(0.01 / fmax(d1, d2), 1.0 / 5.0)
        h = fmin(fmin(100 * h0, h1), max_step)

        while t < t_end:
            if nsteps >= max_steps:
                status = 2
                break
            min_step = 10 * (nextafter(t, INFINITY) - t)
            h = fmin(h, max_step)
            rejected = False
            while True:
                if h < min_step:
                    status = 1
                    break
                t_new = t + h
                if t_new >= t_end:
                    t_new = t_end
                step = t_new - t
                for s in range(1, 6):
                    for i in range(n):
                        acc = 0
                        for j in range(s):
                            acc = acc + AA[s][j] * K[j][i]
                        tmp[i] = y[i] + step * acc
                    rhs(&r, A, d, t + C[s] * step, tmp, K[s])
                for i in range(n):
                    acc = 0
                    for j in range(6):
                        acc = acc + B[j] * K[j][i]
                    y_new[i] = y[i] + step * acc
                rhs(&r, A, d, t_new, y_new, K[6])
                nfev += 6
                for i in range(n):
                    acc = 0
                    for j in range(7):
                        acc = acc + E[j] * K[j][i]
                    err[i] = step * acc
                    scale[i] = atol + fmax(cabs(y[i]), cabs(y_new[i])) * rtol
                err_norm = rms_scaled(n, err, scale)
                if err_norm < 1.0:
                    if err_norm == 0.0:
                        factor = MAX_FACTOR
                    else:
                        factor = fmin(MAX_FACTOR, SAFETY * pow(err_norm, ERR_EXP))
                    if rejected:
                        factor = fmin(1.0, factor)
                    h = step * factor
                    break
                h = step * fmax(MIN_FACTOR, SAFETY * pow(err_norm, ERR_EXP))
                rejected = True
            if status != 0:
                break

            while k_out < n_eval and te[k_out] <= t_new:
                if te[k_out] == t_new:
                    for i in range(n):
                        ys[k_out, i] = y_new[i]
                else:
                    x = (te[k_out] - t) / step
                    px[0] = x
                    px[1] = x * x
                    px[2] = px[1] * x
                    px[3] = px[2] * x
                    for i in range(n):
                        acc = 0
                        for j in range(7):
                            acc = acc + K[j][i] * (P[j][0] * px[0] + P[j][1] * px[1]
                                                   + P[j][2] * px[2] + P[j][3] * px[3])
                        ys[k_out, i] = y[i] + step * acc
                k_out += 1

            t = t_new
            for i in range(n):
                y[i] = y_new[i]
                K[0][i] = K[6][i]
            nsteps += 1

    return out_arr[:k_out], status, t, nsteps, nfev
