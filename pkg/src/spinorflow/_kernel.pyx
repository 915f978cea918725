# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-step RK4 kernel for the constant-lapse flow ODE.

State layout: y[0:6] = (uu, ul, un, ll, ln, nn), y[6:15] = U row-major.
"""

from libc.math cimport fabs

DEF NDIM = 15
DEF GUARD = 1e12


cdef inline void _rhs(double* y, double beta, double* dy) nogil:
    cdef double uu = y[0], ul = y[1], un = y[2]
    cdef double ll = y[3], ln = y[4], nn = y[5]
    cdef int j
    dy[0] = beta * (uu * uu + ul * ul + un * un)
    dy[1] = 0.0
    dy[2] = 0.0
    dy[3] = beta * (ll * uu - ul * ul)
    dy[4] = beta * (ln * uu - ul * un)
    dy[5] = beta * (nn * uu - un * un)
    # dU = -beta * Theta @ U with Theta symmetric from the first six entries
    for j in range(3):
        dy[6 + j] = -beta * (uu * y[6 + j] + ul * y[9 + j] + un * y[12 + j])
        dy[9 + j] = -beta * (ul * y[6 + j] + ll * y[9 + j] + ln * y[12 + j])
        dy[12 + j] = -beta * (un * y[6 + j] + ln * y[9 + j] + nn * y[12 + j])


def rk4_path(double[::1] y0, double beta, double t0, double dt, long n_steps,
             long record_every, double[::1] out_t, double[:, ::1] out_y):
    """Integrate n_steps of RK4, recording every record_every steps plus the
    endpoints.  Returns (n_recorded, steps_done, truncated)."""
    cdef double y[NDIM]
    cdef double k1[NDIM]
    cdef double k2[NDIM]
    cdef double k3[NDIM]
    cdef double k4[NDIM]
    cdef double tmp[NDIM]
    cdef long i, nrec = 0
    cdef long step = -1
    cdef bint truncated = False
    cdef double t = t0

    for i in range(NDIM):
        y[i] = y0[i]

    out_t[nrec] = t
    for i in range(NDIM):
        out_y[nrec, i] = y[i]
    nrec += 1

    for step in range(n_steps):
        _rhs(y, beta, k1)
        for i in range(NDIM):
            tmp[i] = y[i] + 0.5 * dt * k1[i]
        _rhs(tmp, beta, k2)
        for i in range(NDIM):
            tmp[i] = y[i] + 0.5 * dt * k2[i]
        _rhs(tmp, beta, k3)
        for i in range(NDIM):
            tmp[i] = y[i] + dt * k3[i]
        _rhs(tmp, beta, k4)
        for i in range(NDIM):
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        t = t0 + (step + 1) * dt

        if (fabs(y[0]) > GUARD or fabs(y[3]) > GUARD or fabs(y[4]) > GUARD
                or fabs(y[5]) > GUARD):
            truncated = True
            break

        if (step + 1) % record_every == 0 or step == n_steps - 1 or truncated:
            out_t[nrec] = t
            for i in range(NDIM):
                out_y[nrec, i] = y[i]
            nrec += 1

    if truncated:
        out_t[nrec] = t
        for i in range(NDIM):
            out_y[nrec, i] = y[i]
        nrec += 1

    return nrec, step + 1, truncated
