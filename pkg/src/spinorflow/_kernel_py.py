"""Pure-Python fallback for the fixed-step RK4 kernel.

Same contract as the compiled extension; scalar arithmetic on unpacked
floats keeps the per-step cost tolerable when no C compiler is available.
"""

from __future__ import annotations

_GUARD = 1e12


def _rhs(y, beta):
    uu, ul, un, ll, ln, nn = y[0], y[1], y[2], y[3], y[4], y[5]
    out = [0.0] * 15
    out[0] = beta * (uu * uu + ul * ul + un * un)
    out[3] = beta * (ll * uu - ul * ul)
    out[4] = beta * (ln * uu - ul * un)
    out[5] = beta * (nn * uu - un * un)
    for j in range(3):
        a, b, c = y[6 + j], y[9 + j], y[12 + j]
        out[6 + j] = -beta * (uu * a + ul * b + un * c)
        out[9 + j] = -beta * (ul * a + ll * b + ln * c)
        out[12 + j] = -beta * (un * a + ln * b + nn * c)
    return out


def rk4_path(y0, beta, t0, dt, n_steps, record_every, out_t, out_y):
    """Mirror of the compiled kernel; see _kernel.pyx for the contract."""
    y = [float(v) for v in y0]
    nrec = 0
    out_t[nrec] = t0
    out_y[nrec, :] = y
    nrec += 1
    truncated = False
    t = t0
    step = -1

    for step in range(n_steps):
        k1 = _rhs(y, beta)
        k2 = _rhs([y[i] + 0.5 * dt * k1[i] for i in range(15)], beta)
        k3 = _rhs([y[i] + 0.5 * dt * k2[i] for i in range(15)], beta)
        k4 = _rhs([y[i] + dt * k3[i] for i in range(15)], beta)
        y = [y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) for i in range(15)]
        t = t0 + (step + 1) * dt

        if max(abs(y[0]), abs(y[3]), abs(y[4]), abs(y[5])) > _GUARD:
            truncated = True
            break

        if (step + 1) % record_every == 0 or step == n_steps - 1:
            out_t[nrec] = t
            out_y[nrec, :] = y
            nrec += 1

    if truncated:
        out_t[nrec] = t
        out_y[nrec, :] = y
        nrec += 1

    return nrec, step + 1, truncated
