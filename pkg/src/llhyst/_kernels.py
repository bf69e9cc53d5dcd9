"""Fixed-step RK4 inner loops, JIT-compiled when numba is available.

The long low-frequency sweeps take tens of millions of steps, so the hot
loops are written as scalar numba kernels.  Without numba the same functions
run as plain Python: correct, but only usable for short runs.

All kernels advance the state in place, record every ``stride``-th step into
preallocated buffers (slot 0 holds the initial state), and return the record
index of the first non-finite sample (-1 if the run stayed finite).
"""

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def deco(fn):
            return fn

        return deco


@njit(cache=True, nogil=True)
def _forcing(amp, omega, cos_shape, t):
    if amp == 0.0:
        return 0.0
    if cos_shape:
        return amp * np.cos(omega * t)
    return amp * np.sin(omega * t)


@njit(cache=True, nogil=True)
def ode_rk4(c, k, cubic, y, v, amp, omega, cos_shape, t0, dt, n_steps, stride,
            y_rec, v_rec):
    """Damped second-order oscillator, linear or cubic restoring term."""
    y_rec[0] = y
    v_rec[0] = v
    for i in range(n_steps):
        t = t0 + i * dt
        u1 = _forcing(amp, omega, cos_shape, t)
        u2 = _forcing(amp, omega, cos_shape, t + 0.5 * dt)
        u4 = _forcing(amp, omega, cos_shape, t + dt)

        if cubic:
            r1 = k * (y - y * y * y)
        else:
            r1 = k * y
        a1 = v
        b1 = -c * v - r1 + u1

        ys = y + 0.5 * dt * a1
        vs = v + 0.5 * dt * b1
        if cubic:
            r2 = k * (ys - ys * ys * ys)
        else:
            r2 = k * ys
        a2 = vs
        b2 = -c * vs - r2 + u2

        ys = y + 0.5 * dt * a2
        vs = v + 0.5 * dt * b2
        if cubic:
            r3 = k * (ys - ys * ys * ys)
        else:
            r3 = k * ys
        a3 = vs
        b3 = -c * vs - r3 + u2

        ys = y + dt * a3
        vs = v + dt * b3
        if cubic:
            r4 = k * (ys - ys * ys * ys)
        else:
            r4 = k * ys
        a4 = vs
        b4 = -c * vs - r4 + u4

        y = y + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        v = v + dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)

        if (i + 1) % stride == 0:
            r = (i + 1) // stride
            y_rec[r] = y
            v_rec[r] = v
            if not (np.isfinite(y) and np.isfinite(v)):
                return r
    return -1


@njit(cache=True, nogil=True)
def ll_rhs_kernel(m, nu, h, u0, u1, u2, semilinear, out):
    """Landau-Lifshitz right-hand side with mirror-ghost Neumann ends.

    ``semilinear`` selects nu*m_xx + m x m_xx + nu*|m_x|^2 m instead of the
    cross form m x m_xx - nu * m x (m x m_xx).  The uniform applied field
    (u0, u1, u2) is added at every node.
    """
    n = m.shape[0]
    ih2 = 1.0 / (h * h)
    for j in range(n):
        jm = 1 if j == 0 else j - 1
        jp = n - 2 if j == n - 1 else j + 1
        l0 = (m[jm, 0] - 2.0 * m[j, 0] + m[jp, 0]) * ih2
        l1 = (m[jm, 1] - 2.0 * m[j, 1] + m[jp, 1]) * ih2
        l2 = (m[jm, 2] - 2.0 * m[j, 2] + m[jp, 2]) * ih2
        m0 = m[j, 0]
        m1 = m[j, 1]
        m2 = m[j, 2]
        c0 = m1 * l2 - m2 * l1
        c1 = m2 * l0 - m0 * l2
        c2 = m0 * l1 - m1 * l0
        if semilinear:
            # end stencils grouped as differences: exact zero on constants
            if j == 0:
                g0 = (4.0 * (m[1, 0] - m[0, 0]) + (m[0, 0] - m[2, 0])) / (2.0 * h)
                g1 = (4.0 * (m[1, 1] - m[0, 1]) + (m[0, 1] - m[2, 1])) / (2.0 * h)
                g2 = (4.0 * (m[1, 2] - m[0, 2]) + (m[0, 2] - m[2, 2])) / (2.0 * h)
            elif j == n - 1:
                g0 = (4.0 * (m[n - 1, 0] - m[n - 2, 0]) + (m[n - 3, 0] - m[n - 1, 0])) / (2.0 * h)
                g1 = (4.0 * (m[n - 1, 1] - m[n - 2, 1]) + (m[n - 3, 1] - m[n - 1, 1])) / (2.0 * h)
                g2 = (4.0 * (m[n - 1, 2] - m[n - 2, 2]) + (m[n - 3, 2] - m[n - 1, 2])) / (2.0 * h)
            else:
                g0 = (m[j + 1, 0] - m[j - 1, 0]) / (2.0 * h)
                g1 = (m[j + 1, 1] - m[j - 1, 1]) / (2.0 * h)
                g2 = (m[j + 1, 2] - m[j - 1, 2]) / (2.0 * h)
            gg = g0 * g0 + g1 * g1 + g2 * g2
            out[j, 0] = nu * l0 + c0 + nu * gg * m0 + u0
            out[j, 1] = nu * l1 + c1 + nu * gg * m1 + u1
            out[j, 2] = nu * l2 + c2 + nu * gg * m2 + u2
        else:
            d0 = m1 * c2 - m2 * c1
            d1 = m2 * c0 - m0 * c2
            d2 = m0 * c1 - m1 * c0
            out[j, 0] = c0 - nu * d0 + u0
            out[j, 1] = c1 - nu * d1 + u1
            out[j, 2] = c2 - nu * d2 + u2


@njit(cache=True, nogil=True)
def ll_rk4(m, nu, h, amp, omega, cos_shape, ch, t0, dt, n_steps, stride,
           project, semilinear, probe_node, probe_comp, y_rec):
    """Projected (optional) RK4 for the nonlinear Landau-Lifshitz field.

    ``ch`` is the 0-based forced component, -1 for no forcing.  Returns
    ``(first_bad_record, max_drift)`` where ``max_drift`` is the largest
    per-node deviation of the norm from 1 observed after a raw RK4 step,
    before any renormalization.
    """
    n = m.shape[0]
    k1 = np.empty((n, 3))
    k2 = np.empty((n, 3))
    k3 = np.empty((n, 3))
    k4 = np.empty((n, 3))
    tmp = np.empty((n, 3))
    max_drift = 0.0
    y_rec[0] = m[probe_node, probe_comp]
    for i in range(n_steps):
        t = t0 + i * dt
        ua = _forcing(amp, omega, cos_shape, t)
        ub = _forcing(amp, omega, cos_shape, t + 0.5 * dt)
        uc = _forcing(amp, omega, cos_shape, t + dt)
        ua0 = ua if ch == 0 else 0.0
        ua1 = ua if ch == 1 else 0.0
        ua2 = ua if ch == 2 else 0.0
        ub0 = ub if ch == 0 else 0.0
        ub1 = ub if ch == 1 else 0.0
        ub2 = ub if ch == 2 else 0.0
        uc0 = uc if ch == 0 else 0.0
        uc1 = uc if ch == 1 else 0.0
        uc2 = uc if ch == 2 else 0.0

        ll_rhs_kernel(m, nu, h, ua0, ua1, ua2, semilinear, k1)
        for j in range(n):
            for q in range(3):
                tmp[j, q] = m[j, q] + 0.5 * dt * k1[j, q]
        ll_rhs_kernel(tmp, nu, h, ub0, ub1, ub2, semilinear, k2)
        for j in range(n):
            for q in range(3):
                tmp[j, q] = m[j, q] + 0.5 * dt * k2[j, q]
        ll_rhs_kernel(tmp, nu, h, ub0, ub1, ub2, semilinear, k3)
        for j in range(n):
            for q in range(3):
                tmp[j, q] = m[j, q] + dt * k3[j, q]
        ll_rhs_kernel(tmp, nu, h, uc0, uc1, uc2, semilinear, k4)
        for j in range(n):
            for q in range(3):
                m[j, q] = m[j, q] + dt / 6.0 * (
                    k1[j, q] + 2.0 * k2[j, q] + 2.0 * k3[j, q] + k4[j, q]
                )

        for j in range(n):
            nr = np.sqrt(m[j, 0] ** 2 + m[j, 1] ** 2 + m[j, 2] ** 2)
            dev = abs(nr - 1.0)
            if dev > max_drift:
                max_drift = dev
            if project:
                m[j, 0] /= nr
                m[j, 1] /= nr
                m[j, 2] /= nr

        if (i + 1) % stride == 0:
            r = (i + 1) // stride
            y_rec[r] = m[probe_node, probe_comp]
            ok = True
            for j in range(n):
                for q in range(3):
                    if not np.isfinite(m[j, q]):
                        ok = False
            if not ok:
                return r, max_drift
    return -1, max_drift


@njit(cache=True, nogil=True)
def lin_rhs_kernel(z, nu, a0, a1, a2, h, u0, u1, u2, out):
    """Linearized operator nu*z_xx + a x z_xx plus the uniform input."""
    n = z.shape[0]
    ih2 = 1.0 / (h * h)
    for j in range(n):
        jm = 1 if j == 0 else j - 1
        jp = n - 2 if j == n - 1 else j + 1
        l0 = (z[jm, 0] - 2.0 * z[j, 0] + z[jp, 0]) * ih2
        l1 = (z[jm, 1] - 2.0 * z[j, 1] + z[jp, 1]) * ih2
        l2 = (z[jm, 2] - 2.0 * z[j, 2] + z[jp, 2]) * ih2
        out[j, 0] = nu * l0 + (a1 * l2 - a2 * l1) + u0
        out[j, 1] = nu * l1 + (a2 * l0 - a0 * l2) + u1
        out[j, 2] = nu * l2 + (a0 * l1 - a1 * l0) + u2


@njit(cache=True, nogil=True)
def lin_rk4(z, nu, a0, a1, a2, h, amp, omega, cos_shape, ch, t0, dt, n_steps,
            stride, probe_node, probe_comp, y_rec):
    """RK4 for the linearized dynamics; no constraint, no projection."""
    n = z.shape[0]
    k1 = np.empty((n, 3))
    k2 = np.empty((n, 3))
    k3 = np.empty((n, 3))
    k4 = np.empty((n, 3))
    tmp = np.empty((n, 3))
    y_rec[0] = z[probe_node, probe_comp]
    for i in range(n_steps):
        t = t0 + i * dt
        ua = _forcing(amp, omega, cos_shape, t)
        ub = _forcing(amp, omega, cos_shape, t + 0.5 * dt)
        uc = _forcing(amp, omega, cos_shape, t + dt)
        ua0 = ua if ch == 0 else 0.0
        ua1 = ua if ch == 1 else 0.0
        ua2 = ua if ch == 2 else 0.0
        ub0 = ub if ch == 0 else 0.0
        ub1 = ub if ch == 1 else 0.0
        ub2 = ub if ch == 2 else 0.0
        uc0 = uc if ch == 0 else 0.0
        uc1 = uc if ch == 1 else 0.0
        uc2 = uc if ch == 2 else 0.0

        lin_rhs_kernel(z, nu, a0, a1, a2, h, ua0, ua1, ua2, k1)
        for j in range(n):
            for q in range(3):
                tmp[j, q] = z[j, q] + 0.5 * dt * k1[j, q]
        lin_rhs_kernel(tmp, nu, a0, a1, a2, h, ub0, ub1, ub2, k2)
        for j in range(n):
            for q in range(3):
                tmp[j, q] = z[j, q] + 0.5 * dt * k2[j, q]
        lin_rhs_kernel(tmp, nu, a0, a1, a2, h, ub0, ub1, ub2, k3)
        for j in range(n):
            for q in range(3):
                tmp[j, q] = z[j, q] + dt * k3[j, q]
        lin_rhs_kernel(tmp, nu, a0, a1, a2, h, uc0, uc1, uc2, k4)
        for j in range(n):
            for q in range(3):
                z[j, q] = z[j, q] + dt / 6.0 * (
                    k1[j, q] + 2.0 * k2[j, q] + 2.0 * k3[j, q] + k4[j, q]
                )

        if (i + 1) % stride == 0:
            r = (i + 1) // stride
            y_rec[r] = z[probe_node, probe_comp]
            ok = True
            for j in range(n):
                for q in range(3):
                    if not np.isfinite(z[j, q]):
                        ok = False
            if not ok:
                return r
    return -1
