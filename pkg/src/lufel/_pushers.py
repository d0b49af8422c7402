"""Fixed-step RK4 pushers for the particle models.

The pendulum kernel advances (z, v, w) per particle, where w accumulates the
work done on the particle by the beat wave so the field update never has to
difference large kinetic energies.  Particles are independent inside a step,
so the parallel loop is bit-reproducible for any thread count.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
    prange = range

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


@njit(cache=True, parallel=True)
def pendulum_step_rk4(z, v, w, phi0, amp, q, omega, t, dt, m_e, c):
    """One RK4 step of dz/dt = v, dv/dt = amp sin(phi0 + q z - omega t),
    dw/dt = m_e gamma(v)^3 v dv/dt, in place over all particles."""
    c2 = c * c
    n = z.shape[0]
    for i in prange(n):
        zi = z[i]
        vi = v[i]
        p0 = phi0[i]

        a1 = amp * np.sin(p0 + q * zi - omega * t)
        g2 = 1.0 / (1.0 - vi * vi / c2)
        w1 = m_e * g2 * np.sqrt(g2) * vi * a1
        z1 = vi

        t2 = t + 0.5 * dt
        zb = zi + 0.5 * dt * z1
        vb = vi + 0.5 * dt * a1
        a2 = amp * np.sin(p0 + q * zb - omega * t2)
        g2 = 1.0 / (1.0 - vb * vb / c2)
        w2 = m_e * g2 * np.sqrt(g2) * vb * a2
        z2 = vb

        zb = zi + 0.5 * dt * z2
        vb = vi + 0.5 * dt * a2
        a3 = amp * np.sin(p0 + q * zb - omega * t2)
        g2 = 1.0 / (1.0 - vb * vb / c2)
        w3 = m_e * g2 * np.sqrt(g2) * vb * a3
        z3 = vb

        t4 = t + dt
        zb = zi + dt * z3
        vb = vi + dt * a3
        a4 = amp * np.sin(p0 + q * zb - omega * t4)
        g2 = 1.0 / (1.0 - vb * vb / c2)
        w4 = m_e * g2 * np.sqrt(g2) * vb * a4
        z4 = vb

        z[i] = zi + dt / 6.0 * (z1 + 2.0 * z2 + 2.0 * z3 + z4)
        v[i] = vi + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        w[i] = w[i] + dt / 6.0 * (w1 + 2.0 * w2 + 2.0 * w3 + w4)


def pendulum_step_rk4_numpy(z, v, w, phi0, amp, q, omega, t, dt, m_e, c):
    """Vectorized reference implementation of pendulum_step_rk4."""
    c2 = c * c

    def deriv(zz, vv, tt):
        a = amp * np.sin(phi0 + q * zz - omega * tt)
        g2 = 1.0 / (1.0 - vv * vv / c2)
        return vv, a, m_e * g2 * np.sqrt(g2) * vv * a

    z1, a1, w1 = deriv(z, v, t)
    z2, a2, w2 = deriv(z + 0.5 * dt * z1, v + 0.5 * dt * a1, t + 0.5 * dt)
    z3, a3, w3 = deriv(z + 0.5 * dt * z2, v + 0.5 * dt * a2, t + 0.5 * dt)
    z4, a4, w4 = deriv(z + dt * z3, v + dt * a3, t + dt)
    z += dt / 6.0 * (z1 + 2.0 * z2 + 2.0 * z3 + z4)
    v += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
    w += dt / 6.0 * (w1 + 2.0 * w2 + 2.0 * w3 + w4)


@njit(cache=True)
def _em_deriv(x, y, z, ux, uy, uz, t, e0, k0, c, qm, paper_fields):
    """State derivative for one electron in the counter-propagating pump."""
    g = np.sqrt(1.0 + (ux * ux + uy * uy + uz * uz) / (c * c))
    vx = ux / g
    vy = uy / g
    vz = uz / g
    psi = k0 * z + c * k0 * t
    e_x = e0 * np.cos(psi)
    if paper_fields:
        b_y = -e0 * np.sin(psi)
    else:
        b_y = -e0 * np.cos(psi)
    fx = qm * (e_x - vz * b_y / c)
    fy = 0.0
    fz = qm * (vx * b_y / c)
    return vx, vy, vz, fx, fy, fz


@njit(cache=True)
def push_single_rk4(state, e0, k0, c, qm, t0, dt, n_steps, save_every, paper_fields):
    """RK4 trajectory of one electron; rows are (t, x, y, z, ux, uy, uz)."""
    n_save = n_steps // save_every + 1
    out = np.empty((n_save, 7))
    x, y, z, ux, uy, uz = state
    t = t0
    out[0] = (t, x, y, z, ux, uy, uz)
    row = 1
    for step in range(n_steps):
        k1 = _em_deriv(x, y, z, ux, uy, uz, t, e0, k0, c, qm, paper_fields)
        k2 = _em_deriv(
            x + 0.5 * dt * k1[0], y + 0.5 * dt * k1[1], z + 0.5 * dt * k1[2],
            ux + 0.5 * dt * k1[3], uy + 0.5 * dt * k1[4], uz + 0.5 * dt * k1[5],
            t + 0.5 * dt, e0, k0, c, qm, paper_fields,
        )
        k3 = _em_deriv(
            x + 0.5 * dt * k2[0], y + 0.5 * dt * k2[1], z + 0.5 * dt * k2[2],
            ux + 0.5 * dt * k2[3], uy + 0.5 * dt * k2[4], uz + 0.5 * dt * k2[5],
            t + 0.5 * dt, e0, k0, c, qm, paper_fields,
        )
        k4 = _em_deriv(
            x + dt * k3[0], y + dt * k3[1], z + dt * k3[2],
            ux + dt * k3[3], uy + dt * k3[4], uz + dt * k3[5],
            t + dt, e0, k0, c, qm, paper_fields,
        )
        x += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        y += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        z += dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        ux += dt / 6.0 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        uy += dt / 6.0 * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4])
        uz += dt / 6.0 * (k1[5] + 2.0 * k2[5] + 2.0 * k3[5] + k4[5])
        t = t0 + (step + 1) * dt
        if (step + 1) % save_every == 0:
            out[row] = (t, x, y, z, ux, uy, uz)
            row += 1
    return out[:row]
