"""Independent pseudo-spectral integrator for the gauged derivative NLS.

iq_t + q_xx + i eps q^2 conj(q)_x + |q|^4 q / 2 = 0 with eps = -1, on a
periodic box, integrating-factor RK4 in Fourier space with 3/2-rule
dealiasing for the cubic and quintic products.  Used purely as a
verification oracle for the scattering pipeline.
"""

import numpy as np

from .potentials import Potential

BLOWUP_FACTOR = 10.0


class BlowupError(RuntimeError):
    pass


class PdeRun:
    def __init__(self, x, times, snapshots, l2_history):
        self.x = x
        self.times = times
        self.snapshots = snapshots
        self.l2_history = l2_history

    def final(self):
        return self.snapshots[-1]

    def l2_drift(self):
        return float(np.abs(self.l2_history - self.l2_history[0]).max())

    def potential_at(self, k, X=None):
        """Snapshot k restricted to [-X, X] as a Potential."""
        qs = self.snapshots[k]
        if X is None:
            return Potential(self.x, qs)
        keep = np.abs(self.x) <= X + 1e-12
        return Potential(self.x[keep], qs[keep])


def _dealias_mask(n):
    k = np.fft.fftfreq(n, 1.0 / n)
    return np.abs(k) <= n // 3


def step_dnls2(q0, t_final, dt, eps=-1, L=None, n_modes=1024, n_snapshots=2,
               x_offset_grid=None):
    """Integrate the gauged equation from a Potential or sampled field.

    The box length defaults to 4x the potential half-width; snapshots are
    taken at n_snapshots evenly spaced times including 0 and t_final.
    """
    if eps != -1:
        raise ValueError("eps = +1 is handled by reflecting the potential")
    if isinstance(q0, Potential):
        X = q0.X
        if L is None:
            L = 4.0 * X
        x = -L / 2 + L * np.arange(n_modes) / n_modes
        q = q0(x)
    else:
        x, q = x_offset_grid, np.asarray(q0, dtype=complex)
        L = x[-1] - x[0] + (x[1] - x[0])
    n = x.size
    k = 2 * np.pi * np.fft.fftfreq(n, L / n)
    mask = _dealias_mask(n)

    def nonlinear(qf):
        qq = np.fft.ifft(qf)
        qx_bar = np.conj(np.fft.ifft(1j * k * qf))
        cubic = qq * qq * qx_bar
        quintic = 0.5j * np.abs(qq) ** 4 * qq
        nf = np.fft.fft(-eps * cubic + quintic)
        return np.where(mask, nf, 0.0)

    nsteps = int(np.ceil(abs(t_final) / dt))
    dt = t_final / nsteps if nsteps else dt
    snap_every = max(1, nsteps // max(1, n_snapshots - 1)) if nsteps else 1
    qf = np.fft.fft(q)
    qf = np.where(mask, qf, 0.0)
    amp0 = np.abs(q).max()
    times = [0.0]
    snaps = [np.fft.ifft(qf)]
    l2 = [np.sqrt(np.sum(np.abs(snaps[0]) ** 2) * L / n)]
    ek2 = np.exp(-1j * k ** 2 * dt / 2)
    ek = ek2 * ek2
    t = 0.0
    for step in range(nsteps):
        # integrating-factor RK4: v = e^{i k^2 t} qhat, v' = e^{ikk t} N(q)
        n1 = nonlinear(qf)
        n2 = nonlinear(ek2 * (qf + dt / 2 * n1))
        n3 = nonlinear(ek2 * qf + dt / 2 * n2)
        n4 = nonlinear(ek * qf + dt * ek2 * n3)
        qf = ek * qf + dt / 6 * (ek * n1 + 2 * ek2 * (n2 + n3) + n4)
        t += dt
        if (step + 1) % snap_every == 0 or step == nsteps - 1:
            qq = np.fft.ifft(qf)
            peak = np.abs(qq).max()
            if not np.isfinite(peak) or peak > BLOWUP_FACTOR * max(amp0, 1e-12):
                raise BlowupError(f"field grew past {BLOWUP_FACTOR}x at t={t:.4f}")
            times.append(t)
            snaps.append(qq)
            l2.append(np.sqrt(np.sum(np.abs(qq) ** 2) * L / n))
    return PdeRun(x, np.array(times), np.array(snaps), np.array(l2))
