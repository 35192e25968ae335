"""Hot kernels for the Jost marching integrator.

The spectral ODE is integrated with a unimodular Magnus scheme: per substep
the traceless part is exponentiated in closed form (so det m = 1 to machine
precision) and the scalar column phases are applied exactly per interval.
A fourth-order two-point Gauss-Magnus step is composed into a sixth-order
one by the standard triple jump.

numba-jitted per-zeta kernels are used when available; a vectorized numpy
path (batched over zeta) gives identical results and is selected by setting
the environment variable DNLS_IST_NO_NUMBA=1 (see benchmarks/bench_jost.py).

For zeta off the axes one column of each Jost family grows exponentially
(the non-analytic one); callers use only the column that is bounded in the
relevant region, and the growing column may overflow to inf harmlessly
(column updates never mix).
"""

import os

import numpy as np

_W1 = 1.0 / (2.0 - 2.0 ** (1.0 / 5.0))
_W0 = 1.0 - 2.0 * _W1
_GAMMAS = (_W1, _W0, _W1)
_GAUSS_LO = 0.5 - np.sqrt(3.0) / 6.0
_GAUSS_HI = 0.5 + np.sqrt(3.0) / 6.0


def substep_offsets():
    """The six Gauss evaluation offsets per interval, in traversal order."""
    offs = []
    tau = 0.0
    for g in _GAMMAS:
        offs.append(tau + _GAUSS_LO * g)
        offs.append(tau + _GAUSS_HI * g)
        tau += g
    return np.array(offs)


def gauss_columns(potential, xs, leftward=False):
    """q at the six substep Gauss points of every interval of grid xs.

    Returned in traversal order for the requested direction, shape (ni, 6);
    a leftward table has the intervals reversed and the columns flipped
    (the six offsets are symmetric about the interval midpoint).
    """
    h = xs[1] - xs[0]
    offs = substep_offsets() * h
    pts = xs[:-1, None] + offs[None, :]
    q = potential(pts.ravel()).reshape(pts.shape)
    if leftward:
        q = q[::-1, ::-1]
    return np.ascontiguousarray(q)


# ---- numpy path -------------------------------------------------------------

def _march_numpy(qcols, h, zetas, m0, trajectory):
    zetas = np.asarray(zetas, dtype=complex)
    nz = zetas.size
    ni = qcols.shape[0]
    z2 = zetas * zetas
    phc = np.exp(1j * z2 * h)  # per-interval column phase
    M11 = m0[:, 0, 0].astype(complex).copy()
    M12 = m0[:, 0, 1].astype(complex).copy()
    M21 = m0[:, 1, 0].astype(complex).copy()
    M22 = m0[:, 1, 1].astype(complex).copy()
    traj = np.empty((ni + 1, nz, 2, 2), dtype=complex) if trajectory else None
    if trajectory:
        traj[0, :, 0, 0] = M11
        traj[0, :, 0, 1] = M12
        traj[0, :, 1, 0] = M21
        traj[0, :, 1, 1] = M22
    c0 = np.sqrt(3.0) / 12.0
    for i in range(ni):
        for k in range(3):
            hk = _GAMMAS[k] * h
            q1 = qcols[i, 2 * k]
            q2 = qcols[i, 2 * k + 1]
            B1_11 = 0.5j * (q1.real ** 2 + q1.imag ** 2) - 1j * z2
            B2_11 = 0.5j * (q2.real ** 2 + q2.imag ** 2) - 1j * z2
            B1_12 = zetas * q1
            B2_12 = zetas * q2
            B1_21 = -zetas * np.conj(q1)
            B2_21 = -zetas * np.conj(q2)
            C11 = B2_12 * B1_21 - B1_12 * B2_21
            C12 = 2.0 * (B2_11 * B1_12 - B1_11 * B2_12)
            C21 = 2.0 * (B1_11 * B2_21 - B2_11 * B1_21)
            O11 = 0.5 * hk * (B1_11 + B2_11) + c0 * hk * hk * C11
            O12 = 0.5 * hk * (B1_12 + B2_12) + c0 * hk * hk * C12
            O21 = 0.5 * hk * (B1_21 + B2_21) + c0 * hk * hk * C21
            mu2 = O11 * O11 + O12 * O21
            mu = np.sqrt(mu2)
            small = np.abs(mu) < 1e-6
            ch = np.cosh(mu)
            sh = np.empty_like(mu)
            big = ~small
            sh[big] = np.sinh(mu[big]) / mu[big]
            m2s = mu2[small]
            sh[small] = 1.0 + m2s / 6.0 + m2s * m2s / 120.0
            E11 = ch + sh * O11
            E12 = sh * O12
            E21 = sh * O21
            E22 = ch - sh * O11
            N11 = E11 * M11 + E12 * M21
            N12 = E11 * M12 + E12 * M22
            N21 = E21 * M11 + E22 * M21
            N22 = E21 * M12 + E22 * M22
            M11, M12, M21, M22 = N11, N12, N21, N22
        M11 = M11 * phc
        M21 = M21 * phc
        M12 = M12 / phc
        M22 = M22 / phc
        if trajectory:
            traj[i + 1, :, 0, 0] = M11
            traj[i + 1, :, 0, 1] = M12
            traj[i + 1, :, 1, 0] = M21
            traj[i + 1, :, 1, 1] = M22
    out = np.empty((nz, 2, 2), dtype=complex)
    out[:, 0, 0] = M11
    out[:, 0, 1] = M12
    out[:, 1, 0] = M21
    out[:, 1, 1] = M22
    if trajectory:
        return out, np.transpose(traj, (1, 0, 2, 3))
    return out


# ---- numba path -------------------------------------------------------------

_USE_NUMBA = os.environ.get("DNLS_IST_NO_NUMBA", "0") != "1"
if _USE_NUMBA:
    try:
        from numba import njit, prange
    except ImportError:  # pragma: no cover
        _USE_NUMBA = False

if _USE_NUMBA:

    @njit(cache=True)
    def _step_one(qcols_row, h, zeta, z2, phc, M):
        c0 = np.sqrt(3.0) / 12.0
        gammas = (_W1, _W0, _W1)
        for k in range(3):
            hk = gammas[k] * h
            q1 = qcols_row[2 * k]
            q2 = qcols_row[2 * k + 1]
            B1_11 = 0.5j * (q1.real ** 2 + q1.imag ** 2) - 1j * z2
            B2_11 = 0.5j * (q2.real ** 2 + q2.imag ** 2) - 1j * z2
            B1_12 = zeta * q1
            B2_12 = zeta * q2
            B1_21 = -zeta * np.conj(q1)
            B2_21 = -zeta * np.conj(q2)
            C11 = B2_12 * B1_21 - B1_12 * B2_21
            C12 = 2.0 * (B2_11 * B1_12 - B1_11 * B2_12)
            C21 = 2.0 * (B1_11 * B2_21 - B2_11 * B1_21)
            O11 = 0.5 * hk * (B1_11 + B2_11) + c0 * hk * hk * C11
            O12 = 0.5 * hk * (B1_12 + B2_12) + c0 * hk * hk * C12
            O21 = 0.5 * hk * (B1_21 + B2_21) + c0 * hk * hk * C21
            mu2 = O11 * O11 + O12 * O21
            mu = np.sqrt(mu2)
            if np.abs(mu) < 1e-6:
                ch = 1.0 + mu2 / 2.0 + mu2 * mu2 / 24.0
                sh = 1.0 + mu2 / 6.0 + mu2 * mu2 / 120.0
            else:
                ch = np.cosh(mu)
                sh = np.sinh(mu) / mu
            E11 = ch + sh * O11
            E12 = sh * O12
            E21 = sh * O21
            E22 = ch - sh * O11
            N11 = E11 * M[0, 0] + E12 * M[1, 0]
            N12 = E11 * M[0, 1] + E12 * M[1, 1]
            N21 = E21 * M[0, 0] + E22 * M[1, 0]
            N22 = E21 * M[0, 1] + E22 * M[1, 1]
            M[0, 0] = N11
            M[0, 1] = N12
            M[1, 0] = N21
            M[1, 1] = N22
        M[0, 0] = M[0, 0] * phc
        M[1, 0] = M[1, 0] * phc
        M[0, 1] = M[0, 1] / phc
        M[1, 1] = M[1, 1] / phc

    @njit(cache=True, parallel=True)
    def _march_endpoints_numba(qcols, h, zetas, m0):
        nz = zetas.size
        ni = qcols.shape[0]
        out = np.empty((nz, 2, 2), dtype=np.complex128)
        for iz in prange(nz):
            zeta = zetas[iz]
            z2 = zeta * zeta
            phc = np.exp(1j * z2 * h)
            M = m0[iz].copy()
            for i in range(ni):
                _step_one(qcols[i], h, zeta, z2, phc, M)
            out[iz] = M
        return out

    @njit(cache=True)
    def _march_traj_numba(qcols, h, zeta, m0):
        ni = qcols.shape[0]
        z2 = zeta * zeta
        phc = np.exp(1j * z2 * h)
        traj = np.empty((ni + 1, 2, 2), dtype=np.complex128)
        M = m0.copy()
        traj[0] = M
        for i in range(ni):
            _step_one(qcols[i], h, zeta, z2, phc, M)
            traj[i + 1] = M
        return traj


def using_numba():
    return _USE_NUMBA


def march_endpoints(qcols, h, zetas, m0=None):
    """Final Jost matrices after traversing all intervals of qcols."""
    zetas = np.atleast_1d(np.asarray(zetas, dtype=complex))
    if m0 is None:
        m0 = np.broadcast_to(np.eye(2, dtype=complex), (zetas.size, 2, 2)).copy()
    if qcols.shape[0] == 0:
        return m0.astype(complex)
    if _USE_NUMBA:
        return _march_endpoints_numba(np.ascontiguousarray(qcols, dtype=np.complex128),
                                      float(h), zetas, np.ascontiguousarray(m0))
    return _march_numpy(qcols, float(h), zetas, m0, trajectory=False)


def march_trajectory(qcols, h, zeta, m0=None):
    """Jost matrices at every grid point for one zeta, shape (ni+1, 2, 2)."""
    if m0 is None:
        m0 = np.eye(2, dtype=complex)
    if _USE_NUMBA:
        return _march_traj_numba(np.ascontiguousarray(qcols, dtype=np.complex128),
                                 float(h), complex(zeta), np.ascontiguousarray(m0))
    out, traj = _march_numpy(qcols, float(h), np.array([zeta], dtype=complex),
                             m0[None, :, :], trajectory=True)
    return traj[0]
