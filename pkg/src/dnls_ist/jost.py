"""Jost solutions and transition coefficients of the Kaup-Newell problem."""

import numpy as np

from ._kernels import gauss_columns, march_endpoints, march_trajectory
from .potentials import Potential

SPECTRAL_SINGULARITY_TOL = 1e-8


class JostSolveError(RuntimeError):
    pass


class SpectralSingularityError(RuntimeError):
    """Division by a (numerically) vanishing transition coefficient."""


class JostPair:
    """Renormalized Jost matrices m+(x_j), m-(x_j) at one zeta."""

    def __init__(self, x, zeta, m_plus, m_minus):
        self.x = x
        self.zeta = zeta
        self.m_plus = m_plus
        self.m_minus = m_minus

    def det_residual(self):
        dp = self.m_plus[:, 0, 0] * self.m_plus[:, 1, 1] - \
            self.m_plus[:, 0, 1] * self.m_plus[:, 1, 0]
        dm = self.m_minus[:, 0, 0] * self.m_minus[:, 1, 1] - \
            self.m_minus[:, 0, 1] * self.m_minus[:, 1, 0]
        return max(np.abs(dp - 1).max(), np.abs(dm - 1).max())


class TransitionCoeffs:
    def __init__(self, zeta, a, abrk, b, bbrk):
        self.zeta = zeta
        self.a = a
        self.abrk = abrk
        self.b = b
        self.bbrk = bbrk

    def det_residual(self):
        return abs(self.a * self.abrk - self.b * self.bbrk - 1.0)


class LambdaCoeffs:
    def __init__(self, lam, zeta, alpha, alpha_brk, beta, rho, n12m, n21m):
        self.lam = lam
        self.zeta = zeta
        self.alpha = alpha
        self.alpha_brk = alpha_brk
        self.beta = beta
        self.rho = rho
        self.n12m = n12m
        self.n21m = n21m


class JostEngine:
    """Cached marching tables for one potential."""

    def __init__(self, q: Potential):
        self.q = q
        self.x = q.x
        self.h = q.dx
        self._cols_r = None
        self._cols_l = None

    @property
    def cols_right(self):
        if self._cols_r is None:
            self._cols_r = gauss_columns(self.q, self.x, leftward=False)
        return self._cols_r

    @property
    def cols_left(self):
        if self._cols_l is None:
            self._cols_l = gauss_columns(self.q, self.x, leftward=True)
        return self._cols_l

    def m_minus_at(self, zetas, idx=None):
        """m-(x_idx, zeta) for a batch of zetas (idx defaults to the right end)."""
        idx = self.x.size - 1 if idx is None else int(idx)
        cols = self.cols_right[:idx]
        return march_endpoints(cols, self.h, zetas)

    def m_plus_at(self, zetas, idx=0):
        """m+(x_idx, zeta); marched right-to-left down to idx."""
        ni = self.x.size - 1 - int(idx)
        cols = self.cols_left[:ni]
        return march_endpoints(cols, -self.h, zetas)

    def coefficients(self, zetas):
        """(a, abrk, b, bbrk) arrays from the m+ march endpoint at -X.

        b and bbrk carry the unwrapped boundary phases and are meaningful on
        the continuous spectrum (real and imaginary axes); off the axes only
        a and abrk are used (each in its analyticity half).
        """
        zetas = np.atleast_1d(np.asarray(zetas, dtype=complex))
        mend = self.m_plus_at(zetas, idx=0)
        X = self.x[0]  # = -X
        with np.errstate(all="ignore"):
            ph = np.exp(-2j * zetas ** 2 * X)  # e^{+2 i X zeta^2}
            a = mend[:, 0, 0]
            abrk = mend[:, 1, 1]
            bbrk = mend[:, 0, 1] / ph
            b = mend[:, 1, 0] * ph
        return a, abrk, b, bbrk


def jost_solve(q: Potential, zeta):
    """Full-trajectory Jost pair at one zeta.

    Both families are marched; each column is reliable in its analyticity
    region (classically both, for zeta on the real/imaginary axes).
    """
    if not q.truncation_ok():
        raise JostSolveError("potential not numerically compactly supported")
    eng = JostEngine(q)
    mm = march_trajectory(eng.cols_right, eng.h, zeta)
    mp_rev = march_trajectory(eng.cols_left, -eng.h, zeta)
    return JostPair(q.x, complex(zeta), mp_rev[::-1].copy(), mm)


def transition_coeffs(q: Potential, zeta):
    eng = JostEngine(q)
    a, abrk, b, bbrk = eng.coefficients(np.array([zeta], dtype=complex))
    return TransitionCoeffs(complex(zeta), complex(a[0]), complex(abrk[0]),
                            complex(b[0]), complex(bbrk[0]))


def reflection(coeffs: TransitionCoeffs):
    """(r, rbrk) = (bbrk/a, b/abrk); guarded against spectral singularities."""
    if abs(coeffs.a) < SPECTRAL_SINGULARITY_TOL or \
            abs(coeffs.abrk) < SPECTRAL_SINGULARITY_TOL:
        raise SpectralSingularityError(
            f"spectral singularity proximity at zeta={coeffs.zeta}: "
            f"|a|={abs(coeffs.a):.3e}, |abrk|={abs(coeffs.abrk):.3e}")
    return coeffs.bbrk / coeffs.a, coeffs.b / coeffs.abrk


def zeta_of_lambda(lam):
    """sqrt on the fixed branch arg(lambda) in [0, 2 pi)."""
    lam = complex(lam)
    ang = np.angle(lam) % (2 * np.pi)
    return np.sqrt(abs(lam)) * np.exp(0.5j * ang)


def to_lambda(q: Potential, lam, x0=0.0):
    """Lambda-variable coefficients at lam = zeta^2 on the fixed branch."""
    zeta = zeta_of_lambda(lam)
    c = transition_coeffs(q, zeta)
    eng = JostEngine(q)
    i0 = int(np.argmin(np.abs(q.x - x0)))
    mm = eng.m_minus_at(np.array([zeta]), idx=i0)[0]
    if zeta == 0:
        raise ValueError("lambda = 0 needs a limiting value")
    beta = c.bbrk / zeta
    rho = (c.bbrk / c.a) / zeta
    return LambdaCoeffs(complex(lam), complex(zeta), c.a, c.abrk, beta, rho,
                        mm[0, 1] / zeta, mm[1, 0] * zeta)
