"""Chebyshev utilities on [-1, 1]: open (first-kind) grids, transforms, quadrature.

All collocation in this package uses first-kind Chebyshev points, which are
open (no collocation point lands on a contour self-intersection).  Endpoint
values and one-sided derivatives are recovered from the coefficient expansion.
"""

import numpy as np


def cheb_nodes(n):
    """First-kind Chebyshev points, ascending in (-1, 1)."""
    j = np.arange(n)
    return -np.cos((2 * j + 1) * np.pi / (2 * n))


def cheb_vandermonde(s, n):
    """Matrix V with V[i, k] = T_k(s_i)."""
    s = np.asarray(s)
    V = np.empty((s.size, n), dtype=complex if np.iscomplexobj(s) else float)
    V[:, 0] = 1.0
    if n > 1:
        V[:, 1] = s
    for k in range(2, n):
        V[:, k] = 2 * s * V[:, k - 1] - V[:, k - 2]
    return V


def nodal_to_coeff_matrix(n):
    """Map values at cheb_nodes(n) (ascending) to Chebyshev coefficients.

    Exact for polynomials of degree < n.  theta_j are the angles of the
    descending first-kind nodes; ascending node j sits at angle pi - theta_j.
    """
    j = np.arange(n)
    theta = (2 * j + 1) * np.pi / (2 * n)
    k = np.arange(n)[:, None]
    C = np.cos(k * (np.pi - theta[None, :])) * (2.0 / n)
    C[0] *= 0.5
    return C


def coeff_eval(coeffs, w):
    """Evaluate a Chebyshev series at scalar or array w (Clenshaw)."""
    w = np.asarray(w, dtype=complex)
    b1 = np.zeros_like(w)
    b2 = np.zeros_like(w)
    for c in coeffs[:0:-1]:
        b1, b2 = 2 * w * b1 - b2 + c, b1
    return w * b1 - b2 + coeffs[0]


def coeff_derivative(coeffs):
    """Coefficients of the derivative of a Chebyshev series."""
    n = len(coeffs)
    if n <= 1:
        return np.zeros(1, dtype=complex)
    d = np.zeros(n + 1, dtype=complex)
    for k in range(n - 1, 0, -1):
        d[k - 1] = d[k + 1] + 2 * k * coeffs[k]
    d[0] *= 0.5
    return d[: n - 1]


def tk_integrals(n):
    """m_k = integral of T_k(s) over [-1, 1], for k < n."""
    k = np.arange(n)
    m = np.zeros(n)
    even = k % 2 == 0
    m[even] = 2.0 / (1.0 - k[even].astype(float) ** 2)
    return m


def gauss_legendre(n):
    return np.polynomial.legendre.leggauss(n)


def barycentric_weights(n):
    """Barycentric weights for first-kind Chebyshev nodes (ascending)."""
    j = np.arange(n)
    theta = (2 * j + 1) * np.pi / (2 * n)
    w = np.sin(theta) * (-1.0) ** j
    return w[::-1]


def barycentric_eval(nodes, vals, w, s):
    """Barycentric interpolation at points s (may coincide with nodes)."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    vals = np.asarray(vals)
    num = np.zeros_like(s)
    den = np.zeros_like(s)
    exact = np.full(s.shape, -1, dtype=int)
    for j, sj in enumerate(nodes):
        diff = s - sj
        hit = np.abs(diff) < 1e-15
        exact[hit] = j
        diff = np.where(hit, 1.0, diff)
        r = w[j] / diff
        num += r * vals[j]
        den += r
    out = num / den
    hitmask = exact >= 0
    if hitmask.any():
        out[hitmask] = vals[exact[hitmask]]
    return out
