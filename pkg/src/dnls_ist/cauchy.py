"""Cauchy transforms of Chebyshev interpolants on [-1, 1] and on contour graphs.

The building block is I_k(w) = (1/2 pi i) * int_{-1}^{1} T_k(s)/(s - w) ds,
evaluated off the cut, or as one-sided boundary values on the cut.  Every arc
in this package carries a rational parameterization z(s), so its Cauchy
transform at any target reduces to a signed combination of interval
transforms at preimage/pole parameters (logarithmic derivative of the
rational function z(s) - z).
"""

import numpy as np

from .chebyshev import cheb_vandermonde, tk_integrals

_RECURRENCE_RADIUS = 1.15  # Bernstein radius below which forward recurrence is stable


def _joukowski_exterior(w):
    """psi with w = (psi + 1/psi)/2 and |psi| >= 1.

    The two roots are reciprocal, so picking the larger magnitude avoids the
    signed-zero branch hazards of composing principal square roots.
    """
    r = w + np.sqrt(complex(w) - 1.0) * np.sqrt(complex(w) + 1.0)
    if r == 0:
        return 1.0 + 0j
    return r if abs(r) >= 1.0 else 1.0 / r


def interval_cauchy_oncut(t, n, side):
    """I_k^{side}(t) for t in (-1, 1), side = +1 (above) or -1 (below).

    Returns array of length n.  The +1 side is the side lying to the left of
    the standard left-to-right traversal of [-1, 1].
    """
    m = tk_integrals(n + 1)
    L = np.log((1.0 - t) / (1.0 + t))
    P = np.empty(n, dtype=complex)
    P[0] = L / (2j * np.pi)
    if n > 1:
        P[1] = (2.0 + t * L) / (2j * np.pi)
    for k in range(1, n - 1):
        P[k + 1] = 2 * t * P[k] - P[k - 1] + m[k] / (1j * np.pi)
    # boundary values: PV +- T_k(t)/2
    Tk = cheb_vandermonde(np.array([t]), n)[0]
    return P + 0.5 * side * Tk


def interval_cauchy_offcut(w, n):
    """I_k(w) for complex w off [-1, 1]; returns array of length n."""
    psi = _joukowski_exterior(complex(w))
    rho = abs(psi)
    m = tk_integrals(max(n + 1, 2))
    if rho < _RECURRENCE_RADIUS:
        L = np.log((w - 1.0) / (w + 1.0))
        I = np.empty(n, dtype=complex)
        I[0] = L / (2j * np.pi)
        if n > 1:
            I[1] = (2.0 + w * L) / (2j * np.pi)
        for k in range(1, n - 1):
            I[k + 1] = 2 * w * I[k] - I[k - 1] + m[k] / (1j * np.pi)
        return I
    # Chebyshev series in the Joukowski variable, |J| = 1/rho < 1
    J = 1.0 / psi
    nterms = int(np.ceil(40.0 / np.log10(rho))) + 4
    nterms = min(max(nterms, 8), 6000)
    sq = psi - w  # sqrt(w^2 - 1) on the exterior branch
    mm = tk_integrals(n + nterms + 2)
    ks = np.arange(n)[:, None]
    ms = np.arange(nterms)[None, :]
    G = 0.5 * (mm[ks + ms] + mm[np.abs(ks - ms)])
    Jpow = J ** np.arange(nterms)
    Jpow[0] *= 0.5  # primed sum halves the m = 0 term
    return -(G @ Jpow) / (1j * np.pi * sq)


def interval_cauchy(w, n, side=0):
    """Dispatch: side != 0 forces the on-cut boundary value."""
    if side != 0:
        return interval_cauchy_oncut(float(np.real(w)), n, side)
    return interval_cauchy_offcut(w, n)


def endpoint_regularized(n, at):
    """E_k = int (T_k(s) - T_k(at))/(s - at) ds for at = +1 or -1.

    Used for the parameterization pole of ray arcs, which sits at the
    interval endpoint mapping to infinity; valid against densities that
    vanish there.
    """
    m = tk_integrals(max(n + 1, 2))
    E = np.empty(n, dtype=float)
    E[0] = 0.0
    if n > 1:
        E[1] = 2.0
    for k in range(1, n - 1):
        E[k + 1] = 2 * E[k] - E[k - 1] + 2 * m[k]
    if at == 1:
        return E.astype(complex)
    k = np.arange(n)
    return (-((-1.0) ** k) * E).astype(complex)


def arc_cauchy_row(arc, z, side=0):
    """Row r with (C d)(z) = r . d for a density d sampled on ``arc``.

    side: 0 for targets off the arc, +1/-1 for boundary values when z lies
    on the arc (sides in the global orientation of the arc).
    """
    n = arc.n
    row = np.zeros(n, dtype=complex)
    for s_loc, sgn, on_cut in arc.cauchy_poles(z):
        if on_cut and side != 0:
            Ik = interval_cauchy_oncut(float(np.real(s_loc)), n, side)
        elif on_cut:
            # z numerically on the arc but caller did not ask for a side
            raise ValueError("target on arc; specify side")
        else:
            Ik = interval_cauchy_offcut(s_loc, n)
        row += sgn * Ik @ arc.coeff_mat
    for at, sgn in arc.endpoint_pole_terms():
        Ek = endpoint_regularized(n, at) / (2j * np.pi)
        row += sgn * Ek @ arc.coeff_mat
    return row


def boundary_projectors(graph):
    """Dense C+ and C- matrices on the stacked collocation nodes of ``graph``.

    (C^{\\pm} f)(node i) for f sampled on all arcs; same-arc blocks use the
    one-sided boundary values, cross-arc blocks the exact off-arc transform
    of the source interpolant.
    """
    nodes = graph.all_nodes_z()
    N = nodes.size
    Cp = np.zeros((N, N), dtype=complex)
    Cm = np.zeros((N, N), dtype=complex)
    for ai, arc in enumerate(graph.arcs):
        lo, hi = graph.arc_slice(ai)
        for i, z in enumerate(nodes):
            if lo <= i < hi:
                srow_p = arc_cauchy_row(arc, z, side=+1)
                srow_m = arc_cauchy_row(arc, z, side=-1)
                Cp[i, lo:hi] += srow_p
                Cm[i, lo:hi] += srow_m
            else:
                row = arc_cauchy_row(arc, z, side=0)
                Cp[i, lo:hi] += row
                Cm[i, lo:hi] += row
    return Cp, Cm


def offcontour_cauchy(graph, dens, z, guard=None):
    """(1/2 pi i) int_Gamma dens(s)/(s - z) ds for z off the contour."""
    nodes = graph.all_nodes_z()
    if guard is None:
        guard = graph.min_node_spacing() * 2.0
    if np.min(np.abs(nodes - z)) < guard:
        raise ValueError("target too close to the contour; use boundary projectors")
    val = 0.0 + 0j
    for ai, arc in enumerate(graph.arcs):
        lo, hi = graph.arc_slice(ai)
        row = arc_cauchy_row(arc, z, side=0)
        val += row @ dens[lo:hi]
    return val
