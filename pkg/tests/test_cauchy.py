import numpy as np
import pytest

from dnls_ist.cauchy import (boundary_projectors, interval_cauchy_offcut,
                             interval_cauchy_oncut, offcontour_cauchy)
from dnls_ist.contours import Arc, ContourGraph


def test_interval_transform_against_quadrature():
    # I_k(w) vs brute-force quadrature of T_k(s)/(s-w)
    from numpy.polynomial.chebyshev import chebval
    s, wq = np.polynomial.legendre.leggauss(2000)
    for w in (0.3 + 0.4j, -1.2 + 0.05j, 4.0 + 0j, -0.999 + 0.3j):
        Ik = interval_cauchy_offcut(w, 8)
        for k in (0, 3, 7):
            c = np.zeros(k + 1)
            c[k] = 1.0
            brute = np.sum(wq * chebval(s, c) / (s - w)) / (2j * np.pi)
            assert abs(Ik[k] - brute) < 2e-10, (w, k)


def test_interval_transform_near_cut_continuity():
    # off-cut values approach the one-sided boundary values
    t = 0.37
    Ip = interval_cauchy_oncut(t, 6, +1)
    Im = interval_cauchy_oncut(t, 6, -1)
    above = interval_cauchy_offcut(t + 1e-9j, 6)
    below = interval_cauchy_offcut(t - 1e-9j, 6)
    assert np.abs(above - Ip).max() < 1e-6
    assert np.abs(below - Im).max() < 1e-6


def test_oncut_plemelj_jump():
    t = 0.37
    n = 12
    Ip = interval_cauchy_oncut(t, n, +1)
    Im = interval_cauchy_oncut(t, n, -1)
    from numpy.polynomial.chebyshev import chebval
    for k in range(n):
        c = np.zeros(k + 1)
        c[k] = 1.0
        assert abs((Ip[k] - Im[k]) - chebval(t, c)) < 1e-12


def test_plemelj_identity_on_graph(lam_graph):
    Cp, Cm = boundary_projectors(lam_graph)
    z = lam_graph.all_nodes_z()
    d = 1.0 / (z ** 2 + 9.0)
    assert np.abs((Cp - Cm) @ d - d).max() < 1e-12


def test_analyticity_filtering(lam_graph):
    Cp, Cm = boundary_projectors(lam_graph)
    z = lam_graph.all_nodes_z()
    d_plus = 1.0 / (z + 6j)    # pole in Omega_2 (minus region): C+ d = d
    assert np.abs(Cp @ d_plus - d_plus).max() < 1e-7
    assert np.abs(Cm @ d_plus).max() < 1e-7
    d_minus = 1.0 / (z - 6j)   # pole in Omega_1: C- d = -d
    assert np.abs(Cm @ d_minus + d_minus).max() < 1e-7
    assert np.abs(Cp @ d_minus).max() < 1e-7


def test_projector_idempotence(lam_graph):
    Cp, Cm = boundary_projectors(lam_graph)
    z = lam_graph.all_nodes_z()
    d = 1.0 / (z ** 2 + 16.0)
    assert np.abs(Cp @ (Cp @ d) - Cp @ d).max() < 1e-7
    assert np.abs(Cm @ (Cm @ d) + Cm @ d).max() < 1e-7  # C-C- = -C-


@pytest.fixture(scope="module")
def circle_graph():
    a1 = Arc.circular(0, 2.0, 0, np.pi, 48)
    a2 = Arc.circular(0, 2.0, np.pi, 2 * np.pi, 48)
    return ContourGraph([a1, a2], meta={"kind": "circle"})


def test_residue_oracle(circle_graph):
    g = circle_graph
    zin, z0 = 0.5 + 0.3j, 5.0 + 2.0j
    dens = 1.0 / (g.all_nodes_z() - z0)
    val = offcontour_cauchy(g, dens, zin)
    assert abs(val - 1.0 / (zin - z0)) < 1e-13

    # pole inside as well: residues at s=z and s=z0 cancel
    z0i = -0.4 + 0.2j
    densi = 1.0 / (g.all_nodes_z() - z0i)
    assert abs(offcontour_cauchy(g, densi, 0.9j)) < 1e-13


def test_laurent_leading_order(circle_graph):
    g = circle_graph
    z0i = 0.3 - 0.2j  # pole inside: nonzero total integral
    dens = 1.0 / (g.all_nodes_z() - z0i)
    total = (g.all_quad_w() * dens).sum()
    assert abs(total - 2j * np.pi) < 1e-12
    zfar = 250.0 + 80.0j
    val = offcontour_cauchy(g, dens, zfar)
    lead = -total / (2j * np.pi * zfar)
    assert abs(val - lead) / abs(lead) < 2e-2  # next order is O(1/z)


def test_offcontour_guard(circle_graph):
    g = circle_graph
    dens = np.ones(g.total_nodes)
    with pytest.raises(ValueError):
        offcontour_cauchy(g, dens, 2.0 + 1e-9j)


def test_zero_density_bc_operator(lam_graph):
    from dnls_ist.rhp import WPair, build_bc_operator
    g = lam_graph
    zero = {ai: np.zeros(g.arcs[ai].n, dtype=complex) for ai in range(len(g.arcs))}
    w = WPair(g, 0.0, 0.0, zero, zero, zero, zero)
    A = build_bc_operator(w)
    assert np.abs(A - np.eye(2 * g.total_nodes)).max() == 0.0


def test_nilpotent_block_structure(lam_graph):
    # with W- = 0 and strictly lower W+, the (1,1) block of C_W vanishes
    from dnls_ist.rhp import WPair, build_bc_operator
    g = lam_graph
    zero = {ai: np.zeros(g.arcs[ai].n, dtype=complex) for ai in range(len(g.arcs))}
    wp21 = {ai: np.exp(-np.abs(g.arcs[ai].nodes_z) ** 2)
            for ai in range(len(g.arcs))}
    w = WPair(g, 0.0, 0.0, zero, wp21, zero, zero)
    A = build_bc_operator(w)
    N = g.total_nodes
    assert np.abs(A[:N, :N] - np.eye(N)).max() == 0.0
    assert np.abs(A[N:, N:] - np.eye(N)).max() == 0.0
    assert np.abs(A[N:, :N]).max() == 0.0      # only the nu11 <- nu12 block acts
    assert np.abs(A[:N, N:]).max() > 0.0


def test_operator_norm_scales_with_w(lam_graph):
    from dnls_ist.rhp import WPair, build_bc_operator
    g = lam_graph
    z = g.all_nodes_z()
    base = {}
    for ai in range(len(g.arcs)):
        lo, hi = g.arc_slice(ai)
        base[ai] = 1.0 / (1.0 + np.abs(z[lo:hi]) ** 2)
    zero = {ai: np.zeros_like(base[ai]) for ai in base}
    w1 = WPair(g, 0.0, 0.0, base, zero, zero, zero)
    A1 = build_bc_operator(w1)
    w2 = WPair(g, 0.0, 0.0, {ai: 3.0 * base[ai] for ai in base}, zero, zero, zero)
    A2 = build_bc_operator(w2)
    N = g.total_nodes
    n1 = np.linalg.norm(A1 - np.eye(2 * N))
    n2 = np.linalg.norm(A2 - np.eye(2 * N))
    assert abs(n2 / n1 - 3.0) < 1e-10
