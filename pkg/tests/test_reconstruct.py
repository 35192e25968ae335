import numpy as np

from dnls_ist.evolution import evolve_jump
from dnls_ist.potentials import Potential
from dnls_ist.reconstruct import (inverse_map, lax_t_residual, lax_x_residual,
                                  reconstruct_born, reconstruct_limit,
                                  reconstruct_point)
from dnls_ist.rhp import solve_bc
from dnls_ist.scattering import assemble_jump, build_scattering_data, \
    factorize_jump


def test_zero_data_reconstructs_zero(zero_pipeline):
    _, _, jf = zero_pipeline
    sol = solve_bc(jf, 0.4)
    assert abs(reconstruct_point(sol, jf, 0.4)) < 1e-13


def test_born_linearization():
    # for small data the reconstruction is the Fourier-type leading term
    q = Potential.sech(0.02)
    sd = build_scattering_data(q, R=1.0)
    jf = factorize_jump(assemble_jump(sd))
    for x in (0.0, 1.0):
        sol = solve_bc(jf, x)
        full = reconstruct_point(sol, jf, x)
        born = reconstruct_born(jf, x)
        qt = q(np.array([x]))[0]
        assert abs(full - qt) < 1e-9
        assert abs(born - qt) < 5e-5     # O(A^3) corrections
        assert abs(full - born) < 5e-5


def test_pointwise_roundtrip(sech03, jf03):
    for x in (0.0, 0.8, 2.5, -0.4):
        sol = solve_bc(jf03, x)
        qx = reconstruct_point(sol, jf03, x)
        assert abs(qx - sech03(np.array([x]))[0]) < 1e-9


def test_reconstruct_limit_agreement(sech03, zdata03):
    q0, ests = reconstruct_limit(zdata03, 0.7, ladder=(10.0, 20.0, 40.0))
    assert abs(q0 - sech03(np.array([0.7]))[0]) < 1e-6
    errs = np.abs(ests - q0)
    orders = np.log2(errs[:-1] / errs[1:])
    assert (orders > 0.9).all()  # at least first order in 1/z
    assert errs[-1] < errs[0]


def test_inverse_map_roundtrip_and_overlap(sech03, jf03):
    xs = np.linspace(-3.0, 3.0, 13)
    res = inverse_map(jf03, xs)
    err = np.abs(res.diagnostics["values"] - sech03(xs)).max()
    assert err < 1e-8
    assert res.diagnostics["overlap"] < 1e-6
    assert res.potential is not None


def test_inverse_map_evolved_overlap(sech03, jf03):
    jft = evolve_jump(jf03, 0.25)
    xs = np.linspace(-1.5, 1.5, 7)
    res = inverse_map(jft, xs)
    assert res.diagnostics["overlap"] < 1e-6


def test_x0_and_radius_invariance(sech03, sd03, jf03):
    sd_b = build_scattering_data(sech03, R=1.25, x0=1.5)
    jf_b = factorize_jump(assemble_jump(sd_b))
    for x in (0.0, 1.0, -0.7):
        qa = reconstruct_point(solve_bc(jf03, x), jf03, x)
        qb = reconstruct_point(solve_bc(jf_b, x), jf_b, x)
        assert abs(qa - qb) < 1e-8


def test_lax_x_residual(sech03, zdata03):
    q0 = sech03(np.array([0.4]))[0]
    r = lax_x_residual(zdata03, q0, 0.4, h=1e-3)
    assert r < 1e-4
    # FD order measured away from the far ray nodes (O(zeta q) balance there)
    rc = lax_x_residual(zdata03, q0, 0.4, h=2e-2, zeta_cap=7.0)
    rc2 = lax_x_residual(zdata03, q0, 0.4, h=1e-2, zeta_cap=7.0)
    assert rc2 < rc / 2.5  # O(h^2)


def test_lax_t_residual(sech03, sd03, zdata03, jf03):
    # at t = 0 the time equation holds with the same data
    x = 0.6
    sol_vals = inverse_map(jf03, np.array([x - 1e-3, x, x + 1e-3]))
    q_at = sol_vals.diagnostics["values"][1]
    qx_at = (sol_vals.diagnostics["values"][2]
             - sol_vals.diagnostics["values"][0]) / 2e-3
    r = lax_t_residual(zdata03, q_at, qx_at, x, 0.0, dt=2e-3, zeta_cap=5.0)
    assert r < 5e-3


def test_left_pipeline_involution_identities(sech03, sd03):
    # p(y) = conj(q(-y)) has a_p = a_q (and |rho_p| profile matching)
    from dnls_ist.jost import JostEngine
    p = sech03.reflected_conjugate()
    ep = JostEngine(p)
    eq = JostEngine(sech03)
    zs = np.array([0.6 + 0j, 1.1 + 0j, 0.8j])
    ap, _, bp, _ = ep.coefficients(zs)
    aq, _, _, bbq = eq.coefficients(zs)
    assert np.abs(ap - aq).max() < 1e-10
    assert np.abs(bp + bbq).max() < 1e-10  # b_p = -bbrk_q
