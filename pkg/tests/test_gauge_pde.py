import numpy as np
import pytest

from dnls_ist.gauge import gauge_forward, gauge_inverse
from dnls_ist.pde import BlowupError, step_dnls2
from dnls_ist.potentials import Potential


def test_gauge_trivial():
    u = Potential.zero(n=801)
    q = gauge_forward(u)
    assert np.abs(q.q).max() == 0.0


def test_gauge_modulus_and_norm(sech03):
    q = gauge_forward(sech03)
    assert np.abs(np.abs(q.q) - np.abs(sech03.q)).max() < 1e-14
    assert abs(q.l2_norm_sq() - sech03.l2_norm_sq()) < 1e-12


def test_gauge_roundtrip(sech03):
    u = Potential(sech03.x, sech03.q * np.exp(0.3j * np.tanh(sech03.x)))
    for eps in (-1, 1):
        back = gauge_inverse(gauge_forward(u, eps), eps)
        assert np.abs(back.q - u.q).max() < 1e-10


def test_gauge_eps_validation(sech03):
    with pytest.raises(ValueError):
        gauge_forward(sech03, eps=0)


def test_pde_zero():
    run = step_dnls2(Potential.zero(X=24.0, n=512), 0.2, 1e-3, n_modes=256)
    assert np.abs(run.final()).max() == 0.0


def test_pde_l2_conservation(sech03):
    run = step_dnls2(sech03, 1.0, 1e-3, n_modes=1024)
    assert run.l2_drift() < 1e-6


def test_pde_selfconvergence_order():
    q0 = Potential.sech(1.0)
    ref = step_dnls2(q0, 0.4, 0.4 / 800, n_modes=1024).final()
    errs = []
    for nst in (25, 50):
        f = step_dnls2(q0, 0.4, 0.4 / nst, n_modes=1024).final()
        errs.append(np.abs(f - ref).max())
    order = np.log2(errs[0] / errs[1])
    assert order > 3.8


def test_pde_time_reversibility(sech03):
    fwd = step_dnls2(sech03, 0.3, 5e-4, n_modes=1024)
    back = step_dnls2(fwd.final(), -0.3, 5e-4, n_modes=1024,
                      x_offset_grid=fwd.x)
    assert np.abs(back.final() - sech03(fwd.x)).max() < 1e-5


def test_pde_blowup_guard(sech03):
    bad = Potential(sech03.x, 40.0 * sech03.q)
    with pytest.raises(BlowupError):
        step_dnls2(bad, 0.5, 2e-2, n_modes=256)
