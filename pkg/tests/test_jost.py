import numpy as np
import pytest
from scipy.integrate import solve_ivp

from dnls_ist.jost import (JostEngine, JostSolveError, SpectralSingularityError,
                           TransitionCoeffs, jost_solve, reflection,
                           transition_coeffs, to_lambda, zeta_of_lambda)
from dnls_ist.potentials import Potential


def test_zero_potential_identity():
    q = Potential.zero(n=801)
    jp = jost_solve(q, 0.7 + 0.2j)
    assert np.abs(jp.m_plus - np.eye(2)).max() < 1e-14
    assert np.abs(jp.m_minus - np.eye(2)).max() < 1e-14


def test_zeta_zero_closed_form(sech03):
    # at zeta = 0 the system decouples; m11+ = exp(-(i/2) int_x^inf |q|^2)
    q = sech03
    jp = jost_solve(q, 0.0)
    A = 0.3
    tail = A ** 2 * (1.0 - np.tanh(q.x))  # int_x^inf A^2 sech^2
    expected = np.exp(-0.5j * tail)
    assert np.abs(jp.m_plus[:, 0, 0] - expected).max() < 1e-10
    assert np.abs(jp.m_plus[:, 1, 0]).max() < 1e-14
    assert np.abs(jp.m_minus[:, 1, 0]).max() < 1e-14


def test_det_unimodular(sech03):
    jp = jost_solve(sech03, 1.0)
    assert jp.det_residual() < 1e-11


def test_against_adaptive_ode(sech03):
    # compare the marching against DOP853 on the m- column system at zeta=1
    zeta = 1.0
    q = sech03

    def rhs(x, y):
        qv = 0.3 / np.cosh(x)
        p1 = 0.5j * abs(qv) ** 2
        m11, m21 = y[0] + 1j * y[1], y[2] + 1j * y[3]
        d11 = p1 * m11 + zeta * qv * m21
        d21 = 2j * zeta ** 2 * m21 - zeta * np.conj(qv) * m11 - p1 * m21
        return [d11.real, d11.imag, d21.real, d21.imag]

    i5 = int(np.argmin(np.abs(q.x - 5.0)))
    sol = solve_ivp(rhs, (q.x[0], q.x[i5]), [1, 0, 0, 0], rtol=1e-12,
                    atol=1e-13, method="DOP853")
    m11 = sol.y[0, -1] + 1j * sol.y[1, -1]
    m21 = sol.y[2, -1] + 1j * sol.y[3, -1]
    jp = jost_solve(q, zeta)
    assert abs(jp.m_minus[i5, 0, 0] - m11) < 1e-9
    assert abs(jp.m_minus[i5, 1, 0] - m21) < 1e-9


def test_truncation_guard():
    q = Potential.sech(0.3, X=8.0, n=801)
    with pytest.raises(JostSolveError):
        jost_solve(q, 1.0)


def test_transition_trivial():
    q = Potential.zero(n=801)
    c = transition_coeffs(q, 0.9)
    assert abs(c.a - 1) < 1e-12 and abs(c.abrk - 1) < 1e-12
    assert abs(c.b) < 1e-12 and abs(c.bbrk) < 1e-12


def test_a_at_zero_anchor(sech03):
    c = transition_coeffs(sech03, 0.0)
    # ||A sech||_2^2 = 2 A^2
    assert abs(c.a - np.exp(-0.5j * 2 * 0.3 ** 2)) < 1e-8


def test_determinant_identity(sech03):
    c = transition_coeffs(sech03, 0.7)
    assert c.det_residual() < 1e-9


def test_both_integral_representations(sech03):
    # a from the m+ route (march endpoint) vs the m- route integral
    from scipy.integrate import simpson
    q = sech03
    zeta = 0.8
    c = transition_coeffs(q, zeta)
    jp = jost_solve(q, zeta)
    p2 = -0.5j * np.abs(q.q) ** 2
    integrand = -zeta * np.conj(q.q) * jp.m_minus[:, 0, 1] \
        + p2 * jp.m_minus[:, 1, 1]
    a_via_minus = 1.0 + simpson(integrand, x=q.x)
    assert abs(c.a - a_via_minus) < 1e-9


def test_small_amplitude_born_oracle():
    # rho(lambda) ~ -A pi sech(pi lambda) for small sech amplitude
    q = Potential.sech(0.01)
    eng = JostEngine(q)
    lam = np.array([0.5, 1.0, 2.0])
    zet = np.sqrt(lam) + 0j
    a, ab, b, bb = eng.coefficients(zet)
    rho = (bb / a) / zet
    born = -0.01 * np.pi / np.cosh(np.pi * lam)
    assert np.abs(rho - born).max() / np.abs(born).max() < 1e-3


def test_reflection_and_guard():
    r, rb = reflection(TransitionCoeffs(1.0, 2.0, 0.5, 0.0, 0.1))
    assert abs(r - 0.05) < 1e-15
    with pytest.raises(SpectralSingularityError):
        reflection(TransitionCoeffs(1.0, 1e-9, 1.0, 0.0, 0.1))


def test_to_lambda(sech03):
    lam = 0.8
    lc = to_lambda(sech03, lam)
    c = transition_coeffs(sech03, np.sqrt(lam))
    assert lc.alpha == c.a  # definitionally the same evaluation
    assert abs(abs(lc.alpha) ** 2 + lam * abs(lc.beta) ** 2 - 1) < 1e-9
    # negative lambda: zeta on the imaginary axis via the fixed branch
    lc2 = to_lambda(sech03, -0.8)
    assert abs(lc2.zeta - 1j * np.sqrt(0.8)) < 1e-14
    assert abs(abs(lc2.alpha) ** 2 - 0.8 * abs(lc2.beta) ** 2 - 1) < 1e-9


def test_branch():
    assert abs(zeta_of_lambda(4.0) - 2.0) < 1e-15
    assert abs(zeta_of_lambda(-4.0) - 2j) < 1e-14
    assert zeta_of_lambda(1j).imag > 0


def test_numba_numpy_paths_agree(sech03):
    import subprocess, sys, json, os
    code = (
        "import json, numpy as np\n"
        "from dnls_ist.jost import JostEngine\n"
        "from dnls_ist.potentials import Potential\n"
        "eng = JostEngine(Potential.sech(0.3, n=801))\n"
        "a, ab, b, bb = eng.coefficients(np.array([0.9+0.1j, 1.4+0j]))\n"
        "print(json.dumps([[v.real, v.imag] for v in a]))\n"
    )
    env = dict(os.environ, DNLS_IST_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    a_numpy = [complex(re, im) for re, im in json.loads(out.stdout.strip().splitlines()[-1])]
    eng = JostEngine(Potential.sech(0.3, n=801))
    a_here, _, _, _ = eng.coefficients(np.array([0.9 + 0.1j, 1.4 + 0j]))
    assert np.abs(np.array(a_numpy) - a_here).max() < 1e-12
