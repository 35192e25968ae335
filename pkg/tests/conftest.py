import pytest

from dnls_ist.contours import build_lambda_contour, build_zeta_contour
from dnls_ist.potentials import Potential
from dnls_ist.rhp import build_zeta_data, solve_bc
from dnls_ist.scattering import (assemble_jump, build_scattering_data,
                                 factorize_jump)


@pytest.fixture(scope="session")
def sech03():
    return Potential.sech(0.3)


@pytest.fixture(scope="session")
def sd03(sech03):
    return build_scattering_data(sech03)


@pytest.fixture(scope="session")
def jf03(sd03):
    return factorize_jump(assemble_jump(sd03))


@pytest.fixture(scope="session")
def sol03(jf03):
    return solve_bc(jf03, 0.0)


@pytest.fixture(scope="session")
def zgraph03(sd03):
    return build_zeta_contour(sd03.R, n_bounded=48, n_ray=64)


@pytest.fixture(scope="session")
def zdata03(sech03, sd03, zgraph03):
    return build_zeta_data(sech03, sd03, zgraph03)


@pytest.fixture(scope="session")
def zero_pipeline():
    q = Potential.zero(X=24.0, n=2001)
    sd = build_scattering_data(q, R=1.0, x0=0.0)
    jf = factorize_jump(assemble_jump(sd))
    return q, sd, jf


@pytest.fixture(scope="session")
def lam_graph():
    return build_lambda_contour(2.0, n_bounded=40, n_ray=60)
