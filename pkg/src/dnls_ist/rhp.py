"""Beals-Coifman solves on the augmented contours.

The density nu is a row 2-vector on the collocation nodes satisfying
nu = (1,0) + C+(nu W-) + C-(nu W+); every W is strictly triangular, so the
discrete system couples the two components through the off-diagonal blocks
only.  The same assembly drives the lambda-plane solve (on Gamma or the
modified contour) and the zeta-plane cross-check solve on Sigma.
"""

import numpy as np
from scipy.linalg import lu_factor, lu_solve, svdvals

from .cauchy import boundary_projectors
from .chebyshev import coeff_derivative, coeff_eval
from .contours import build_modified_contour
from .jost import JostEngine
from .scattering import JumpField, assemble_jump, build_scattering_data, \
    factorize_jump, march_minus_to, _cut_coeffs

# pole order >= 6 per the construction; 14 keeps the rational tails below
# 1e-8 inside the ray truncation radius (lower orders leave fat algebraic
# tails whose x-phases the mapped-ray collocation cannot resolve)
OMEGA_POLE_ORDER = 14
NEAR_SINGULAR_TOL = 1e-8


# ---- W splitting ------------------------------------------------------------

class WPair:
    """Strictly triangular W+ and W- samples per arc, phases included.

    Stored as the four scalar off-diagonal fields; the x and t phases are
    exp(+- i (2 lambda x + 4 lambda^2 (t - t0))) with t0 the sample time of
    the jump field (its arrays already carry the t0 evolution).
    """

    def __init__(self, graph, x, t, wp12, wp21, wm12, wm21):
        self.graph = graph
        self.x = x
        self.t = t
        self.wp12 = wp12
        self.wp21 = wp21
        self.wm12 = wm12
        self.wm21 = wm21

    def stacked(self):
        c = np.concatenate
        return (c([self.wp12[ai] for ai in range(len(self.graph.arcs))]),
                c([self.wp21[ai] for ai in range(len(self.graph.arcs))]),
                c([self.wm12[ai] for ai in range(len(self.graph.arcs))]),
                c([self.wm21[ai] for ai in range(len(self.graph.arcs))]))


def split_w(jf: JumpField, x):
    """W pair from the factor samples of jf at position x.

    On the upper circle arc W- = 0 and W+ carries the whole (2,1) entry;
    on the lower arc W+ = 0 (the free splitting constants are set to zero).
    """
    if not jf.Jp:
        factorize_jump(jf)
    wp12, wp21, wm12, wm21 = {}, {}, {}, {}
    for ai, arc in enumerate(jf.graph.arcs):
        lam = arc.nodes_z
        ph = np.exp(2j * lam * x)
        wp12[ai] = (jf.Jp[ai][:, 0, 1]) / ph
        wp21[ai] = (jf.Jp[ai][:, 1, 0]) * ph
        wm12[ai] = (-jf.Jm[ai][:, 0, 1]) / ph
        wm21[ai] = (-jf.Jm[ai][:, 1, 0]) * ph
    return WPair(jf.graph, x, jf.t, wp12, wp21, wm12, wm21)


def w_reconstruction_residual(jf: JumpField, x, rng_seed=0, n_check=200):
    """max |(I - W-)^{-1} (I + W+) - J_x| over random sampled nodes."""
    w = split_w(jf, x)
    rng = np.random.default_rng(rng_seed)
    worst = 0.0
    for _ in range(n_check):
        ai = rng.integers(0, len(jf.graph.arcs))
        i = rng.integers(0, jf.graph.arcs[ai].n)
        Wm = np.array([[0, w.wm12[ai][i]], [w.wm21[ai][i], 0]])
        Wp = np.array([[0, w.wp12[ai][i]], [w.wp21[ai][i], 0]])
        lhs = np.linalg.inv(np.eye(2) - Wm) @ (np.eye(2) + Wp)
        lam = jf.graph.arcs[ai].nodes_z[i]
        ph = np.exp(2j * lam * x)
        Jx = jf.J[ai][i].copy()
        Jx = np.array([[Jx[0, 0], Jx[0, 1] / ph], [Jx[1, 0] * ph, Jx[1, 1]]])
        worst = max(worst, np.abs(lhs - Jx).max())
    return worst


# ---- operator assembly -------------------------------------------------------

def _projectors(graph):
    cache = getattr(graph, "_proj_cache", None)
    if cache is None:
        cache = boundary_projectors(graph)
        graph._proj_cache = cache
    return cache


def build_bc_operator(w: WPair):
    """Dense matrix of I - C_W acting on stacked (nu11, nu12) node values."""
    graph = w.graph
    Cp, Cm = _projectors(graph)
    wp12, wp21, wm12, wm21 = w.stacked()
    N = graph.total_nodes
    M12 = Cp * wm21[None, :] + Cm * wp21[None, :]
    M21 = Cp * wm12[None, :] + Cm * wp12[None, :]
    A = np.zeros((2 * N, 2 * N), dtype=complex)
    A[:N, :N] = np.eye(N)
    A[N:, N:] = np.eye(N)
    A[:N, N:] -= M12
    A[N:, :N] -= M21
    return A


class BCSolution:
    def __init__(self, graph, x, t, nu11, nu12, residual):
        self.graph = graph
        self.x = x
        self.t = t
        self.nu11 = nu11
        self.nu12 = nu12
        self.residual = residual
        self.sigma_min = None

    def nu(self):
        return np.stack([self.nu11, self.nu12], axis=-1)


def solve_bc(jf: JumpField, x, use_gamma_m=False, rhs=None, with_sigma=False):
    """Dense solve of (I - C_W) nu = (1, 0) at position x.

    With use_gamma_m the jump field must carry (or is converted to) the
    modified-contour data with regularized factors.
    """
    if use_gamma_m and jf.graph.meta.get("kind") != "lambda_m":
        jf = to_modified(jf)
    w = split_w(jf, x)
    A = build_bc_operator(w)
    N = jf.graph.total_nodes
    b = np.zeros(2 * N, dtype=complex)
    if rhs is None:
        b[:N] = 1.0
    else:
        b[:N] = rhs[0]
        b[N:] = rhs[1]
    lu = lu_factor(A)
    sol = lu_solve(lu, b)
    res = np.abs(A @ sol - b).max()
    out = BCSolution(jf.graph, x, jf.t, sol[:N], sol[N:], res)
    if with_sigma:
        out.sigma_min = float(svdvals(A)[-1])
        if out.sigma_min < NEAR_SINGULAR_TOL:
            raise RuntimeError("near-singular RHP operator")
    return out


def null_space_diag(jf: JumpField, x):
    """Smallest singular value of the discrete I - C_W at position x."""
    w = split_w(jf, x)
    A = build_bc_operator(w)
    return float(svdvals(A)[-1])


# ---- rational regularization --------------------------------------------------

class Regularizer:
    """omega+- rational factors matching the outer jump factors at +-S_inf."""

    def __init__(self, S_inf, z0_p, z0_m, npole, coeffs_p, coeffs_m):
        self.S_inf = S_inf
        self.z0_p = z0_p
        self.z0_m = z0_m
        self.npole = npole
        self.coeffs_p = coeffs_p  # cubic for the lower (2,1) entry of omega+
        self.coeffs_m = coeffs_m  # cubic for the upper (1,2) entry of omega-

    def entry_p(self, z):
        z = np.asarray(z, dtype=complex)
        return np.polyval(self.coeffs_p, z) / (z - self.z0_p) ** self.npole

    def entry_m(self, z):
        z = np.asarray(z, dtype=complex)
        return np.polyval(self.coeffs_m, z) / (z - self.z0_m) ** self.npole


def _hermite_rational(S, z0, npole, v_plus, d_plus, v_minus, d_minus):
    """Cubic p with p/(z-z0)^n matching value/derivative at +-S."""
    rows = []
    rhs = []
    for s, v, d in ((S, v_plus, d_plus), (-S, v_minus, d_minus)):
        w = (s - z0) ** npole
        rows.append([s ** 3, s ** 2, s, 1.0])
        rhs.append(v * w)
        rows.append([3 * s ** 2, 2 * s, 1.0, 0.0])
        rhs.append(d * w + v * npole * (s - z0) ** (npole - 1))
    A = np.array(rows, dtype=complex)
    b = np.array(rhs, dtype=complex)
    if abs(np.linalg.det(A)) < 1e-30:
        raise RuntimeError("Hermite interpolation system singular")
    return np.linalg.solve(A, b)


def _endpoint_value_deriv(graph, samples, role, at):
    """(value, d/dlambda) of per-arc samples at endpoint lambda = at."""
    ai = graph.arc_index_by_role(role)
    arc = graph.arcs[ai]
    start, end = arc.endpoints()
    if start is not None and abs(start - at) < 1e-9:
        s0 = -1.0
    elif end is not None and abs(end - at) < 1e-9:
        s0 = 1.0
    else:
        raise ValueError(f"{at} is not an endpoint of arc {role}")
    c = arc.coeff_mat @ np.asarray(samples, dtype=complex)
    v = complex(coeff_eval(c, s0))
    dc = coeff_derivative(c)
    zs = complex(arc.dz_of_s(np.array([s0]))[0])
    return v, complex(coeff_eval(dc, s0)) / zs


def build_regularizer(jf: JumpField, npole=OMEGA_POLE_ORDER):
    """Construct omega+- from the ray-factor Taylor data at +-S_inf.

    Poles are placed at -+ 2 i S_inf, outside the closures of the regions
    where each factor must stay analytic.
    """
    if not jf.Jp:
        factorize_jump(jf)
    graph = jf.graph
    S = jf.sd.S_inf
    # lower entry of J+ on the rays: lambda conj(rho)
    rp = graph.arc_index_by_role("ray_right")
    lp = graph.arc_index_by_role("ray_left")
    up_p = _endpoint_value_deriv(graph, jf.Jp[rp][:, 1, 0], "ray_right", S)
    um_p = _endpoint_value_deriv(graph, jf.Jp[lp][:, 1, 0], "ray_left", -S)
    coeffs_p = _hermite_rational(S, -2j * S, npole, up_p[0], up_p[1],
                                 um_p[0], um_p[1])
    # upper entry of J- on the rays: -rho
    up_m = _endpoint_value_deriv(graph, jf.Jm[rp][:, 0, 1], "ray_right", S)
    um_m = _endpoint_value_deriv(graph, jf.Jm[lp][:, 0, 1], "ray_left", -S)
    coeffs_m = _hermite_rational(S, 2j * S, npole, up_m[0], up_m[1],
                                 um_m[0], um_m[1])
    return Regularizer(S, -2j * S, 2j * S, npole, coeffs_p, coeffs_m)


def to_modified(jf: JumpField, ellipse_semiaxes=None, n_bounded=None,
                n_ray=None):
    """Jump field on the modified contour with regularized factors.

    The piecewise rational conjugation is the identity inside the circle, so
    the reoriented segment carries the plain inverse jump and the ellipse
    the identity; on the rays and circle arcs the factors are multiplied by
    the rational omega inverses, making the ray data vanish to first order
    at +-S_inf.
    """
    sd = jf.sd
    S = sd.S_inf
    kw = {}
    if n_bounded:
        kw["n_bounded"] = n_bounded
    if n_ray:
        kw["n_ray"] = n_ray
    graph_m = build_modified_contour(S, ellipse_semiaxes, **kw)
    sd_m = build_scattering_data(sd.q, R=sd.R, x0=sd.x0, graph=graph_m)
    jfm = factorize_jump(assemble_jump(sd_m))
    reg = build_regularizer(factorize_jump(assemble_jump(sd)))
    for ai, arc in enumerate(graph_m.arcs):
        lam = arc.nodes_z
        if arc.role in ("ray_left", "ray_right"):
            jfm.Jp[ai][:, 1, 0] -= reg.entry_p(lam)
            jfm.Jm[ai][:, 0, 1] -= reg.entry_m(lam)
        elif arc.role == "circle_up":
            jfm.Jp[ai][:, 1, 0] -= reg.entry_p(lam)
        elif arc.role == "circle_dn":
            jfm.Jm[ai][:, 0, 1] -= reg.entry_m(lam)
        jfm.J[ai] = np.linalg.inv(jfm.Jm[ai]) @ jfm.Jp[ai]
    jfm.regularized = True
    jfm.omega = reg
    if jf.t != 0.0:
        from .evolution import evolve_jump
        jfm = evolve_jump(jfm, jf.t)
    return jfm


# ---- zeta-plane solve -----------------------------------------------------------

class ZetaData:
    """w+- scalar samples on the arcs of the augmented zeta contour."""

    def __init__(self, graph, fields):
        self.graph = graph
        self.fields = fields  # arc -> dict with keys among s12p, s21p, s12m, s21m


def build_zeta_data(q, sd, graph_z):
    """Slow parts of the zeta-plane W fields on the Sigma collocation nodes."""
    eng = JostEngine(q)
    fields = {}
    for ai, arc in enumerate(graph_z.arcs):
        zet = arc.nodes_z
        d = {}
        if arc.role.startswith("axis_out"):
            a, abrk, b, bbrk = eng.coefficients(zet)
            with np.errstate(all="ignore"):
                r = bbrk / a
                rbrk = b / abrk
            dead = np.abs(zet) ** 2 > 40.0 * sd.S_inf
            r[dead] = 0.0
            rbrk[dead] = 0.0
            r[np.abs(r) < 1e-13] = 0.0
            rbrk[np.abs(rbrk) < 1e-13] = 0.0
            d["s21p"] = -rbrk       # W+ = low(-rbrk e^{2 i zeta^2 x})
            d["s12m"] = r           # W- = up(r e^{-2 i zeta^2 x})
        elif arc.role.startswith("axis_in"):
            a0, abrk0, b0, bbrk0 = _cut_coeffs(eng, sd, zet)
            r0 = bbrk0 / a0
            rbrk0 = b0 / abrk0
            d["s21m"] = rbrk0       # W- = low(rbrk0 e^{2 i zeta^2 x})
            d["s12p"] = -r0         # W+ = up(-r0 e^{-2 i zeta^2 x})
        elif arc.role in ("arc_q1", "arc_q3"):
            _, abrk, _, _ = eng.coefficients(zet)
            _, abrk0, _, _ = _cut_coeffs(eng, sd, zet)
            mm = march_minus_to(eng, zet, sd.i0)
            d["s21p"] = np.exp(-2j * sd.x0 * zet ** 2) * mm[:, 1, 0] \
                / (abrk * abrk0)
        else:  # arc_q2, arc_q4
            a, _, _, _ = eng.coefficients(zet)
            a0, _, _, _ = _cut_coeffs(eng, sd, zet)
            mm = march_minus_to(eng, zet, sd.i0)
            d["s12m"] = -np.exp(2j * sd.x0 * zet ** 2) * mm[:, 0, 1] / (a * a0)
        fields[ai] = d
    return ZetaData(graph_z, fields)


def zeta_wpair(zd: ZetaData, x, t=0.0):
    graph = zd.graph
    wp12, wp21, wm12, wm21 = {}, {}, {}, {}
    for ai, arc in enumerate(graph.arcs):
        zet = arc.nodes_z
        n = arc.n
        ph = np.exp(2j * (zet ** 2 * x + 2.0 * zet ** 4 * t))
        z0 = np.zeros(n, dtype=complex)
        d = zd.fields[ai]
        wp12[ai] = d.get("s12p", z0) / ph
        wp21[ai] = d.get("s21p", z0) * ph
        wm12[ai] = d.get("s12m", z0) / ph
        wm21[ai] = d.get("s21m", z0) * ph
    return WPair(graph, x, t, wp12, wp21, wm12, wm21)


def solve_bc_zeta(zd: ZetaData, x, t=0.0):
    """2x2 matrix Beals-Coifman solve on Sigma; rows solved jointly."""
    w = zeta_wpair(zd, x, t)
    A = build_bc_operator(w)
    N = zd.graph.total_nodes
    lu = lu_factor(A)
    b1 = np.zeros(2 * N, dtype=complex)
    b1[:N] = 1.0
    b2 = np.zeros(2 * N, dtype=complex)
    b2[N:] = 1.0
    row1 = lu_solve(lu, b1)
    row2 = lu_solve(lu, b2)
    mu = np.empty((N, 2, 2), dtype=complex)
    mu[:, 0, 0] = row1[:N]
    mu[:, 0, 1] = row1[N:]
    mu[:, 1, 0] = row2[:N]
    mu[:, 1, 1] = row2[N:]
    res = max(np.abs(A @ row1 - b1).max(), np.abs(A @ row2 - b2).max())
    return mu, res


_ZETA_TO_LAMBDA_ROLE = {
    "axis_out_pr": "ray_right", "axis_out_mr": "ray_right",
    "axis_out_pi": "ray_left", "axis_out_mi": "ray_left",
    "axis_in_pr": "segment", "axis_in_mr": "segment",
    "axis_in_pi": "segment", "axis_in_mi": "segment",
    "arc_q1": "circle_up", "arc_q3": "circle_up",
    "arc_q2": "circle_dn", "arc_q4": "circle_dn",
}


def zeta_crosscheck(sol: BCSolution, mu, graph_z):
    """Max deviation of mu11 - nu11(zeta^2) and mu12 - zeta nu12(zeta^2).

    Compared on the zeta nodes whose squares fall inside the sampled range
    of the corresponding lambda arc (no extrapolation past the grids).
    """
    graph_l = sol.graph
    dev = 0.0
    for ai, arc in enumerate(graph_z.arcs):
        role_l = _ZETA_TO_LAMBDA_ROLE[arc.role]
        al = graph_l.arc_index_by_role(role_l)
        arc_l = graph_l.arcs[al]
        lo, hi = graph_l.arc_slice(al)
        lam = arc.nodes_z ** 2
        s = arc_l.s_of_z(lam)
        keep = np.abs(s) <= np.abs(arc_l.nodes_s).max()
        if not keep.any():
            continue
        nu11 = arc_l.interp(sol.nu11[lo:hi], lam[keep])
        nu12 = arc_l.interp(sol.nu12[lo:hi], lam[keep])
        zlo, zhi = graph_z.arc_slice(ai)
        zn = arc.nodes_z[keep]
        dev = max(dev, np.abs(mu[zlo:zhi][keep, 0, 0] - nu11).max())
        dev = max(dev, np.abs(mu[zlo:zhi][keep, 0, 1] - zn * nu12).max())
    return dev
