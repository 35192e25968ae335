"""Direct scattering map with contour augmentation.

Builds the scattering data tuple on the lambda-plane contour: reflection
data outside the circle, cutoff-potential data inside, and Jost/coefficient
data on the circle arcs, together with the jump matrices, their triangular
factorization, junction product-condition diagnostics and the Schwarz
symmetry checks of the zeta-plane jump.
"""

import numpy as np

from .contours import build_lambda_contour
from .chebyshev import coeff_derivative, coeff_eval
from .jost import JostEngine
from .potentials import Potential

X0_BOUND = 0.5
X0_SAFETY = 0.9
RADIUS_MARGIN = 0.25
R_MIN = 1.0
RHO_NOISE_FLOOR = 1e-13  # marching roundoff; far-tail samples below it are zeroed
LAMBDA_MAX_FACTOR = 40.0  # ray data truncated at |lambda| = 40 S_inf


class TruncationError(RuntimeError):
    pass


class WindingError(RuntimeError):
    pass


# ---- zero counting by the argument principle --------------------------------

def _arg_winding(vals):
    """Winding number of a sampled closed curve of nonzero complex values."""
    v = np.asarray(vals)
    if np.abs(v).min() < 1e-9:
        raise WindingError("function vanishes on the walk")
    dphi = np.angle(v[1:] / v[:-1])
    if np.abs(dphi).max() > 2.5:
        raise WindingError("phase step too large; refine the walk")
    total = dphi.sum() + np.angle(v[0] / v[-1])
    w = total / (2 * np.pi)
    if abs(w - round(w)) > 0.2:
        raise WindingError(f"non-integer winding {w:.3f}")
    return int(round(w))


def _sector_annulus_walk(quadrant, r1, r2, m):
    """Closed ccw walk around {r1 <= |z| <= r2} in one quadrant (0..3)."""
    th0 = quadrant * np.pi / 2
    th1 = th0 + np.pi / 2
    rad = np.linspace(r1, r2, m)
    ang = np.linspace(th0, th1, 2 * m)
    leg1 = rad * np.exp(1j * th0)
    leg2 = r2 * np.exp(1j * ang)
    leg3 = rad[::-1] * np.exp(1j * th1)
    leg4 = r1 * np.exp(1j * ang[::-1])
    return np.concatenate([leg1, leg2, leg3, leg4])


def _zeros_in_annulus(eng, r1, r2, m=128):
    """Total zero count of a over Omega^- and abrk over Omega^+ in the annulus."""
    total = 0
    for fn, quadrants in (("a", (1, 3)), ("abrk", (0, 2))):
        for qd in quadrants:
            walk = _sector_annulus_walk(qd, r1, r2, m)
            a, abrk, _, _ = eng.coefficients(walk)
            vals = a if fn == "a" else abrk
            try:
                total += abs(_arg_winding(vals))
            except WindingError:
                walk = _sector_annulus_walk(qd, r1, r2, 4 * m)
                a, abrk, _, _ = eng.coefficients(walk)
                vals = a if fn == "a" else abrk
                total += abs(_arg_winding(vals))
    return total


def choose_radius(q: Potential, margin=RADIUS_MARGIN, r_min=R_MIN, max_steps=14):
    """Smallest scanned radius with no zeros of a, abrk outside it.

    Scans annuli r_min (1+margin)^k; after the last occupied annulus two
    clean ones are required, and one extra margin step guards against zeros
    leaking across an annulus edge in the winding count.  The asymptotic
    check certifies a ~ 1 on the outermost circle (no zeros beyond).
    """
    eng = JostEngine(q)
    if not q.truncation_ok():
        raise TruncationError("potential tail above truncation tolerance")
    radii = [r_min * (1 + margin) ** k for k in range(max_steps + 2)]
    occupied = -1
    counts = []
    for k in range(max_steps):
        counts.append(_zeros_in_annulus(eng, radii[k], radii[k + 1]))
        if counts[-1] > 0:
            occupied = k
        if occupied < k - 1 and counts[-1] == 0 and k >= 1 and counts[-2] == 0:
            # two consecutive clean annuli above the last zero; sample each
            # coefficient on its analyticity sectors at the outer radius
            rr = radii[k + 1]
            th_m = np.concatenate([np.linspace(np.pi / 2, np.pi, 32),
                                   np.linspace(3 * np.pi / 2, 2 * np.pi, 32)])
            th_p = np.concatenate([np.linspace(0, np.pi / 2, 32),
                                   np.linspace(np.pi, 3 * np.pi / 2, 32)])
            a_out, _, _, _ = eng.coefficients(rr * np.exp(1j * th_m))
            _, abrk_out, _, _ = eng.coefficients(rr * np.exp(1j * th_p))
            if abs(a_out - 1).max() < 0.75 and abs(abrk_out - 1).max() < 0.75:
                R = radii[0] if occupied < 0 else radii[occupied + 2]
                a_c, _, _, _ = eng.coefficients(R * np.exp(1j * th_m))
                _, ab_c, _, _ = eng.coefficients(R * np.exp(1j * th_p))
                if min(np.abs(a_c).min(), np.abs(ab_c).min()) < 1e-3:
                    occupied = k  # a zero sits near this circle; keep growing
                    continue
                return R
    raise WindingError("could not certify a zero-free exterior radius")


def choose_cutoff(q: Potential, R, bound=X0_BOUND, safety=X0_SAFETY, n_test=16):
    """Smallest grid point x0 with the cutoff-tail smallness condition."""
    x, dx = q.x, q.dx
    aq = np.abs(q.q)
    zetas = R * np.exp(2j * np.pi * np.arange(n_test) / n_test)
    worst = np.zeros_like(aq)
    for z in list(zetas) + [0.0]:
        worst = np.maximum(worst, np.maximum(abs(z) * aq, 0.5 * aq ** 2))
    # reverse cumulative trapezoid of the tail integrand
    seg = 0.5 * dx * (worst[1:] + worst[:-1])
    tail = np.concatenate([np.cumsum(seg[::-1])[::-1], [0.0]])
    ok = tail < safety * bound
    i0 = int(np.argmax(ok))
    if not ok.any() or i0 > x.size - max(8, x.size // 20):
        raise TruncationError("no admissible cutoff point; domain too small")
    return float(x[i0]), i0


# ---- scattering data ---------------------------------------------------------

class ScatteringData:
    """Sampled scattering data on the collocation nodes of a lambda contour."""

    def __init__(self, q, graph, R, x0, i0, arc_data):
        self.q = q
        self.graph = graph
        self.R = R
        self.S_inf = R * R
        self.x0 = x0
        self.i0 = i0
        self.arc_data = arc_data  # arc index -> dict of sample arrays

    def data(self, role):
        return self.arc_data[self.graph.arc_index_by_role(role)]


def build_scattering_data(q: Potential, R=None, x0=None, graph=None,
                          n_bounded=None, n_ray=None):
    """Run the augmented direct map: radius, cutoff, and all samples."""
    if not q.truncation_ok():
        raise TruncationError("potential tail above truncation tolerance")
    eng = JostEngine(q)
    if R is None:
        R = choose_radius(q)
    S = R * R
    if x0 is None:
        x0, i0 = choose_cutoff(q, R)
    else:
        i0 = int(np.argmin(np.abs(q.x - x0)))
        x0 = float(q.x[i0])
    if graph is None:
        kw = {}
        if n_bounded:
            kw["n_bounded"] = n_bounded
        if n_ray:
            kw["n_ray"] = n_ray
        graph = build_lambda_contour(S, **kw)

    nx = q.x.size
    ni0 = nx - 1 - i0

    def coeffs_full(zetas):
        return eng.coefficients(zetas)

    def coeffs_cut(zetas):
        """(a0, abrk0, b0, bbrk0) of the right-cutoff potential."""
        zetas = np.atleast_1d(np.asarray(zetas, dtype=complex))
        mend = march_plus_to(eng, zetas, i0)
        with np.errstate(all="ignore"):
            ph = np.exp(-2j * zetas ** 2 * x0)  # e^{+2 i x0 zeta^2} inverse
            a0 = mend[:, 0, 0]
            abrk0 = mend[:, 1, 1]
            bbrk0 = mend[:, 0, 1] / ph
            b0 = mend[:, 1, 0] * ph
        return a0, abrk0, b0, bbrk0

    # abrk0 zero-free check on Omega+ inside B(0,R) (quarter-disc walks)
    for qd in (0, 2):
        walk = _quarter_disc_walk(qd, R, 160)
        _, abrk0, _, _ = coeffs_cut(walk)
        if _arg_winding(abrk0) != 0:
            raise WindingError("cutoff data has zeros inside B(0,R); "
                               "increase x0")

    arc_data = {}
    for ai, arc in enumerate(graph.arcs):
        lam = arc.nodes_z
        d = {}
        if arc.role in ("ray_left", "ray_right"):
            zet = zeta_of_lambda_vec(lam)
            a, abrk, b, bbrk = coeffs_full(zet)
            rho = (bbrk / a) / zet
            rho[np.abs(rho) < RHO_NOISE_FLOOR] = 0.0
            rho[np.abs(lam) > LAMBDA_MAX_FACTOR * S] = 0.0
            d["rho"] = rho
            d["alpha"] = a
            d["abrk"] = abrk
        elif arc.role == "segment":
            zet = zeta_of_lambda_vec(lam)
            a0, abrk0, b0, bbrk0 = coeffs_cut(zet)
            d["rho0"] = (bbrk0 / a0) / zet
            a, abrk, _, _ = coeffs_full(zet)
            d["alpha"] = a
            d["abrk"] = abrk
        elif arc.role == "circle_up":
            zet = zeta_of_lambda_vec(lam)
            _, abrk, _, _ = coeffs_full(zet)
            _, abrk0, _, _ = coeffs_cut(zet)
            mm = march_minus_to(eng, zet, i0)
            d["inv_abrk"] = 1.0 / abrk
            d["inv_abrk0"] = 1.0 / abrk0
            d["n21m"] = zet * mm[:, 1, 0]
        elif arc.role == "circle_dn":
            zet = zeta_of_lambda_vec(lam)
            a, _, _, _ = coeffs_full(zet)
            a0, _, _, _ = coeffs_cut(zet)
            mm = march_minus_to(eng, zet, i0)
            d["inv_alpha"] = 1.0 / a
            d["inv_alpha0"] = 1.0 / a0
            d["n12m"] = mm[:, 0, 1] / zet
        arc_data[ai] = d
    return ScatteringData(q, graph, R, x0, i0, arc_data)


def march_plus_to(eng, zetas, i0):
    ni = eng.x.size - 1 - i0
    return _march(eng, eng.cols_left[:ni], -eng.h, zetas)


def march_minus_to(eng, zetas, i0):
    return _march(eng, eng.cols_right[:i0], eng.h, zetas)


def _march(eng, cols, h, zetas):
    from ._kernels import march_endpoints
    return march_endpoints(cols, h, zetas)


def zeta_of_lambda_vec(lam):
    lam = np.asarray(lam, dtype=complex)
    ang = np.angle(lam) % (2 * np.pi)
    return np.sqrt(np.abs(lam)) * np.exp(0.5j * ang)


def _quarter_disc_walk(quadrant, R, m):
    th0 = quadrant * np.pi / 2
    rad = np.linspace(R * 1e-3, R, m)
    ang = np.linspace(th0, th0 + np.pi / 2, 2 * m)
    return np.concatenate([rad * np.exp(1j * th0),
                           R * np.exp(1j * ang),
                           rad[::-1] * np.exp(1j * (th0 + np.pi / 2))])


# ---- jump field ---------------------------------------------------------------

def _unit():
    return np.array([[1.0 + 0j, 0j], [0j, 1.0 + 0j]])


class JumpField:
    """Per-arc 2x2 jump samples J with triangular factors Jp, Jm.

    Time enters through the explicit conjugation law; t is carried here and
    in the W-phase construction of the solver.
    """

    def __init__(self, sd: ScatteringData, graph, J, Jp=None, Jm=None, t=0.0,
                 regularized=False, omega=None):
        self.sd = sd
        self.graph = graph
        self.J = J        # arc index -> (n, 2, 2)
        self.Jp = Jp or {}
        self.Jm = Jm or {}
        self.t = t
        self.regularized = regularized
        self.omega = omega

    def det_residual(self):
        worst = 0.0
        for ai, Jarr in self.J.items():
            det = Jarr[:, 0, 0] * Jarr[:, 1, 1] - Jarr[:, 0, 1] * Jarr[:, 1, 0]
            worst = max(worst, np.abs(det - 1).max())
        return worst


def assemble_jump(sd: ScatteringData, graph=None, t=0.0):
    """Fill the jump matrices on every arc of the contour at time t = 0.

    On the modified contour the reoriented segment carries the inverse of
    the right-to-left jump, and the ellipse arcs the identity.
    """
    graph = graph or sd.graph
    reversed_segment = graph.meta.get("kind") == "lambda_m"
    J = {}
    for ai, arc in enumerate(graph.arcs):
        n = arc.n
        Jarr = np.tile(_unit(), (n, 1, 1))
        d = sd.arc_data.get(ai, {})
        if arc.role in ("ray_left", "ray_right"):
            rho = d["rho"]
            lam = arc.nodes_z.real
            Jarr[:, 0, 0] = 1 + lam * np.abs(rho) ** 2
            Jarr[:, 0, 1] = rho
            Jarr[:, 1, 0] = lam * np.conj(rho)
        elif arc.role == "segment" and reversed_segment:
            rho0 = d["rho0"]
            lam = arc.nodes_z.real
            Jarr[:, 0, 0] = 1 + lam * np.abs(rho0) ** 2
            Jarr[:, 0, 1] = rho0
            Jarr[:, 1, 0] = lam * np.conj(rho0)
        elif arc.role == "segment":
            rho0 = d["rho0"]
            lam = arc.nodes_z.real
            Jarr[:, 0, 1] = -rho0
            Jarr[:, 1, 0] = -lam * np.conj(rho0)
            Jarr[:, 1, 1] = 1 + lam * np.abs(rho0) ** 2
        elif arc.role == "circle_up":
            lam = arc.nodes_z
            Jarr[:, 1, 0] = np.exp(-2j * sd.x0 * lam) * d["n21m"] \
                * d["inv_abrk"] * d["inv_abrk0"]
        elif arc.role == "circle_dn":
            lam = arc.nodes_z
            Jarr[:, 0, 1] = -np.exp(2j * sd.x0 * lam) * d["n12m"] \
                * d["inv_alpha"] * d["inv_alpha0"]
        # ellipse arcs stay identity
        J[ai] = Jarr
    return JumpField(sd, graph, J, t=t)


def factorize_jump(jf: JumpField):
    """Triangular factors per arc; on the circle one factor carries the jump.

    On R_infty: J = Jm^{-1} Jp with Jm^{-1} unit upper, Jp unit lower.
    On (-S, S) traversed right-to-left: Jm unit lower, Jp unit upper.
    On the reoriented segment of the modified contour the jump is the
    inverse of the right-to-left one and factorizes like R_infty with rho0.
    """
    graph = jf.graph
    reversed_segment = graph.meta.get("kind") == "lambda_m"
    for ai, arc in enumerate(graph.arcs):
        n = arc.n
        Jarr = jf.J[ai]
        Jp = np.tile(_unit(), (n, 1, 1))
        Jm = np.tile(_unit(), (n, 1, 1))
        if arc.role in ("ray_left", "ray_right"):
            Jm[:, 0, 1] = -Jarr[:, 0, 1]          # Jm = [[1, -rho],[0,1]]
            Jp[:, 1, 0] = Jarr[:, 1, 0]           # Jp = [[1,0],[lam conj rho,1]]
        elif arc.role == "segment" and not reversed_segment:
            Jm[:, 1, 0] = -Jarr[:, 1, 0]          # Jm = [[1,0],[lam conj rho0,1]]
            Jp[:, 0, 1] = Jarr[:, 0, 1]           # Jp = [[1,-rho0],[0,1]]
        elif arc.role == "segment" and reversed_segment:
            # jump here is [[1+lam|rho0|^2, rho0],[lam conj rho0, 1]]
            Jm[:, 0, 1] = -Jarr[:, 0, 1]
            Jp[:, 1, 0] = Jarr[:, 1, 0]
        elif arc.role == "circle_up":
            Jp[:, 1, 0] = Jarr[:, 1, 0]           # Jm = I
        elif arc.role == "circle_dn":
            Jm[:, 0, 1] = -Jarr[:, 0, 1]          # Jp = I
        jf.Jp[ai] = Jp
        jf.Jm[ai] = Jm
    return jf


# ---- junction diagnostics ------------------------------------------------------

def _arc_endpoint_matrix(graph, jf, ai, which_end, deriv=False):
    """One-sided limit (or lambda-derivative) of J on arc ai at a node end."""
    arc = graph.arcs[ai]
    s0 = -1.0 if which_end == "start" else 1.0
    out = np.empty((2, 2), dtype=complex)
    dout = np.empty((2, 2), dtype=complex)
    for r in range(2):
        for c in range(2):
            coef = arc.coeff_mat @ jf.J[ai][:, r, c]
            out[r, c] = coeff_eval(coef, s0)
            if deriv:
                dc = coeff_derivative(coef)
                zs = complex(arc.dz_of_s(np.array([s0]))[0])
                dout[r, c] = coeff_eval(dc, s0) / zs
    return (out, dout) if deriv else out


def check_product_condition(jf: JumpField, node_z):
    """Order-0 and order-1 residuals of the product condition at a node.

    The counter-clockwise product of J (outgoing arcs) and J^{-1}
    (incoming arcs) must be I to first order in (lambda - node).
    """
    graph = jf.graph
    ni = graph.node_index_at(node_z)
    inc = graph.nodes[ni]["incident"]
    P = np.eye(2, dtype=complex)
    dP = np.zeros((2, 2), dtype=complex)
    for e in inc:
        J, dJ = _arc_endpoint_matrix(graph, jf, e["arc"], e["end"], deriv=True)
        if not e["outgoing"]:
            Jinv = np.linalg.inv(J)
            dJ = -Jinv @ dJ @ Jinv
            J = Jinv
        # product rule: d(P J) = dP J + P dJ
        dP = dP @ J + P @ dJ
        P = P @ J
    r0 = np.abs(P - np.eye(2)).max()
    r1 = np.abs(dP).max()
    return r0, r1


# ---- Schwarz symmetry of the zeta-plane jump -----------------------------------

def zeta_jump_v(q: Potential, sd: ScatteringData, zetas):
    """v(zeta) on the augmented zeta contour, per the four-piece formulas."""
    eng = JostEngine(q)
    zetas = np.atleast_1d(np.asarray(zetas, dtype=complex))
    out = np.empty((zetas.size, 2, 2), dtype=complex)
    R = sd.R
    on_axis = (np.abs(zetas.imag) < 1e-13) | (np.abs(zetas.real) < 1e-13)
    for i, z in enumerate(zetas):
        v = np.eye(2, dtype=complex)
        if on_axis[i] and abs(z) > R:
            a, abrk, b, bbrk = eng.coefficients(np.array([z]))
            r = bbrk[0] / a[0]
            rbrk = b[0] / abrk[0]
            v = np.array([[1 - r * rbrk, r], [-rbrk, 1.0]])
        elif on_axis[i]:
            a0, abrk0, b0, bbrk0 = _cut_coeffs(eng, sd, np.array([z]))
            r0 = bbrk0[0] / a0[0]
            rbrk0 = b0[0] / abrk0[0]
            v = np.array([[1.0, -r0], [rbrk0, 1 - r0 * rbrk0]])
        else:
            im2 = (z * z).imag
            mm = march_minus_to(eng, np.array([z]), sd.i0)[0]
            ph = np.exp(2j * sd.x0 * z * z)
            if im2 > 0:  # first/third quadrant arcs
                _, abrk, _, _ = eng.coefficients(np.array([z]))
                _, abrk0, _, _ = _cut_coeffs(eng, sd, np.array([z]))
                v = np.eye(2, dtype=complex)
                v[1, 0] = mm[1, 0] / (abrk[0] * abrk0[0]) / ph
            else:
                a, _, _, _ = eng.coefficients(np.array([z]))
                a0, _, _, _ = _cut_coeffs(eng, sd, np.array([z]))
                v = np.eye(2, dtype=complex)
                v[0, 1] = -mm[0, 1] / (a[0] * a0[0]) * ph
        out[i] = v
    return out


def _cut_coeffs(eng, sd, zetas):
    mend = march_plus_to(eng, zetas, sd.i0)
    with np.errstate(all="ignore"):
        ph = np.exp(-2j * zetas ** 2 * sd.x0)
        return mend[:, 0, 0], mend[:, 1, 1], mend[:, 1, 0] * ph, mend[:, 0, 1] / ph


def schwarz_residuals(q: Potential, sd: ScatteringData, n_samples=24, seed=7):
    """(min eigenvalue of v + v^dagger on R, max |v(conj z) - v(z)^dagger|)."""
    rng = np.random.default_rng(seed)
    R = sd.R
    zs_real = np.concatenate([rng.uniform(R * 1.05, 3 * R, n_samples // 2),
                              rng.uniform(0.05 * R, R * 0.95, n_samples // 2)])
    v = zeta_jump_v(q, sd, zs_real + 0j)
    eig_min = np.inf
    for vi in v:
        w = np.linalg.eigvalsh(vi + vi.conj().T)
        eig_min = min(eig_min, w.min())
    zs_off = np.concatenate([
        1j * rng.uniform(0.05 * R, 0.95 * R, n_samples // 3),
        1j * rng.uniform(1.05 * R, 3 * R, n_samples // 3),
        R * np.exp(1j * rng.uniform(0.05, np.pi / 2 - 0.05, n_samples // 3)),
    ])
    sym = 0.0
    for z in zs_off:
        v1 = zeta_jump_v(q, sd, np.array([z]))[0]
        v2 = zeta_jump_v(q, sd, np.array([np.conj(z)]))[0]
        sym = max(sym, np.abs(v2 - v1.conj().T).max())
    return eig_min, sym


# ---- auxiliary left conjugation -------------------------------------------------

class AuxiliaryConjugator:
    """Diagonal auxiliary matrices s = diag(1/delta, delta) off the circle.

    delta is abrk approached from above the real axis and alpha from below;
    det s = 1 by construction.  Inside the circle the auxiliary matrix of
    the genuine left problem involves the left-cutoff solutions and is not
    diagonal; those pieces are built from the reflected potential instead
    (see reconstruct.inverse_map).
    """

    def __init__(self, sd: ScatteringData, arc_index):
        d = sd.arc_data[arc_index]
        self.delta_above = d["abrk"]
        self.delta_below = d["alpha"]

    def s_above(self):
        n = self.delta_above.size
        s = np.zeros((n, 2, 2), dtype=complex)
        s[:, 0, 0] = 1.0 / self.delta_above
        s[:, 1, 1] = self.delta_above
        return s

    def s_below(self):
        n = self.delta_below.size
        s = np.zeros((n, 2, 2), dtype=complex)
        s[:, 0, 0] = 1.0 / self.delta_below
        s[:, 1, 1] = self.delta_below
        return s

    def conjugate(self, Jarr):
        """Left-normalized jump: row scale (alpha, 1/alpha), column scale
        (abrk, 1/abrk); unit corners are preserved for the flipped
        factorization."""
        al, ab = self.delta_below, self.delta_above
        Jt = Jarr.copy()
        Jt[:, 0, 0] = al * Jarr[:, 0, 0] * ab
        Jt[:, 0, 1] = al * Jarr[:, 0, 1] / ab
        Jt[:, 1, 0] = Jarr[:, 1, 0] * ab / al
        Jt[:, 1, 1] = Jarr[:, 1, 1] / (al * ab)
        return Jt


def left_conjugate(jf: JumpField):
    """Diagonal conjugation to the left-normalized jump on the real-axis rays.

    The flipped triangular factorization is filled on the conjugated arcs;
    the inside-the-circle pieces are left untouched (see
    AuxiliaryConjugator).
    """
    sd = jf.sd
    graph = jf.graph
    J = {ai: arr.copy() for ai, arr in jf.J.items()}
    Jp = {ai: arr.copy() for ai, arr in jf.Jp.items()} if jf.Jp else {}
    Jm = {ai: arr.copy() for ai, arr in jf.Jm.items()} if jf.Jm else {}
    for ai, arc in enumerate(graph.arcs):
        if arc.role not in ("ray_left", "ray_right"):
            continue
        conj = AuxiliaryConjugator(sd, ai)
        det_s = conj.s_above()[:, 0, 0] * conj.s_above()[:, 1, 1]
        if np.abs(det_s - 1).max() > 1e-12:
            raise ValueError("auxiliary matrix not unimodular")
        Jt = conj.conjugate(J[ai])
        J[ai] = Jt
        n = arc.n
        JpT = np.tile(_unit(), (n, 1, 1))
        JmT = np.tile(_unit(), (n, 1, 1))
        JpT[:, 0, 1] = Jt[:, 0, 1]    # now strictly upper
        JmT[:, 1, 0] = -Jt[:, 1, 0]   # now strictly lower
        Jp[ai] = JpT
        Jm[ai] = JmT
    return JumpField(sd, graph, J, Jp, Jm, t=jf.t)
