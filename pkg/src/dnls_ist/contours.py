"""Oriented self-intersecting contours in the spectral planes.

Arcs are parameterized by rational maps of the Chebyshev parameter s in
[-1, 1] (affine for segments, Moebius for rays and circular arcs, degree-2
rational for elliptical arcs).  This makes the Cauchy transform of a
per-arc Chebyshev interpolant exactly reducible to interval transforms at
preimage and pole parameters; see cauchy.py.

The plus side of every arc is the left side of its traversal; the builders
reproduce the orientation and region layout of the augmented contours
(zeta plane cross + circle, lambda plane line + circle, and the modified
contour with the added ellipse).
"""

import cmath
import json
import math

import numpy as np

from .chebyshev import (
    barycentric_weights,
    cheb_nodes,
    coeff_derivative,
    coeff_eval,
    nodal_to_coeff_matrix,
    tk_integrals,
)

NODE_TOL = 1e-12
DEFAULT_N_BOUNDED = 64
DEFAULT_N_RAY = 96


class Arc:
    """One smooth oriented piece of a contour."""

    def __init__(self, kind, n, role="", **params):
        if n < 4:
            raise ValueError("need at least 4 nodes per arc")
        self.kind = kind
        self.n = int(n)
        self.role = role
        self.params = params
        self._build_cache()

    # ---- constructors -------------------------------------------------
    @classmethod
    def segment(cls, za, zb, n, role=""):
        return cls("segment", n, role, za=complex(za), zb=complex(zb))

    @classmethod
    def ray(cls, endpoint, direction, scale, n, inf_at="end", role=""):
        d = complex(direction)
        d /= abs(d)
        if inf_at not in ("start", "end"):
            raise ValueError("inf_at must be 'start' or 'end'")
        return cls("ray", n, role, endpoint=complex(endpoint), direction=d,
                   scale=float(scale), inf_at=inf_at)

    @classmethod
    def circular(cls, center, radius, th1, th2, n, role=""):
        if radius <= 0:
            raise ValueError("radius must be positive")
        if not 0 < abs(th2 - th1) <= np.pi + 1e-12:
            raise ValueError("circular arcs must span (0, pi]")
        return cls("circular", n, role, center=complex(center), radius=float(radius),
                   th1=float(th1), th2=float(th2))

    @classmethod
    def elliptical(cls, center, ax, ay, ph1, ph2, n, role=""):
        if ax <= 0 or ay <= 0:
            raise ValueError("degenerate ellipse")
        if not 0 < abs(ph2 - ph1) <= np.pi + 1e-12:
            raise ValueError("elliptical arcs must span (0, pi]")
        return cls("elliptical", n, role, center=complex(center), ax=float(ax),
                   ay=float(ay), ph1=float(ph1), ph2=float(ph2))

    # ---- parameterization ---------------------------------------------
    def z_of_s(self, s):
        s = np.asarray(s, dtype=complex)
        p = self.params
        if self.kind == "segment":
            mid = 0.5 * (p["za"] + p["zb"])
            half = 0.5 * (p["zb"] - p["za"])
            return mid + half * s
        if self.kind == "ray":
            e, d, L = p["endpoint"], p["direction"], p["scale"]
            if p["inf_at"] == "end":
                return e + d * L * (1 + s) / (1 - s)
            return e + d * L * (1 - s) / (1 + s)
        if self.kind == "circular":
            mid, kappa, E = self._angle_map()
            t = kappa * s
            return p["center"] + p["radius"] * E * (1 + 1j * t) / (1 - 1j * t)
        # elliptical
        mid, kappa, E = self._angle_map()
        t = kappa * s
        xi = E * (1 + 1j * t) / (1 - 1j * t)
        c1 = 0.5 * (p["ax"] + p["ay"])
        c2 = 0.5 * (p["ax"] - p["ay"])
        return p["center"] + c1 * xi + c2 / xi

    def dz_of_s(self, s):
        s = np.asarray(s, dtype=complex)
        p = self.params
        if self.kind == "segment":
            half = 0.5 * (p["zb"] - p["za"])
            return np.full_like(s, half)
        if self.kind == "ray":
            d, L = p["direction"], p["scale"]
            if p["inf_at"] == "end":
                return 2 * d * L / (1 - s) ** 2
            return -2 * d * L / (1 + s) ** 2
        if self.kind == "circular":
            mid, kappa, E = self._angle_map()
            t = kappa * s
            return p["radius"] * E * 2j * kappa / (1 - 1j * t) ** 2
        mid, kappa, E = self._angle_map()
        t = kappa * s
        xi = E * (1 + 1j * t) / (1 - 1j * t)
        dxi = E * 2j * kappa / (1 - 1j * t) ** 2
        c1 = 0.5 * (p["ax"] + p["ay"])
        c2 = 0.5 * (p["ax"] - p["ay"])
        return (c1 - c2 / xi ** 2) * dxi

    def _angle_map(self):
        p = self.params
        if self.kind == "circular":
            a1, a2 = p["th1"], p["th2"]
        else:
            a1, a2 = p["ph1"], p["ph2"]
        mid = 0.5 * (a1 + a2)
        half = 0.5 * (a2 - a1)
        return mid, math.tan(0.5 * half), cmath.exp(1j * mid)

    # ---- cached collocation data ---------------------------------------
    def _build_cache(self):
        self.nodes_s = cheb_nodes(self.n)
        self.nodes_z = self.z_of_s(self.nodes_s)
        self.dz_nodes = self.dz_of_s(self.nodes_s)
        self.coeff_mat = nodal_to_coeff_matrix(self.n)
        self.bary_w = barycentric_weights(self.n)
        # complex line-element weights: int f dz ~ w . f
        self.quad_w = (tk_integrals(self.n) @ self.coeff_mat) * self.dz_nodes

    # ---- Cauchy decomposition ------------------------------------------
    def cauchy_poles(self, z):
        """(s_location, sign, on_cut) terms of z'(s)/(z(s)-z) = sum sign/(s-s_loc).

        Preimages of z carry sign +1, finite parameterization poles sign -1.
        The endpoint poles of ray arcs are handled separately
        (endpoint_pole_terms), and need densities vanishing at infinity.
        """
        z = complex(z)
        p = self.params
        out = []
        if self.kind == "segment":
            mid = 0.5 * (p["za"] + p["zb"])
            half = 0.5 * (p["zb"] - p["za"])
            out.append(((z - mid) / half, 1))
        elif self.kind == "ray":
            e, d, L = p["endpoint"], p["direction"], p["scale"]
            u = (z - e) / (d * L)
            if p["inf_at"] == "end":
                w = (u - 1) / (u + 1)
            else:
                w = (1 - u) / (1 + u)
            out.append((w, 1))
        elif self.kind == "circular":
            mid, kappa, E = self._angle_map()
            xi0 = (z - p["center"]) / (p["radius"] * E)
            if abs(xi0 + 1) > 1e-13:
                t = -1j * (xi0 - 1) / (xi0 + 1)
                out.append((t / kappa, 1))
            out.append((-1j / kappa, -1))
        else:
            mid, kappa, E = self._angle_map()
            c1 = 0.5 * (p["ax"] + p["ay"])
            c2 = 0.5 * (p["ax"] - p["ay"])
            zc = z - p["center"]
            disc = cmath.sqrt(zc * zc - 4 * c1 * c2)
            for xi in ((zc + disc) / (2 * c1), (zc - disc) / (2 * c1)):
                xr = xi / E
                if abs(xr + 1) > 1e-13:
                    t = -1j * (xr - 1) / (xr + 1)
                    out.append((t / kappa, 1))
            out.append((-1j / kappa, -1))
            out.append((1j / kappa, -1))
        result = []
        for s_loc, sign in out:
            on_cut = abs(s_loc.imag) < 1e-12 and abs(s_loc.real) < 1 - 1e-12
            result.append((s_loc, sign, on_cut))
        return result

    def endpoint_pole_terms(self):
        if self.kind != "ray":
            return []
        return [(1, -1)] if self.params["inf_at"] == "end" else [(-1, -1)]

    # ---- endpoints / topology ------------------------------------------
    def endpoints(self):
        """(start, end), None at an infinite ray end."""
        if self.kind == "ray":
            e = self.params["endpoint"]
            return (None, e) if self.params["inf_at"] == "start" else (e, None)
        za = complex(self.z_of_s(np.array([-1.0]))[0])
        zb = complex(self.z_of_s(np.array([1.0]))[0])
        return (za, zb)

    def dart_geometry(self, which_end):
        """(angle, curvature) of the dart leaving the node at which_end."""
        s0 = -1.0 if which_end == "start" else 1.0
        sgn = 1.0 if which_end == "start" else -1.0  # travel away from the node
        dz = complex(self.dz_of_s(np.array([s0]))[0]) * sgn
        h = 1e-5
        dz2 = (complex(self.dz_of_s(np.array([s0 - sgn * 0]))[0])
               - complex(self.dz_of_s(np.array([s0 - sgn * h]))[0])) / (sgn * h)
        kappa = (np.conj(dz) * dz2).imag / abs(dz) ** 3
        return math.atan2(dz.imag, dz.real) % (2 * np.pi), kappa

    def reversed(self):
        p = self.params
        if self.kind == "segment":
            return Arc.segment(p["zb"], p["za"], self.n, self.role)
        if self.kind == "ray":
            flip = "start" if p["inf_at"] == "end" else "end"
            return Arc.ray(p["endpoint"], p["direction"], p["scale"], self.n,
                           inf_at=flip, role=self.role)
        if self.kind == "circular":
            return Arc.circular(p["center"], p["radius"], p["th2"], p["th1"],
                                self.n, self.role)
        return Arc.elliptical(p["center"], p["ax"], p["ay"], p["ph2"], p["ph1"],
                              self.n, self.role)

    def interp(self, vals, z):
        """Evaluate the interpolant of per-node vals at points z on the arc."""
        s = self.s_of_z(z)
        from .chebyshev import barycentric_eval
        return barycentric_eval(self.nodes_s, vals, self.bary_w, s)

    def s_of_z(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.empty(z.shape, dtype=float)
        for i, zi in enumerate(z):
            cands = [s for s, sign, _ in self.cauchy_poles(zi) if sign > 0]
            best = min(cands, key=lambda s: abs(s.imag) + max(0.0, abs(s.real) - 1))
            out[i] = float(np.real(best))
        return out

    def to_dict(self):
        d = {"kind": self.kind, "n": self.n, "role": self.role}
        for k, v in self.params.items():
            if isinstance(v, complex):
                d[k] = [v.real, v.imag]
            else:
                d[k] = v
        return d

    @classmethod
    def from_dict(cls, d):
        params = {}
        for k, v in d.items():
            if k in ("kind", "n", "role"):
                continue
            params[k] = complex(v[0], v[1]) if isinstance(v, list) else v
        return cls(d["kind"], d["n"], d.get("role", ""), **params)


class ContourGraph:
    """Immutable oriented contour with collocation data and node topology."""

    def __init__(self, arcs, meta=None):
        self.arcs = tuple(arcs)
        self.meta = dict(meta or {})
        offs = [0]
        for a in self.arcs:
            offs.append(offs[-1] + a.n)
        self._offsets = offs
        self.nodes = self._find_nodes()

    # ---- collocation ----------------------------------------------------
    def arc_slice(self, i):
        return self._offsets[i], self._offsets[i + 1]

    @property
    def total_nodes(self):
        return self._offsets[-1]

    def all_nodes_z(self):
        return np.concatenate([a.nodes_z for a in self.arcs])

    def all_quad_w(self):
        return np.concatenate([a.quad_w for a in self.arcs])

    def min_node_spacing(self):
        gaps = []
        for a in self.arcs:
            d = np.abs(np.diff(a.nodes_z))
            gaps.append(d.min())
        return min(gaps)

    def arc_index_by_role(self, role):
        for i, a in enumerate(self.arcs):
            if a.role == role:
                return i
        raise KeyError(role)

    # ---- topology --------------------------------------------------------
    def _find_nodes(self):
        points = []  # cluster representatives
        incid = []
        for ai, arc in enumerate(self.arcs):
            for which, z in zip(("start", "end"), arc.endpoints()):
                if z is None:
                    continue
                for pi, pz in enumerate(points):
                    if abs(pz - z) <= max(NODE_TOL, 1e-13 * (1 + abs(z))):
                        incid[pi].append((ai, which))
                        break
                else:
                    points.append(z)
                    incid.append([(ai, which)])
        nodes = []
        for pz, inc in zip(points, incid):
            entries = []
            for ai, which in inc:
                ang, kap = self.arcs[ai].dart_geometry(which)
                entries.append({
                    "arc": ai,
                    "end": which,
                    "outgoing": which == "start",
                    "angle": ang,
                    "curvature": kap,
                })
            entries.sort(key=lambda e: (e["angle"], e["curvature"]))
            nodes.append({"z": pz, "incident": entries})
        return nodes

    def node_index_at(self, z):
        for i, nd in enumerate(self.nodes):
            if abs(nd["z"] - z) <= max(NODE_TOL, 1e-12 * (1 + abs(z))):
                return i
        raise KeyError(f"no node at {z}")

    def sector_labels(self, node_idx):
        """Region label of each ccw sector between consecutive incident darts.

        Sector i lies ccw between dart i and dart i+1; label '+' when it is
        the left side of dart i.  Consistency with dart i+1 is asserted.
        """
        inc = self.nodes[node_idx]["incident"]
        m = len(inc)
        labels = []
        for i in range(m):
            a, b = inc[i], inc[(i + 1) % m]
            lab = "+" if a["outgoing"] else "-"
            lab_b = "-" if b["outgoing"] else "+"
            if lab != lab_b:
                raise ValueError("inconsistent in/out alternation at node")
            labels.append(lab)
        return labels

    # ---- faces / completeness --------------------------------------------
    def _outgoing_darts(self):
        """Per node-id (ints and 'inf'), ccw-sorted outgoing darts (arc, dir)."""
        at = {}
        node_of_end = {}
        for ni, nd in enumerate(self.nodes):
            for e in nd["incident"]:
                node_of_end[(e["arc"], e["end"])] = ni
        for ni, nd in enumerate(self.nodes):
            lst = []
            for e in nd["incident"]:
                dart = (e["arc"], +1) if e["end"] == "start" else (e["arc"], -1)
                lst.append((e["angle"], e["curvature"], dart))
            lst.sort(key=lambda r: (r[0], r[1]))
            at[ni] = [r[2] for r in lst]
        inf_list = []
        for ai, arc in enumerate(self.arcs):
            if arc.kind != "ray":
                continue
            d = arc.params["direction"]
            theta = math.atan2(d.imag, d.real) % (2 * np.pi)
            dart = (ai, -1) if arc.params["inf_at"] == "end" else (ai, +1)
            inf_list.append((theta, dart))
        if inf_list:
            inf_list.sort(key=lambda r: -r[0])  # inversion reverses orientation
            at["inf"] = [r[1] for r in inf_list]
        self._node_of_end = node_of_end
        return at

    def _dart_head(self, dart):
        ai, d = dart
        arc = self.arcs[ai]
        end = "end" if d == +1 else "start"
        s, e = arc.endpoints()
        z = e if d == +1 else s
        if z is None:
            return "inf"
        return self._node_of_end[(ai, end)]

    def faces(self):
        """Faces as dart cycles; each dart is (arc_idx, +-1)."""
        outgoing = self._outgoing_darts()
        darts = [(ai, d) for ai in range(len(self.arcs)) for d in (+1, -1)]
        unused = set(darts)
        faces = []
        while unused:
            start = next(iter(unused))
            cyc = []
            d = start
            while True:
                cyc.append(d)
                unused.discard(d)
                v = self._dart_head(d)
                rev = (d[0], -d[1])
                lst = outgoing[v]
                i = lst.index(rev)
                d = lst[(i - 1) % len(lst)]
                if d == start:
                    break
                if d in cyc and d != start:
                    raise RuntimeError("face walk failed to close")
            faces.append(cyc)
        return faces

    def completeness_check(self):
        """True when every face is bounded by a single side label.

        The label of a face seen from dart (arc, +1) is '+' (left side),
        from (arc, -1) it is '-'.
        """
        for cyc in self.faces():
            labs = {"+" if d == 1 else "-" for (_, d) in cyc}
            if len(labs) != 1:
                return False
        return True

    # ---- region queries ----------------------------------------------------
    def region_label(self, z):
        kind = self.meta.get("kind")
        z = complex(z)
        if kind == "zeta":
            R = self.meta["R"]
            im2 = (z * z).imag
            if im2 == 0 or abs(abs(z) - R) < 1e-14:
                raise ValueError("point on the contour")
            if abs(z) > R:
                return "+" if im2 > 0 else "-"
            return "+" if im2 < 0 else "-"
        if kind in ("lambda", "lambda_m"):
            S = self.meta["S_inf"]
            if z.imag == 0 or abs(abs(z) - S) < 1e-14:
                raise ValueError("point on the contour")
            if abs(z) > S:
                return "+" if z.imag > 0 else "-"
            if kind == "lambda":
                return "+" if z.imag < 0 else "-"
            ax, ay = self.meta["ax"], self.meta["ay"]
            inside_ellipse = (z.real / ax) ** 2 + (z.imag / ay) ** 2 < 1.0
            if inside_ellipse:
                return "+" if z.imag > 0 else "-"
            return "+" if z.imag < 0 else "-"
        raise NotImplementedError(f"no region map for {kind!r}")

    def side_of(self, z, from_point):
        """Label at from_point approached as a limit toward contour point z."""
        return self.region_label(from_point)

    # ---- serialization -------------------------------------------------
    def to_json(self):
        doc = {
            "meta": self.meta,
            "arcs": [a.to_dict() for a in self.arcs],
            "nodes": [[nd["z"].real, nd["z"].imag] for nd in self.nodes],
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        arcs = [Arc.from_dict(d) for d in doc["arcs"]]
        return cls(arcs, meta=doc.get("meta", {}))


# ---- builders --------------------------------------------------------------

def build_zeta_contour(R, n_bounded=DEFAULT_N_BOUNDED, n_ray=DEFAULT_N_RAY,
                       ray_scale=None):
    """Augmented contour R u iR u circle(R) in the zeta plane (12 arcs)."""
    if R <= 0:
        raise ValueError("R must be positive")
    L = ray_scale if ray_scale is not None else 2.0 * R
    nb, nr = n_bounded, n_ray
    arcs = [
        Arc.segment(0, 1j * R, nb, role="axis_in_pi"),
        Arc.segment(-R, 0, nb, role="axis_in_mr"),
        Arc.segment(R, 0, nb, role="axis_in_pr"),
        Arc.segment(0, -1j * R, nb, role="axis_in_mi"),
        Arc.ray(-1j * R, -1j, L, nr, inf_at="start", role="axis_out_mi"),
        Arc.ray(-R, -1, L, nr, inf_at="end", role="axis_out_mr"),
        Arc.ray(R, 1, L, nr, inf_at="end", role="axis_out_pr"),
        Arc.ray(1j * R, 1j, L, nr, inf_at="start", role="axis_out_pi"),
        Arc.circular(0, R, np.pi / 2, np.pi, nb, role="arc_q2"),
        Arc.circular(0, R, np.pi / 2, 0, nb, role="arc_q1"),
        Arc.circular(0, R, 3 * np.pi / 2, np.pi, nb, role="arc_q3"),
        Arc.circular(0, R, 3 * np.pi / 2, 2 * np.pi, nb, role="arc_q4"),
    ]
    return ContourGraph(arcs, meta={"kind": "zeta", "R": float(R)})


def build_lambda_contour(S_inf, n_bounded=DEFAULT_N_BOUNDED, n_ray=DEFAULT_N_RAY,
                         ray_scale=None):
    """Contour Gamma = R u circle(S_inf), inner segment right-to-left."""
    if S_inf <= 0:
        raise ValueError("S_inf must be positive")
    S = float(S_inf)
    L = ray_scale if ray_scale is not None else 2.0 * S
    arcs = [
        Arc.ray(-S, -1, L, n_ray, inf_at="start", role="ray_left"),
        Arc.segment(S, -S, n_bounded, role="segment"),
        Arc.ray(S, 1, L, n_ray, inf_at="end", role="ray_right"),
        Arc.circular(0, S, np.pi, 0, n_bounded, role="circle_up"),
        Arc.circular(0, S, np.pi, 2 * np.pi, n_bounded, role="circle_dn"),
    ]
    return ContourGraph(arcs, meta={"kind": "lambda", "S_inf": S})


def build_modified_contour(S_inf, ellipse_semiaxes=None,
                           n_bounded=DEFAULT_N_BOUNDED, n_ray=DEFAULT_N_RAY,
                           ray_scale=None):
    """Modified contour: segment reoriented left-to-right plus an ellipse."""
    S = float(S_inf)
    if ellipse_semiaxes is None:
        ellipse_semiaxes = (S, S / 4.0)
    ax, ay = map(float, ellipse_semiaxes)
    if ax <= 0 or ay <= 0:
        raise ValueError("degenerate ellipse")
    if abs(ax - S) > 1e-12:
        raise ValueError("ellipse must pass through +-S_inf")
    if ay >= S:
        raise ValueError("ellipse must stay inside the circle")
    L = ray_scale if ray_scale is not None else 2.0 * S
    arcs = [
        Arc.ray(-S, -1, L, n_ray, inf_at="start", role="ray_left"),
        Arc.segment(-S, S, n_bounded, role="segment"),
        Arc.ray(S, 1, L, n_ray, inf_at="end", role="ray_right"),
        Arc.circular(0, S, np.pi, 0, n_bounded, role="circle_up"),
        Arc.circular(0, S, np.pi, 2 * np.pi, n_bounded, role="circle_dn"),
        Arc.elliptical(0, ax, ay, 0, np.pi, n_bounded, role="ellipse_up"),
        Arc.elliptical(0, ax, ay, 2 * np.pi, np.pi, n_bounded, role="ellipse_dn"),
    ]
    return ContourGraph(arcs, meta={"kind": "lambda_m", "S_inf": S,
                                    "ax": ax, "ay": ay})


# ---- node traces and junction conditions -----------------------------------

class NodeTrace:
    """One-sided limits of a sampled function at a contour node.

    entries: list of dicts with arc index, outgoing flag and the one-sided
    limits (f, f', ..., f^(k-1)) taken as complex derivatives along the arc.
    """

    def __init__(self, z, entries, sector_labels):
        self.z = z
        self.entries = entries
        self.sector_labels = sector_labels


def node_trace(graph, node_idx, values, k):
    """Build a NodeTrace for per-node sample vector ``values`` on ``graph``.

    Limits carry complex derivatives along the arc up to order k-1 <= 2.
    """
    if k > 3:
        raise NotImplementedError("node traces support derivatives up to order 2")
    nd = graph.nodes[node_idx]
    entries = []
    for e in nd["incident"]:
        ai = e["arc"]
        arc = graph.arcs[ai]
        lo, hi = graph.arc_slice(ai)
        c = arc.coeff_mat @ np.asarray(values[lo:hi], dtype=complex)
        s0 = -1.0 if e["end"] == "start" else 1.0
        f = complex(coeff_eval(c, s0))
        lims = [f]
        if k >= 2:
            cs = coeff_derivative(c)
            fs = complex(coeff_eval(cs, s0))
            zs = complex(arc.dz_of_s(np.array([s0]))[0])
            lims.append(fs / zs)
        if k >= 3:
            css = coeff_derivative(cs)
            fss = complex(coeff_eval(css, s0))
            h = 1e-6
            zss = complex((arc.dz_of_s(np.array([s0 + h]))[0]
                           - arc.dz_of_s(np.array([s0 - h]))[0]) / (2 * h))
            lims.append((fss * zs - fs * zss) / zs ** 3)
        if not all(np.isfinite(v) for v in lims):
            raise ValueError("non-finite one-sided limit")
        entries.append({"arc": ai, "outgoing": e["outgoing"], "limits": lims})
    labels = graph.sector_labels(node_idx)
    return NodeTrace(nd["z"], entries, labels)


def check_zero_sum(trace, k):
    """Max over derivative orders of |sum_out f - sum_in f| at the node."""
    res = 0.0
    for j in range(k):
        tot = 0j
        for e in trace.entries:
            if len(e["limits"]) <= j:
                raise ValueError("trace lacks derivatives up to requested order")
            tot += (1 if e["outgoing"] else -1) * e["limits"][j]
        res = max(res, abs(tot))
    return res


def check_matching_pm(trace, side, k):
    """Residual of the plus/minus matching pairings at the node.

    Arcs bounding a common sector labeled ``side`` must have equal one-sided
    limits (derivatives up to order k-1).
    """
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    m = len(trace.entries)
    res = 0.0
    for i in range(m):
        if trace.sector_labels[i] != side:
            continue
        a = trace.entries[i]
        b = trace.entries[(i + 1) % m]
        for j in range(k):
            res = max(res, abs(a["limits"][j] - b["limits"][j]))
    return res
