"""Potentials on a truncated uniform grid, with optional analytic families."""

import json

import numpy as np
from scipy.interpolate import CubicSpline

TRUNCATION_TOL = 1e-10


class Potential:
    """Complex-valued potential sampled on a uniform grid over [-X, X].

    An analytic descriptor (family + parameters) provides exact off-grid
    values for the marching integrator; sampled-only potentials fall back
    to a cubic spline.
    """

    def __init__(self, x, q, family=None, params=None):
        x = np.asarray(x, dtype=float)
        q = np.asarray(q, dtype=complex)
        if x.ndim != 1 or x.shape != q.shape:
            raise ValueError("x and q must be matching 1-d arrays")
        dx = np.diff(x)
        if not np.allclose(dx, dx[0], rtol=1e-12, atol=1e-14):
            raise ValueError("grid must be uniform")
        self.x = x
        self.q = q
        self.family = family
        self.params = dict(params or {})
        self._spline = None

    # ---- constructors ---------------------------------------------------
    @classmethod
    def sech(cls, A, X=24.0, n=8001, phase=None):
        """q(x) = A sech(x) exp(i * polyval(phase, x)); phase may be None."""
        x = np.linspace(-X, X, n)
        q = A / np.cosh(x)
        params = {"A": float(A)}
        if phase:
            params["phase"] = list(map(float, phase))
            q = q * np.exp(1j * np.polyval(list(reversed(params["phase"])), x))
        return cls(x, q, family="sech", params=params)

    @classmethod
    def zero(cls, X=24.0, n=8001):
        x = np.linspace(-X, X, n)
        return cls(x, np.zeros(n, dtype=complex), family="zero")

    @classmethod
    def from_samples(cls, x, q):
        return cls(x, q)

    # ---- evaluation -----------------------------------------------------
    def __call__(self, xq):
        xq = np.asarray(xq, dtype=float)
        if self.family == "zero":
            return np.zeros(xq.shape, dtype=complex)
        if self.family == "sech":
            A = self.params["A"]
            q = A / np.cosh(xq)
            if "phase" in self.params:
                q = q * np.exp(1j * np.polyval(list(reversed(self.params["phase"])), xq))
            return q
        if self._spline is None:
            self._spline = (CubicSpline(self.x, self.q.real, extrapolate=True),
                            CubicSpline(self.x, self.q.imag, extrapolate=True))
        re, im = self._spline
        out = re(xq) + 1j * im(xq)
        out[np.abs(xq) > self.x[-1] + 1e-12] = 0.0
        return out

    # ---- properties -------------------------------------------------------
    @property
    def X(self):
        return float(self.x[-1])

    @property
    def dx(self):
        return float(self.x[1] - self.x[0])

    def truncation_ok(self, tol=TRUNCATION_TOL):
        return max(abs(self.q[0]), abs(self.q[-1])) < tol

    def l2_norm_sq(self):
        return float(np.trapezoid(np.abs(self.q) ** 2, self.x))

    def weighted_sobolev_estimate(self):
        """Discrete H^{2,2} estimate: L2 norms of q, q'', x^2 q."""
        dx = self.dx
        qxx = np.gradient(np.gradient(self.q, dx), dx)
        n0 = np.trapezoid(np.abs(self.q) ** 2, self.x)
        n2 = np.trapezoid(np.abs(qxx) ** 2, self.x)
        nw = np.trapezoid(np.abs(self.x ** 2 * self.q) ** 2, self.x)
        return float(np.sqrt(n0 + n2 + nw))

    def reflected_conjugate(self):
        """p(x) = conj(q(-x)); maps left-normalized objects to right ones."""
        if self.family == "sech" and "phase" not in self.params:
            return Potential.sech(np.conj(self.params["A"]).real, self.X, self.x.size)
        return Potential(self.x, np.conj(self.q[::-1]))

    def perturbed(self, delta_fn):
        return Potential(self.x, self.q + delta_fn(self.x))

    def cutoff_right(self, x0):
        """q * chi_{(x0, inf)} as sampled data (x0 must be a grid point)."""
        i0 = int(np.argmin(np.abs(self.x - x0)))
        if abs(self.x[i0] - x0) > 1e-9:
            raise ValueError("x0 must be a grid point")
        q = self.q.copy()
        q[: i0 + 1] = 0.0
        return Potential(self.x, q), i0

    # ---- serialization -----------------------------------------------------
    def to_json(self):
        doc = {"grid": {"xmin": self.x[0], "xmax": self.x[-1], "n": self.x.size}}
        if self.family:
            doc["family"] = self.family
            doc.update(self.params)
        else:
            doc["samples"] = [[v.real, v.imag] for v in self.q]
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        g = doc["grid"]
        n = int(g["n"])
        if doc.get("family") == "sech":
            X = float(g["xmax"])
            return cls.sech(doc["A"], X=X, n=n, phase=doc.get("phase"))
        if doc.get("family") == "zero":
            return cls.zero(float(g["xmax"]), n)
        x = np.linspace(float(g["xmin"]), float(g["xmax"]), n)
        q = np.array([complex(a, b) for a, b in doc["samples"]])
        return cls(x, q)
