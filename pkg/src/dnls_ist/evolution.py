"""Time evolution of jump data by the explicit conjugation law.

The (1,2) entries pick up exp(-4 i lambda^2 t), the (2,1) entries the
inverse phase, diagonals unchanged; in the zeta variables the phase is
exp(-+ 4 i zeta^4 t).
"""

import numpy as np


def _phase_lambda(lam, t):
    return np.exp(-4j * lam ** 2 * t)


def evolve_jump(jf, t):
    """Evolved copy of a JumpField; applied identically to J, Jp, Jm."""
    from .scattering import JumpField
    J = {}
    Jp = {}
    Jm = {}
    for ai, arc in enumerate(jf.graph.arcs):
        lam = arc.nodes_z
        ph = _phase_lambda(lam, t)
        for src, dst in ((jf.J, J), (jf.Jp, Jp), (jf.Jm, Jm)):
            if not src or ai not in src:
                continue
            arr = src[ai].copy()
            arr[:, 0, 1] = arr[:, 0, 1] * ph
            arr[:, 1, 0] = arr[:, 1, 0] / ph
            dst[ai] = arr
    return JumpField(jf.sd, jf.graph, J, Jp or None, Jm or None, t=jf.t + t,
                     regularized=jf.regularized, omega=jf.omega)


def evolve_zeta(v, zetas, t):
    """Evolved zeta-plane jump samples v (..., 2, 2) at points zetas."""
    zetas = np.asarray(zetas, dtype=complex)
    ph = np.exp(-4j * zetas ** 4 * t)
    out = np.array(v, copy=True)
    out[..., 0, 1] = out[..., 0, 1] * ph
    out[..., 1, 0] = out[..., 1, 0] / ph
    return out
