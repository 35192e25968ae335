"""File artifacts: CSV/JSON writers for potentials, coefficients, jump data."""

import csv
import hashlib
import json

import numpy as np


def config_hash(cfg):
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:16]


def write_potential_csv(path, x, q):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "re_q", "im_q"])
        for xi, qi in zip(x, q):
            w.writerow([repr(float(xi)), repr(float(qi.real)), repr(float(qi.imag))])


def read_potential_csv(path):
    xs, qs = [], []
    with open(path) as fh:
        r = csv.reader(fh)
        next(r)
        for row in r:
            xs.append(float(row[0]))
            qs.append(complex(float(row[1]), float(row[2])))
    return np.array(xs), np.array(qs)


def write_coeffs_csv(path, zetas, rows):
    """rows: dict name -> complex array aligned with zetas."""
    names = list(rows)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        header = ["re_zeta", "im_zeta"]
        for nm in names:
            header += [f"re_{nm}", f"im_{nm}"]
        w.writerow(header)
        for i, z in enumerate(zetas):
            row = [repr(z.real), repr(z.imag)]
            for nm in names:
                v = rows[nm][i]
                row += [repr(float(np.real(v))), repr(float(np.imag(v)))]
            w.writerow(row)


def write_diag_csv(path, records):
    """records: iterable of (x, residual, sigma_min)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "residual", "sigma_min"])
        for x, res, sig in records:
            w.writerow([repr(float(x)), repr(float(res)),
                        repr(float(sig)) if sig is not None else ""])


def jumpfield_doc(jf):
    """JSON document: per arc the nodes and the 8 complex jump entries.

    Entries per node: J11, J12, J21, J22, Jp12, Jp21, Jm12, Jm21.
    """
    arcs = []
    for ai, arc in enumerate(jf.graph.arcs):
        lam = arc.nodes_z
        J = jf.J[ai]
        Jp = jf.Jp.get(ai) if jf.Jp else None
        Jm = jf.Jm.get(ai) if jf.Jm else None
        ent = {
            "role": arc.role,
            "nodes": [[z.real, z.imag] for z in lam],
            "J": [[[J[i, r, c].real, J[i, r, c].imag]
                   for (r, c) in ((0, 0), (0, 1), (1, 0), (1, 1))]
                  for i in range(arc.n)],
        }
        if Jp is not None:
            ent["Jp_offdiag"] = [[[Jp[i, 0, 1].real, Jp[i, 0, 1].imag],
                                  [Jp[i, 1, 0].real, Jp[i, 1, 0].imag]]
                                 for i in range(arc.n)]
            ent["Jm_offdiag"] = [[[Jm[i, 0, 1].real, Jm[i, 0, 1].imag],
                                  [Jm[i, 1, 0].real, Jm[i, 1, 0].imag]]
                                 for i in range(arc.n)]
        arcs.append(ent)
    return {"t": jf.t, "arcs": arcs}


def dump_matrix(path, mat):
    """Binary dump: complex128, row-major, little-endian."""
    np.asarray(mat, dtype="<c16").tofile(path)
