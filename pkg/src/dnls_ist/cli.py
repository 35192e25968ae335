"""Batch front-end: direct map, evolve/invert, round trip, PDE comparison.

JSON config in, CSV/JSON artifacts plus a manifest out.  Exit codes:
0 success, 1 numeric failure, 2 I/O or configuration error.
"""

import argparse
import json
import pathlib
import sys
import time

import numpy as np

from .evolution import evolve_jump
from .io_utils import (config_hash, jumpfield_doc, write_coeffs_csv,
                       write_diag_csv, write_potential_csv)
from .potentials import Potential
from .pde import step_dnls2
from .reconstruct import inverse_map
from .rhp import null_space_diag, solve_bc
from .scattering import (assemble_jump, build_scattering_data,
                         check_product_condition, factorize_jump)


def _load_config(path):
    with open(path) as fh:
        return json.load(fh)


def _potential_from_cfg(cfg):
    pc = cfg["potential"]
    if "file" in pc:
        return Potential.from_json(pathlib.Path(pc["file"]).read_text())
    if pc.get("family") == "sech":
        return Potential.sech(pc["A"], X=pc.get("X", 24.0),
                              n=pc.get("n", 8001), phase=pc.get("phase"))
    if pc.get("family") == "zero":
        return Potential.zero(X=pc.get("X", 24.0), n=pc.get("n", 8001))
    raise KeyError("unknown potential spec")


def _resolution(cfg, mult):
    cc = cfg.get("contour", {})
    nb = int(round(cc.get("n_bounded", 64) * mult))
    nr = int(round(cc.get("n_ray", 96) * mult))
    return nb, nr


def _build(cfg, mult):
    q = _potential_from_cfg(cfg)
    nb, nr = _resolution(cfg, mult)
    sd = build_scattering_data(q, R=cfg.get("R"), x0=cfg.get("x0"),
                               n_bounded=nb, n_ray=nr)
    jf = factorize_jump(assemble_jump(sd))
    return q, sd, jf


def _manifest(cfg, sd, extra=None):
    doc = {
        "config_hash": config_hash(cfg),
        "R": sd.R,
        "S_inf": sd.S_inf,
        "x0": sd.x0,
        "node_counts": [arc.n for arc in sd.graph.arcs],
        "arc_roles": [arc.role for arc in sd.graph.arcs],
    }
    doc.update(extra or {})
    return doc


def cmd_direct(cfg, outdir, mult):
    q, sd, jf = _build(cfg, mult)
    out = pathlib.Path(outdir)
    for role in ("ray_left", "segment", "ray_right"):
        ai = sd.graph.arc_index_by_role(role)
        arc = sd.graph.arcs[ai]
        lam = arc.nodes_z
        from .scattering import zeta_of_lambda_vec
        zet = zeta_of_lambda_vec(lam)
        d = sd.arc_data[ai]
        key = "rho0" if role == "segment" else "rho"
        write_coeffs_csv(out / f"{key}_{role}.csv", zet, {key: d[key]})
    (out / "jump_field.json").write_text(json.dumps(jumpfield_doc(jf)))
    r_plus = check_product_condition(jf, sd.S_inf)
    r_minus = check_product_condition(jf, -sd.S_inf)
    man = _manifest(cfg, sd, {
        "t": jf.t,
        "product_condition": {"plus": r_plus, "minus": r_minus},
        "x0_condition_recheck": _recheck_x0(q, sd),
    })
    (out / "manifest.json").write_text(json.dumps(man, indent=1))
    return 0


def _recheck_x0(q, sd):
    from .scattering import X0_BOUND, X0_SAFETY
    aq = np.abs(q.q)
    worst = np.maximum(sd.R * aq, 0.5 * aq ** 2)
    i0 = sd.i0
    tail = np.trapezoid(worst[i0:], q.x[i0:])
    return {"tail_integral": float(tail), "bound": X0_SAFETY * X0_BOUND,
            "satisfied": bool(tail < X0_SAFETY * X0_BOUND)}


def _x_grid(cfg):
    g = cfg.get("x_grid", {"min": -6.0, "max": 6.0, "n": 97})
    return np.linspace(g["min"], g["max"], int(g["n"]))


def cmd_evolve_invert(cfg, outdir, mult, workers=1):
    q, sd, jf = _build(cfg, mult)
    out = pathlib.Path(outdir)
    xs = _x_grid(cfg)
    a_split = cfg.get("a_split", 0.0)
    t_values = cfg.get("t_values", [0.0])
    from .reconstruct import left_pipeline
    jf_left = left_pipeline(q, R=sd.R)
    sigma_stride = int(cfg.get("sigma_stride", 8))
    for tv in t_values:
        jft = evolve_jump(jf, tv) if tv != 0.0 else jf
        res = inverse_map(jft, xs, a_split=a_split, jf_left=jf_left,
                          overlap_tol=cfg.get("tolerances", {}).get("overlap", 1e-5),
                          workers=workers)
        tag = f"t{tv:g}".replace(".", "p").replace("-", "m")
        write_potential_csv(out / f"potential_{tag}.csv", xs,
                            res.diagnostics["values"])
        jf_left_t = evolve_jump(jf_left, -tv) if tv != 0.0 else jf_left
        recs = []
        for k, (x, r) in enumerate(res.diagnostics["per_x"]):
            if k % sigma_stride == 0:
                use, xx = (jft, x) if x >= a_split else (jf_left_t, -x)
                sig = null_space_diag(use, xx)
            else:
                sig = None
            recs.append((x, r, sig))
        write_diag_csv(out / f"diag_{tag}.csv", recs)
    (out / "manifest.json").write_text(json.dumps(
        _manifest(cfg, sd, {"t_values": list(t_values)}), indent=1))
    return 0


def cmd_roundtrip(cfg, outdir, mult):
    q, sd, jf = _build(cfg, mult)
    out = pathlib.Path(outdir)
    xs = _x_grid(cfg)
    res = inverse_map(jf, xs, a_split=cfg.get("a_split", 0.0))
    qt = q(xs)
    dl2 = np.sqrt(np.trapezoid(np.abs(res.diagnostics["values"] - qt) ** 2, xs))
    ref = np.sqrt(np.trapezoid(np.abs(qt) ** 2, xs))
    rep = {"l2_error": float(dl2),
           "rel_l2_error": float(dl2 / ref) if ref > 0 else 0.0,
           "max_error": float(np.abs(res.diagnostics["values"] - qt).max()),
           "overlap": res.diagnostics["overlap"]}
    write_potential_csv(out / "potential_roundtrip.csv", xs,
                        res.diagnostics["values"])
    (out / "roundtrip_report.json").write_text(json.dumps(rep, indent=1))
    (out / "manifest.json").write_text(json.dumps(_manifest(cfg, sd), indent=1))
    return 0


def cmd_compare_pde(cfg, outdir, mult):
    q, sd, jf = _build(cfg, mult)
    out = pathlib.Path(outdir)
    pc = cfg.get("pde", {})
    n_modes = int(pc.get("n_modes", 2048))
    dt = float(pc.get("dt", 2.5e-4))
    box = 4.0 * q.X
    xg = -box / 2 + box * np.arange(n_modes) / n_modes
    g = cfg.get("x_grid", {"min": -6.0, "max": 6.0})
    keep = (xg >= g["min"]) & (xg <= g["max"])
    stride = max(1, int(round((xg[keep].size) / cfg.get("x_grid", {}).get("n", 65))))
    xs = xg[keep][::stride]
    from .reconstruct import left_pipeline
    jf_left = left_pipeline(q, R=sd.R)
    report = []
    for tv in cfg.get("t_values", [0.25]):
        t0 = time.time()
        jft = evolve_jump(jf, tv)
        res = inverse_map(jft, xs, jf_left=jf_left)
        run = step_dnls2(q, tv, dt, n_modes=n_modes)
        q_pde = run.final()[keep][::stride]
        diff = res.diagnostics["values"] - q_pde
        report.append({
            "t": tv,
            "l2_error": float(np.sqrt(np.trapezoid(np.abs(diff) ** 2, xs))),
            "max_error": float(np.abs(diff).max()),
            "pde_l2_drift": run.l2_drift(),
            "runtime_s": time.time() - t0,
        })
    (out / "compare_pde.json").write_text(json.dumps(report, indent=1))
    (out / "manifest.json").write_text(json.dumps(_manifest(cfg, sd), indent=1))
    return 0


def cmd_diag(cfg, outdir, mult):
    q, sd, jf = _build(cfg, mult)
    out = pathlib.Path(outdir)
    xs = _x_grid(cfg)
    recs = []
    from .reconstruct import left_pipeline
    jf_left = left_pipeline(q, R=sd.R)
    a_split = cfg.get("a_split", 0.0)
    for x in xs:
        use = jf if x >= a_split else jf_left
        xx = x if x >= a_split else -x
        sig = null_space_diag(use, xx)
        sol = solve_bc(use, xx)
        recs.append((x, sol.residual, sig))
    write_diag_csv(out / "sigma_sweep.csv", recs)
    r_plus = check_product_condition(jf, sd.S_inf)
    r_minus = check_product_condition(jf, -sd.S_inf)
    from .scattering import schwarz_residuals
    eig_min, sym = schwarz_residuals(q, sd, n_samples=12)
    rep = {"sigma_min": float(min(r[2] for r in recs)),
           "product_condition": {"plus": r_plus, "minus": r_minus},
           "schwarz_eig_min": float(eig_min),
           "schwarz_symmetry": float(sym)}
    (out / "diag_report.json").write_text(json.dumps(rep, indent=1))
    (out / "manifest.json").write_text(json.dumps(_manifest(cfg, sd), indent=1))
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(prog="dnls-ist",
                                 description="DNLS inverse scattering engine")
    ap.add_argument("command", choices=["direct", "evolve-invert", "roundtrip",
                                        "compare-pde", "diag"])
    ap.add_argument("--config", required=True, help="JSON run configuration")
    ap.add_argument("--outdir", required=True, help="artifact directory")
    ap.add_argument("--resolution-mult", type=float, default=1.0,
                    help="multiply contour node counts")
    ap.add_argument("--threads", type=int, default=1,
                    help="worker threads for x sweeps")
    args = ap.parse_args(argv)

    try:
        cfg = _load_config(args.config)
        outdir = pathlib.Path(args.outdir)
        outdir.mkdir(parents=True, exist_ok=True)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _validate(cfg)

    try:
        if args.command == "direct":
            return cmd_direct(cfg, outdir, args.resolution_mult)
        if args.command == "evolve-invert":
            return cmd_evolve_invert(cfg, outdir, args.resolution_mult,
                                     workers=args.threads)
        if args.command == "roundtrip":
            return cmd_roundtrip(cfg, outdir, args.resolution_mult)
        if args.command == "compare-pde":
            return cmd_compare_pde(cfg, outdir, args.resolution_mult)
        return cmd_diag(cfg, outdir, args.resolution_mult)
    except (KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1


def _validate(cfg):
    for name, tol in cfg.get("tolerances", {}).items():
        if not tol > 0:
            raise ValueError(f"tolerance {name} must be positive")


if __name__ == "__main__":
    sys.exit(main())
