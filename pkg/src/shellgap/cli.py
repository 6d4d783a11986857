"""Command line interface: band structures, gap tables and parameter sweeps.

Exit codes: 0 success, 2 usage/config error, 3 numerical failure.  All
frequencies are serialized in Hz; numeric CSV fields carry 17 significant
digits so outputs can serve as bitwise regression fixtures.  Output format
follows the file suffix: ``.json`` for JSON, anything else is CSV.
"""

import argparse
import json
import math
import sys

from .bands import MethodId
from .config import ArrayConfig, load_config
from .cpa import cpa_gap_n0, cpa_gap_n1, cpa_trace
from .errors import ConfigError, ShellgapError
from .foldy import foldy_gap_n0, foldy_gap_n1, foldy_trace
from .lattice import brillouin_path
from .rayleigh import rayleigh_gap, trace_bands
from .shell import z0_soft_approx
from .sweep import SweepSpec, run_sweep

_HZ = 1.0 / (2.0 * math.pi)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _parse_methods(raw: str) -> list[MethodId]:
    names = [s.strip().lower() for s in raw.split(",") if s.strip()]
    if not names:
        raise ConfigError("empty method list")
    try:
        return [MethodId(name) for name in names]
    except ValueError as exc:
        raise ConfigError(f"unknown method in {raw!r}") from exc


def _default_window(cfg: ArrayConfig) -> tuple[float, float]:
    gaps = [foldy_gap_n0(cfg), foldy_gap_n1(cfg), cpa_gap_n0(cfg), cpa_gap_n1(cfg)]
    lo = min(g.f_lower for g in gaps)
    hi = max(g.f_upper for g in gaps)
    return 0.6 * lo, 1.3 * hi


def _curves_for(method: MethodId, cfg: ArrayConfig, f_range, n_trunc, grid,
                n_beta, M):
    path = brillouin_path(cfg.lattice, n_beta, "GX")
    if method is MethodId.RAYLEIGH:
        return trace_bands(path, f_range, cfg, N=n_trunc, grid=grid, M=M)
    if method is MethodId.FOLDY:
        betaLs = [b.beta * cfg.lattice.L for b in path]
        return foldy_trace(betaLs, cfg, f_range, grid=grid)
    if method is MethodId.CPA:
        return cpa_trace(cfg, f_range, grid=grid)
    # MAE: the n=0 matching condition traced over the path is the N=0
    # multipole system with the soft Z_0 factor
    def z_fn(p, k_o, _cfg=cfg):
        return z0_soft_approx(k_o, _cfg.params, _cfg.shell.a)

    return trace_bands(path, f_range, cfg, N=0, grid=grid, z_fn=z_fn, M=M)


def cmd_band_structure(args) -> int:
    cfg = load_config(args.config)
    method = _parse_methods(args.method)[0]
    f_range = _default_window(cfg)
    if args.fmin is not None:
        f_range = (args.fmin, f_range[1])
    if args.fmax is not None:
        f_range = (f_range[0], args.fmax)
    if not 0.0 < f_range[0] < f_range[1]:
        raise ConfigError(f"bad frequency window {f_range}")
    curves = _curves_for(method, cfg, f_range, args.n_trunc, args.grid,
                         args.beta_points, args.m_trunc)
    hz = cfg.fluid.c_o * _HZ / cfg.lattice.L
    if str(args.out).endswith(".json"):
        payload = {"config": cfg.to_dict(),
                   "curves": [c.to_dict() for c in curves]}
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("betaL,k_oL,frequency_hz,branch,method\n")
            for c in curves:
                for bL, kL in c.points:
                    fh.write(f"{_fmt(bL)},{_fmt(kL)},{_fmt(kL * hz)},"
                             f"{c.branch_index},{c.method.value}\n")
    return 0


def _gap_rows(cfg: ArrayConfig, methods, n_trunc, grid, m_trunc):
    from .mae import mae_upper_edge_n0

    rows = []
    ok = 0
    for method in methods:
        if method is MethodId.MAE:
            modes = (0,)
        else:
            modes = (0, 1)
        for n_mode in modes:
            try:
                if method is MethodId.FOLDY:
                    gap = foldy_gap_n0(cfg) if n_mode == 0 else foldy_gap_n1(cfg)
                elif method is MethodId.CPA:
                    gap = cpa_gap_n0(cfg) if n_mode == 0 else cpa_gap_n1(cfg)
                elif method is MethodId.MAE:
                    from .bands import BandGap

                    gap = BandGap(
                        n_mode=0,
                        f_lower=cfg.params.K0_hat * cfg.fluid.c_o * _HZ,
                        f_upper=mae_upper_edge_n0(cfg, M=m_trunc),
                        method=MethodId.MAE,
                    )
                else:
                    gap = rayleigh_gap(cfg, n_mode, N=n_trunc, grid=grid,
                                       M=m_trunc)
                rows.append((method, n_mode, gap, "ok"))
                ok += 1
            except (ShellgapError, ValueError) as exc:
                rows.append((method, n_mode, None,
                             f"{type(exc).__name__}: {exc}"))
    return rows, ok


def cmd_gaps(args) -> int:
    cfg = load_config(args.config)
    methods = _parse_methods(args.methods)
    rows, ok = _gap_rows(cfg, methods, args.n_trunc, args.grid, args.m_trunc)
    if str(args.out).endswith(".json"):
        payload = {
            "config": cfg.to_dict(),
            "gaps": [g.to_dict() for _, _, g, st in rows if st == "ok"],
            "errors": {f"{m.value}-n{n}": st
                       for m, n, g, st in rows if st != "ok"},
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("method,n_mode,f_lower_hz,f_upper_hz,width_hz,status\n")
            for method, n_mode, gap, status in rows:
                if gap is None:
                    fh.write(f"{method.value},{n_mode},,,,{status}\n")
                else:
                    fh.write(f"{method.value},{n_mode},{_fmt(gap.f_lower)},"
                             f"{_fmt(gap.f_upper)},{_fmt(gap.width)},ok\n")
    if ok == 0:
        print("shellgap: every requested method failed", file=sys.stderr)
        return 3
    return 0


_VAR_ALIASES = {
    "radius": "radius", "a": "radius",
    "lattice": "lattice_constant", "lattice_constant": "lattice_constant",
    "l": "lattice_constant",
    "thickness": "thickness", "2h": "thickness",
    "youngs": "youngs_modulus", "youngs_modulus": "youngs_modulus",
    "e": "youngs_modulus",
}


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    methods = tuple(_parse_methods(args.methods))
    var = _VAR_ALIASES.get(args.var.strip().lower())
    if var is None:
        raise ConfigError(f"unknown sweep variable {args.var!r}")
    spec = SweepSpec(variable=var, lo=args.lo, hi=args.hi,
                     samples=args.samples, base=cfg, methods=methods,
                     rayleigh_grid=args.grid)
    rows = run_sweep(spec)
    keys = [(m, n) for m in methods for n in ((0,) if m is MethodId.MAE
                                              else (0, 1))]
    if str(args.out).endswith(".json"):
        payload = {"config": cfg.to_dict(), "variable": var,
                   "rows": [r.to_dict() for r in rows]}
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
        return 0
    header = ["x", "filling_fraction", "filling_fraction_outer", "bragg_f_hz"]
    for m, n in keys:
        header += [f"{m.value}_n{n}_lower_hz", f"{m.value}_n{n}_upper_hz"]
    header.append("flags")
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = [_fmt(row.x), _fmt(row.filling_fraction),
                     _fmt(row.filling_fraction_outer), _fmt(row.bragg_f)]
            for key in keys:
                gap = row.gaps.get(key)
                if gap is None:
                    cells += ["", ""]
                else:
                    cells += [_fmt(gap.f_lower), _fmt(gap.f_upper)]
            flags = list(row.flags)
            flags += [f"{m.value}-n{n}-failed"
                      for (m, n) in keys if (m, n) in row.errors]
            cells.append(";".join(flags))
            fh.write(",".join(cells) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="shellgap",
        description="Resonant band gaps of doubly periodic thin-shell arrays.")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="flat key=value config file")
    common.add_argument("--out", required=True, help="output path (.csv or .json)")
    common.add_argument("--n-trunc", type=int, default=5,
                        help="multipole truncation order N (rayleigh)")
    common.add_argument("--grid", type=int, default=2000,
                        help="frequency grid points")
    common.add_argument("--m-trunc", type=int, default=8,
                        help="lattice-sum truncation window M")

    bs = sub.add_parser("band-structure", parents=[common],
                        help="dispersion curves along (0,0)-(pi,0)")
    bs.add_argument("--method", default="rayleigh",
                    help="rayleigh | foldy | mae | cpa")
    bs.add_argument("--beta-points", type=int, default=64)
    bs.add_argument("--fmin", type=float, default=None)
    bs.add_argument("--fmax", type=float, default=None)
    bs.set_defaults(fn=cmd_band_structure)

    gp = sub.add_parser("gaps", parents=[common],
                        help="band-gap edges for the requested methods")
    gp.add_argument("--methods", default="foldy,mae,cpa")
    gp.set_defaults(fn=cmd_gaps)

    sw = sub.add_parser("sweep", parents=[common],
                        help="gap edges along a parameter sweep")
    sw.add_argument("--var", required=True,
                    help="radius | lattice | thickness | youngs")
    sw.add_argument("--lo", type=float, required=True)
    sw.add_argument("--hi", type=float, required=True)
    sw.add_argument("--samples", type=int, required=True)
    sw.add_argument("--methods", default="foldy,mae,cpa")
    sw.set_defaults(fn=cmd_sweep)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"shellgap: config error: {exc}", file=sys.stderr)
        return 2
    except (ShellgapError, ValueError) as exc:
        print(f"shellgap: solver failure: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
