"""Parameter sweeps: gap edges vs radius, lattice constant, thickness, modulus.

Each row evaluates the requested methods independently; per-row failures are
recorded and never abort the sweep.  The Rayleigh reference is the only
expensive method and runs on a coarser frequency grid.  Rows are independent
work units; SHELLGAP_THREADS caps the worker pool (0 = auto) and the output
order always follows the input grid.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .bands import BandGap, MethodId
from .config import ArrayConfig, config_from_values
from .cpa import cpa_gap_n0, cpa_gap_n1
from .errors import ConfigError, ShellgapError
from .foldy import foldy_gap_n0, foldy_gap_n1
from .mae import mae_upper_edge_n0
from .rayleigh import rayleigh_gap

_HZ = 1.0 / (2.0 * math.pi)

VARIABLES = ("radius", "lattice_constant", "thickness", "youngs_modulus")


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional sweep description."""

    variable: str
    lo: float
    hi: float
    samples: int
    base: ArrayConfig
    methods: tuple[MethodId, ...] = (MethodId.FOLDY, MethodId.MAE, MethodId.CPA)
    rayleigh_grid: int = 500
    rayleigh_n_beta: int = 32

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ConfigError(f"unknown sweep variable {self.variable!r}; "
                              f"expected one of {VARIABLES}")
        if not self.lo < self.hi:
            raise ConfigError(f"sweep needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.samples < 2:
            raise ConfigError("sweep needs at least 2 samples")
        if not self.methods:
            raise ConfigError("sweep needs at least one method")
        # every generated config must keep the shells disjoint (a < L/2)
        base = self.base.to_dict()
        if self.variable == "radius" and self.hi >= 0.5 * base["lattice.L"]:
            raise ConfigError("radius sweep exceeds L/2: shells would overlap")
        if self.variable == "lattice_constant" and self.lo <= 2.0 * base["shell.a"]:
            raise ConfigError("lattice sweep goes below 2a: shells would overlap")

    def xs(self) -> list[float]:
        return [self.lo + (self.hi - self.lo) * i / (self.samples - 1)
                for i in range(self.samples)]

    def config_at(self, x: float) -> ArrayConfig:
        values = self.base.to_dict()
        key = {"radius": "shell.a", "lattice_constant": "lattice.L",
               "thickness": "shell.thickness",
               "youngs_modulus": "shell.E"}[self.variable]
        values[key] = x
        return config_from_values(values)


@dataclass
class SweepRow:
    """Gap edges for one swept value; absent gaps carry an error string."""

    x: float
    filling_fraction: float
    filling_fraction_outer: float
    bragg_f: float
    gaps: dict = field(default_factory=dict)    # (method, n_mode) -> BandGap
    errors: dict = field(default_factory=dict)  # (method, n_mode) -> message
    flags: list = field(default_factory=list)

    def gap(self, method: MethodId, n_mode: int):
        return self.gaps.get((method, n_mode))

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "filling_fraction": self.filling_fraction,
            "filling_fraction_outer": self.filling_fraction_outer,
            "bragg_f_hz": self.bragg_f,
            "gaps": [g.to_dict() for g in self.gaps.values()],
            "errors": {f"{m.value}-n{n}": msg
                       for (m, n), msg in self.errors.items()},
            "flags": list(self.flags),
        }


def _mae_gap(cfg: ArrayConfig) -> BandGap:
    # MAE refines only the n=0 upper edge; its lower edge is K0_hat
    return BandGap(
        n_mode=0,
        f_lower=cfg.params.K0_hat * cfg.fluid.c_o * _HZ,
        f_upper=mae_upper_edge_n0(cfg),
        method=MethodId.MAE,
    )


def _row(spec: SweepSpec, x: float) -> SweepRow:
    cfg = spec.config_at(x)
    p = cfg.params
    row = SweepRow(
        x=x,
        filling_fraction=cfg.filling_fraction,
        filling_fraction_outer=cfg.filling_fraction_outer,
        bragg_f=cfg.bragg_frequency,
    )
    f_res_n0 = p.K0_hat * cfg.fluid.c_o * _HZ
    f_res_n1 = p.K1 * cfg.fluid.c_o * _HZ
    if f_res_n0 > row.bragg_f:
        row.flags.append("n0-above-bragg")
    if f_res_n1 > row.bragg_f:
        row.flags.append("n1-above-bragg")
    for method in spec.methods:
        if method is MethodId.FOLDY:
            tasks = ((0, lambda: foldy_gap_n0(cfg)), (1, lambda: foldy_gap_n1(cfg)))
        elif method is MethodId.CPA:
            tasks = ((0, lambda: cpa_gap_n0(cfg)), (1, lambda: cpa_gap_n1(cfg)))
        elif method is MethodId.MAE:
            tasks = ((0, lambda: _mae_gap(cfg)),)
        else:
            tasks = (
                (0, lambda: rayleigh_gap(cfg, 0, grid=spec.rayleigh_grid,
                                         n_beta=spec.rayleigh_n_beta)),
                (1, lambda: rayleigh_gap(cfg, 1, grid=spec.rayleigh_grid,
                                         n_beta=spec.rayleigh_n_beta)),
            )
        for n_mode, fn in tasks:
            try:
                row.gaps[(method, n_mode)] = fn()
            except (ShellgapError, ValueError) as exc:
                row.errors[(method, n_mode)] = f"{type(exc).__name__}: {exc}"
    return row


def worker_count() -> int:
    """Worker cap from SHELLGAP_THREADS (0 or unset = auto)."""
    raw = os.environ.get("SHELLGAP_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"SHELLGAP_THREADS={raw!r} is not an integer")
    if n < 0:
        raise ConfigError("SHELLGAP_THREADS must be >= 0")
    if n == 0:
        n = min(os.cpu_count() or 1, 8)
    return max(1, n)


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate every row of the sweep, in ascending x order."""
    xs = spec.xs()
    workers = worker_count()
    if workers == 1 or len(xs) < 4:
        return [_row(spec, x) for x in xs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda x: _row(spec, x), xs))


def gap_width_report(rows: list[SweepRow]) -> dict:
    """Width per row and min/max over the sweep, per (method, n_mode)."""
    if not rows:
        raise ConfigError("empty sweep")
    keys = sorted({k for row in rows for k in row.gaps},
                  key=lambda k: (k[0].value, k[1]))
    report = {}
    for key in keys:
        widths = [(row.x, row.gaps[key].width) for row in rows if key in row.gaps]
        report[key] = {
            "widths": widths,
            "min": min(w for _, w in widths),
            "max": max(w for _, w in widths),
        }
    return report
