"""Foldy-type effective dispersion and closed-form resonant gap edges.

The far-field pattern is truncated to its first two harmonics,
F = Z_0 + 2 Z_1, with the soft-shell approximations of both factors.  Gap
edges come in three flavours:

* ``foldy_gap_n0`` / ``foldy_gap_n1``: leading-order radicals in the filling
  fraction (used by default in sweeps and cross-method comparisons);
* ``foldy_gap_n0_full`` / ``foldy_gap_n1_full``: positive roots of the
  transformed near-resonance quadratics, exposed alongside;
* ``foldy_upper_edge_dispersion``: the beta = 0 root of the untransformed
  dispersion relation itself, found numerically.  The transformed quadratics
  are separate near-resonance reductions, so their radicals are exact roots
  of ``foldy_edge_equation_*`` but not of ``foldy_beta_squared``.
"""

import math

import numpy as np

from .bands import BandGap, DispersionCurve, MethodId, group_branches
from .config import ArrayConfig
from .errors import DegenerateDenominator, NoRootFound, PoleProximity
from .shell import z0_soft_approx, z1_soft_approx

_HZ = 1.0 / (2.0 * math.pi)


def _edges_to_hz(cfg: ArrayConfig, k_lower: float, k_upper: float, n_mode: int,
                 method=MethodId.FOLDY) -> BandGap:
    c = cfg.fluid.c_o * _HZ
    return BandGap(n_mode=n_mode, f_lower=k_lower * c, f_upper=k_upper * c,
                   method=method)


def foldy_far_field(k_o: float, cfg: ArrayConfig) -> float:
    """Truncated far-field pattern F = Z_0 + 2 Z_1 (soft-shell factors)."""
    p = cfg.params
    z0 = z0_soft_approx(k_o, p, cfg.shell.a)
    z1 = z1_soft_approx(k_o, p, cfg.shell, cfg.fluid)
    return z0 + 2.0 * z1


def foldy_beta_squared(k_o: float, cfg: ArrayConfig) -> float:
    """Effective dispersion beta^2 = k_o^2 - (4 / A) (Z_0 + 2 Z_1)."""
    return k_o * k_o - (4.0 / cfg.lattice.area) * foldy_far_field(k_o, cfg)


def foldy_consistency_factor(k_o: float, cfg: ArrayConfig) -> float:
    """(4 / A) |F| L^2; the derivation assumes this to be << 1."""
    return 4.0 * abs(foldy_far_field(k_o, cfg))


def foldy_consistency_ok(k_o: float, cfg: ArrayConfig) -> bool:
    return foldy_consistency_factor(k_o, cfg) < 1.0


# -- closed-form edges -------------------------------------------------------

def foldy_gap_n0(cfg: ArrayConfig) -> BandGap:
    """Leading-order n=0 gap [K0_hat, K0_hat-like upper radical] in Hz."""
    p = cfg.params
    F = cfg.filling_fraction
    ratio = p.K_rho / p.K_c
    c3_2pa = p.c3 / (2.0 * math.pi * cfg.shell.a)
    return BandGap(
        n_mode=0,
        f_lower=c3_2pa * math.sqrt(1.0 + ratio),
        f_upper=c3_2pa * math.sqrt(1.0 + ratio * (1.0 + F)),
        method=MethodId.FOLDY,
    )


def foldy_gap_n0_full(cfg: ArrayConfig) -> BandGap:
    """n=0 gap with the unapproximated upper-edge radical."""
    p = cfg.params
    F = cfg.filling_fraction
    den = p.K_rho - p.K_c - F * (p.K_c + 2.0 * p.K_rho ** 2)
    if abs(den) < 1e-14 * (abs(p.K_rho) + abs(p.K_c)):
        raise DegenerateDenominator("full n=0 upper-edge denominator vanishes")
    u = p.K_rho + p.K_c + F * p.K_rho * (p.K_rho - p.K_c) / den
    if u <= 0.0:
        raise DegenerateDenominator("full n=0 upper-edge radicand non-positive")
    k_upper = math.sqrt(u) / cfg.shell.a
    if k_upper <= p.K0_hat:
        raise DegenerateDenominator(
            "full n=0 radical degenerates (upper edge at or below K0_hat)")
    return _edges_to_hz(cfg, p.K0_hat, k_upper, n_mode=0)


def foldy_gap_n1(cfg: ArrayConfig) -> BandGap:
    """Leading-order n=1 gap [sqrt(2) c3 / (2 pi a), ... sqrt(1 + F K_rho)]."""
    p = cfg.params
    F = cfg.filling_fraction
    f1 = math.sqrt(2.0) * p.c3 / (2.0 * math.pi * cfg.shell.a)
    return BandGap(
        n_mode=1,
        f_lower=f1,
        f_upper=f1 * math.sqrt(1.0 + F * p.K_rho),
        method=MethodId.FOLDY,
    )


def foldy_gap_n1_full(cfg: ArrayConfig) -> BandGap:
    """n=1 gap with the unapproximated upper-edge radical."""
    p = cfg.params
    F = cfg.filling_fraction
    den = (p.K_c - p.K_rho
           + F * (2.0 * (p.K_c - p.K_rho) * (1.0 - p.K_rho)
                  - p.K_c * (1.0 + 2.0 * p.K_rho)))
    if abs(den) < 1e-14 * (abs(p.K_rho) + abs(p.K_c)):
        raise DegenerateDenominator("full n=1 upper-edge denominator vanishes")
    u = 2.0 * p.K_c + 2.0 * F * p.K_rho * p.K_c * (p.K_c - p.K_rho) / den
    if u <= 0.0:
        raise DegenerateDenominator("full n=1 upper-edge radicand non-positive")
    k_upper = math.sqrt(u) / cfg.shell.a
    if k_upper <= p.K1:
        raise DegenerateDenominator(
            "full n=1 radical degenerates (upper edge at or below K1)")
    return _edges_to_hz(cfg, p.K1, k_upper, n_mode=1)


# -- transformed near-resonance quadratics -----------------------------------

def foldy_edge_equation_n0(u: float, cfg: ArrayConfig) -> float:
    """LHS of the transformed n=0 edge equation in u = (k_o a)^2.

    F K_rho (K_c - K_rho) + [u - (K_c + K_rho)]
    [(1 + F)(K_rho - K_c) - F K_rho (1 + 2 K_rho)]
    """
    p = cfg.params
    F = cfg.filling_fraction
    return (F * p.K_rho * (p.K_c - p.K_rho)
            + (u - (p.K_c + p.K_rho))
            * ((1.0 + F) * (p.K_rho - p.K_c) - F * p.K_rho * (1.0 + 2.0 * p.K_rho)))


def foldy_edge_equation_n1(u: float, cfg: ArrayConfig) -> float:
    """LHS of the transformed n=1 edge equation in u = (k_o a)^2."""
    p = cfg.params
    F = cfg.filling_fraction
    return (2.0 * F * p.K_rho * p.K_c * (p.K_rho - p.K_c)
            + (u - 2.0 * p.K_c)
            * ((1.0 + 2.0 * F - 2.0 * F * p.K_rho) * (p.K_c - p.K_rho)
               - F * p.K_c * (1.0 + 2.0 * p.K_rho)))


# -- dispersion-consistent edges ---------------------------------------------

def _bisect(fn, lo, hi, rel=1e-13, it=200):
    flo = fn(lo)
    fhi = fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NoRootFound("bisection bracket does not straddle a root")
    for _ in range(it):
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo <= rel * abs(hi):
            break
    return 0.5 * (lo + hi)


def foldy_upper_edge_dispersion(cfg: ArrayConfig, n_mode: int) -> float:
    """beta = 0 root of foldy_beta_squared just above the n_mode resonance [Hz].

    This is where the traced Foldy curves actually terminate at beta L -> 0.
    """
    p = cfg.params
    k_res = p.K0_hat if n_mode == 0 else p.K1
    lo = k_res * (1.0 + 1e-9)
    hi = k_res * (3.0 if n_mode == 0 else 1.5)
    ks = np.linspace(lo, hi, 8000)
    prev_k = ks[0]
    prev_v = foldy_beta_squared(prev_k, cfg)
    for k in ks[1:]:
        v = foldy_beta_squared(k, cfg)
        if prev_v * v <= 0.0:
            k_edge = _bisect(lambda t: foldy_beta_squared(t, cfg), prev_k, k)
            return k_edge * cfg.fluid.c_o * _HZ
        prev_k, prev_v = k, v
    raise NoRootFound(f"no beta=0 dispersion root above the n={n_mode} resonance")


# -- curve tracing -----------------------------------------------------------

def foldy_trace(betaLs, cfg: ArrayConfig, f_range, grid: int = 800):
    """Dispersion curves beta(k): roots of beta^2(k) = beta_target^2.

    The scan window is split at the poles of Z_0 and Z_1 (K0_hat and K1).
    """
    c = cfg.fluid.c_o
    k_lo = 2.0 * math.pi * f_range[0] / c
    k_hi = 2.0 * math.pi * f_range[1] / c
    p = cfg.params
    cuts = sorted({k_lo, k_hi} | {k for k in (p.K0_hat, p.K1) if k_lo < k < k_hi})
    roots_per_beta = []
    for bL in betaLs:
        beta = bL / cfg.lattice.L
        target = beta * beta

        def g(k, _t=target):
            return foldy_beta_squared(k, cfg) - _t

        roots = []
        for a, b in zip(cuts[:-1], cuts[1:]):
            seg = np.linspace(a, b, max(grid // max(len(cuts) - 1, 1), 64))
            seg = seg[1:-1]  # keep clear of the poles at segment ends
            if seg.size < 2:
                continue
            vals = np.empty(seg.size)
            for i, k in enumerate(seg):
                try:
                    vals[i] = g(k)
                except PoleProximity:
                    vals[i] = np.nan
            for i in range(seg.size - 1):
                v0, v1 = vals[i], vals[i + 1]
                if np.isnan(v0) or np.isnan(v1) or v0 * v1 > 0.0:
                    continue
                roots.append(_bisect(g, seg[i], seg[i + 1]))
        roots_per_beta.append(sorted(roots))
    kL = cfg.lattice.L
    roots_kL = [[r * kL for r in roots] for roots in roots_per_beta]
    return group_branches(list(betaLs), roots_kL, MethodId.FOLDY)
