"""Self-consistent effective medium (coherent-potential approximation).

A composite inclusion (shell plus host annulus of radius R_o = a / sqrt(F))
embedded in the trial medium yields, at leading order in k_o R_o, effective
bulk modulus and density ratios and the dispersion relation

    k_eff^2 = (rho_eff / rho_o) (B_o / B_eff) k_o^2.

Band gaps are the intervals where exactly one of the two ratios is negative.
The generic leading-order relations use the scaled coefficients Z_{n,0}
extracted from the leading-order parts of the soft factors (the higher-order
log correction of Z_1 does not belong to the leading matching order); with
those the generic path reproduces the printed closed forms identically.
"""

import math
from dataclasses import dataclass

from .bands import BandGap, DispersionCurve, MethodId
from .config import ArrayConfig
from .errors import DegenerateRadicand, DomainError, PoleProximity
from .shell import FluidSpec
from .special import bessel_j, bessel_j_prime, bessel_y, bessel_y_prime, jn_seq

_HZ = 1.0 / (2.0 * math.pi)
_POLE_RTOL = 1e-12


@dataclass(frozen=True)
class EffectiveMedium:
    """Effective-medium state at one wavenumber."""

    B_eff_ratio: float     # B_eff / B_o
    rho_eff_ratio: float   # rho_eff / rho_o
    k_eff_sq: float        # [1/m^2], negative inside a gap

    @property
    def in_gap(self) -> bool:
        return self.k_eff_sq < 0.0


def composite_radius(cfg: ArrayConfig) -> float:
    """Composite-inclusion outer radius R_o = a / sqrt(F); pi R_o^2 = L^2."""
    return cfg.shell.a / math.sqrt(cfg.filling_fraction)


def _z_leading(n: int, k_o: float, cfg: ArrayConfig) -> float:
    """Leading-order soft factor entering the scaled coefficients."""
    p = cfg.params
    eps = k_o * cfg.shell.a
    u = k_o * k_o
    if n == 0:
        return (eps * eps * math.pi / 4.0) * (p.K0 ** 2 - u) / (p.K0_hat ** 2 - u)
    if n == 1:
        return (eps * eps * math.pi / 4.0) * (
            -1.0 + p.K_rho * (p.K0 ** 2 - u) / (2.0 * p.K0 ** 2 - u))
    raise DomainError("scaled factors are defined for n in {0, 1}")


def z_scaled(n: int, k_o: float, cfg: ArrayConfig,
             z_value: float | None = None) -> float:
    """Dimensionless leading-order coefficient Z_{n,0}, n in {0, 1}.

    Z_0 = (eta/2)^2 pi Z_{0,0};  Z_n = (eta/2)^{2n} pi / ((n-1)! n!) Z_{n,0}
    with eta = k_o R_o.  ``z_value`` overrides the built-in leading-order
    factor (used for scaling checks with a frozen Z).
    """
    if n not in (0, 1):
        raise DomainError("z_scaled supports n in {0, 1}")
    eta = k_o * composite_radius(cfg)
    if eta >= 0.5:
        import warnings

        warnings.warn("z_scaled called outside the homogenization regime "
                      "(k_o R_o >= 0.5)", stacklevel=2)
    z = _z_leading(n, k_o, cfg) if z_value is None else z_value
    half = 0.5 * eta
    if n == 0:
        return z / (half * half * math.pi)
    return z / (half * half * math.pi)  # 0! 1! = 1


def effective_params_generic(Z00: float, Z10: float, fluid: FluidSpec,
                             k_o: float) -> EffectiveMedium:
    """Leading-order relations B_eff/B_o = 1/(1 - Z00), rho_eff/rho_o = (1-Z10)/(1+Z10)."""
    if abs(1.0 - Z00) < _POLE_RTOL * (1.0 + abs(Z00)):
        raise PoleProximity("B_eff pole at Z_{0,0} = 1")
    if abs(1.0 + Z10) < _POLE_RTOL * (1.0 + abs(Z10)):
        raise PoleProximity("rho_eff pole at Z_{1,0} = -1")
    if abs(1.0 - Z10) < _POLE_RTOL * (1.0 + abs(Z10)):
        raise PoleProximity("inverse density relation pole at Z_{1,0} = 1")
    b_ratio = 1.0 / (1.0 - Z00)
    r_ratio = (1.0 - Z10) / (1.0 + Z10)
    return EffectiveMedium(
        B_eff_ratio=b_ratio,
        rho_eff_ratio=r_ratio,
        k_eff_sq=(r_ratio / b_ratio) * k_o * k_o,
    )


def effective_params_shell(k_o: float, cfg: ArrayConfig) -> EffectiveMedium:
    """Closed-form effective parameters of the shell array at wavenumber k_o."""
    p = cfg.params
    F = cfg.filling_fraction
    u = (k_o * cfg.shell.a) ** 2
    b_num = p.K_c + p.K_rho - u
    b_den = p.K_c * (1.0 - F) + p.K_rho - u * (1.0 - F)
    r_num = p.K_c * (2.0 + F * (2.0 - p.K_rho)) - u * (1.0 + F * (1.0 - p.K_rho))
    r_den = p.K_c * (2.0 - F * (2.0 - p.K_rho)) - u * (1.0 - F * (1.0 - p.K_rho))
    scale = p.K_c + p.K_rho + u
    if abs(b_den) < _POLE_RTOL * scale:
        raise PoleProximity("B_eff denominator vanishes (n=0 gap upper edge)")
    if abs(r_den) < _POLE_RTOL * scale:
        raise PoleProximity("rho_eff denominator vanishes (n=1 gap lower edge)")
    b_ratio = b_num / b_den
    r_ratio = r_num / r_den
    return EffectiveMedium(
        B_eff_ratio=b_ratio,
        rho_eff_ratio=r_ratio,
        k_eff_sq=(r_ratio / b_ratio) * k_o * k_o,
    )


def cpa_gap_n0(cfg: ArrayConfig) -> BandGap:
    """n=0 gap: the interval where B_eff is negative."""
    p = cfg.params
    F = cfg.filling_fraction
    ratio = p.K_rho / p.K_c
    c3_2pa = p.c3 / (2.0 * math.pi * cfg.shell.a)
    return BandGap(
        n_mode=0,
        f_lower=c3_2pa * math.sqrt(1.0 + ratio),
        f_upper=c3_2pa * math.sqrt(1.0 + ratio * (1.0 + F / (1.0 - F))),
        method=MethodId.CPA,
    )


def cpa_gap_n1(cfg: ArrayConfig) -> BandGap:
    """n=1 gap: the interval where rho_eff is negative."""
    p = cfg.params
    F = cfg.filling_fraction
    g = F * (1.0 - p.K_rho)
    if not 1.0 - g > 0.0:
        raise DegenerateRadicand("1 - F (1 - K_rho) must stay positive")
    lo_rad = 1.0 - F * p.K_rho / (2.0 * (1.0 - g))
    if lo_rad <= 0.0:
        raise DegenerateRadicand("n=1 lower-edge radicand non-positive")
    f1 = math.sqrt(2.0) * p.c3 / (2.0 * math.pi * cfg.shell.a)
    return BandGap(
        n_mode=1,
        f_lower=f1 * math.sqrt(lo_rad),
        f_upper=f1 * math.sqrt(1.0 + F * p.K_rho / (2.0 * (1.0 + g))),
        method=MethodId.CPA,
    )


def cpa_matching_residual(n: int, k_o: float, cfg: ArrayConfig) -> float:
    """Diagnostic: residual of the per-harmonic Bessel-ratio matching condition.

    [dJ_n(eta)/deta + Z_n dY_n(eta)/deta] / [J_n(eta) + Z_n Y_n(eta)]
      - (rho_o / rho_eff) d J_n(eta xi_c)/deta / J_n(eta xi_c)

    with eta = k_o R_o and xi_c = c_o / c_eff; the derivative on the trial
    medium carries the chain-rule factor xi_c.  Evaluated at the computed
    effective medium; only meaningful outside gaps (k_eff^2 > 0).  Confirms
    the leading-order reduction, it is not solved.
    """
    med = effective_params_shell(k_o, cfg)
    if med.k_eff_sq <= 0.0:
        raise DomainError("matching residual defined for propagating k_eff only")
    r_o = composite_radius(cfg)
    eta = k_o * r_o
    z = _z_leading(n, k_o, cfg)
    lhs_num = bessel_j_prime(n, eta) + z * bessel_y_prime(n, eta)
    lhs_den = bessel_j(n, eta) + z * bessel_y(n, eta)
    k_eff = math.sqrt(med.k_eff_sq)
    xi_c = k_eff / k_o
    arg = k_eff * r_o
    rhs = (xi_c / med.rho_eff_ratio) * bessel_j_prime(n, arg) / bessel_j(n, arg)
    return lhs_num / lhs_den - rhs


def cpa_trace(cfg: ArrayConfig, f_range, grid: int = 2000) -> list[DispersionCurve]:
    """Effective-medium dispersion sampled on a k_o grid.

    Points are (k_eff L, k_o L) wherever k_eff^2 >= 0 and k_eff L <= pi,
    split into branches at the gaps.
    """
    c = cfg.fluid.c_o
    L = cfg.lattice.L
    k_lo = 2.0 * math.pi * f_range[0] / c
    k_hi = 2.0 * math.pi * f_range[1] / c
    ks = [k_lo + (k_hi - k_lo) * i / (grid - 1) for i in range(grid)]
    curves: list[DispersionCurve] = []
    run: list[tuple[float, float]] = []
    for k in ks:
        try:
            med = effective_params_shell(k, cfg)
        except PoleProximity:
            med = None
        ok = med is not None and med.k_eff_sq >= 0.0
        if ok:
            beta_l = math.sqrt(med.k_eff_sq) * L
            if beta_l <= math.pi:
                run.append((beta_l, k * L))
                continue
        if run:
            curves.append(DispersionCurve(method=MethodId.CPA, points=run,
                                          branch_index=len(curves)))
            run = []
    if run:
        curves.append(DispersionCurve(method=MethodId.CPA, points=run,
                                      branch_index=len(curves)))
    return curves
