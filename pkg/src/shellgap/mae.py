"""Matched-asymptotic refinement of the n=0 gap's upper edge at beta L = 0.

The matching condition is Z_0 sigma_0^Y(k_o, 0) - 1 = 0 with the full
reciprocal lattice sum.  Cleared of denominators (xi = L/2 arguments):

    Z_0 {4 - (k_o L)^2 [Y_0(k_o L / 2) - 4 S(k_o L)]} - (k_o L)^2 J_0(k_o L / 2) = 0

The S term enters with the sign that makes this identical to the
sigma_0^Y substitution (and hence to the N=0 scalar dispersion relation);
Z_0 is the soft approximation by default, the exact factor behind a flag.
"""

import math

from .config import ArrayConfig
from .errors import NoRootFound
from .lattice import s_sum
from .shell import z0_soft_approx, z_shell_exact
from .special import jn_seq, yn_seq

_HZ = 1.0 / (2.0 * math.pi)


def _z0(k_o: float, cfg: ArrayConfig, exact_z0: bool) -> float:
    if exact_z0:
        return z_shell_exact(0, k_o, cfg.shell, cfg.fluid)
    return z0_soft_approx(k_o, cfg.params, cfg.shell.a)


def mae_matching_residual(k_oL: float, cfg: ArrayConfig, M: int = 12,
                          exact_z0: bool = False) -> float:
    """Residual of the matching condition at beta = 0; its root is the edge."""
    k_o = k_oL / cfg.lattice.L
    z0 = _z0(k_o, cfg, exact_z0)
    half = 0.5 * k_oL
    j0 = jn_seq(0, half)[0]
    y0 = yn_seq(0, half)[0]
    s = s_sum(k_oL, M)
    kl2 = k_oL * k_oL
    return z0 * (4.0 - kl2 * (y0 - 4.0 * s)) - kl2 * j0


def mae_upper_edge_n0(cfg: ArrayConfig, M: int = 12, exact_z0: bool = False,
                      scan_step: float = 1e-3) -> float:
    """First root of the matching residual above K0_hat, in Hz.

    Bracketed by scanning k_o L upward from K0_hat L in ``scan_step``
    increments, then bisected to 1e-10 relative.
    """
    if M < 8:
        raise ValueError("MAE needs M >= 8 for a converged S sum")
    L = cfg.lattice.L
    lo = cfg.params.K0_hat * L * (1.0 + 1e-9) + 1e-9
    hi_limit = math.pi

    def res(kl):
        return mae_matching_residual(kl, cfg, M, exact_z0)

    x0 = lo
    f0 = res(x0)
    x = x0
    while x < hi_limit:
        x_next = min(x + scan_step, hi_limit)
        f_next = res(x_next)
        if f0 * f_next <= 0.0:
            a, b, fa = x, x_next, f0
            for _ in range(200):
                mid = 0.5 * (a + b)
                fm = res(mid)
                if fa * fm <= 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
                if b - a <= 1e-10 * b:
                    break
            k_oL = 0.5 * (a + b)
            return (k_oL / L) * cfg.fluid.c_o * _HZ
        x, f0 = x_next, f_next
    raise NoRootFound(
        f"no MAE root in (K0_hat L, pi) = ({lo:.4f}, {hi_limit:.4f})")
