"""Single thin elastic shell in a fluid: resonances and impedance factors.

Conventions: ``a`` is the shell mid-surface radius, ``h`` the HALF-thickness
(CLI inputs take the full thickness 2h and halve it).  All wavenumbers are
host-fluid wavenumbers k_o = omega / c_o.
"""

import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, PoleProximity
from .special import bessel_j_prime, bessel_y_prime

_POLE_RTOL = 1e-14


@dataclass(frozen=True)
class ShellSpec:
    """Geometry and elastic material of one thin shell."""

    a: float      # mid-surface radius [m]
    h: float      # half-thickness [m]
    rho: float    # shell material density [kg/m^3]
    E: float      # Young's modulus [Pa]
    nu: float     # Poisson ratio

    def __post_init__(self):
        if not self.a > 0.0:
            raise DomainError(f"shell radius must be positive, got {self.a}")
        if not self.h > 0.0:
            raise DomainError(f"shell half-thickness must be positive, got {self.h}")
        if not self.rho > 0.0:
            raise DomainError(f"shell density must be positive, got {self.rho}")
        if not self.E > 0.0:
            raise DomainError(f"Young's modulus must be positive, got {self.E}")
        if not (-1.0 < self.nu < 0.5):
            raise DomainError(f"Poisson ratio must lie in (-1, 0.5), got {self.nu}")
        if self.h >= self.a / 10.0:
            warnings.warn(
                f"h = {self.h} is not small against a = {self.a}; "
                "thin-shell theory assumes h << a",
                stacklevel=2,
            )


@dataclass(frozen=True)
class FluidSpec:
    """Host acoustic fluid."""

    rho_o: float  # density [kg/m^3]
    c_o: float    # sound speed [m/s]

    def __post_init__(self):
        if not self.rho_o > 0.0:
            raise DomainError(f"fluid density must be positive, got {self.rho_o}")
        if not self.c_o > 0.0:
            raise DomainError(f"fluid sound speed must be positive, got {self.c_o}")

    @property
    def bulk_modulus(self) -> float:
        return self.rho_o * self.c_o * self.c_o


@dataclass(frozen=True)
class ResonanceParams:
    """Dimensionless shell-resonance parameters and resonance wavenumbers."""

    c3: float        # dilatational speed [m/s]
    K_rho: float     # (rho_o / rho) (a / h)
    K_c: float       # (c3 / c_o)^2
    K0: float        # in-vacuo axisymmetric resonance wavenumber [1/m]
    K0_hat: float    # fluid-loaded axisymmetric resonance wavenumber [1/m]
    K1: float        # leading-order n=1 resonance, exactly sqrt(2) K0 [1/m]


def dilatational_speed(shell: ShellSpec) -> float:
    """Dilatational wave speed of the thin plate, sqrt(E / (rho (1 - nu^2)))."""
    return math.sqrt(shell.E / (shell.rho * (1.0 - shell.nu * shell.nu)))


def resonance_params(shell: ShellSpec, fluid: FluidSpec) -> ResonanceParams:
    """Resonance wavenumbers K0, K0_hat, K1 and the dimensionless ratios."""
    c3 = dilatational_speed(shell)
    k_rho = (fluid.rho_o / shell.rho) * (shell.a / shell.h)
    k_c = (c3 / fluid.c_o) ** 2
    k0 = math.sqrt(k_c) / shell.a
    k0_hat = math.sqrt(k_rho + k_c) / shell.a
    return ResonanceParams(
        c3=c3, K_rho=k_rho, K_c=k_c, K0=k0, K0_hat=k0_hat, K1=math.sqrt(2.0) * k0
    )


def z_rigid(n: int, k_o: float, a: float) -> float:
    """Rigid-scatterer factor -J'_n(k_o a) / Y'_n(k_o a)."""
    if k_o <= 0.0 or a <= 0.0:
        raise DomainError("z_rigid requires k_o > 0 and a > 0")
    x = k_o * a
    jp = bessel_j_prime(n, x)
    yp = bessel_y_prime(n, x)
    if abs(yp) < _POLE_RTOL * max(1.0, abs(jp)):
        raise PoleProximity(f"Y'_{n}({x}) ~ 0: rigid factor pole")
    return -jp / yp


def z_shell_exact(n: int, k_o: float, shell: ShellSpec, fluid: FluidSpec) -> float:
    """Full thin-shell impedance factor Z_n; even in n (Z_{-n} = Z_n).

    The fluid-loading mass term is rho_o / (rho pi a h k_o^2), the form that
    reproduces the soft-shell expansions of Z_0 and Z_1 in the small k_o a
    limit.
    """
    if k_o <= 0.0:
        raise DomainError("z_shell_exact requires k_o > 0")
    n = abs(int(n))
    a = shell.a
    x = k_o * a
    c3 = dilatational_speed(shell)
    k3a = x * (fluid.c_o / c3)
    jp = bessel_j_prime(n, x)
    yp = bessel_y_prime(n, x)
    shell_fac = 1.0 - k3a * k3a + n * n
    mass = fluid.rho_o / (shell.rho * math.pi * a * shell.h * k_o * k_o)
    num = -(jp * jp) * shell_fac
    den_a = jp * yp * shell_fac
    den_b = (n * n - k3a * k3a) * mass
    den = den_a + den_b
    if abs(den) < _POLE_RTOL * (abs(den_a) + abs(den_b) + 1e-300):
        raise PoleProximity(
            f"Z_{n} denominator vanishes at k_o a = {x}: loaded-shell resonance"
        )
    return num / den


def z0_soft_approx(k_o: float, params: ResonanceParams, a: float) -> float:
    """Soft-shell approximation of Z_0 near the axisymmetric resonances."""
    if k_o <= 0.0:
        raise DomainError("z0_soft_approx requires k_o > 0")
    eps = k_o * a
    if eps >= 0.5:
        warnings.warn("z0_soft_approx called outside the soft-shell regime "
                      "(k_o a >= 0.5)", stacklevel=2)
    num = params.K0 ** 2 - k_o * k_o
    den = params.K0_hat ** 2 - k_o * k_o
    if abs(den) < _POLE_RTOL * (params.K0_hat ** 2 + k_o * k_o):
        raise PoleProximity("z0_soft_approx pole at k_o = K0_hat")
    return (eps * eps * math.pi / 4.0) * num / den


def z1_soft_approx(k_o: float, params: ResonanceParams, shell: ShellSpec,
                   fluid: FluidSpec) -> float:
    """Soft-shell approximation of Z_1; singular at k_o^2 = 2 K0^2."""
    if k_o <= 0.0:
        raise DomainError("z1_soft_approx requires k_o > 0")
    from .special import EULER_MASCHERONI

    eps = k_o * shell.a
    if eps >= 0.5:
        warnings.warn("z1_soft_approx called outside the soft-shell regime "
                      "(k_o a >= 0.5)", stacklevel=2)
    num = params.K0 ** 2 - k_o * k_o
    den = 2.0 * params.K0 ** 2 - k_o * k_o
    if abs(den) < _POLE_RTOL * (2.0 * params.K0 ** 2 + k_o * k_o):
        raise PoleProximity("z1_soft_approx pole at k_o^2 = 2 K0^2")
    loading = (fluid.rho_o * shell.a / (shell.rho * shell.h)) * num / den
    log_term = eps * eps * (0.5 * math.log(eps / 2.0)
                            + (5.0 + 4.0 * EULER_MASCHERONI) / 8.0)
    return (eps * eps * math.pi / 4.0) * (-1.0 + loading + log_term)
