"""shellgap: resonant low-frequency band gaps of periodic thin-shell arrays."""

from ._backend import BACKEND, USING_NUMBA
from .bands import BandGap, DispersionCurve, MethodId
from .config import (ArrayConfig, default_config, dense_config, load_config,
                     parse_config)
from .cpa import (EffectiveMedium, composite_radius, cpa_gap_n0, cpa_gap_n1,
                  effective_params_generic, effective_params_shell, z_scaled)
from .errors import (BesselZero, BranchAmbiguity, ConfigError,
                     DegenerateDenominator, DegenerateRadicand, DomainError,
                     NoGap, NoRootFound, PoleProximity, ShellgapError)
from .foldy import (foldy_beta_squared, foldy_gap_n0, foldy_gap_n0_full,
                    foldy_gap_n1, foldy_gap_n1_full,
                    foldy_upper_edge_dispersion)
from .lattice import (BlochVector, SquareLattice, brillouin_path, s_sum,
                      sigma0_at_gamma, sigma_y, sigma_y_single_pole)
from .mae import mae_matching_residual, mae_upper_edge_n0
from .rayleigh import (RayleighSystem, build_system, dispersion_indicator,
                       extract_gap, rayleigh_gap, trace_bands)
from .shell import (FluidSpec, ResonanceParams, ShellSpec, dilatational_speed,
                    resonance_params, z0_soft_approx, z1_soft_approx,
                    z_rigid, z_shell_exact)
from .special import (EULER_MASCHERONI, bessel_j, bessel_j_prime, bessel_y,
                      bessel_y_prime)

__version__ = "0.1.0"
