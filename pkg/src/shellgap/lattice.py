"""Square-lattice geometry and quasi-periodic lattice sums.

Only the reciprocal (spectral) representation of the Y_n lattice sum is
implemented.  Truncation is a square window |m1|, |m2| <= M on the
reciprocal indices; xi defaults to L/2 (half the nearest-neighbour
distance), with a 0.45 L retry helper for the isolated points where
J_n(k_o xi) vanishes.  The representation is xi-independent in exact
arithmetic.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._backend import jit_kernel
from .errors import BesselZero, DomainError, PoleProximity
from .special import _jn_seq, bessel_j, jn_seq, yn_seq

_POLE_WINDOW = 1e-12     # absolute window on k_o^2 - beta_m^2
_BESSEL_ZERO_TOL = 1e-8
_IPOW = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])


@dataclass(frozen=True)
class SquareLattice:
    """Square array with lattice constant L; cell area A = L^2."""

    L: float

    def __post_init__(self):
        if not self.L > 0.0:
            raise DomainError(f"lattice constant must be positive, got {self.L}")

    @property
    def area(self) -> float:
        return self.L * self.L


@dataclass(frozen=True)
class BlochVector:
    """Bloch vector in polar form: magnitude beta [1/m] and angle tau [rad]."""

    beta: float
    tau: float = 0.0

    @property
    def qx(self) -> float:
        return self.beta * math.cos(self.tau)

    @property
    def qy(self) -> float:
        return self.beta * math.sin(self.tau)


@dataclass(frozen=True)
class LatticeSumValue:
    """One evaluated lattice sum together with its order and truncation."""

    value: complex
    n: int
    truncation: int


@jit_kernel
def _weights_kernel(qx, qy, xi, nu_max):
    """Per-site numerators J_nu(beta_m xi) e^{i nu tau_m} for nu = -nu_max..nu_max."""
    nsites = qx.size
    w = np.empty((2 * nu_max + 1, nsites), dtype=np.complex128)
    bm2 = np.empty(nsites)
    for i in range(nsites):
        bm = math.hypot(qx[i], qy[i])
        bm2[i] = bm * bm
        if bm < 1e-300:
            for nu in range(-nu_max, nu_max + 1):
                w[nu + nu_max, i] = 1.0 + 0.0j if nu == 0 else 0.0 + 0.0j
            continue
        tm = math.atan2(qy[i], qx[i])
        jv = _jn_seq(nu_max, bm * xi)
        for nu in range(-nu_max, nu_max + 1):
            j = jv[abs(nu)]
            if nu < 0 and (-nu) % 2 == 1:
                j = -j
            w[nu + nu_max, i] = j * complex(math.cos(nu * tm), math.sin(nu * tm))
    return w, bm2


def _reciprocal_grid(beta: BlochVector, lat: SquareLattice, M: int):
    """Flattened beta_m components over the square window |m1|, |m2| <= M."""
    ms = np.arange(-M, M + 1, dtype=float)
    g = 2.0 * math.pi / lat.L
    qx = (beta.qx + g * ms)[:, None] + np.zeros_like(ms)[None, :]
    qy = np.zeros_like(ms)[:, None] + (beta.qy + g * ms)[None, :]
    return qx.ravel(), qy.ravel()


def sigma_weights(beta: BlochVector, lat: SquareLattice, xi: float, M: int,
                  nu_max: int):
    """Precomputed (weights, beta_m^2) arrays; k_o-independent for fixed beta."""
    qx, qy = _reciprocal_grid(beta, lat, M)
    return _weights_kernel(qx, qy, float(xi), int(nu_max))


def _check_poles(k_o: float, bm2: np.ndarray):
    if np.min(np.abs(k_o * k_o - bm2)) <= _POLE_WINDOW:
        raise PoleProximity(
            f"k_o = {k_o} within the exclusion window of an empty-lattice pole")


def sigma_y(n: int, k_o: float, beta: BlochVector, lat: SquareLattice,
            xi: float | None = None, M: int = 8) -> complex:
    """Quasi-periodic lattice sum sigma_n^Y(k_o, beta), reciprocal form.

    (4 i^n / A) sum_m [J_n(beta_m xi) / J_n(k_o xi)] e^{i n tau_m} /
    (k_o^2 - beta_m^2) - delta_{0n} Y_0(k_o xi) / J_0(k_o xi)
    """
    if k_o <= 0.0:
        raise DomainError("sigma_y requires k_o > 0")
    if xi is None:
        xi = 0.5 * lat.L
    if not 0.0 < xi <= 0.5 * lat.L:
        raise DomainError(f"xi must lie in (0, L/2], got {xi}")
    if M < 1:
        raise DomainError("truncation M must be >= 1")
    jden = bessel_j(n, k_o * xi)
    # J_n has no zeros below its turning point x ~ n; tiny small-argument
    # values there are fine (they cancel against the weight numerators)
    if jden == 0.0 or (abs(jden) < _BESSEL_ZERO_TOL and k_o * xi > abs(n)):
        raise BesselZero(f"J_{n}(k_o xi) = {jden:.2e}; shift xi")
    w, bm2 = sigma_weights(beta, lat, xi, M, abs(int(n)))
    _check_poles(k_o, bm2)
    acc = complex(np.sum(w[n + abs(int(n))] / (k_o * k_o - bm2)))
    val = 4.0 * _IPOW[n % 4] / lat.area * acc / jden
    if n == 0:
        val -= yn_seq(0, k_o * xi)[0] / jden
    return val


def sigma_y_value(n: int, k_o: float, beta: BlochVector, lat: SquareLattice,
                  xi: float | None = None, M: int = 8) -> LatticeSumValue:
    return LatticeSumValue(value=sigma_y(n, k_o, beta, lat, xi, M),
                           n=int(n), truncation=int(M))


def sigma_y_auto(n: int, k_o: float, beta: BlochVector, lat: SquareLattice,
                 M: int = 8) -> complex:
    """sigma_y at xi = L/2, retried at xi = 0.45 L on a Bessel zero."""
    try:
        return sigma_y(n, k_o, beta, lat, 0.5 * lat.L, M)
    except BesselZero:
        return sigma_y(n, k_o, beta, lat, 0.45 * lat.L, M)


def sigma_y_single_pole(n: int, k_o: float, beta: BlochVector,
                        lat: SquareLattice) -> complex:
    """Leading-order (single empty-lattice pole) form (i^n / A) 4 / (k_o^2 - beta^2)."""
    import warnings

    if k_o * lat.L > 0.8 or beta.beta * lat.L > 0.8:
        warnings.warn("single-pole lattice sum outside its smallness regime "
                      "(k_o L or beta L above 0.8)", stacklevel=2)
    den = k_o * k_o - beta.beta * beta.beta
    if abs(den) <= _POLE_WINDOW:
        raise PoleProximity("single-pole lattice sum evaluated at k_o = beta")
    return _IPOW[n % 4] / lat.area * 4.0 / den


_S_COEFF_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _s_coeffs(M: int):
    """Cached J_0(pi sqrt(m1^2+m2^2)) and 4 pi^2 (m1^2+m2^2) over the window."""
    got = _S_COEFF_CACHE.get(M)
    if got is not None:
        return got
    ms = np.arange(-M, M + 1)
    m1, m2 = np.meshgrid(ms, ms, indexing="ij")
    s = (m1 * m1 + m2 * m2).ravel().astype(float)
    s = s[s > 0.0]
    coeff = np.array([jn_seq(0, math.pi * math.sqrt(v))[0] for v in s])
    dens = 4.0 * math.pi * math.pi * s
    _S_COEFF_CACHE[M] = (coeff, dens)
    return coeff, dens


def s_sum(k_oL: float, M: int) -> float:
    """Square-lattice correction sum S(k_o L) truncated at |m1|, |m2| <= M."""
    if k_oL <= 0.0:
        raise DomainError("s_sum requires k_o L > 0")
    if M < 1:
        raise DomainError("truncation M must be >= 1")
    coeff, dens = _s_coeffs(int(M))
    if np.min(np.abs(k_oL - np.sqrt(dens))) < 1e-9:
        raise PoleProximity(f"k_o L = {k_oL} on an empty-lattice pole of S")
    return float(np.sum(coeff / (k_oL * k_oL - dens)))


def sigma0_at_gamma(k_oL: float, M: int) -> float:
    """sigma_0^Y at beta = 0 for the square lattice with xi = L/2.

    [4 / (k_o L)^2 - Y_0(k_o L / 2) + 4 S(k_o L)] / J_0(k_o L / 2)
    """
    if k_oL <= 0.0:
        raise DomainError("sigma0_at_gamma requires k_o L > 0")
    half = 0.5 * k_oL
    j0 = jn_seq(0, half)[0]
    if abs(j0) < _BESSEL_ZERO_TOL:
        raise BesselZero(f"J_0(k_o L / 2) = {j0:.2e}")
    y0 = yn_seq(0, half)[0]
    return (4.0 / (k_oL * k_oL) - y0 + 4.0 * s_sum(k_oL, M)) / j0


def brillouin_path(lat: SquareLattice, n_points: int = 64,
                   segment: str = "GX") -> list[BlochVector]:
    """Sampled Bloch vectors along an irreducible-zone segment.

    "GX": (0,0) -> (pi,0);  "XM": (pi,0) -> (pi,pi);  "MG": (pi,pi) -> (0,0).
    """
    if n_points < 2:
        raise DomainError("path needs at least 2 points")
    ts = np.linspace(0.0, 1.0, n_points)
    g = math.pi / lat.L
    out = []
    for t in ts:
        if segment == "GX":
            qx, qy = g * t, 0.0
        elif segment == "XM":
            qx, qy = g, g * t
        elif segment == "MG":
            qx, qy = g * (1.0 - t), g * (1.0 - t)
        else:
            raise DomainError(f"unknown segment {segment!r}")
        out.append(BlochVector(beta=math.hypot(qx, qy), tau=math.atan2(qy, qx)))
    return out
