"""Truncated Rayleigh Identity: reference band structure and gap edges.

The multipole system couples Bloch coefficients through the quasi-periodic
lattice sums and the shell factors:

    entry(n, p) = delta_np - (-1)^{p-n} sigma^Y_{p-n}(k_o, beta) Z_p

for n, p = -N..N.  Bloch eigenfrequencies are located as zeros of the
smallest singular value of that matrix (sign-free, scale-stable surrogate
for det = 0), scanned on a frequency grid and refined by golden-section.

Grid scans share all k_o-only work (Bessel columns, Z factors) across Bloch
vectors and evaluate the singular values in one batched LAPACK call, so a
full 64-point path over a 2000-point grid stays in seconds.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bands import BandGap, DispersionCurve, MethodId, group_branches
from .config import ArrayConfig
from .errors import (BesselZero, BranchAmbiguity, NoGap, PoleProximity,
                     ShellgapError)
from .lattice import BlochVector, sigma_weights
from .shell import z_shell_exact
from .special import _jn_seq, yn_seq

_HZ = 1.0 / (2.0 * math.pi)
_IPOW = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])
_POLE_WINDOW = 1e-12
_BESSEL_ZERO_TOL = 1e-8
_INDICATOR_ACCEPT = 1e-8


@dataclass
class RayleighSystem:
    """Assembled multipole system at one (k_o, beta)."""

    N_trunc: int
    matrix: np.ndarray
    k_o: float
    beta: BlochVector


def _default_z_fn(cfg: ArrayConfig):
    def z_fn(p: int, k_o: float) -> float:
        return z_shell_exact(p, k_o, cfg.shell, cfg.fluid)

    return z_fn


class _BetaEvaluator:
    """Per-Bloch-vector context with precomputed lattice weights."""

    def __init__(self, cfg: ArrayConfig, beta: BlochVector, N: int, M: int,
                 z_fn=None):
        self.cfg = cfg
        self.beta = beta
        self.N = N
        self.M = M
        self.A = cfg.lattice.area
        self.nu_max = 2 * N
        self.z_fn = z_fn if z_fn is not None else _default_z_fn(cfg)
        L = cfg.lattice.L
        self._xis = (0.5 * L, 0.45 * L)
        self._weights = {}
        orders = np.arange(-N, N + 1)
        diff = orders[None, :] - orders[:, None]
        self.sign = np.where(diff % 2 == 0, 1.0, -1.0)
        self.col = diff + self.nu_max
        self.absp = np.abs(orders)
        nus = np.arange(-self.nu_max, self.nu_max + 1)
        self.nus = nus
        self.pref = 4.0 * _IPOW[nus % 4] / self.A
        self.jsign = np.where((nus < 0) & (np.abs(nus) % 2 == 1), -1.0, 1.0)

    def _get_weights(self, xi: float):
        got = self._weights.get(xi)
        if got is None:
            got = sigma_weights(self.beta, self.cfg.lattice, xi, self.M,
                                self.nu_max)
            self._weights[xi] = got
        return got

    def _sigma_at(self, k_o: float, xi: float):
        w, bm2 = self._get_weights(xi)
        if np.min(np.abs(k_o * k_o - bm2)) <= _POLE_WINDOW:
            raise PoleProximity("empty-lattice pole crossing")
        jv = _jn_seq(self.nu_max, k_o * xi)
        jsig = jv[np.abs(self.nus)] * self.jsign
        # flag only genuine zero crossings (oscillatory region x > |nu|)
        osc = k_o * xi > np.abs(self.nus)
        if np.any(jsig == 0.0) or np.any(osc & (np.abs(jsig) < _BESSEL_ZERO_TOL)):
            raise BesselZero("J_n(k_o xi) ~ 0")
        acc = w @ (1.0 / (k_o * k_o - bm2))
        sig = self.pref * acc / jsig
        sig[self.nu_max] -= yn_seq(0, k_o * xi)[0] / jv[0]
        return sig

    def sigma_vec(self, k_o: float):
        """Lattice sums sigma_nu, nu = -2N..2N, with the xi = 0.45 L retry."""
        try:
            return self._sigma_at(k_o, self._xis[0])
        except BesselZero:
            return self._sigma_at(k_o, self._xis[1])

    def z_vec(self, k_o: float) -> np.ndarray:
        return np.array([self.z_fn(p, k_o) for p in range(self.N + 1)])

    def matrix(self, k_o: float) -> np.ndarray:
        sig = self.sigma_vec(k_o)
        zp = self.z_vec(k_o)[self.absp]
        mat = -self.sign * sig[self.col] * zp[None, :]
        mat[np.diag_indices(2 * self.N + 1)] += 1.0
        return mat

    def indicator(self, k_o: float) -> float:
        try:
            mat = self.matrix(k_o)
        except (PoleProximity, BesselZero):
            return math.inf
        return float(np.linalg.svd(mat, compute_uv=False)[-1])

    def indicator_grid(self, ks: np.ndarray, kcache: "_KGridCache") -> np.ndarray:
        """Vectorized smallest singular value over the shared k grid."""
        w, bm2 = self._get_weights(kcache.xi)
        denom = ks[:, None] ** 2 - bm2[None, :]
        bad = np.min(np.abs(denom), axis=1) <= _POLE_WINDOW
        denom[bad, :] = 1.0
        acc = (1.0 / denom) @ w.T  # (nk, norders)
        sig = acc * self.pref[None, :] / kcache.jsig
        sig[:, self.nu_max] -= kcache.y0_over_j0
        mats = -self.sign[None, :, :] * sig[:, self.col] \
            * kcache.zp[:, None, :]
        idx = np.arange(2 * self.N + 1)
        mats[:, idx, idx] += 1.0
        vals = np.linalg.svd(mats, compute_uv=False)[:, -1]
        vals[bad | kcache.bad] = np.nan
        return vals


class _KGridCache:
    """k_o-only precomputations shared by every beta on a path."""

    def __init__(self, cfg: ArrayConfig, N: int, ks: np.ndarray, z_fn=None):
        z_fn = z_fn if z_fn is not None else _default_z_fn(cfg)
        self.xi = 0.5 * cfg.lattice.L
        nu_max = 2 * N
        nk = ks.size
        nus = np.arange(-nu_max, nu_max + 1)
        jsign = np.where((nus < 0) & (np.abs(nus) % 2 == 1), -1.0, 1.0)
        jgrid = np.empty((nk, nu_max + 1))
        y0j0 = np.empty(nk)
        zp = np.empty((nk, 2 * N + 1))
        bad = np.zeros(nk, dtype=bool)
        absp = np.abs(np.arange(-N, N + 1))
        for i, k in enumerate(ks):
            jv = _jn_seq(nu_max, k * self.xi)
            jgrid[i] = jv
            y0j0[i] = yn_seq(0, k * self.xi)[0] / jv[0]
            try:
                zrow = [z_fn(p, k) for p in range(N + 1)]
            except (PoleProximity, ShellgapError):
                bad[i] = True
                zrow = [0.0] * (N + 1)
            zp[i] = np.asarray(zrow)[absp]
        self.jsig = jgrid[:, np.abs(nus)] * jsign[None, :]
        osc = (ks[:, None] * self.xi) > np.abs(nus)[None, :]
        bad |= np.any(osc & (np.abs(self.jsig) < _BESSEL_ZERO_TOL), axis=1)
        bad |= np.any(self.jsig == 0.0, axis=1)
        self.jsig[bad, :] = 1.0
        self.y0_over_j0 = y0j0
        self.zp = zp
        self.bad = bad


def build_system(k_o: float, beta: BlochVector, cfg: ArrayConfig, N: int,
                 z_fn=None, M: int = 8) -> RayleighSystem:
    """(2N+1) x (2N+1) Rayleigh Identity matrix at (k_o, beta)."""
    ev = _BetaEvaluator(cfg, beta, N, M, z_fn)
    return RayleighSystem(N_trunc=N, matrix=ev.matrix(k_o), k_o=k_o, beta=beta)


def dispersion_indicator(k_o: float, beta: BlochVector, cfg: ArrayConfig,
                         N: int, z_fn=None, M: int = 8) -> float:
    """Smallest singular value of the system; zero on a Bloch eigenfrequency."""
    return _BetaEvaluator(cfg, beta, N, M, z_fn).indicator(k_o)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_refine(fn, a: float, b: float, rel: float = 1e-10):
    """Golden-section minimization of fn on [a, b]; returns (x, fn(x))."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = fn(c)
    fd = fn(d)
    best_x, best_v = (c, fc) if fc <= fd else (d, fd)
    while (b - a) > rel * max(abs(b), 1e-300):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
        if fc < best_v:
            best_x, best_v = c, fc
        if fd < best_v:
            best_x, best_v = d, fd
    return best_x, best_v


def _roots_for_beta(ev: _BetaEvaluator, ks: np.ndarray, ind: np.ndarray):
    """Refine every sub-threshold local minimum of the indicator grid."""
    roots = []
    step = ks[1] - ks[0]
    n = ks.size
    for i in range(1, n - 1):
        v = ind[i]
        if not np.isfinite(v):
            continue
        left = ind[i - 1] if np.isfinite(ind[i - 1]) else math.inf
        right = ind[i + 1] if np.isfinite(ind[i + 1]) else math.inf
        if v < left and v <= right:
            k_star, v_star = _golden_refine(ev.indicator, ks[i - 1], ks[i + 1])
            if v_star <= _INDICATOR_ACCEPT:
                roots.append(k_star)
    roots.sort()
    for r0, r1 in zip(roots, roots[1:]):
        if r1 - r0 < 0.5 * step:
            raise BranchAmbiguity(
                f"two roots within one grid cell near k_o = {r0}; refine grid")
    return roots


def trace_bands(path, f_range, cfg: ArrayConfig, N: int = 5, grid: int = 2000,
                z_fn=None, M: int = 8) -> list[DispersionCurve]:
    """Band branches over a Bloch path within f_range = (f_lo, f_hi) in Hz."""
    c = cfg.fluid.c_o
    k_lo = 2.0 * math.pi * f_range[0] / c
    k_hi = 2.0 * math.pi * f_range[1] / c
    if not 0.0 < k_lo < k_hi:
        raise ValueError("need 0 < f_lo < f_hi")
    ks = np.linspace(k_lo, k_hi, grid)
    kcache = _KGridCache(cfg, N, ks, z_fn)
    L = cfg.lattice.L
    betaLs = []
    roots_per_beta = []
    for beta in path:
        ev = _BetaEvaluator(cfg, beta, N, M, z_fn)
        ind = ev.indicator_grid(ks, kcache)
        roots = _roots_for_beta(ev, ks, ind)
        betaLs.append(beta.beta * L)
        roots_per_beta.append([r * L for r in roots])
    return group_branches(betaLs, roots_per_beta, MethodId.RAYLEIGH)


def extract_gap(curves, n_mode: int, cfg: ArrayConfig,
                method: MethodId = MethodId.RAYLEIGH) -> BandGap:
    """Common gap around the n_mode resonance from traced curves.

    f_lower is the largest band frequency below the gap over all sampled
    Bloch vectors, f_upper the smallest band frequency above it.
    """
    p = cfg.params
    k_res = (p.K0_hat if n_mode == 0 else p.K1) * cfg.lattice.L
    spans = [(min(k for _, k in c.points), max(k for _, k in c.points))
             for c in curves if c.points]
    if not spans:
        raise NoGap("no band points on the path")
    best = None
    for s in np.linspace(0.9 * k_res, 1.35 * k_res, 600):
        # a level inside a gap is crossed by no branch; levels inside a
        # band show up as straddled branches (and would otherwise alias
        # the finite beta sampling of steep branches into fake gaps)
        if any(kmin <= s < kmax for kmin, kmax in spans):
            continue
        below = [kmax for _, kmax in spans if kmax <= s]
        above = [kmin for kmin, _ in spans if kmin > s]
        if not below or not above:
            continue
        lo = max(below)
        hi = min(above)
        if hi <= lo:
            continue
        overlaps_res = lo <= 1.05 * k_res and hi >= 0.95 * k_res
        cand = (overlaps_res, hi - lo, lo, hi)
        if best is None or cand[:2] > best[:2]:
            best = cand
    if best is None or best[1] <= 1e-3 * k_res:
        raise NoGap(f"no resolved gap around the n={n_mode} resonance")
    _, _, lo, hi = best
    c_hz = cfg.fluid.c_o * _HZ / cfg.lattice.L
    return BandGap(n_mode=n_mode, f_lower=lo * c_hz, f_upper=hi * c_hz,
                   method=method)


def rayleigh_gap(cfg: ArrayConfig, n_mode: int, N: int = 5, grid: int = 2000,
                 n_beta: int = 64, f_range=None, z_fn=None,
                 M: int = 8) -> BandGap:
    """Trace the (0,0)-(pi,0) segment around one resonance and extract its gap."""
    from .cpa import cpa_gap_n0, cpa_gap_n1
    from .lattice import brillouin_path

    if f_range is None:
        if n_mode == 0:
            ref = cpa_gap_n0(cfg)
            f_range = (0.82 * ref.f_lower, 1.3 * ref.f_upper)
        else:
            ref = cpa_gap_n1(cfg)
            f_range = (0.85 * ref.f_lower, 1.2 * ref.f_upper)
    path = brillouin_path(cfg.lattice, n_beta, "GX")
    curves = trace_bands(path, f_range, cfg, N=N, grid=grid, z_fn=z_fn, M=M)
    return extract_gap(curves, n_mode, cfg)
