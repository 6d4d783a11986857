"""Quasi-periodic lattice sums: values, symmetries, truncation, poles."""

import cmath
import math

import numpy as np
import pytest

from shellgap.errors import BesselZero, DomainError, PoleProximity
from shellgap.lattice import (BlochVector, SquareLattice, brillouin_path,
                              s_sum, sigma0_at_gamma, sigma_weights, sigma_y,
                              sigma_y_auto, sigma_y_single_pole, sigma_y_value)
from shellgap.special import jn_seq, yn_seq

L = 0.08
LAT = SquareLattice(L)

# frozen mpmath values
J0_PI = -0.3042421776440939
J0_PI_SQRT2 = -0.33329229976745917


class TestSinglePole:
    def test_direct_arithmetic(self):
        lat = SquareLattice(1.0)
        # k^2 - beta^2 = 4 with A = 1 -> exactly 1
        val = sigma_y_single_pole(0, 2.5, BlochVector(1.5, 0.0), lat)
        assert val == pytest.approx(1.0, rel=1e-15)

    def test_sign_flip_across_pole(self):
        beta = BlochVector(5.0, 0.0)
        lo = sigma_y_single_pole(0, 4.999, beta, LAT)
        hi = sigma_y_single_pole(0, 5.001, beta, LAT)
        assert lo.real < 0.0 < hi.real

    def test_pole_guard(self):
        with pytest.raises(PoleProximity):
            sigma_y_single_pole(0, 5.0, BlochVector(5.0, 0.0), LAT)

    def test_matches_full_sum_at_smallness(self):
        # k_o L = 0.1, beta L = 0.2
        beta = BlochVector(0.2 / L, 0.0)
        full = sigma_y(0, 0.1 / L, beta, LAT, M=8)
        approx = sigma_y_single_pole(0, 0.1 / L, beta, LAT)
        assert abs(full - approx) <= 0.1 * abs(full)

    def test_smallness_warning(self):
        with pytest.warns(UserWarning, match="smallness regime"):
            sigma_y_single_pole(0, 2.0 / L, BlochVector(0.1 / L, 0.0), LAT)


class TestSigmaY:
    def test_dominated_by_central_term(self):
        # k_o L = 0.3, beta L = 0.1: the (0,0) term 4/(A (k^2 - beta^2))
        k_o = 0.3 / L
        beta = BlochVector(0.1 / L, 0.0)
        central = 4.0 / (LAT.area * (k_o ** 2 - beta.beta ** 2))
        full = sigma_y(0, k_o, beta, LAT, M=8)
        assert abs(full / central - 1.0) <= 0.1

    def test_truncation_example_koL2_zone_edge(self):
        # spec example: M=8 vs M=16 at k_o L = 2.0, beta L = pi agree to
        # three decimal places
        beta = BlochVector(math.pi / L, 0.0)
        v8 = sigma_y(0, 2.0 / L, beta, LAT, M=8)
        v16 = sigma_y(0, 2.0 / L, beta, LAT, M=16)
        assert abs(v8 - v16) <= 1e-3 * max(1.0, abs(v16))

    def test_axis_symmetry_n1_imaginary_part(self):
        beta = BlochVector(1.1 / L, 0.0)
        val = sigma_y(1, 0.9 / L, beta, LAT, M=8)
        scaled = val / 1j
        assert abs(scaled.imag) <= 1e-9 * abs(val)

    def test_i_minus_n_real_on_axis(self):
        # i^-n sigma_n real on the tau = 0 symmetry axis for all orders
        beta = BlochVector(0.8 / L, 0.0)
        for n in range(-4, 5):
            val = sigma_y(n, 1.3 / L, beta, LAT, M=8)
            scaled = val * (1j) ** (-n % 4)
            assert abs(scaled.imag) <= 1e-9 * max(abs(val), 1e-12)

    def test_order_reflection_conjugate(self):
        beta = BlochVector(0.8 / L, 0.0)
        for n in (1, 2, 3, 4):
            a = sigma_y(n, 1.3 / L, beta, LAT, M=8)
            b = sigma_y(-n, 1.3 / L, beta, LAT, M=8)
            assert b == pytest.approx(a.conjugate(), rel=1e-12)

    def test_truncation_invariant_scale_aware(self):
        # |sigma(M) - sigma(2M)| <= 1e-3 max(1, |sigma(2M)|) at M = 8 in the
        # propagating regime; larger k_o L inherits the slower S-sum tail
        # (see the acceptance criterion for the propagated bound)
        for koL in (0.5, 1.5):
            for bL in (0.3, 1.0):
                for n in (0, 1, 2):
                    beta = BlochVector(bL / L, 0.0)
                    v8 = sigma_y(n, koL / L, beta, LAT, M=8)
                    v16 = sigma_y(n, koL / L, beta, LAT, M=16)
                    assert abs(v8 - v16) <= 1e-3 * max(1.0, abs(v16)), (
                        koL, bL, n)

    def test_pole_structure_log_slope(self):
        beta = BlochVector(1.0 / L, 0.0)
        eps = np.array([1e-3, 3e-4, 1e-4, 3e-5, 1e-5])
        mags = [abs(sigma_y(0, (1.0 + e) / L, beta, LAT, M=8)) for e in eps]
        slope = np.polyfit(np.log(eps), np.log(mags), 1)[0]
        assert slope == pytest.approx(-1.0, abs=0.05)

    def test_pole_window_guard(self):
        beta = BlochVector(1.0 / L, 0.0)
        with pytest.raises(PoleProximity):
            sigma_y(0, 1.0 / L, beta, LAT, M=8)

    def test_bessel_zero_and_auto_retry(self):
        # k_o L / 2 at the first J_0 zero
        koL = 2.0 * 2.404825557695773
        beta = BlochVector(0.4 / L, 0.0)
        with pytest.raises(BesselZero):
            sigma_y(0, koL / L, beta, LAT, M=8)
        val = sigma_y_auto(0, koL / L, beta, LAT, M=8)
        assert np.isfinite(val.real) and np.isfinite(val.imag)

    def test_xi_value_independence(self):
        beta = BlochVector(0.7 / L, 0.0)
        a = sigma_y(0, 1.2 / L, beta, LAT, xi=0.5 * L, M=32)
        b = sigma_y(0, 1.2 / L, beta, LAT, xi=0.45 * L, M=32)
        assert abs(a - b) <= 1e-3

    def test_value_record(self):
        rec = sigma_y_value(2, 1.3 / L, BlochVector(0.8 / L, 0.0), LAT, M=9)
        assert rec.n == 2 and rec.truncation == 9
        assert rec.value == sigma_y(2, 1.3 / L, BlochVector(0.8 / L, 0.0), LAT, M=9)

    def test_domain_checks(self):
        beta = BlochVector(0.5 / L, 0.0)
        with pytest.raises(DomainError):
            sigma_y(0, -1.0, beta, LAT)
        with pytest.raises(DomainError):
            sigma_y(0, 10.0, beta, LAT, xi=0.6 * L)


class TestSSum:
    def test_term_level_arithmetic(self):
        # M=1 window: 4 side terms J0(pi) and 4 diagonal terms J0(pi sqrt 2)
        koL = 1.5
        u = koL * koL
        expect = (4.0 * J0_PI / (u - 4.0 * math.pi ** 2)
                  + 4.0 * J0_PI_SQRT2 / (u - 8.0 * math.pi ** 2))
        assert s_sum(koL, 1) == pytest.approx(expect, rel=1e-12)

    def test_three_decimals_m8_vs_m16(self):
        for koL in (0.5, 1.5, 2.5):
            assert abs(s_sum(koL, 8) - s_sum(koL, 16)) <= 5e-4

    def test_monotone_between_poles(self):
        kos = np.linspace(0.05, 6.2, 200)  # below the first pole at 2 pi
        vals = [s_sum(k, 8) for k in kos]
        assert np.all(np.diff(vals) > 0.0)

    def test_pole_guard(self):
        with pytest.raises(PoleProximity):
            s_sum(2.0 * math.pi, 8)


class TestSigma0AtGamma:
    def test_leading_divergence(self):
        koL = 1e-3
        val = sigma0_at_gamma(koL, 8)
        j0 = jn_seq(0, koL / 2)[0]
        assert val * j0 * koL * koL / 4.0 == pytest.approx(1.0, abs=1e-5)

    def test_consistency_with_sigma_y(self):
        koL = 1.2
        direct = sigma0_at_gamma(koL, 12)
        via_sum = sigma_y(0, koL / L, BlochVector(0.0, 0.0), LAT, M=12)
        assert abs(via_sum.imag) <= 1e-12 * abs(direct)
        assert via_sum.real == pytest.approx(direct, rel=1e-6)

    def test_truncation_continuity(self):
        assert abs(sigma0_at_gamma(2.5, 12) - sigma0_at_gamma(2.5, 24)) <= 1e-3

    def test_bessel_zero_guard(self):
        with pytest.raises(BesselZero):
            sigma0_at_gamma(2.0 * 2.404825557695773, 8)


class TestScalarRootXiIndependence:
    def test_root_moves_below_1e6_at_converged_truncation(self):
        """xi = L/2 -> 0.45 L moves the scalar-equation root <= 1e-6 (M=96)."""
        from shellgap.config import default_config
        from shellgap.shell import z0_soft_approx

        cfg = default_config()
        p = cfg.params

        def root_with_xi(xi):
            w, bm2 = sigma_weights(BlochVector(0.0, 0.0), LAT, xi, 96, 0)

            def res(k):
                acc = complex(np.sum(w[0] / (k * k - bm2)))
                jd = jn_seq(0, k * xi)[0]
                sig = (4.0 / LAT.area * acc / jd
                       - yn_seq(0, k * xi)[0] / jd).real
                return 1.0 - sig * z0_soft_approx(k, p, cfg.shell.a)

            ks = np.linspace(p.K0_hat * (1 + 1e-9), 2.5 * p.K0_hat, 800)
            v0 = res(ks[0])
            for k0, k1 in zip(ks[:-1], ks[1:]):
                v1 = res(k1)
                if v0 * v1 <= 0.0:
                    a_, b_, fa = k0, k1, v0
                    for _ in range(100):
                        m = 0.5 * (a_ + b_)
                        fm = res(m)
                        if fa * fm <= 0.0:
                            b_ = m
                        else:
                            a_, fa = m, fm
                    return 0.5 * (a_ + b_)
                v0 = v1
            raise AssertionError("no scalar root found")

        ra = root_with_xi(0.5 * L)
        rb = root_with_xi(0.45 * L)
        assert abs(ra - rb) / ra <= 1e-6


class TestBrillouinPath:
    def test_gx_segment(self):
        path = brillouin_path(LAT, 5, "GX")
        assert len(path) == 5
        assert path[0].beta == 0.0
        assert path[-1].beta * L == pytest.approx(math.pi, rel=1e-15)
        assert all(b.tau == 0.0 for b in path[1:])

    def test_xm_segment(self):
        path = brillouin_path(LAT, 3, "XM")
        end = path[-1]
        assert end.qx * L == pytest.approx(math.pi, rel=1e-12)
        assert end.qy * L == pytest.approx(math.pi, rel=1e-12)

    def test_bad_segment(self):
        with pytest.raises(DomainError):
            brillouin_path(LAT, 4, "YZ")
