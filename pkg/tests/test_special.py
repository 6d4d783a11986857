"""Bessel implementation against a frozen mpmath oracle (40 digits)."""

import math

import numpy as np
import pytest

from shellgap.errors import DomainError
from shellgap.special import (EULER_MASCHERONI, bessel_j, bessel_j_prime,
                              bessel_y, bessel_y_prime, jn_seq, yn_seq)

# mpmath.besselj / bessely at mp.dps = 40, rounded to float64
J_ORACLE = [
    (0, 0.001, 0.9999997500000156),
    (0, 0.5, 0.9384698072408129),
    (0, 1.0, 0.7651976865579666),
    (0, 3.0, -0.26005195490193345),
    (0, 7.0, 0.3000792705195556),
    (0, 11.7, -0.02133128138849951),
    (0, 13.2, 0.2166859222585641),
    (0, 20.0, 0.16702466434058316),
    (0, 35.0, -0.12684568275631258),
    (0, 50.0, 0.055812327669251816),
    (1, 0.001, 0.0004999999375000026),
    (1, 0.5, 0.2422684576748739),
    (1, 1.0, 0.4400505857449335),
    (1, 3.0, 0.3390589585259365),
    (1, 7.0, -0.004682823482345833),
    (1, 11.7, -0.2333002408314302),
    (1, 13.2, -0.0270667027647791),
    (1, 20.0, 0.06683312417585005),
    (1, 35.0, 0.04399094217962564),
    (1, 50.0, -0.09751182812517514),
    (2, 0.001, 1.2499998958333365e-07),
    (2, 0.5, 0.03060402345868264),
    (2, 1.0, 0.11490348493190047),
    (2, 3.0, 0.4860912605858911),
    (2, 7.0, -0.30141722008594013),
    (2, 11.7, -0.018549101659608214),
    (2, 13.2, -0.22078693782898517),
    (2, 20.0, -0.16034135192299814),
    (2, 35.0, 0.12935945088086262),
    (2, 50.0, -0.05971280079425882),
    (5, 0.001, 2.604166558159724e-19),
    (5, 0.5, 8.053627241357474e-06),
    (5, 1.0, 0.00024975773021123444),
    (5, 3.0, 0.043028434877047585),
    (5, 7.0, 0.34789632475118326),
    (5, 11.7, -0.13469325771722493),
    (5, 13.2, 0.1626739211814964),
    (5, 20.0, 0.15116976798239498),
    (5, 35.0, -0.0015053072953907045),
    (5, 50.0, -0.08140024769656964),
    (8, 0.001, 9.688119770568098e-32),
    (8, 0.5, 3.75822315479761e-10),
    (8, 1.0, 9.4223441726045e-08),
    (8, 3.0, 0.0004934417762088348),
    (8, 7.0, 0.12797053402821254),
    (8, 11.7, 0.1043419549205903),
    (8, 13.2, -0.16968796147415013),
    (8, 20.0, -0.07386892884075034),
    (8, 35.0, -0.11496575142656602),
    (8, 50.0, 0.10405856317363928),
    (12, 0.001, 5.096864400974611e-49),
    (12, 0.5, 1.2383825594799328e-16),
    (12, 1.0, 4.999718179448405e-13),
    (12, 3.0, 2.275725448320572e-07),
    (12, 7.0, 0.002655620035894568),
    (12, 11.7, 0.17259543695667187),
    (12, 13.2, 0.2708874047865074),
    (12, 20.0, -0.11899062431039907),
    (12, 35.0, 0.02212431948008893),
    (12, 50.0, 0.1057753105585107),
]

Y_ORACLE = [
    (0, 0.001, -4.471416611375923),
    (0, 0.5, -0.44451873350670656),
    (0, 1.0, 0.08825696421567696),
    (0, 3.0, 0.3768500100127904),
    (0, 7.0, -0.025949743967209265),
    (0, 11.7, -0.2321805930193566),
    (0, 13.2, -0.035237877102292876),
    (0, 20.0, 0.06264059680938383),
    (0, 35.0, 0.04579798719515564),
    (0, 50.0, -0.09806499547007708),
    (1, 0.001, -636.6221672311394),
    (1, 0.5, -1.471472392670243),
    (1, 1.0, -0.7812128213002887),
    (1, 3.0, 0.3246744247918),
    (1, 7.0, -0.30266723702418485),
    (1, 11.7, 0.011446011327523719),
    (1, 13.2, -0.21817290664552919),
    (1, 20.0, -0.1655116143625213),
    (1, 35.0, 0.12751273354559012),
    (1, 50.0, -0.05679566856201477),
    (2, 0.001, -1273239.8630456675),
    (2, 0.5, -5.441370837174266),
    (2, 1.0, -1.6506826068162543),
    (2, 3.0, -0.16040039348492374),
    (2, 7.0, -0.060526609468272125),
    (2, 11.7, 0.23413717615226662),
    (2, 13.2, 0.002181376095394514),
    (2, 20.0, -0.07919175824563596),
    (2, 35.0, -0.03851154527826478),
    (2, 50.0, 0.0957931687275965),
    (5, 0.001, -2.444620078680264e+17),
    (5, 0.5, -7946.301478807473),
    (5, 1.0, -260.4058666258122),
    (5, 3.0, -1.9059459538286738),
    (5, 7.0, 0.06370223524859028),
    (5, 11.7, -0.20464002110484755),
    (5, 13.2, -0.15987114670339758),
    (5, 20.0, -0.10003576788953243),
    (5, 35.0, 0.1355478147477003),
    (5, 50.0, -0.07854841391308165),
    (8, 0.001, -4.1069616221749396e+29),
    (8, 0.5, -106081857.5158798),
    (8, 1.0, -425674.6184865067),
    (8, 3.0, -87.14989490123284),
    (8, 7.0, -0.6114352469212657),
    (8, 11.7, 0.250334351146308),
    (8, 13.2, 0.17738190562590955),
    (8, 20.0, 0.17100977770523654),
    (8, 35.0, -0.07391836108223127),
    (8, 50.0, -0.045493023506881565),
    (12, 0.001, -5.20434170003123e+46),
    (12, 0.5, -214384817165528.75),
    (12, 1.0, -53241143759.69245),
    (12, 3.0, -120415.14950438803),
    (12, 7.0, -12.361473700280303),
    (12, 11.7, -0.3817981509824362),
    (12, 13.2, -0.16572348305199913),
    (12, 20.0, -0.15975239491660578),
    (12, 35.0, -0.13736472257107002),
    (12, 50.0, 0.043890218674555524),
]

J1_AT_1 = 0.4400505857449335
Y1_AT_1 = -0.7812128213002887
Y0_AT_1 = 0.08825696421567696


@pytest.mark.parametrize("n,x,ref", J_ORACLE)
def test_bessel_j_oracle(n, x, ref):
    assert bessel_j(n, x) == pytest.approx(ref, abs=1e-12, rel=1e-12)


@pytest.mark.parametrize("n,x,ref", Y_ORACLE)
def test_bessel_y_oracle(n, x, ref):
    # scale-aware: absolute 1e-10 for O(1) values, relative for the huge
    # small-argument magnitudes
    assert abs(bessel_y(n, x) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_origin_values():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(7, 0.0) == 0.0
    assert bessel_j_prime(0, 0.0) == 0.0


def test_j1_at_one():
    assert bessel_j(1, 1.0) == pytest.approx(J1_AT_1, abs=1e-14)


def test_y1_at_one():
    assert bessel_y(1, 1.0) == pytest.approx(Y1_AT_1, abs=1e-13)


def test_y_reflection_at_one():
    assert bessel_y(-1, 1.0) == pytest.approx(-Y1_AT_1, abs=0.0)


def test_y0_small_argument_asymptote():
    x = 1e-6
    asym = (2.0 / math.pi) * (math.log(x) + EULER_MASCHERONI - math.log(2.0))
    assert bessel_y(0, x) / asym == pytest.approx(1.0, abs=1e-9)


def test_reflection_identities_exact():
    for n in range(1, 13):
        for x in (0.3, 1.7, 9.0, 23.0):
            sign = -1.0 if n % 2 == 1 else 1.0
            assert bessel_j(-n, x) == sign * bessel_j(n, x)
            assert bessel_y(-n, x) == sign * bessel_y(n, x)


def test_wronskian():
    worst = 0.0
    for x in (0.01, 0.04, 0.2, 1.0, 3.7, 9.9, 13.5, 21.0, 40.0):
        for n in range(0, 11):
            w = (bessel_j(n, x) * bessel_y_prime(n, x)
                 - bessel_j_prime(n, x) * bessel_y(n, x))
            ref = 2.0 / (math.pi * x)
            worst = max(worst, abs(w - ref) / ref)
    assert worst <= 1e-9


def test_derivative_recurrence_vs_finite_difference():
    # x = 10 instead of the series/asymptotic hand-over zone near 13, where
    # the ~1e-11 absolute error of Y divided by 2h dominates the comparison
    h = 1e-5
    for x in (0.5, 1.0, 2.5, 6.0, 10.0, 20.0):
        for n in range(0, 9):
            fd_j = (bessel_j(n, x + h) - bessel_j(n, x - h)) / (2.0 * h)
            dj = bessel_j_prime(n, x)
            assert dj == pytest.approx(fd_j, rel=1e-6, abs=1e-9)
            fd_y = (bessel_y(n, x + h) - bessel_y(n, x - h)) / (2.0 * h)
            dy = bessel_y_prime(n, x)
            assert dy == pytest.approx(fd_y, rel=1e-6, abs=1e-9)


def test_jprime_examples():
    # J'_0 = -J_1 by the recurrence
    assert bessel_j_prime(0, 1.0) == pytest.approx(-J1_AT_1, abs=1e-14)
    # Y'_1(1) = Y_0(1) - Y_1(1) / 1
    assert bessel_y_prime(1, 1.0) == pytest.approx(Y0_AT_1 - Y1_AT_1, abs=1e-12)


def test_series_miller_crossover_continuity():
    # both branches must agree where they meet
    for x in (11.999999, 12.000001):
        assert bessel_j(0, x) == pytest.approx(bessel_j(0, 12.0), abs=1e-6)
    j_lo = jn_seq(3, 11.9999)
    j_hi = jn_seq(3, 12.0001)
    assert np.allclose(j_lo, j_hi, atol=1e-4)
    y_lo = yn_seq(3, 13.9999)
    y_hi = yn_seq(3, 14.0001)
    assert np.allclose(y_lo, y_hi, atol=1e-4)


def test_domain_errors():
    with pytest.raises(DomainError):
        bessel_j(0, -1.0)
    with pytest.raises(DomainError):
        bessel_y(0, 0.0)
    with pytest.raises(DomainError):
        bessel_y(2, -3.0)
    with pytest.raises(DomainError):
        bessel_y_prime(1, 0.0)
