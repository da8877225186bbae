"""Frequency-domain susceptibility: closed forms, poles, rotated-contour
quadrature for transparent mirrors, and the fluctuation spectrum.

Reference complex values were computed independently with 40-digit mpmath
quadrature and frozen here.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cavity1d import (CavityConfig, LorentzianMirror, PerfectMirror,
                      PoleError, UnsupportedModelError, cavity_denominator,
                      chi_A, chi_compound_perfect, chi_perfect,
                      chi_perfect_grid, coefficients_partial,
                      coefficients_perfect, fluctuation_spectrum, gamma_A,
                      gamma_capital)
from conftest import make_lorentzian

# chi^A_ij at omega=1 for equal Lorentzian cutoffs Omega=5, q=1, hbar=c=1
CHI_A_11 = 0.0815247464177420538 + 0.0295018597995627308j
CHI_A_21 = -0.173459655456808059 - 0.0646385033214852367j

moderate = st.floats(min_value=0.05, max_value=20.0)


def test_perfect_static_limit_is_minus_stiffness(perfect_config):
    co = coefficients_perfect(perfect_config)
    m = chi_perfect(perfect_config, 0.0)
    assert np.max(np.abs(m.chi - (-co.kappa))) < 1e-14
    assert np.max(np.abs(m.dissipative)) < 1e-14


def test_perfect_dissipative_part_is_odd_cubic(perfect_config):
    # Im chi_11 = hbar omega^3 / (12 pi c^2) independent of separation
    for w in (0.4, 1.0, 2.0):
        m = chi_perfect(perfect_config, w)
        assert abs(m.chi[0, 0].imag - w ** 3 / (12 * np.pi)) < 1e-13
        mneg = chi_perfect(perfect_config, -w)
        assert abs(mneg.chi[0, 0] - np.conj(m.chi[0, 0])) < 1e-13


def test_series_windows_join_smoothly(perfect_config):
    # straddle the series/direct switch point: no jump beyond the slope scale
    for center in (0.0, np.pi):
        wa = center + 1e-3 * (1 - 1e-6)
        wb = center + 1e-3 * (1 + 1e-6)
        fa = chi_perfect(perfect_config, wa).chi
        fb = chi_perfect(perfect_config, wb).chi
        assert np.max(np.abs(fa - fb)) < 1e-8


def test_component_pole_raises(perfect_config):
    with pytest.raises(PoleError) as info:
        chi_perfect(perfect_config, 2 * np.pi)
    assert info.value.resonance_index == 2
    # the compound susceptibility is finite there but singular at odd m >= 3
    chi_compound_perfect(perfect_config, 2 * np.pi)
    with pytest.raises(PoleError):
        chi_compound_perfect(perfect_config, 3 * np.pi)


def test_compound_cancelled_pole_limit(perfect_config):
    chi, xi_tilde, xi = chi_compound_perfect(perfect_config, np.pi)
    assert abs(xi_tilde + 2 * np.pi / 3) < 1e-12
    assert abs(xi - np.pi ** 2 / 6) < 1e-12
    assert abs(chi - (xi_tilde + 1j * xi)) < 1e-15


def test_grid_evaluation_masks_pole_bins(perfect_config):
    w = np.linspace(0.1, 10.0, 2001)
    chi11, chi12, mask = chi_perfect_grid(perfect_config, w)
    assert mask.any()                      # 2*pi and 3*pi bins are inside
    assert np.all(chi11[mask] == 0.0)
    ok = ~mask
    direct = np.array([chi_perfect(perfect_config, wi).chi[0, 0] for wi in w[ok][:50]])
    assert np.max(np.abs(chi11[ok][:50] - direct)) < 1e-12


def test_chi_A_against_frozen_oracle():
    cfg = make_lorentzian(5.0)
    assert abs(chi_A(cfg, 1, 1, 1.0) - CHI_A_11) < 1e-10
    assert abs(chi_A(cfg, 2, 1, 1.0) - CHI_A_21) < 1e-10


def test_chi_A_static_limit_matches_quasistatic_coefficients():
    cfg = make_lorentzian(5.0)
    co = coefficients_partial(cfg)
    assert abs(chi_A(cfg, 1, 1, 0.0) + co.kappa[0, 0]) < 1e-9
    assert abs(chi_A(cfg, 2, 1, 0.0) + co.kappa[1, 0]) < 1e-9


def test_chi_A_reality_symmetry():
    cfg = make_lorentzian(5.0)
    plus = chi_A(cfg, 1, 1, 0.7)
    minus = chi_A(cfg, 1, 1, -0.7)
    assert abs(minus - np.conj(plus)) < 1e-10


def test_chi_A_rejects_perfect_mirrors(perfect_config):
    with pytest.raises(UnsupportedModelError):
        chi_A(perfect_config, 1, 1, 1.0)


@given(w=moderate, wp=moderate)
@settings(max_examples=60, deadline=None)
def test_gamma_A_argument_exchange_symmetry(w, wp):
    cfg = make_lorentzian(5.0)
    for i, j in ((1, 1), (2, 1), (1, 2), (2, 2)):
        a = gamma_A(cfg, i, j, w, wp)
        b = gamma_A(cfg, i, j, wp, w)
        assert abs(a - b) < 1e-12 * max(1.0, abs(a))


def test_gamma_capital_cross_terms_are_equal():
    cfg = CavityConfig(1.0, LorentzianMirror(3.0), LorentzianMirror(7.0))
    for w in (0.3, 1.0, 4.0):
        assert abs(gamma_capital(cfg, 1, 2, w) - gamma_capital(cfg, 2, 1, w)) < 1e-12


def test_gamma_capital_is_mixed_derivative_of_gamma_A():
    # Gamma_ij[omega] = -d/domega d/domega' gamma^A_ij at omega'=omega
    cfg = make_lorentzian(5.0)
    w, h = 1.3, 1e-4
    for i, j in ((1, 1), (2, 1)):
        mixed = (gamma_A(cfg, i, j, w + h, w + h)
                 - gamma_A(cfg, i, j, w + h, w - h)
                 - gamma_A(cfg, i, j, w - h, w + h)
                 + gamma_A(cfg, i, j, w - h, w - h)) / (4 * h * h)
        direct = gamma_capital(cfg, i, j, w)
        assert abs(direct + mixed) < 1e-6 * max(1.0, abs(direct))


def test_cavity_denominator_zero_at_resonance():
    cfg = make_lorentzian(5.0)
    d, dprime = cavity_denominator(cfg, 0.9)
    assert d != 0.0
    # perfect mirrors: d = 1 - exp(2 i omega tau) vanishes at omega = m pi / tau
    pcfg = CavityConfig(1.0, PerfectMirror(), PerfectMirror())
    d0, _ = cavity_denominator(pcfg, np.pi)
    assert abs(d0) < 1e-12


def test_fluctuation_spectrum_zero_temperature_structure(perfect_config):
    assert fluctuation_spectrum(perfect_config, 1, 2, 0.8) == 0.0
    assert fluctuation_spectrum(perfect_config, 1, 1, -0.8) == 0.0
    assert abs(fluctuation_spectrum(perfect_config, 1, 1, 1.0) - 1 / (6 * np.pi)) < 1e-13
