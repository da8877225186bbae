"""Mirror reflection models: values, symmetries, physicality checks."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cavity1d import (LorentzianMirror, PerfectMirror, PreconditionError,
                      RangeError, TabulatedMirror, parse_mirror_spec,
                      verify_physicality)
from cavity1d.mirrors import hilbert_transform_imag

finite_omega = st.floats(min_value=-1e6, max_value=1e6,
                         allow_nan=False, allow_infinity=False)
positive_cutoff = st.floats(min_value=1e-3, max_value=1e4)


def test_perfect_mirror_reflectivity_is_minus_one():
    m = PerfectMirror()
    omega = np.array([-3.0, 0.0, 1.0, 100.0])
    assert np.all(m.reflectivity(omega) == -1.0)
    assert np.all(m.reflectivity_derivative(omega) == 0.0)
    assert np.all(m.transmission(omega) == 0.0)
    assert not m.has_transmission


def test_lorentzian_static_limit_and_cutoff_value():
    m = LorentzianMirror(2.0)
    assert m.reflectivity(0.0) == -1.0
    # at the cutoff, r = -1/(1 - i) = -(1 + i)/2
    r = m.reflectivity(2.0)
    assert abs(r - (-0.5 - 0.5j)) < 1e-15


def test_lorentzian_derivative_matches_finite_difference():
    m = LorentzianMirror(3.0)
    w, h = 1.7, 1e-6
    fd = (m.reflectivity(w + h) - m.reflectivity(w - h)) / (2 * h)
    assert abs(m.reflectivity_derivative(w) - fd) < 1e-8


def test_lorentzian_imaginary_axis_forms():
    # rho(x) = r(ix) and sigma(x) = -i r'(ix) are real
    m = LorentzianMirror(4.0)
    x = np.array([0.1, 1.0, 10.0])
    assert np.allclose(m.rho(x), -1.0 / (1.0 + x / 4.0))
    assert np.allclose(m.sigma(x), -(1.0 / 4.0) / (1.0 + x / 4.0) ** 2)
    assert np.allclose(m.rho(x), m.reflectivity_complex(1j * x).real)
    assert np.allclose(m.rho(x).imag if np.iscomplexobj(m.rho(x)) else 0.0, 0.0)


@given(w=finite_omega, omega_c=positive_cutoff)
@settings(max_examples=200, deadline=None)
def test_lorentzian_reality_symmetry_and_bound(w, omega_c):
    m = LorentzianMirror(omega_c)
    r = m.reflectivity(w)
    assert abs(m.reflectivity(-w) - np.conj(r)) < 1e-14
    assert abs(r) <= 1.0 + 1e-14


@given(w=finite_omega, omega_c=positive_cutoff)
@settings(max_examples=200, deadline=None)
def test_lorentzian_unitarity(w, omega_c):
    # |r|^2 + |t|^2 = 1 with t = 1 + r
    m = LorentzianMirror(omega_c)
    r = m.reflectivity(w)
    t = m.transmission(w)
    assert abs(abs(r) ** 2 + abs(t) ** 2 - 1.0) < 1e-12


def test_tabulated_matches_source_model_and_range_error(tmp_path):
    src = LorentzianMirror(1.5)
    grid = np.linspace(1e-3, 40.0, 20001)
    tab = TabulatedMirror(grid, src.reflectivity(grid))
    probe = np.array([0.01, 0.7, 5.0, 30.0])
    assert np.max(np.abs(tab.reflectivity(probe) - src.reflectivity(probe))) < 1e-6
    # reality symmetry is synthesized for negative frequencies
    assert np.max(np.abs(tab.reflectivity(-probe)
                         - np.conj(src.reflectivity(probe)))) < 1e-6
    with pytest.raises(RangeError):
        tab.reflectivity(100.0)

    path = tmp_path / "mirror.csv"
    lines = ["omega,re_r,im_r"]
    r = src.reflectivity(grid)
    for w, rr in zip(grid, r):
        lines.append(f"{float(w)!r},{float(rr.real)!r},{float(rr.imag)!r}")
    path.write_text("\n".join(lines) + "\n")
    loaded = TabulatedMirror.from_csv(str(path))
    assert np.allclose(loaded.reflectivity(probe), tab.reflectivity(probe))


def test_hilbert_transform_recovers_lorentzian_absorption():
    m = LorentzianMirror(1.0)
    grid = np.linspace(1e-3, 60.0, 40001)
    mids = 0.5 * (grid[100:104] + grid[101:105])
    pred = hilbert_transform_imag(grid, m.reflectivity(grid).real, mids)
    true = m.reflectivity(mids).imag
    assert np.max(np.abs(pred - true)) < 1e-3


def test_physicality_causal_passes_anticausal_fails():
    grid = np.linspace(1e-3, 60.0, 40001)
    rep = verify_physicality(LorentzianMirror(1.0), grid)
    assert rep.passed
    assert rep.kk_residual < 1e-3
    assert rep.transparency_tail < 0.2

    class AntiCausal(LorentzianMirror):
        def reflectivity(self, omega):
            return np.conj(super().reflectivity(omega))

    rep_bad = verify_physicality(AntiCausal(1.0), grid)
    assert not rep_bad.passed
    assert rep_bad.kk_residual > 0.5


def test_physicality_perfect_mirror_is_exempt():
    grid = np.linspace(1e-3, 10.0, 100)
    rep = verify_physicality(PerfectMirror(), grid)
    assert rep.passed and rep.exempt


def test_physicality_rejects_bad_grids():
    with pytest.raises(PreconditionError):
        verify_physicality(LorentzianMirror(1.0), np.array([0.0, 1.0, 2.0]))
    with pytest.raises(PreconditionError):
        verify_physicality(LorentzianMirror(1.0), np.linspace(1.0, 0.1, 50))


def test_parse_mirror_spec_forms(tmp_path):
    assert isinstance(parse_mirror_spec("perfect"), PerfectMirror)
    m = parse_mirror_spec("lorentzian:omega=2.5")
    assert isinstance(m, LorentzianMirror) and m.omega_c == 2.5
    with pytest.raises(PreconditionError):
        parse_mirror_spec("lorentzian:gamma=1")
    with pytest.raises(PreconditionError):
        parse_mirror_spec("dielectric")
