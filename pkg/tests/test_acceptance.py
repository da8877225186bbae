"""Acceptance gate: eleven end-to-end criteria for the cavity response
package, each printing one PASS/FAIL line at its stated tolerance."""

import time

import numpy as np
import pytest

from cavity1d import (CavityConfig, LorentzianMirror, PerfectMirror,
                      PoleError, casimir_energy_perfect,
                      casimir_force_partial, chi_A, chi_compound_perfect,
                      coefficients_partial, coefficients_perfect,
                      fluctuation_spectrum, mass_correction,
                      motional_force_perfect, motional_force_single,
                      motional_force_spectral, ramped_acceleration,
                      ramped_velocity, RigidBodyState,
                      simulate_accelerated_cavity, smooth_pulse,
                      steady_state_mean)

PERFECT = CavityConfig(1.0, PerfectMirror(), PerfectMirror())
DT = 0.0125


def lorentzian(omega_c, q=1.0):
    return CavityConfig(q, LorentzianMirror(omega_c), LorentzianMirror(omega_c))


def report(capsys, index, name, ok):
    with capsys.disabled():
        print(f"[{'PASS' if ok else 'FAIL'}] acceptance {index:02d}: {name}")
    assert ok, name


def test_01_perfect_mirror_closed_forms(capsys):
    coefficients_perfect(PERFECT)  # warm-up
    t0 = time.perf_counter()
    co = coefficients_perfect(PERFECT)
    elapsed = time.perf_counter() - t0
    mu11 = -(1 + np.pi ** 2 / 3) / (12 * np.pi)   # -0.1137927 to print precision
    mu12 = -(np.pi ** 2 / 6 - 1) / (12 * np.pi)   # -0.0171075 to print precision
    ok = (abs(co.kappa[0, 0] + np.pi / 12) <= 1e-12
          and abs(co.mu[0, 0] - mu11) <= 1e-12
          and abs(co.mu[0, 1] - mu12) <= 1e-12
          and abs(co.mu[0, 0] + 0.1137927) <= 5e-7
          and abs(co.mu[0, 1] + 0.0171075) <= 5e-7
          and np.all(co.lam == 0.0)
          and elapsed < 1e-3)
    report(capsys, 1, "perfect-mirror closed forms, 1e-12, <1 ms", ok)


def test_02_inertia_of_confined_energy_identity(capsys):
    co = coefficients_perfect(PERFECT)
    st = casimir_energy_perfect(1.0)
    gap = abs(co.mu_sum - 2 * st.U) / abs(2 * st.U)
    report(capsys, 2, "mu_sum c^2 = 2U for perfect mirrors, 1e-12", gap <= 1e-12)


def test_03_transparent_mirror_identity(capsys):
    ok = True
    for omega_c in (1.0, 10.0, 100.0):
        cfg = lorentzian(omega_c)
        t0 = time.perf_counter()
        co = coefficients_partial(cfg)
        F = casimir_force_partial(cfg).F
        elapsed = time.perf_counter() - t0
        gap = abs(co.mu_sum + 2 * F * cfg.q) / abs(2 * F * cfg.q)
        ok = ok and gap <= 1e-6 and elapsed <= 30.0
    report(capsys, 3, "mu_sum = -2Fq/c^2 for Omega tau in {1,10,100}, 1e-6", ok)


def test_04_stiffness_matches_force_gradient(capsys):
    ok = True
    for omega_c in (5.0, 50.0):
        cfg = lorentzian(omega_c)
        co = coefficients_partial(cfg)
        h = cfg.q * 1e-4
        dFdq = (casimir_force_partial(cfg.with_q(cfg.q + h)).F
                - casimir_force_partial(cfg.with_q(cfg.q - h)).F) / (2 * h)
        ok = ok and abs(co.kappa[0, 0] - dFdq) <= 1e-5 * abs(dFdq)
    report(capsys, 4, "kappa11 = dF/dq (step q*1e-4), 1e-5, two cutoffs", ok)


def test_05_vanishing_viscosity_and_global_stiffness(capsys):
    ok = True
    for omega_c in (1.0, 10.0):
        co = coefficients_partial(lorentzian(omega_c))
        k_scale = abs(co.kappa[0, 0])
        ok = (ok and np.max(np.abs(co.lam)) <= 1e-8 * k_scale  # tau = 1
              and abs(co.kappa_sum) <= 1e-10 * k_scale)
    report(capsys, 5, "|lambda| <= 1e-8 |kappa11| tau and sum kappa <= 1e-10", ok)


def test_06_perfect_limit_convergence(capsys):
    gaps = [abs(coefficients_partial(lorentzian(w)).mu_sum + np.pi / 12)
            for w in (10.0, 100.0, 1000.0)]
    report(capsys, 6, "mu_sum -> -pi/12 monotonically over Omega tau 10..1000",
           gaps[0] > gaps[1] > gaps[2])


def test_07_time_frequency_equivalence(capsys):
    traj = smooth_pulse(1e-6, duration=40.0, dt=DT, n=8192, start=10.0)
    rec_d = motional_force_perfect(traj, PERFECT)
    rec_s = motional_force_spectral(traj, PERFECT)
    skip = int(round(2.0 / DT))
    scale = np.max(np.abs(rec_d.dF_total))
    pulse_ok = np.max(np.abs(rec_d.dF_total[skip:]
                             - rec_s.dF_total[skip:])) <= 1e-4 * scale

    a = 1e-8
    co = coefficients_perfect(PERFECT)
    acc = ramped_acceleration(a, ramp_time=48.0, dt=DT, n=8192)
    steady = steady_state_mean(motional_force_perfect(acc, PERFECT), PERFECT, DT)
    accel_ok = abs(steady + co.mu_sum * a) <= 1e-6 * abs(co.mu_sum * a)
    report(capsys, 7, "pulse delay vs spectral 1e-4; steady dF = -mu_sum a 1e-6",
           pulse_ok and accel_ok)


def test_08_single_mirror_uniform_motion(capsys):
    pulse = smooth_pulse(1e-6, duration=4.0, dt=DT, n=2048, mirrors="1")
    scale = np.max(np.abs(motional_force_single(pulse, PERFECT).dF1))
    tail = slice(-400, None)
    ok = scale > 0.0
    for traj in (ramped_velocity(1e-7, ramp_time=6.0, dt=DT, n=2048, mirrors="1"),
                 ramped_acceleration(1e-8, ramp_time=6.0, dt=DT, n=2048,
                                     mirrors="1")):
        rec = motional_force_single(traj, PERFECT)
        ok = ok and np.max(np.abs(rec.dF1[tail])) <= 1e-10 * scale
    report(capsys, 8, "lone mirror: uniform v and a give zero force, 1e-10", ok)


def test_09_rigid_body_equivalence(capsys):
    st = casimir_energy_perfect(1.0)
    state = RigidBodyState(m1=50.0, m2=70.0, q1=0.0, q2=1.0, E_f=st.U, F=st.F)
    trace = simulate_accelerated_cavity(state, a=1e-5, duration=40.0, dt=0.01)
    dm = mass_correction(st.U, st.F, 1.0)
    m_expected = 120.0 + dm
    scale = np.max(np.abs(trace.P))
    ok = (np.max(trace.v) <= 1e-3
          and np.max(np.abs(trace.residual)) / scale <= 1e-9
          and abs(trace.effective_mass - m_expected) <= 1e-6 * m_expected
          and abs(dm + 2 * st.F * 1.0) <= 1e-15)
    report(capsys, 9, "c^2 P = E Q' and (dP/dt)/a = m_total + delta_m", ok)


def test_10_resonance_structure(capsys):
    with pytest.raises(PoleError):
        chi_compound_perfect(PERFECT, 3 * np.pi)
    _, xi_tilde, _ = chi_compound_perfect(PERFECT, np.pi)
    limit_ok = abs(xi_tilde + 2 * np.pi / 3) <= 1e-8

    cfg = lorentzian(20.0)
    window = np.linspace(3 * np.pi - 0.45, 3 * np.pi + 0.45, 13)
    disp = np.array([(chi_A(cfg, 1, 1, w) + chi_A(cfg, 1, 2, w)
                      + chi_A(cfg, 2, 1, w) + chi_A(cfg, 2, 2, w)).real
                     for w in window])
    sign_change = np.any(np.diff(np.sign(disp[disp != 0.0])) != 0)
    report(capsys, 10, "pole at 3pi, cancelled pole at pi -> -2pi/3, dispersion",
           limit_ok and sign_change)


def test_11_fluctuation_dissipation(capsys):
    cross_ok = all(fluctuation_spectrum(PERFECT, 1, 2, w) == 0.0
                   for w in (0.3, 1.0, 2.0, 7.0))
    negative_ok = all(fluctuation_spectrum(PERFECT, 1, 1, w) == 0.0
                      for w in (-0.5, -2.0))
    value_ok = abs(fluctuation_spectrum(PERFECT, 1, 1, 1.0)
                   - 1 / (6 * np.pi)) <= 1e-12
    report(capsys, 11, "C12 = 0, C11(w<0) = 0, C11(1) = 1/(6 pi)",
           cross_ok and negative_ok and value_ok)
