"""Time-domain motional forces for prescribed mirror trajectories.

The perfect-mirror force on mirror 1 is a retarded series alternating
between the two mirrors' jerk and velocity histories with one-way delay
tau; mirror 2 follows by exchange. Because the velocity part of the kernel
never decays, trajectories must start from rest (first three derivatives
zero at the window start) so the series truncates exactly rather than by
an artificial cutoff.

Sampling is uniform with dt an exact divisor of tau (dt = tau/N), so every
delayed sample lands on a grid node and the series needs no interpolation.
Analytic trajectory constructors carry exact derivatives; tabulated data
falls back to 5-point finite-difference stencils.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import CavityConfig
from .errors import PreconditionError, UnsupportedModelError
from .mirrors import PerfectMirror
from .quasistatic import QuasistaticCoefficients
from .spectral import chi_perfect_grid
from . import kernels

# C^5 smoothstep on [0,1]: all derivatives through the 5th vanish at both ends.
_SMOOTH = np.polynomial.Polynomial(
    [0.0] * 6 + [462.0, -1980.0, 3465.0, -3080.0, 1386.0, -252.0])
_SMOOTH_D1 = _SMOOTH.deriv()
_SMOOTH_D2 = _SMOOTH_D1.deriv()
_SMOOTH_D3 = _SMOOTH_D2.deriv()
_SMOOTH_I1 = _SMOOTH.integ()   # I1(1) = 1/2
_SMOOTH_I2 = _SMOOTH_I1.integ()


@dataclass
class Trajectory:
    """Uniformly sampled mirror displacements with derivative channels."""

    t0: float
    dt: float
    dq1: np.ndarray
    dq2: np.ndarray
    d1q1: np.ndarray
    d1q2: np.ndarray
    d2q1: np.ndarray
    d2q2: np.ndarray
    d3q1: np.ndarray
    d3q2: np.ndarray
    kind: str = "tabulated"

    @property
    def t(self):
        return self.t0 + self.dt * np.arange(len(self.dq1))

    def __add__(self, other):
        if abs(self.dt - other.dt) > 1e-15 * self.dt or len(self.dq1) != len(other.dq1):
            raise PreconditionError("trajectories must share the sampling grid")
        return Trajectory(
            self.t0, self.dt,
            self.dq1 + other.dq1, self.dq2 + other.dq2,
            self.d1q1 + other.d1q1, self.d1q2 + other.d1q2,
            self.d2q1 + other.d2q1, self.d2q2 + other.d2q2,
            self.d3q1 + other.d3q1, self.d3q2 + other.d3q2,
            kind="sum")


@dataclass
class ForceRecord:
    t: np.ndarray
    dF1: np.ndarray
    dF2: np.ndarray
    dF_total: np.ndarray
    warnings: list = field(default_factory=list)


def _stencil_derivatives(y, dt):
    """First, second and third derivatives by 5-point centered stencils.

    The two samples at each edge reuse the nearest interior value; sampled
    trajectories are at rest at the window edges by precondition, so this
    closure is exact there.
    """
    n = len(y)
    if n < 5:
        raise PreconditionError("need at least 5 samples for stencil derivatives")
    d1 = np.empty(n)
    d2 = np.empty(n)
    d3 = np.empty(n)
    ym2, ym1, y0, yp1, yp2 = y[:-4], y[1:-3], y[2:-2], y[3:-1], y[4:]
    d1[2:-2] = (ym2 - 8.0 * ym1 + 8.0 * yp1 - yp2) / (12.0 * dt)
    d2[2:-2] = (-ym2 + 16.0 * ym1 - 30.0 * y0 + 16.0 * yp1 - yp2) / (12.0 * dt ** 2)
    d3[2:-2] = (-ym2 + 2.0 * ym1 - 2.0 * yp1 + yp2) / (2.0 * dt ** 3)
    for d in (d1, d2, d3):
        d[:2] = d[2]
        d[-2:] = d[-3]
    return d1, d2, d3


def _assemble(t0, dt, kind, which, q, v, acc, jerk, n):
    zero = np.zeros(n)
    ch = {"q": (q, zero), "v": (v, zero), "a": (acc, zero), "j": (jerk, zero)}
    if which == "both":
        pick = lambda pair: (pair[0], pair[0])
    elif which == "1":
        pick = lambda pair: (pair[0], pair[1])
    elif which == "2":
        pick = lambda pair: (pair[1], pair[0])
    else:
        raise PreconditionError("mirrors must be 'both', '1' or '2'")
    dq1, dq2 = pick(ch["q"])
    v1, v2 = pick(ch["v"])
    a1, a2 = pick(ch["a"])
    j1, j2 = pick(ch["j"])
    return Trajectory(t0, dt, dq1, dq2, v1, v2, a1, a2, j1, j2, kind=kind)


def from_arrays(t0, dt, dq1, dq2):
    """Tabulated trajectory; derivatives from finite-difference stencils."""
    dq1 = np.asarray(dq1, dtype=float)
    dq2 = np.asarray(dq2, dtype=float)
    if dq1.shape != dq2.shape or dq1.ndim != 1:
        raise PreconditionError("dq1 and dq2 must be equal-length 1-d arrays")
    d11, d21, d31 = _stencil_derivatives(dq1, dt)
    d12, d22, d32 = _stencil_derivatives(dq2, dt)
    return Trajectory(t0, dt, dq1, dq2, d11, d12, d21, d22, d31, d32,
                      kind="tabulated")


def ramped_acceleration(a, ramp_time, dt, n, mirrors="both", t0=0.0):
    """Uniform acceleration a reached through a C^5 ramp of length ramp_time.

    The acceleration is a * S(t/ramp_time) with S the C^5 smoothstep, so the
    displacement is C^7 and the at-rest precondition holds exactly at t0.
    After the ramp the velocity is a*(t - ramp_time/2).
    """
    t = t0 + dt * np.arange(n) - t0  # time since start
    s = np.clip(t / ramp_time, 0.0, 1.0)
    in_ramp = t < ramp_time
    acc = a * _SMOOTH(s)
    jerk = np.where(in_ramp, a * _SMOOTH_D1(s) / ramp_time, 0.0)
    v = np.where(in_ramp, a * ramp_time * _SMOOTH_I1(s),
                 a * (t - 0.5 * ramp_time))
    q_ramp_end = a * ramp_time ** 2 * _SMOOTH_I2(1.0)
    q = np.where(in_ramp, a * ramp_time ** 2 * _SMOOTH_I2(s),
                 q_ramp_end + 0.5 * a * (t - ramp_time) ** 2
                 + 0.5 * a * ramp_time * (t - ramp_time))
    return _assemble(t0, dt, "polynomial", mirrors, q, v, acc, jerk, n)


def ramped_velocity(v0, ramp_time, dt, n, mirrors="both", t0=0.0):
    """Uniform velocity v0 reached through a C^5 ramp (then acceleration zero)."""
    t = dt * np.arange(n)
    s = np.clip(t / ramp_time, 0.0, 1.0)
    in_ramp = t < ramp_time
    v = v0 * _SMOOTH(s)
    acc = np.where(in_ramp, v0 * _SMOOTH_D1(s) / ramp_time, 0.0)
    jerk = np.where(in_ramp, v0 * _SMOOTH_D2(s) / ramp_time ** 2, 0.0)
    q = np.where(in_ramp, v0 * ramp_time * _SMOOTH_I1(s),
                 v0 * ramp_time * 0.5 + v0 * (t - ramp_time))
    return _assemble(t0, dt, "polynomial", mirrors, q, v, acc, jerk, n)


def sinusoid(eps, omega, ramp_time, dt, n, mirrors="both", t0=0.0):
    """eps * sin(omega t) switched on through a C^5 amplitude ramp."""
    t = dt * np.arange(n)
    s = np.clip(t / ramp_time, 0.0, 1.0)
    in_ramp = t < ramp_time
    R = _SMOOTH(s)
    R1 = np.where(in_ramp, _SMOOTH_D1(s) / ramp_time, 0.0)
    R2 = np.where(in_ramp, _SMOOTH_D2(s) / ramp_time ** 2, 0.0)
    R3 = np.where(in_ramp, _SMOOTH_D3(s) / ramp_time ** 3, 0.0)
    sn, cs = np.sin(omega * t), np.cos(omega * t)
    y = eps * sn
    y1 = eps * omega * cs
    y2 = -eps * omega ** 2 * sn
    y3 = -eps * omega ** 3 * cs
    q = R * y
    v = R1 * y + R * y1
    acc = R2 * y + 2.0 * R1 * y1 + R * y2
    jerk = R3 * y + 3.0 * R2 * y1 + 3.0 * R1 * y2 + R * y3
    return _assemble(t0, dt, "sinusoid", mirrors, q, v, acc, jerk, n)


def smooth_pulse(eps, duration, dt, n, mirrors="both", start=0.0, t0=0.0):
    """Compact pulse eps*sin^4(pi (t-start)/duration), zero outside the window.

    sin^4 vanishes together with its first three derivatives at both window
    edges, so the trajectory is C^3 and exactly at rest before and after.
    """
    t = dt * np.arange(n)
    th = t - start
    inside = (th > 0.0) & (th < duration)
    u = np.pi / duration
    q = np.where(inside, eps * (0.375 - 0.5 * np.cos(2 * u * th) + 0.125 * np.cos(4 * u * th)), 0.0)
    v = np.where(inside, eps * (u * np.sin(2 * u * th) - 0.5 * u * np.sin(4 * u * th)), 0.0)
    acc = np.where(inside, eps * (2 * u ** 2 * np.cos(2 * u * th) - 2 * u ** 2 * np.cos(4 * u * th)), 0.0)
    jerk = np.where(inside, eps * (-4 * u ** 3 * np.sin(2 * u * th) + 8 * u ** 3 * np.sin(4 * u * th)), 0.0)
    return _assemble(t0, dt, "sinusoid", mirrors, q, v, acc, jerk, n)


def _delay_steps(traj, config):
    tau = config.tau
    n_tau = int(round(tau / traj.dt))
    if n_tau < 1 or abs(n_tau * traj.dt - tau) > 1e-9 * tau:
        raise PreconditionError(
            f"dt={traj.dt} must divide tau={tau} exactly (got tau/dt={tau / traj.dt})")
    return n_tau


def _check_at_rest(traj):
    scale = max(np.max(np.abs(traj.dq1)), np.max(np.abs(traj.dq2)), 1e-300)
    head = max(np.max(np.abs(traj.dq1[:3])), np.max(np.abs(traj.dq2[:3])))
    if head > 1e-9 * scale:
        raise PreconditionError("trajectory must start at rest (zero displacement)")


def _check_linear_regime(traj, config, record, bound=1e-3):
    amp = max(np.max(np.abs(traj.dq1)), np.max(np.abs(traj.dq2)))
    if amp > bound * config.q:
        record.warnings.append(
            f"displacement amplitude {amp:.3e} exceeds linear-response bound "
            f"{bound:g} * q")


def motional_force_perfect(traj: Trajectory, config: CavityConfig) -> ForceRecord:
    """Retarded delay-series motional force for a perfect-mirror cavity."""
    if not (isinstance(config.mirror1, PerfectMirror)
            and isinstance(config.mirror2, PerfectMirror)):
        raise UnsupportedModelError("delay series requires perfect mirrors")
    _check_at_rest(traj)
    n_tau = _delay_steps(traj, config)
    hbar, c = config.units.hbar, config.units.c
    tau = config.tau
    coeff_jerk = hbar / (6.0 * np.pi * c ** 2)
    coeff_vel = hbar * np.pi / (6.0 * c ** 2 * tau ** 2)
    df1, df2 = kernels.delay_series_force(
        np.ascontiguousarray(traj.d3q1), np.ascontiguousarray(traj.d3q2),
        np.ascontiguousarray(traj.d1q1), np.ascontiguousarray(traj.d1q2),
        n_tau, coeff_jerk, coeff_vel)
    rec = ForceRecord(traj.t, df1, df2, df1 + df2)
    _check_linear_regime(traj, config, rec)
    return rec


def motional_force_single(traj: Trajectory, config: CavityConfig) -> ForceRecord:
    """Single isolated mirror (no cavity): dF = hbar/(6 pi c^2) * jerk.

    Vanishes identically for uniform velocity and uniform acceleration.
    """
    hbar, c = config.units.hbar, config.units.c
    coeff = hbar / (6.0 * np.pi * c ** 2)
    df1 = coeff * traj.d3q1
    df2 = coeff * traj.d3q2
    return ForceRecord(traj.t, df1, df2, df1 + df2)


def motional_force_spectral(traj: Trajectory, config: CavityConfig,
                            pole_exclusion: float = 1e-3,
                            pad_factor: int = 8) -> ForceRecord:
    """Force by discrete Fourier multiplication with the susceptibility matrix.

    The trajectory is zero-padded by pad_factor to suppress wrap-around;
    frequency bins colliding with susceptibility poles are excluded (zeroed)
    and reported in the record's warnings.
    """
    _check_at_rest(traj)
    n = len(traj.dq1)
    m = 1
    while m < pad_factor * n:
        m *= 2
    q1 = np.zeros(m)
    q2 = np.zeros(m)
    q1[:n] = traj.dq1
    q2[:n] = traj.dq2
    omegas = 2.0 * np.pi * np.fft.rfftfreq(m, traj.dt)
    chi11, chi12, mask = chi_perfect_grid(config, omegas, pole_exclusion)
    f1_hat = np.conj(chi11) * np.fft.rfft(q1) + np.conj(chi12) * np.fft.rfft(q2)
    f2_hat = np.conj(chi12) * np.fft.rfft(q1) + np.conj(chi11) * np.fft.rfft(q2)
    df1 = np.fft.irfft(f1_hat, m)[:n]
    df2 = np.fft.irfft(f2_hat, m)[:n]
    rec = ForceRecord(traj.t, df1, df2, df1 + df2)
    if np.any(mask):
        rec.warnings.append(
            f"{int(mask.sum())} frequency bins excluded at susceptibility poles")
    return rec


def quasistatic_force(traj: Trajectory, coeffs: QuasistaticCoefficients,
                      config: CavityConfig,
                      content_bound: float = 0.2) -> ForceRecord:
    """Low-frequency force dF_i = -sum_j (kappa_ij dq_j + lambda_ij dq_j' + mu_ij dq_j'').

    Checks that at least 99% of the trajectory's spectral energy sits below
    omega*tau = content_bound; a violation attaches a warning rather than
    failing, since the expansion degrades gracefully.
    """
    k, l, mu = coeffs.kappa, coeffs.lam, coeffs.mu
    df1 = -(k[0, 0] * traj.dq1 + k[0, 1] * traj.dq2
            + l[0, 0] * traj.d1q1 + l[0, 1] * traj.d1q2
            + mu[0, 0] * traj.d2q1 + mu[0, 1] * traj.d2q2)
    df2 = -(k[1, 0] * traj.dq1 + k[1, 1] * traj.dq2
            + l[1, 0] * traj.d1q1 + l[1, 1] * traj.d1q2
            + mu[1, 0] * traj.d2q1 + mu[1, 1] * traj.d2q2)
    rec = ForceRecord(traj.t, df1, df2, df1 + df2)
    spec = np.abs(np.fft.rfft(traj.dq1 + traj.dq2)) ** 2
    omegas = 2.0 * np.pi * np.fft.rfftfreq(len(traj.dq1), traj.dt)
    total = spec.sum()
    if total > 0:
        low = spec[omegas * config.tau <= content_bound].sum()
        if low < 0.99 * total:
            rec.warnings.append(
                f"only {low / total:.1%} of spectral energy below "
                f"omega*tau = {content_bound}")
    return rec


def steady_state_mean(record: ForceRecord, config: CavityConfig, dt: float) -> float:
    """Mean total force over the final full 2*tau window (one ripple period)."""
    n_win = 2 * int(round(config.tau / dt))
    if n_win < 1 or n_win > len(record.dF_total):
        raise PreconditionError("record too short for a 2*tau steady-state window")
    return float(np.mean(record.dF_total[-n_win:]))
