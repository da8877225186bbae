"""Quasistatic response coefficients and Casimir statics.

Closed forms for perfect mirrors; for partially transmitting mirrors the
defining frequency integrals are evaluated after rotating the contour onto
the positive imaginary axis (omega = i x), where every integrand becomes
real, smooth, and exponentially damped over the scale 1/(2 tau). On the
real axis those integrals oscillate without decay and are only Abel
(mean-value) convergent; the rotated contour computes exactly that
regularized value, as the cross-checks against the perfect-mirror closed
forms and against -2Fq/c^2 confirm.

Kernel notation (see kernels.py): rho_j, sigma_j, W, D, u, and the
effective delay

    T = tau + (1/Omega_1 + 1/Omega_2) / 2,

which is the cavity round-trip half-time including the DC reflection delay
of each mirror. The integrands of the self/mutual inertia coefficients
carry a double pole at the origin, x^2 Gamma_ij(ix) ~ +-1/(T^2 x^2); the
quarter-arc of the rotated contour around omega = 0 contributes exactly
the Laurent coefficient, so each mu_ij is computed as

    mu_ij = hbar/(4 pi c^2) * [ int_0^X (x^2 Gamma_ij(ix) -+ 1/(T^2 x^2)) dx -+ 1/(T^2 X) ]

with X large enough that the exponentially damped part is below roundoff.
The 1/(T^2 x^2) counterterms cancel between self and mutual entries, so
the global sums are subtraction-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import CavityConfig, NATURAL, UnitSystem
from .errors import ConsistencyError, UnsupportedModelError
from .mirrors import LorentzianMirror, PerfectMirror
from .quadrature import integrate_panels, geometric_breakpoints
from . import kernels

_PI = np.pi


@dataclass
class QuasistaticCoefficients:
    """kappa (stiffness), lam (viscosity) and mu (inertia) 2x2 matrices."""

    kappa: np.ndarray
    lam: np.ndarray
    mu: np.ndarray
    kappa_sum: float
    lambda_sum: float
    mu_sum: float
    achieved_tolerance: float
    method: str  # "closed-form-perfect" or "quadrature"


@dataclass
class CasimirStatics:
    """Static force/energy bookkeeping for one configuration.

    U is populated only on the perfect-mirror path; for partial mirrors the
    stocked field energy E_f = -Fq is exposed instead (the static energy of
    a partial cavity additionally contains a reflection-delay term that is
    out of scope here).
    """

    F: float
    E_f: float
    delta_m: float
    U: float | None = None
    achieved_tolerance: float = 0.0


def _is_perfect(config):
    return (isinstance(config.mirror1, PerfectMirror)
            and isinstance(config.mirror2, PerfectMirror))


def _lorentzian_cutoffs(config):
    m1, m2 = config.mirror1, config.mirror2
    if not (isinstance(m1, LorentzianMirror) and isinstance(m2, LorentzianMirror)):
        raise UnsupportedModelError(
            "partial-mirror quadratures support Lorentzian mirrors only "
            f"(got {m1.kind}, {m2.kind})")
    return m1.omega_c, m2.omega_c


def _effective_delay(config):
    return config.tau + 0.5 * (config.mirror1.static_delay()
                               + config.mirror2.static_delay())


def casimir_energy_perfect(q: float, units: UnitSystem = NATURAL) -> CasimirStatics:
    """Casimir energy and force between perfect mirrors at separation q."""
    hbar, c = units.hbar, units.c
    U = -hbar * c * _PI / (24.0 * q)
    F = hbar * c * _PI / (24.0 * q ** 2)
    return CasimirStatics(F=F, E_f=-F * q, delta_m=-2.0 * F * q / c ** 2, U=U)


def coefficients_perfect(config: CavityConfig) -> QuasistaticCoefficients:
    """Closed-form quasistatic coefficients of the perfect-mirror cavity."""
    if not _is_perfect(config):
        raise UnsupportedModelError(
            "closed forms require perfect mirrors; use coefficients_partial")
    hbar, c = config.units.hbar, config.units.c
    q = config.q
    k11 = -hbar * c * _PI / (12.0 * q ** 3)
    kappa = np.array([[k11, -k11], [-k11, k11]])
    lam = np.zeros((2, 2))
    m11 = -(hbar / (12.0 * _PI * c * q)) * (1.0 + _PI ** 2 / 3.0)
    m12 = -(hbar / (12.0 * _PI * c * q)) * (-1.0 + _PI ** 2 / 6.0)
    mu = np.array([[m11, m12], [m12, m11]])
    return QuasistaticCoefficients(
        kappa=kappa, lam=lam, mu=mu,
        kappa_sum=float(kappa.sum()), lambda_sum=float(lam.sum()),
        mu_sum=float(mu.sum()), achieved_tolerance=0.0,
        method="closed-form-perfect")


def casimir_force_partial(config: CavityConfig, rel_tol: float = 1e-10) -> CasimirStatics:
    """Mean Casimir force for transparent mirrors, F = (hbar/pi c) int_0^inf x W/D dx."""
    o1, o2 = _lorentzian_cutoffs(config)
    hbar, c = config.units.hbar, config.units.c
    tau = config.tau
    breaks = geometric_breakpoints(0.5 / tau)
    res = integrate_panels(lambda xs: kernels.force_integrand(xs, o1, o2, tau), breaks)
    F = float(hbar / (_PI * c) * res.value)
    return CasimirStatics(F=F, E_f=-F * config.q,
                          delta_m=-2.0 * F * config.q / c ** 2,
                          achieved_tolerance=res.achieved_tolerance)


def gamma_capital(config: CavityConfig, i: int, j: int, omega):
    """Inertia kernel Gamma_ij[omega] on the real axis.

    Gamma_11 = -2 r1' e^{2 i omega tau} (2 i tau r2 + r2') / d^2 - 4 d'^2 / d^4
    Gamma_21 = -4 i tau d'/d^2 + 4 tau^2 (1-d)/d^2 + 2 r1' r2' e^{2 i omega tau}/d^2
               + 4 d'^2/d^4,
    with Gamma_22 and Gamma_12 = Gamma_21 by mirror exchange. Equal to the
    mixed second derivative -(d_omega d_omega' gamma^A_ij)|_{omega'=omega}.
    """
    if (i, j) not in ((1, 1), (2, 2), (2, 1), (1, 2)):
        raise ValueError("mirror indices must be in {1, 2}")
    m1, m2 = config.mirror1, config.mirror2
    if (i, j) in ((2, 2), (1, 2)):
        m1, m2 = m2, m1
        i, j = (1, 1) if (i, j) == (2, 2) else (2, 1)
    tau = config.tau
    omega = np.asarray(omega, dtype=float)
    r1 = m1.reflectivity(omega)
    r2 = m2.reflectivity(omega)
    r1p = m1.reflectivity_derivative(omega)
    r2p = m2.reflectivity_derivative(omega)
    phase = np.exp(2j * omega * tau)
    d = 1.0 - r1 * r2 * phase
    dp = -(r1p * r2 + r1 * r2p + 2j * tau * r1 * r2) * phase
    if (i, j) == (1, 1):
        return -2.0 * r1p * phase * (2j * tau * r2 + r2p) / d ** 2 - 4.0 * dp ** 2 / d ** 4
    return (-4j * tau * dp / d ** 2 + 4.0 * tau ** 2 * (1.0 - d) / d ** 2
            + 2.0 * r1p * r2p * phase / d ** 2 + 4.0 * dp ** 2 / d ** 4)


def coefficients_partial(config: CavityConfig, rel_tol: float = 1e-9) -> QuasistaticCoefficients:
    """Quasistatic coefficients for a Lorentzian-mirror cavity by quadrature.

    All quadratures run on the rotated contour, where the physically real
    results are manifestly real (no imaginary residue can arise by
    construction); the achieved tolerance reported is the panel-refinement
    error estimate of the worst of the integrals.
    """
    o1, o2 = _lorentzian_cutoffs(config)
    hbar, c = config.units.hbar, config.units.c
    tau = config.tau
    t_eff = _effective_delay(config)
    breaks = geometric_breakpoints(0.5 / tau)
    x_max = breaks[-1]

    res_k = integrate_panels(lambda xs: kernels.kappa_integrand(xs, o1, o2, tau), breaks)
    k11 = float(-hbar / (2.0 * _PI * c ** 2) * res_k.value)
    # gamma^A_21[omega,omega] = -gamma^A_11[omega,omega] identically, so the
    # cross stiffness is the exact negative of the self stiffness.
    kappa = np.array([[k11, -k11], [-k11, k11]])

    # The viscosity integrand is a total derivative; its exact integral is
    # the (negated) boundary value 1/T^2 at the origin. What remains after
    # adding that back is pure quadrature noise -- the physical value is 0.
    res_l = integrate_panels(lambda xs: kernels.lambda_integrand(xs, o1, o2, tau), breaks)
    l11 = float(-hbar / (4.0 * _PI * c ** 2) * (res_l.value + 1.0 / t_eff ** 2))
    lam = np.array([[l11, -l11], [-l11, l11]])

    res_m11 = integrate_panels(
        lambda xs: kernels.mu_self_integrand(xs, o1, o2, tau, t_eff), breaks)
    m11 = float(hbar / (4.0 * _PI * c ** 2) * (res_m11.value - 1.0 / (t_eff ** 2 * x_max)))
    if o1 == o2:
        m22 = m11
        err22 = res_m11.achieved_tolerance
    else:
        res_m22 = integrate_panels(
            lambda xs: kernels.mu_self_integrand(xs, o2, o1, tau, t_eff), breaks)
        m22 = float(hbar / (4.0 * _PI * c ** 2) * (res_m22.value - 1.0 / (t_eff ** 2 * x_max)))
        err22 = res_m22.achieved_tolerance
    res_m21 = integrate_panels(
        lambda xs: kernels.mu_cross_integrand(xs, o1, o2, tau, t_eff), breaks)
    m21 = float(hbar / (4.0 * _PI * c ** 2) * (res_m21.value + 1.0 / (t_eff ** 2 * x_max)))
    mu = np.array([[m11, m21], [m21, m22]])

    achieved = max(res_k.achieved_tolerance, res_m11.achieved_tolerance,
                   err22, res_m21.achieved_tolerance)
    if achieved > rel_tol:
        raise ConsistencyError(
            f"quadrature error estimate {achieved:.3e} exceeds requested {rel_tol:.3e}")
    return QuasistaticCoefficients(
        kappa=kappa, lam=lam, mu=mu,
        kappa_sum=float(kappa.sum()), lambda_sum=float(lam.sum()),
        mu_sum=float(mu.sum()), achieved_tolerance=achieved,
        method="quadrature")


def global_mass_correction(config: CavityConfig, rel_tol: float = 1e-6):
    """Global inertia correction mu by two independent routes.

    Route A integrates the summed inertia kernel Gamma = -4 i tau d'/d^2
    (on the rotated contour: (hbar tau / pi c^2) int x^2 u / D^2 dx);
    route B is -2 F q / c^2 with F from the force quadrature. Returns
    (mu_gamma, mu_force, relative gap); raises if the gap exceeds rel_tol.
    """
    hbar, c = config.units.hbar, config.units.c
    if _is_perfect(config):
        stat = casimir_energy_perfect(config.q, config.units)
        mu = 2.0 * stat.U / c ** 2
        return mu, stat.delta_m, abs(mu - stat.delta_m) / abs(mu)
    o1, o2 = _lorentzian_cutoffs(config)
    tau = config.tau
    breaks = geometric_breakpoints(0.5 / tau)
    res = integrate_panels(lambda xs: kernels.mu_global_integrand(xs, o1, o2, tau), breaks)
    mu_gamma = float(hbar * tau / (_PI * c ** 2) * res.value)
    mu_force = casimir_force_partial(config).delta_m
    gap = abs(mu_gamma - mu_force) / max(abs(mu_force), 1e-300)
    if gap > rel_tol:
        raise ConsistencyError(
            f"dual-route mass correction gap {gap:.3e} exceeds {rel_tol:.3e} "
            "(quadrature misconfiguration?)")
    return mu_gamma, mu_force, gap
