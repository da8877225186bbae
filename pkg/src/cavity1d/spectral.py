"""Frequency-domain motional susceptibilities.

Perfect-mirror closed forms (exact, with series treatment of their
removable singularities), the partial-mirror antisymmetric kernels
gamma^A_ij together with the cavity denominator d[omega], and the
zero-temperature fluctuation spectrum.

Scaled variable throughout: t = omega * tau. The perfect-mirror dispersive
parts are, up to the prefactor hbar/(12 pi c^2 tau^3),

    xi~_11 : -f(t),  f(t) = (t^3 - pi^2 t) cot(t)
    xi~_12 : +g(t),  g(t) = (t^3 - pi^2 t) / sin(t)

and for the compound (sum) response, up to hbar/(6 pi c^2 tau^3),

    xi~    : h(t),   h(t) = (t^3 - pi^2 t) tan(t/2).

f and g have removable singularities at t in {0, +-pi} (the numerator
vanishes there) and true poles at t = m pi, |m| >= 2; h is regular except
at odd multiples of pi with |m| >= 3. Within a small window around each
removable point the functions switch to 4th-order series expansions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import CavityConfig
from .errors import PoleError, UnsupportedModelError
from .mirrors import PerfectMirror
from .quadrature import integrate_decaying

# window half-width for the series treatment of removable singularities
TAYLOR_RADIUS = 1e-3
# closest allowed approach to a true pole, in units of t = omega*tau
DEFAULT_POLE_EXCLUSION = 1e-6

_PI = np.pi
_PI2 = np.pi ** 2


@dataclass
class SusceptibilityMatrix:
    """2x2 motional susceptibility at one frequency.

    chi = dispersive + 1j * dissipative, entry by entry; chi is symmetric,
    the dissipative part is odd in omega and the dispersive part even.
    """

    omega: float
    chi: np.ndarray
    dispersive: np.ndarray
    dissipative: np.ndarray


def _f_cot(t):
    """(t^3 - pi^2 t) cot t, vectorized, with series windows; even in t."""
    t = np.abs(np.asarray(t, dtype=float))
    out = np.empty_like(t)
    near0 = t < TAYLOR_RADIUS
    nearpi = np.abs(t - _PI) < TAYLOR_RADIUS
    rest = ~(near0 | nearpi)
    tr = t[rest]
    out[rest] = (tr ** 3 - _PI2 * tr) / np.tan(tr)
    t0 = t[near0]
    out[near0] = -_PI2 + (1.0 + _PI2 / 3.0) * t0 ** 2 + (-1.0 / 3.0 + _PI2 / 45.0) * t0 ** 4
    s = t[nearpi] - _PI
    out[nearpi] = (2.0 * _PI2 + 3.0 * _PI * s + (1.0 - 2.0 * _PI2 / 3.0) * s ** 2
                   - _PI * s ** 3 + (-1.0 / 3.0 - 2.0 * _PI2 / 45.0) * s ** 4)
    return out


def _g_csc(t):
    """(t^3 - pi^2 t) / sin t, vectorized, with series windows; even in t."""
    t = np.abs(np.asarray(t, dtype=float))
    out = np.empty_like(t)
    near0 = t < TAYLOR_RADIUS
    nearpi = np.abs(t - _PI) < TAYLOR_RADIUS
    rest = ~(near0 | nearpi)
    tr = t[rest]
    out[rest] = (tr ** 3 - _PI2 * tr) / np.sin(tr)
    t0 = t[near0]
    out[near0] = -_PI2 + (1.0 - _PI2 / 6.0) * t0 ** 2 + (1.0 / 6.0 - 7.0 * _PI2 / 360.0) * t0 ** 4
    s = t[nearpi] - _PI
    out[nearpi] = -(2.0 * _PI2 + 3.0 * _PI * s + (1.0 + _PI2 / 3.0) * s ** 2
                    + 0.5 * _PI * s ** 3 + (1.0 / 6.0 + 7.0 * _PI2 / 180.0) * s ** 4)
    return out


def _h_tan(t):
    """(t^3 - pi^2 t) tan(t/2), vectorized, with a series window at |t|=pi; even."""
    t = np.abs(np.asarray(t, dtype=float))
    out = np.empty_like(t)
    nearpi = np.abs(t - _PI) < TAYLOR_RADIUS
    rest = ~nearpi
    tr = t[rest]
    out[rest] = (tr ** 3 - _PI2 * tr) * np.tan(0.5 * tr)
    s = t[nearpi] - _PI
    out[nearpi] = -(4.0 * _PI2 + 6.0 * _PI * s + (2.0 - _PI2 / 3.0) * s ** 2
                    - 0.5 * _PI * s ** 3 - (1.0 / 6.0 + _PI2 / 180.0) * s ** 4)
    return out


def _component_pole_mask(t, exclusion):
    """True where t sits within `exclusion` of a pole of f or g (|m| >= 2)."""
    t = np.abs(np.asarray(t, dtype=float))
    m = np.rint(t / _PI)
    return (np.abs(t - m * _PI) < exclusion) & (m >= 2)


def _compound_pole_mask(t, exclusion):
    """True where t sits within `exclusion` of a pole of h (odd m >= 3)."""
    t = np.abs(np.asarray(t, dtype=float))
    m = np.rint(t / _PI)
    return (np.abs(t - m * _PI) < exclusion) & (m >= 3) & (m % 2 == 1)


def _require_perfect(config):
    if not (isinstance(config.mirror1, PerfectMirror)
            and isinstance(config.mirror2, PerfectMirror)):
        raise UnsupportedModelError(
            "closed-form susceptibilities require perfect mirrors")


def chi_perfect(config: CavityConfig, omega: float,
                pole_exclusion: float = DEFAULT_POLE_EXCLUSION) -> SusceptibilityMatrix:
    """Exact 2x2 susceptibility matrix of the perfect-mirror cavity."""
    _require_perfect(config)
    hbar, c = config.units.hbar, config.units.c
    tau = config.tau
    t = omega * tau
    if _component_pole_mask(t, pole_exclusion):
        raise PoleError(omega, int(np.rint(abs(t) / _PI)))
    pre = hbar / (12.0 * _PI * c ** 2 * tau ** 3)
    xt11 = -pre * float(_f_cot(np.atleast_1d(t))[0])
    xt12 = pre * float(_g_csc(np.atleast_1d(t))[0])
    xi11 = hbar * omega ** 3 / (12.0 * _PI * c ** 2)
    dispersive = np.array([[xt11, xt12], [xt12, xt11]])
    dissipative = np.array([[xi11, 0.0], [0.0, xi11]])
    return SusceptibilityMatrix(omega, dispersive + 1j * dissipative,
                                dispersive, dissipative)


def chi_perfect_grid(config: CavityConfig, omegas,
                     pole_exclusion: float = 1e-3):
    """Vectorized chi_11 and chi_12 on a frequency grid, with pole masking.

    Entries within `pole_exclusion` (in t = omega*tau) of a true pole are set
    to zero and flagged in the returned boolean mask instead of raising, so
    FFT pipelines can annotate and skip them.
    """
    _require_perfect(config)
    hbar, c = config.units.hbar, config.units.c
    tau = config.tau
    omegas = np.asarray(omegas, dtype=float)
    t = omegas * tau
    mask = _component_pole_mask(t, pole_exclusion)
    pre = hbar / (12.0 * _PI * c ** 2 * tau ** 3)
    safe_t = np.where(mask, 0.5, t)  # placeholder value, overwritten below
    xi11 = hbar * omegas ** 3 / (12.0 * _PI * c ** 2)
    chi11 = -pre * _f_cot(safe_t) + 1j * xi11
    chi12 = (pre * _g_csc(safe_t)).astype(complex)
    chi11[mask] = 0.0
    chi12[mask] = 0.0
    return chi11, chi12, mask


def chi_compound_perfect(config: CavityConfig, omega: float,
                         pole_exclusion: float = DEFAULT_POLE_EXCLUSION):
    """Global susceptibility sum over ij for the perfect cavity.

    Returns (chi, dispersive, dissipative); equal to the matrix sum of
    chi_perfect wherever both are defined, and regular at even resonances
    where the component poles cancel.
    """
    _require_perfect(config)
    hbar, c = config.units.hbar, config.units.c
    tau = config.tau
    t = omega * tau
    if _compound_pole_mask(t, pole_exclusion):
        raise PoleError(omega, int(np.rint(abs(t) / _PI)))
    xt = hbar / (6.0 * _PI * c ** 2 * tau ** 3) * float(_h_tan(np.atleast_1d(t))[0])
    xi = hbar * omega ** 3 / (6.0 * _PI * c ** 2)
    return xt + 1j * xi, xt, xi


def cavity_denominator(config: CavityConfig, omega):
    """d[omega] = 1 - r1 r2 e^{2 i omega tau} and its frequency derivative."""
    tau = config.tau
    omega = np.asarray(omega, dtype=float)
    r1 = config.mirror1.reflectivity(omega)
    r2 = config.mirror2.reflectivity(omega)
    r1p = config.mirror1.reflectivity_derivative(omega)
    r2p = config.mirror2.reflectivity_derivative(omega)
    phase = np.exp(2j * omega * tau)
    d = 1.0 - r1 * r2 * phase
    dp = -(r1p * r2 + r1 * r2p + 2j * tau * r1 * r2) * phase
    return d, dp


def _gamma_z(config, i, j, z1, z2):
    """gamma^A_ij at complex frequencies (Im z >= 0), via analytic continuation."""
    if (i, j) not in ((1, 1), (2, 2), (2, 1), (1, 2)):
        raise ValueError("mirror indices must be in {1, 2}")
    m1, m2 = config.mirror1, config.mirror2
    if (i, j) in ((2, 2), (1, 2)):
        # mirror-exchange relation
        m1, m2 = m2, m1
        i, j = (1, 1) if (i, j) == (2, 2) else (2, 1)
    tau = config.tau
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    r1a, r1b = m1.reflectivity_complex(z1), m1.reflectivity_complex(z2)
    r2a, r2b = m2.reflectivity_complex(z1), m2.reflectivity_complex(z2)
    ea, eb = np.exp(2j * z1 * tau), np.exp(2j * z2 * tau)
    da = 1.0 - r1a * r2a * ea
    db = 1.0 - r1b * r2b * eb
    if np.any(np.abs(da * db) == 0.0):
        raise PoleError(z1, 0, "cavity denominator vanishes in gamma^A")
    if (i, j) == (1, 1):
        return (r1a + r1b) * (r2a * ea + r2b * eb) / (da * db)
    return -(r1a + r1b) * (r2a + r2b) * np.exp(1j * (z1 + z2) * tau) / (da * db)


def gamma_A(config: CavityConfig, i: int, j: int, omega, omega_p):
    """Antisymmetric force-response kernel gamma^A_ij[omega, omega']."""
    return _gamma_z(config, i, j, omega, omega_p)


def chi_A(config: CavityConfig, i: int, j: int, omega: float,
          rel_tol: float = 1e-9, return_meta: bool = False):
    """Antisymmetric susceptibility chi^A_ij[omega] for partial mirrors.

    The defining frequency integral runs along the real axis where the
    integrand oscillates without decay; both of its pieces are boundary
    values of one function analytic in the upper half-plane, so the contour
    is rotated onto omega' = i x where they coincide and die off
    exponentially:

        chi^A_ij[omega] = -(i hbar / 2 pi c^2)
                          int_0^inf x (omega + i x) gamma^A_ij[i x, omega + i x] dx.

    The rotated value is the Abel-regularized value of the original
    oscillatory integral and reproduces -kappa_ij at omega = 0.
    """
    for m in (config.mirror1, config.mirror2):
        if isinstance(m, PerfectMirror):
            raise UnsupportedModelError(
                "chi_A needs transparent mirrors (perfect mirrors leave a "
                "non-convergent tail); use the closed forms instead")
    hbar, c = config.units.hbar, config.units.c
    tau = config.tau

    def integrand(xs):
        z1 = 1j * xs
        z2 = omega + 1j * xs
        return xs * z2 * _gamma_z(config, i, j, z1, z2)

    res = integrate_decaying(integrand, scale=0.5 / tau, rel_tol=rel_tol)
    value = complex(-1j * hbar / (2.0 * _PI * c ** 2) * res.value)
    if return_meta:
        return value, res
    return value


def fluctuation_spectrum(config: CavityConfig, i: int, j: int, omega: float) -> float:
    """Zero-temperature force-fluctuation spectrum C_ij[omega] = 2 hbar theta(omega) xi_ij."""
    if omega < 0:
        return 0.0
    mat = chi_perfect(config, omega)
    return 2.0 * config.units.hbar * float(mat.dissipative[i - 1, j - 1])
