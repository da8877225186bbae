"""Numerically hot kernels, JIT-compiled with numba when available.

Set the environment variable ``CAVITY1D_DISABLE_NUMBA=1`` before import to
force the pure-numpy/python fallback (used by the benchmark harness and as a
safety hatch on platforms without a working numba install).

Two families live here:

* imaginary-axis integrands for the Lorentzian-mirror quadratures, written
  against the rotated (Wick) contour where every integrand is real, smooth
  and exponentially damped;
* the retarded delay-series accumulation for time-domain motional forces.

Notation for the imaginary-axis kernels (x > 0, evaluation at frequency ix):
rho_j(x) = r_j(ix) = -1/(1 + x/Omega_j)   (real),
sigma_j(x) defined by r_j'(ix) = i sigma_j(x), sigma_j = -(1/Omega_j)/(1+x/Omega_j)^2,
W(x) = rho1 rho2 exp(-2 x tau),  D(x) = 1 - W(x) = d(ix),
u(x) defined by d'(ix) = i u(x), u = -(sigma1 rho2 + rho1 sigma2 + 2 tau rho1 rho2) e^{-2x tau}.

D is evaluated as -expm1(log(rho1 rho2) - 2 x tau), which is exact to
roundoff even where W -> 1 (x -> 0), the region that otherwise loses all
precision to cancellation.
"""

import math
import os

import numpy as np

USE_NUMBA = os.environ.get("CAVITY1D_DISABLE_NUMBA", "0").lower() not in ("1", "true", "yes")
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if not USE_NUMBA:
    def njit(*args, **kwargs):
        """No-op stand-in for numba.njit (fallback path)."""
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


@njit(cache=True)
def _axis_parts(x, o1, o2, tau):
    """Return (rho1, rho2, sig1, sig2, W, D, u) at a single imaginary-axis point."""
    rho1 = -1.0 / (1.0 + x / o1)
    rho2 = -1.0 / (1.0 + x / o2)
    sig1 = -(1.0 / o1) / (1.0 + x / o1) ** 2
    sig2 = -(1.0 / o2) / (1.0 + x / o2) ** 2
    lw = -math.log1p(x / o1) - math.log1p(x / o2) - 2.0 * x * tau
    w = math.exp(lw)
    d = -math.expm1(lw)
    u = -(sig1 * rho2 + rho1 * sig2 + 2.0 * tau * rho1 * rho2) * math.exp(-2.0 * x * tau)
    return rho1, rho2, sig1, sig2, w, d, u


@njit(cache=True)
def force_integrand(xs, o1, o2, tau):
    """x W / D; integral * hbar/(pi c) is the mean Casimir force."""
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        x = xs[i]
        _, _, _, _, w, d, _ = _axis_parts(x, o1, o2, tau)
        out[i] = x * w / d
    return out


@njit(cache=True)
def kappa_integrand(xs, o1, o2, tau):
    """4 x^2 W / D^2; integral * (-hbar/(2 pi c^2)) is kappa_11."""
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        x = xs[i]
        _, _, _, _, w, d, _ = _axis_parts(x, o1, o2, tau)
        out[i] = 4.0 * x * x * w / (d * d)
    return out


@njit(cache=True)
def lambda_integrand(xs, o1, o2, tau):
    """d/dx [4 x^2 W / D^2], the viscosity integrand (a total derivative)."""
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        x = xs[i]
        _, _, _, _, w, d, u = _axis_parts(x, o1, o2, tau)
        out[i] = 8.0 * x * w / (d * d) + 4.0 * x * x * u * (1.0 + w) / (d * d * d)
    return out


@njit(cache=True)
def mu_global_integrand(xs, o1, o2, tau):
    """x^2 u / D^2; integral * (hbar tau/(pi c^2)) is the global mass correction."""
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        x = xs[i]
        _, _, _, _, _, d, u = _axis_parts(x, o1, o2, tau)
        out[i] = x * x * u / (d * d)
    return out


@njit(cache=True)
def mu_self_integrand(xs, o1, o2, tau, t_eff):
    """Regularized self-inertia integrand B_11(x).

    x^2 Gamma_11(ix) minus its 1/(T^2 x^2) origin singularity, arranged so the
    subtraction happens inside a single fraction (no catastrophic cancellation
    down to x ~ 1e-6 tau in double precision; quadrature nodes never go lower).
    """
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        x = xs[i]
        rho1, rho2, sig1, sig2, w, d, u = _axis_parts(x, o1, o2, tau)
        e = math.exp(-2.0 * x * tau)
        p1 = 2.0 * sig1 * (2.0 * tau * rho2 + sig2) * e / (d * d)
        num = 4.0 * x ** 4 * u * u - d ** 4 / (t_eff * t_eff)
        out[i] = x * x * p1 + num / (x * x * d ** 4)
    return out


@njit(cache=True)
def mu_cross_integrand(xs, o1, o2, tau, t_eff):
    """Regularized mutual-inertia integrand B_21(x) (same subtraction, opposite sign)."""
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        x = xs[i]
        rho1, rho2, sig1, sig2, w, d, u = _axis_parts(x, o1, o2, tau)
        e = math.exp(-2.0 * x * tau)
        p2 = (4.0 * tau * u + 4.0 * tau * tau * w - 2.0 * sig1 * sig2 * e) / (d * d)
        num = 4.0 * x ** 4 * u * u - d ** 4 / (t_eff * t_eff)
        out[i] = x * x * p2 - num / (x * x * d ** 4)
    return out


@njit(cache=True)
def delay_series_force(d3q1, d3q2, d1q1, d1q2, n_tau, coeff_jerk, coeff_vel):
    """Accumulate the perfect-mirror retarded force series on both mirrors.

    Parameters
    ----------
    d3q1, d3q2 : third time derivatives of the two displacements, uniform grid.
    d1q1, d1q2 : first time derivatives.
    n_tau : int
        Number of grid steps per one-way delay tau (dt = tau / n_tau).
    coeff_jerk : hbar / (6 pi c^2).
    coeff_vel : hbar pi / (6 c^2 tau^2).

    Returns (dF1, dF2). The series alternates mirror index and sign with each
    extra delay, the zero-delay velocity term enters with weight 1/2, and terms
    whose delayed index falls before the sampled window vanish (the trajectory
    is at rest there by precondition).
    """
    n = d3q1.shape[0]
    df1 = np.zeros(n)
    df2 = np.zeros(n)
    for i in range(n):
        acc3_1 = 0.0
        acc1_1 = 0.0
        acc3_2 = 0.0
        acc1_2 = 0.0
        k = 0
        idx = i
        while idx >= 0:
            if k % 2 == 0:
                acc3_1 += d3q1[idx]
                acc3_2 += d3q2[idx]
                if k == 0:
                    acc1_1 += 0.5 * d1q1[idx]
                    acc1_2 += 0.5 * d1q2[idx]
                else:
                    acc1_1 += d1q1[idx]
                    acc1_2 += d1q2[idx]
            else:
                acc3_1 -= d3q2[idx]
                acc3_2 -= d3q1[idx]
                acc1_1 -= d1q2[idx]
                acc1_2 -= d1q1[idx]
            k += 1
            idx = i - k * n_tau
        df1[i] = coeff_jerk * acc3_1 + coeff_vel * acc1_1
        df2[i] = coeff_jerk * acc3_2 + coeff_vel * acc1_2
    return df1, df2
