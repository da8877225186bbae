"""Momentum bookkeeping for a rigidly accelerated stressed cavity.

Two mirrors of bare masses m1, m2 move with a common prescribed velocity
profile while sustaining the static Casimir stress F (force +F on mirror 1,
-F on mirror 2, so the pair is bound). The mirror energies obey
e_i' = F_i q_i', keeping the total E = e1 + e2 + E_f exactly constant, and
the total momentum is assembled as

    c^2 P = e1 q1' + e2 q2' + (E_f - F q)(q1' + q2') / 2,

whose time derivative per unit acceleration is the effective inertial mass
m_total + delta_m with delta_m = (E_f - F q)/c^2: the stress term -Fq/c^2
is what makes the mass correction of the bound cavity equal 2U/c^2 rather
than U/c^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import NATURAL, UnitSystem
from .errors import PreconditionError


@dataclass
class RigidBodyState:
    m1: float
    m2: float
    q1: float
    q2: float
    E_f: float
    F: float
    units: UnitSystem = NATURAL

    @property
    def q(self):
        return self.q2 - self.q1


@dataclass
class RigidBodyTrace:
    t: np.ndarray
    q1: np.ndarray
    q2: np.ndarray
    v: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    E: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    residual: np.ndarray  # c^2 P - E Q'
    effective_mass: float
    delta_m: float


def mass_correction(E_f: float, F: float, q: float,
                    units: UnitSystem = NATURAL) -> float:
    """delta_m = (E_f - F q)/c^2; equals -2Fq/c^2 when E_f = -Fq."""
    return (E_f - F * q) / units.c ** 2


def center_of_inertia(e1, e2, q1, q2, E_f, F=0.0):
    """Q = [e1 q1 + e2 q2 + E_f (q1+q2)/2] / E.

    The field energy sits at the cavity midpoint (it is distributed
    homogeneously between the mirrors).
    """
    E = e1 + e2 + E_f
    if np.any(np.asarray(E) == 0.0):
        raise PreconditionError("total energy must be nonzero")
    return (e1 * q1 + e2 * q2 + E_f * 0.5 * (q1 + q2)) / E


def _stencil_d1(y, dt):
    """5-point first derivative; exact for polynomials through degree 4."""
    n = len(y)
    d = np.empty(n)
    d[2:-2] = (y[:-4] - 8.0 * y[1:-3] + 8.0 * y[3:-1] - y[4:]) / (12.0 * dt)
    # one-sided 5-point closures of the same order
    c = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12.0 * dt)
    d[0] = c @ y[:5]
    d[1] = c @ y[1:6]
    d[-1] = -(c @ y[-1:-6:-1])
    d[-2] = -(c @ y[-2:-7:-1])
    return d


def simulate_accelerated_cavity(initial: RigidBodyState, a: float,
                                duration: float, dt: float,
                                v0: float = 0.0,
                                vc_bound: float = 1e-3) -> RigidBodyTrace:
    """Integrate the energy bookkeeping along rigid motion v(t) = v0 + a t.

    The mirror energies are advanced with classic fixed-step RK4 applied to
    e_i' = F_i v(t) (exact here, since the right-hand side is polynomial in
    t of degree 1). Positions follow the exact kinematics. Raises when |v|/c
    exceeds vc_bound (the bookkeeping is a first-order-in-v/c statement).
    """
    n = int(round(duration / dt)) + 1
    if n < 5:
        raise PreconditionError("duration must cover at least 5 samples")
    c = initial.units.c
    t = dt * np.arange(n)
    v = v0 + a * t
    if np.max(np.abs(v)) > vc_bound * c:
        raise PreconditionError(
            f"|v|/c reaches {np.max(np.abs(v)) / c:.3e}, beyond bound {vc_bound:g}")
    q1 = initial.q1 + v0 * t + 0.5 * a * t ** 2
    q2 = initial.q2 + v0 * t + 0.5 * a * t ** 2
    F = initial.F

    # RK4 on e1' = +F v(t), e2' = -F v(t); the cumulative transfer `de` is
    # kept separately so downstream differences of e_i stay well-conditioned.
    de = np.empty(n)
    de[0] = 0.0
    for i in range(n - 1):
        ta = t[i]
        k1 = v0 + a * ta
        k2 = v0 + a * (ta + 0.5 * dt)
        k4 = v0 + a * (ta + dt)
        de[i + 1] = de[i] + F * dt * (k1 + 4.0 * k2 + k4) / 6.0
    e1 = initial.m1 * c ** 2 + de
    e2 = initial.m2 * c ** 2 - de

    E_f = initial.E_f
    E = e1 + e2 + E_f
    q = initial.q
    P = ((e1 + e2 + E_f - F * q) * v) / c ** 2
    Q = center_of_inertia(e1, e2, q1, q2, E_f)
    # Q(t) = Q(0) + s(t) - de(t) q / E with s the common shift: differentiate
    # the increments rather than Q itself, whose O(q) magnitude would bury
    # the tiny variation in roundoff.
    s = v0 * t + 0.5 * a * t ** 2
    Qdot = _stencil_d1(s - de * (q / E[0]), dt)
    residual = c ** 2 * P - E * Qdot

    Pdot = _stencil_d1(P, dt)
    m_eff = float(np.mean(Pdot) / a) if a != 0.0 else float("nan")
    dm = mass_correction(E_f, F, q, initial.units)
    return RigidBodyTrace(t=t, q1=q1, q2=q2, v=v, e1=e1, e2=e2, E=E, P=P, Q=Q,
                          residual=residual, effective_mass=m_eff, delta_m=dm)
