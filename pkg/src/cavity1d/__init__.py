"""Vacuum radiation-pressure linear response of a two-mirror 1D cavity.

Susceptibility spectra, Casimir force/energy, quasistatic stiffness /
viscosity / inertia coefficients, time-domain motional forces, and the
stressed-rigid-body inertia bookkeeping, for perfect and partially
transmitting (Lorentzian) mirror models.
"""

from .config import CavityConfig, NATURAL, SI, UnitSystem, units_by_name
from .errors import (CavityError, ConsistencyError, PoleError,
                     PreconditionError, QuadratureError, RangeError,
                     UnsupportedModelError)
from .mirrors import (LorentzianMirror, MirrorModel, PerfectMirror,
                      PhysicalityReport, TabulatedMirror, parse_mirror_spec,
                      verify_physicality)
from .quadrature import QuadResult, integrate_decaying, integrate_panels
from .spectral import (SusceptibilityMatrix, cavity_denominator, chi_A,
                       chi_compound_perfect, chi_perfect, chi_perfect_grid,
                       fluctuation_spectrum, gamma_A)
from .quasistatic import (CasimirStatics, QuasistaticCoefficients,
                          casimir_energy_perfect, casimir_force_partial,
                          coefficients_partial, coefficients_perfect,
                          gamma_capital, global_mass_correction)
from .timedomain import (ForceRecord, Trajectory, from_arrays,
                         motional_force_perfect, motional_force_single,
                         motional_force_spectral, quasistatic_force,
                         ramped_acceleration, ramped_velocity, sinusoid,
                         smooth_pulse, steady_state_mean)
from .rigidbody import (RigidBodyState, RigidBodyTrace, center_of_inertia,
                        mass_correction, simulate_accelerated_cavity)

__version__ = "0.1.0"
