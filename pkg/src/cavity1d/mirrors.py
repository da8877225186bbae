"""Mirror reflectivity models.

Every model supplies a reflection amplitude r[omega] obeying three
requirements: reality symmetry r[-omega] = conj(r[omega]), |r| <= 1 on the
real axis, and (for non-perfect kinds) transparency at high frequency.
Causality means analyticity in the upper half of the complex frequency
plane; `verify_physicality` checks it numerically through a Kramers-Kronig
(Hilbert-transform) residual.

Analytic models additionally expose their continuation to complex
frequencies with Im z >= 0 and, as a special case, real-valued helpers on
the positive imaginary axis (omega = i x, x > 0) used by the quadrature
modules:

    rho(x)   = r(ix)              (real for reality-symmetric models)
    sigma(x) defined by r'(ix) = i sigma(x)   (also real)
"""

from __future__ import annotations

import csv as _csv
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, RangeError, UnsupportedModelError


class MirrorModel:
    """Base class; concrete models override the evaluation methods."""

    kind = "abstract"
    label = ""
    has_transmission = True

    def reflectivity(self, omega):
        raise NotImplementedError

    def reflectivity_derivative(self, omega):
        raise NotImplementedError

    def reflectivity_complex(self, z):
        """Analytic continuation r(z) for Im z >= 0 (analytic models only)."""
        raise UnsupportedModelError(
            f"{self.kind} model has no analytic continuation")

    def rho(self, x):
        """r(ix) on the positive imaginary axis (real)."""
        raise UnsupportedModelError(
            f"{self.kind} model does not support imaginary-axis evaluation")

    def sigma(self, x):
        """sigma(x) with r'(ix) = i sigma(x) (real)."""
        raise UnsupportedModelError(
            f"{self.kind} model does not support imaginary-axis evaluation")

    def static_delay(self):
        """r'(0)/(i r(0)), the DC reflection delay (real, >= 0)."""
        raise UnsupportedModelError(
            f"{self.kind} model does not define a static reflection delay")

    def transmission(self, omega):
        """s[omega] = 1 + r[omega] (lossless point-scatterer completion)."""
        return 1.0 + self.reflectivity(omega)

    def __repr__(self):
        return f"<{type(self).__name__} {self.label!r}>"


class PerfectMirror(MirrorModel):
    """r identically -1; the phase convention makes d[omega] = 1 - e^{2 i omega tau}."""

    kind = "perfect"
    has_transmission = False

    def __init__(self, label="perfect"):
        self.label = label

    def reflectivity(self, omega):
        return np.full_like(np.asarray(omega, dtype=float), -1.0, dtype=complex)

    def reflectivity_derivative(self, omega):
        return np.zeros_like(np.asarray(omega, dtype=float), dtype=complex)

    def reflectivity_complex(self, z):
        return np.full_like(np.asarray(z, dtype=complex), -1.0)

    def rho(self, x):
        return np.full_like(np.asarray(x, dtype=float), -1.0)

    def sigma(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))

    def static_delay(self):
        return 0.0

    def transmission(self, omega):
        # A perfect mirror transmits nothing; flagged via has_transmission.
        return np.zeros_like(np.asarray(omega, dtype=float), dtype=complex)


class LorentzianMirror(MirrorModel):
    """Single-pole model r[omega] = -1/(1 - i omega/Omega).

    The unique pole sits at omega = -i Omega in the lower half-plane, so the
    amplitude is causal; |r| <= 1 everywhere and r -> 0 at high frequency.
    s = 1 + r makes the scatterer exactly unitary: |r|^2 + |s|^2 = 1.
    """

    kind = "lorentzian"

    def __init__(self, omega_c, label=None):
        if not (omega_c > 0):
            raise PreconditionError(f"cutoff must be positive, got {omega_c}")
        self.omega_c = float(omega_c)
        self.label = label if label is not None else f"lorentzian(omega={omega_c:g})"

    def reflectivity(self, omega):
        omega = np.asarray(omega, dtype=float)
        return -1.0 / (1.0 - 1j * omega / self.omega_c)

    def reflectivity_derivative(self, omega):
        omega = np.asarray(omega, dtype=float)
        return -(1j / self.omega_c) / (1.0 - 1j * omega / self.omega_c) ** 2

    def reflectivity_complex(self, z):
        z = np.asarray(z, dtype=complex)
        return -1.0 / (1.0 - 1j * z / self.omega_c)

    def rho(self, x):
        x = np.asarray(x, dtype=float)
        return -1.0 / (1.0 + x / self.omega_c)

    def sigma(self, x):
        x = np.asarray(x, dtype=float)
        return -(1.0 / self.omega_c) / (1.0 + x / self.omega_c) ** 2

    def static_delay(self):
        # r'(0) = -i/Omega, r(0) = -1  =>  r'(0)/(i r(0)) = 1/Omega.
        return 1.0 / self.omega_c


class TabulatedMirror(MirrorModel):
    """Reflectivity sampled on an increasing grid of omega >= 0.

    Negative frequencies are synthesized from reality symmetry. Re and Im are
    interpolated linearly and derivatives use centered differences on the
    grid; evaluation outside the grid span is an error, never extrapolation.
    """

    kind = "tabulated"

    def __init__(self, omega_grid, r_values, label="tabulated"):
        omega_grid = np.asarray(omega_grid, dtype=float)
        r_values = np.asarray(r_values, dtype=complex)
        if omega_grid.ndim != 1 or omega_grid.size < 4:
            raise PreconditionError("tabulated model needs a 1-d grid with >= 4 points")
        if np.any(np.diff(omega_grid) <= 0) or omega_grid[0] < 0:
            raise PreconditionError("grid must be strictly increasing and non-negative")
        if np.any(np.abs(r_values) > 1.0 + 1e-9):
            raise PreconditionError("|r| exceeds 1 on the input grid")
        self.omega_grid = omega_grid
        self.r_values = r_values
        self._dr = np.gradient(r_values, omega_grid)
        self.label = label

    @classmethod
    def from_csv(cls, path, label=None):
        """Load from a CSV with header ``omega,re_r,im_r``."""
        omegas, res, ims = [], [], []
        with open(path, newline="") as fh:
            reader = _csv.DictReader(fh)
            expected = {"omega", "re_r", "im_r"}
            if reader.fieldnames is None or not expected.issubset(reader.fieldnames):
                raise PreconditionError(
                    f"mirror file {path} must have header omega,re_r,im_r")
            for row in reader:
                omegas.append(float(row["omega"]))
                res.append(float(row["re_r"]))
                ims.append(float(row["im_r"]))
        return cls(np.asarray(omegas), np.asarray(res) + 1j * np.asarray(ims),
                   label=label or f"tabulated({path})")

    def _check_range(self, a):
        if np.any(a > self.omega_grid[-1] + 1e-15 * self.omega_grid[-1]):
            raise RangeError("frequency outside tabulated grid span")

    def reflectivity(self, omega):
        omega = np.asarray(omega, dtype=float)
        a = np.abs(omega)
        self._check_range(a)
        re = np.interp(a, self.omega_grid, self.r_values.real)
        im = np.interp(a, self.omega_grid, self.r_values.imag)
        # reality symmetry: r(-omega) = conj(r(omega))
        return re + 1j * np.where(omega >= 0, im, -im)

    def reflectivity_derivative(self, omega):
        omega = np.asarray(omega, dtype=float)
        a = np.abs(omega)
        self._check_range(a)
        re = np.interp(a, self.omega_grid, self._dr.real)
        im = np.interp(a, self.omega_grid, self._dr.imag)
        d = re + 1j * im
        # h'(-omega) = -conj(h'(omega))
        return np.where(omega >= 0, d, -np.conj(d))


@dataclass
class PhysicalityReport:
    max_reflection_excess: float
    max_symmetry_residual: float
    transparency_tail: float
    kk_residual: float
    passed: bool
    exempt: bool = False
    note: str = ""


def hilbert_transform_imag(omega_grid, re_r, omega_eval):
    """Predict Im r from Re r via the Kramers-Kronig relation.

    Im r(w) = -(2 w / pi) PV int_0^inf Re r(w') / (w'^2 - w^2) dw',
    discretized with the trapezoid rule on `omega_grid`. The evaluation
    points must avoid the grid nodes (use midpoints) so the principal-value
    singularity is straddled symmetrically and its leading error cancels.
    """
    omega_grid = np.asarray(omega_grid, dtype=float)
    re_r = np.asarray(re_r, dtype=float)
    omega_eval = np.asarray(omega_eval, dtype=float)
    lo = omega_grid[0]
    out = np.empty_like(omega_eval)
    for k, w in enumerate(omega_eval):
        integrand = re_r / (omega_grid ** 2 - w ** 2)
        val = np.trapezoid(integrand, omega_grid)
        if w > lo:
            # analytic stub for the missing interval [0, omega_grid[0]],
            # treating Re r as constant there; without it the truncation
            # error decays only like omega_grid[0] / w
            val += re_r[0] * np.log((w - lo) / (w + lo)) / (2.0 * w)
        out[k] = -(2.0 * w / np.pi) * val
    return out


def verify_physicality(model, grid, kk_tol=1e-3, sym_tol=1e-12,
                       bound_tol=1e-12, transparency_tol=0.2, kk_points=200):
    """Check reflection bound, reality symmetry, transparency and causality.

    Returns a PhysicalityReport; `passed` is True when every residual falls
    below its tolerance. A perfect mirror is exempt (constant amplitude has
    no transparency tail and its KK integral is not applicable).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 8 or np.any(np.diff(grid) <= 0) or grid[0] <= 0:
        raise PreconditionError("grid must be strictly increasing and positive")

    if isinstance(model, PerfectMirror):
        return PhysicalityReport(0.0, 0.0, 1.0, 0.0, passed=True, exempt=True,
                                 note="perfect mirror: not transparent, KK not applicable")

    r_pos = model.reflectivity(grid)
    r_neg = model.reflectivity(-grid)
    excess = float(np.max(np.maximum(np.abs(r_pos) - 1.0, 0.0)))
    sym = float(np.max(np.abs(r_neg - np.conj(r_pos))))
    tail = float(np.abs(r_pos[-1]))

    mids = 0.5 * (grid[:-1] + grid[1:])
    # keep midpoints away from both edges where truncation error dominates,
    # and subsample: each evaluation costs a full principal-value sum
    keep = (mids <= 0.5 * grid[-1]) & (mids >= grid[0] + 8.0 * (grid[1] - grid[0]))
    mids = mids[keep][::max(1, int(keep.sum()) // kk_points)]
    im_pred = hilbert_transform_imag(grid, r_pos.real, mids)
    im_true = model.reflectivity(mids).imag
    scale = max(np.max(np.abs(im_true)), 1e-30)
    kk = float(np.max(np.abs(im_pred - im_true)) / scale)

    passed = (excess <= bound_tol and sym <= sym_tol
              and tail <= transparency_tol and kk <= kk_tol)
    return PhysicalityReport(excess, sym, tail, kk, passed=passed)


def parse_mirror_spec(spec):
    """Build a model from a CLI-style spec string.

    Accepted forms: ``perfect``, ``lorentzian:omega=<val>``, ``file:<path>``.
    """
    if spec == "perfect":
        return PerfectMirror()
    if spec.startswith("lorentzian:"):
        body = spec.split(":", 1)[1]
        params = dict(kv.split("=", 1) for kv in body.split(",") if kv)
        if "omega" not in params:
            raise PreconditionError("lorentzian mirror spec needs omega=<val>")
        return LorentzianMirror(float(params["omega"]))
    if spec.startswith("file:"):
        return TabulatedMirror.from_csv(spec.split(":", 1)[1])
    raise PreconditionError(f"unrecognized mirror spec {spec!r}")
