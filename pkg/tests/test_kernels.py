"""Compiled kernels and their pure-numpy fallback give identical results."""

import os
import subprocess
import sys

import numpy as np

from cavity1d import casimir_force_partial, coefficients_partial
from cavity1d.kernels import force_integrand, kappa_integrand
from conftest import make_lorentzian

PROBE = """
import json
from cavity1d import casimir_force_partial, coefficients_partial
from conftest import make_lorentzian
cfg = make_lorentzian(10.0)
co = coefficients_partial(cfg)
print(json.dumps({
    "F": casimir_force_partial(cfg).F,
    "kappa11": co.kappa[0, 0],
    "mu_sum": co.mu_sum,
}))
"""


def test_fallback_path_matches_compiled_kernels():
    import json
    env = dict(os.environ, CAVITY1D_DISABLE_NUMBA="1",
               PYTHONPATH=os.path.dirname(__file__))
    proc = subprocess.run([sys.executable, "-c", PROBE], env=env,
                          capture_output=True, text=True, check=True)
    got = json.loads(proc.stdout)
    cfg = make_lorentzian(10.0)
    co = coefficients_partial(cfg)
    assert got["F"] == casimir_force_partial(cfg).F
    assert got["kappa11"] == co.kappa[0, 0]
    assert got["mu_sum"] == co.mu_sum


def test_integrands_are_finite_and_decay():
    x = np.geomspace(1e-6, 1e3, 200)
    f = force_integrand(x, 10.0, 10.0, 1.0)
    k = kappa_integrand(x, 10.0, 10.0, 1.0)
    assert np.all(np.isfinite(f)) and np.all(np.isfinite(k))
    assert abs(f[-1]) < 1e-200 and abs(k[-1]) < 1e-200
