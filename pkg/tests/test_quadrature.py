"""Panel quadrature utilities."""

import numpy as np
import pytest

from cavity1d import QuadratureError, integrate_decaying, integrate_panels
from cavity1d.quadrature import geometric_breakpoints


def test_polynomial_is_integrated_exactly():
    # order-32 Gauss panels are exact for degree <= 63
    res = integrate_panels(lambda x: 5 * x ** 4, np.array([0.0, 1.0, 2.0]))
    assert abs(res.value - 2.0 ** 5) < 1e-12
    assert res.error < 1e-12


def test_exponential_decay_against_analytic_value():
    breaks = geometric_breakpoints(1.0)
    res = integrate_panels(np.exp, -breaks[::-1])
    assert abs(res.value - 1.0) < 1e-13 * max(1.0, abs(res.value))


def test_geometric_breakpoints_shape():
    b = geometric_breakpoints(2.0)
    assert b[0] == 0.0
    assert np.all(np.diff(b) > 0)
    # edges double (last one is clamped to the span) and the range covers
    # many decay lengths of the scale
    ratios = b[2:-1] / b[1:-2]
    assert np.allclose(ratios, 2.0)
    assert b[-1] == 60 * 2.0


def test_integrate_decaying_gaussian():
    res = integrate_decaying(lambda x: np.exp(-x * x), scale=1.0, rel_tol=1e-12)
    assert abs(res.value - np.sqrt(np.pi) / 2) < 1e-12
    assert res.achieved_tolerance <= 1e-12


def test_integrate_decaying_raises_when_tolerance_unreachable():
    rng = np.random.default_rng(0)

    def noisy(x):
        return np.exp(-x) * (1.0 + 1e-6 * rng.standard_normal(x.shape))

    with pytest.raises(QuadratureError) as info:
        integrate_decaying(noisy, scale=1.0, rel_tol=1e-14)
    assert info.value.achieved > 1e-14
