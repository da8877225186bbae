import numpy as np
import pytest

from cavity1d import CavityConfig, LorentzianMirror, PerfectMirror


@pytest.fixture
def perfect_config():
    return CavityConfig(1.0, PerfectMirror(), PerfectMirror())


@pytest.fixture
def lorentzian_config():
    return CavityConfig(1.0, LorentzianMirror(5.0), LorentzianMirror(5.0))


def make_lorentzian(omega_c, q=1.0):
    return CavityConfig(q, LorentzianMirror(omega_c), LorentzianMirror(omega_c))
