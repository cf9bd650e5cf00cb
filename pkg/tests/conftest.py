"""Shared fixtures"""
import numpy as np
import pytest

from app.cq import symbols
from app.cq.multistep_cq import get_delta
from app.cq.rk_cq import LOBATTO_IIIC, RADAU_IIA
from app.oracles.signals import t5exp
from app.scattering.curves import circle
from app.scattering.geometry import BoundaryGeometry


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def be():
    return get_delta("be")


@pytest.fixture
def bdf2():
    return get_delta("bdf2")


@pytest.fixture(params=["be", "bdf2", "tr"])
def a_stable_delta(request):
    return get_delta(request.param)


@pytest.fixture(params=[RADAU_IIA, LOBATTO_IIIC], ids=["radau3", "lobatto4"])
def tableau(request):
    return request.param


@pytest.fixture
def hump():
    """g(t) = t^5 e^{-t}, vanishing to fifth order at the origin"""
    return t5exp(rate=1.0)


@pytest.fixture
def diagonal_resolvent():
    """2x2 symbol diag(1/(s+1), 1/(s+2))"""
    return symbols.Symbol(lambda s: np.diag([1.0 / (s + 1.0), 1.0 / (s + 2.0)]), dims=(2, 2),
                          conjugate_symmetric=True, name="diag-resolvent")


@pytest.fixture
def unit_circle_geometry():
    return BoundaryGeometry(circle(1.0), 8)


@pytest.fixture
def out_dir(tmp_path):
    return tmp_path / "out"
