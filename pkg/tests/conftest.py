import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def jit_warm():
    """Compile the numeric kernels once so timed tests measure integration only."""
    from hardyosc.numeric import compile, integrate_pair, numeric_oscillation_probe
    from hardyosc.tower import TowerElem

    integrate_pair(compile(TowerElem.monomial([-2], 2)), 10.0, 100.0)
    numeric_oscillation_probe(TowerElem.const(1))
    return True
