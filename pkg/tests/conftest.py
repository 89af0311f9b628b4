import sys

import numpy as np
import pytest
from hypothesis import settings

from dualcav.cavity import CavityConfig, mode_bank

settings.register_profile("dualcav", max_examples=40, deadline=None)
settings.load_profile("dualcav")


@pytest.fixture
def nat():
    return CavityConfig.natural(L=1.0, V=1.0)


@pytest.fixture
def si():
    return CavityConfig.si(L=0.5, V=2e-3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def modes3(nat):
    return mode_bank(3, nat)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
