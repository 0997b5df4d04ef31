import numpy as np
import pytest

from trapgates.dynamics import RegisterConfig
from trapgates.matching import sideband_match


@pytest.fixture
def rng():
    return np.random.default_rng(20011207)


@pytest.fixture
def match_4819():
    """Sideband solution p=2, q=3 (eta ~ 0.4819)."""
    return sideband_match(2, 3)


@pytest.fixture
def two_ion(match_4819):
    return RegisterConfig(2, match_4819.eta, 1.0, 4)


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line)
