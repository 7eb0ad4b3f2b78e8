import math

import numpy as np
import pytest

from noma_fusion.model import SystemParams


def pytest_addoption(parser):
    parser.addoption(
        "--full-protocol",
        action="store_true",
        default=False,
        help="run the full 30x100000x100-angle sweep reproduction (minutes)",
    )


@pytest.fixture
def full_protocol(request):
    if not request.config.getoption("--full-protocol"):
        pytest.skip("needs --full-protocol")
    return True


@pytest.fixture
def case1():
    """Benchmark case 1 at 0 dB geometric SNR."""
    return SystemParams(eps1=0.05, eps2=0.10, p1=2.0, p2=1.0, n0=math.sqrt(2.0))


@pytest.fixture
def curved_region_params():
    """The curved-region example configuration."""
    return SystemParams(eps1=0.15, eps2=0.17, p1=1.0, p2=1.5, n0=1.0)


def random_params(rng: np.random.Generator, pcf_max: float | None = None) -> SystemParams:
    """Random valid instance; if pcf_max is given, n0 is scaled to hit a pcf
    drawn uniformly from (0.05, pcf_max)."""
    eps1 = rng.uniform(0.001, 0.4)
    eps2 = rng.uniform(eps1 + 0.005, 0.499)
    p1, p2 = rng.uniform(0.25, 4.0, 2)
    if pcf_max is None:
        n0 = rng.uniform(0.05, 4.0)
    else:
        target = rng.uniform(0.05, pcf_max)
        log_rho = math.log((1.0 - eps1 - eps2) / (eps2 - eps1))
        n0 = target * 4.0 * math.sqrt(p1 * p2) / log_rho
    return SystemParams(eps1, eps2, p1, p2, n0)
