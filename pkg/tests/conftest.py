import os
import sys

import hypothesis
import numpy as np
import pytest

current_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(os.path.dirname(current_dir), 'src')
if src_dir not in sys.path:
    sys.path.insert(0, src_dir)

np.seterr(all="warn")

hypothesis.settings.register_profile("dev", max_examples=50, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale runs (10^5-10^6 samples or grid points)")


@pytest.fixture(scope="session")
def thullen_half_analyzer():
    from domains_catalog import thullen_domain
    from pinching import PinchingAnalyzer

    return PinchingAnalyzer(thullen_domain(0.5), samples=5000, seed=42)
