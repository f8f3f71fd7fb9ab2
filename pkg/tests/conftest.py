import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def shared_cache():
    """One evaluation cache for the whole run; exhaustive suites share the
    per-graph centrality vectors this way."""
    from apsn.game import EvalCache

    return EvalCache()


@pytest.fixture()
def rng():
    return random.Random(20240817)
