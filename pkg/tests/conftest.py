import pytest

import hellcorr as hc


@pytest.fixture(scope="session")
def nt500():
    # shared across the critical-value, scenario, and trend tests
    return hc.null_table(500, 2000, seed=101)


@pytest.fixture(scope="session")
def nt5000():
    return hc.null_table(5000, 500, seed=102)
