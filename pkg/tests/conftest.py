import pytest

from zetameans.numerics import NumericPolicy


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: acceptance grids; deselected by default, run with -m slow"
    )


@pytest.fixture
def policy():
    return NumericPolicy()


@pytest.fixture
def fast_policy():
    return NumericPolicy(precision_bits=53, abs_tol=1e-10, rel_tol=1e-10)
