import warnings

import pytest

from shellgap.config import config_from_values, default_config, dense_config


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture(scope="session")
def cfg_dense():
    return dense_config()


def make_config(**overrides):
    """Default config with selected flat keys replaced."""
    values = default_config().to_dict()
    values.update(overrides)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return config_from_values(values)


@pytest.fixture(autouse=True)
def _quiet_regime_warnings():
    # the soft-shell / homogenization regime warnings are informational and
    # fire constantly in scans; keep test output readable
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message=".*regime.*")
        warnings.filterwarnings("ignore", message=".*thin-shell.*")
        yield
