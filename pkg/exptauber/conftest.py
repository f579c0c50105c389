from __future__ import absolute_import, division, print_function

import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the long Monte Carlo tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long Monte Carlo test")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
