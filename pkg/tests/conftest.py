import warnings

import pytest

from helpers import FareyGraph


@pytest.fixture(scope="session")
def farey_graph():
    # slopes of interest lie in [-3, 3]; geodesics between them stay within
    # one unit of that range and never exceed the larger denominator
    return FareyGraph(qmax=60, bound=5)


@pytest.fixture(scope="session")
def snappy():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return pytest.importorskip("snappy")
