from importlib.resources import files

import pytest

from boobytrap.netmodel import load_network


def bundled(name: str):
    return load_network(files("boobytrap") / "data" / f"{name}.net")


@pytest.fixture
def prism():
    return bundled("prism")


@pytest.fixture
def loop_tail():
    return bundled("loop_tail")


@pytest.fixture
def looped_triangle():
    return bundled("looped_triangle")
