from __future__ import annotations

from importlib import resources

import pytest

from singer_lattice.difference_sets import DifferenceSet
from singer_lattice.weyl import parse_gluing

EXAMPLES = ["a2tilde_1", "a2tilde_2", "hyperbolic_square", "hyperbolic_mixed", "wild_exx1", "wild_exx2"]


def data_path(name: str):
    return resources.files("singer_lattice") / "data" / f"{name}.gluing"


def load_gluing(name: str):
    return parse_gluing(data_path(name).read_text())


@pytest.fixture
def fano() -> DifferenceSet:
    return DifferenceSet.of([0, 1, 3], 7)


@pytest.fixture(params=EXAMPLES)
def example_name(request) -> str:
    return request.param
