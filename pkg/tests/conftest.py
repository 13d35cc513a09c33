import numpy as np
import pytest

from ardea.ar import AssuranceRegion, RatioBounds
from ardea.technology import Dataset, Technology

# Reference datasets used throughout the suite: five two-input/two-output
# units, and the extension with three more units, one of which carries
# zeros.  All golden values asserted against them are regression values
# from the published worked example.

FIVE_INPUT_ROWS = [[4, 3], [6, 20], [8, 1], [8, 1], [2, 4]]
FIVE_OUTPUT_ROWS = [[2, 3], [1, 1], [6, 2], [6, 1], [1, 4]]
FIVE_NAMES = ("A", "B", "C", "D", "E")

EIGHT_INPUT_ROWS = FIVE_INPUT_ROWS + [[3, 20], [0, 10], [3, 10]]
EIGHT_OUTPUT_ROWS = FIVE_OUTPUT_ROWS + [[1, 1], [1, 0], [1, 1]]
EIGHT_NAMES = FIVE_NAMES + ("F", "G", "H")

BOUNDS = RatioBounds(inputs=((1.0, 2.0),), outputs=((1.0, 2.0),))


@pytest.fixture(scope="session")
def region():
    return AssuranceRegion.from_ratio_bounds(BOUNDS, m=2, s=2)


@pytest.fixture(scope="session")
def five_dataset():
    return Dataset.from_rows(FIVE_INPUT_ROWS, FIVE_OUTPUT_ROWS, FIVE_NAMES)


@pytest.fixture(scope="session")
def eight_dataset():
    return Dataset.from_rows(EIGHT_INPUT_ROWS, EIGHT_OUTPUT_ROWS, EIGHT_NAMES)


@pytest.fixture(scope="session")
def five_tech(five_dataset, region):
    return Technology(five_dataset, region)


@pytest.fixture(scope="session")
def eight_tech(eight_dataset, region):
    return Technology(eight_dataset, region)


def unit(tech, name):
    j = tech.dataset.names.index(name)
    return tech.dataset.unit(j)
