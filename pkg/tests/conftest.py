"""
Shared fixtures for the l2alex test suites.
"""

import logging
import os
import random
import sys

import pytest

# Add the src directory to the Python path
sys.path.insert(0, os.path.join(os.path.abspath(os.path.dirname(os.path.dirname(__file__))), "src"))

from l2alex.models.inputs import PDInput
from l2alex.services.laurent import LaurentPoly
from l2alex.utils.logging_config import setup_logging

setup_logging()
logger = logging.getLogger(__name__)

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture
def fixture_path():
    """Absolute path of a file under tests/fixtures."""
    def _path(name):
        return os.path.join(FIXTURES, name)
    return _path


@pytest.fixture
def trefoil_pd():
    return PDInput(pd=[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])


@pytest.fixture
def figure_eight_pd():
    return PDInput(pd=[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])


@pytest.fixture
def unknot_pd():
    return PDInput(pd=[])


@pytest.fixture
def five_two_delta():
    """Alexander polynomial 2z^2 - 3z + 2 of a non-fibered twist knot."""
    return LaurentPoly.from_coeffs([2, -3, 2])


@pytest.fixture
def rng():
    return random.Random(20240611)
