from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from goldentiles.exactnum import GoldenNumber, TowerElement

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "thorough", max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("default", deadline=None)
settings.load_profile("default")

THOROUGH = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])

small_fractions = st.builds(
    Fraction, st.integers(min_value=-50, max_value=50), st.integers(min_value=1, max_value=12)
)
goldens = st.builds(GoldenNumber, small_fractions, small_fractions)
nonzero_goldens = goldens.filter(bool)
towers = st.lists(small_fractions, min_size=8, max_size=8).map(TowerElement)
nonzero_towers = towers.filter(bool)


@pytest.fixture(scope="session")
def catalog():
    from goldentiles.polyhedra import golden_catalog

    return golden_catalog()


@pytest.fixture
def data_dir():
    return DATA
