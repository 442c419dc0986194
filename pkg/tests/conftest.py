import hypothesis.strategies as st
import pytest
from hypothesis import settings

from ncroots import RatMatrix

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def matrices(d=2):
    rows = st.lists(st.lists(rationals, min_size=d, max_size=d), min_size=d, max_size=d)
    return rows.map(RatMatrix)


@pytest.fixture
def nilpotent_pair():
    """The standard 2x2 nilpotent pair: both square to zero, difference invertible."""
    return RatMatrix([[0, 1], [0, 0]]), RatMatrix([[0, 0], [1, 0]])
