from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


def rationals(max_num: int = 9, max_den: int = 5, nonzero: bool = False):
    """Small rationals, optionally excluding zero."""
    s = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    return s.filter(lambda x: x != 0) if nonzero else s


@pytest.fixture(scope="session")
def d4_result():
    from qhitchin.qtriang import triangularize_symbolic

    return triangularize_symbolic("D4")
