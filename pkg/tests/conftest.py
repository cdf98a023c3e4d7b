from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from knotfloer.homology import GradedUComplex, forget_alexander, safe_truncation_level, truncated_f2_homology
from knotfloer.invariants import a_subcomplex

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def oracle_d(g: GradedUComplex) -> Fraction:
    """Tower top of the unreduced complex truncated at the safe level."""
    return truncated_f2_homology(g, safe_truncation_level(g)).tower_top()


def oracle_v(c, s) -> Fraction:
    return (oracle_d(forget_alexander(c)) - oracle_d(a_subcomplex(c, s))) / 2


@pytest.fixture
def rng():
    return random.Random(12345)
