"""Shared fixtures and a hypothesis profile tuned for exact arithmetic."""

from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings

from mixedval import Polytope, convex_hull

settings.register_profile(
    "exact",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("exact")


def hull(*points) -> Polytope:
    return convex_hull([tuple(p) for p in points], lattice="Z")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)


@pytest.fixture
def unit_square() -> Polytope:
    return hull((0, 0), (1, 0), (0, 1), (1, 1))


@pytest.fixture
def unit_triangle() -> Polytope:
    return hull((0, 0), (1, 0), (0, 1))


@pytest.fixture
def e1_segment() -> Polytope:
    return hull((0, 0), (1, 0))


@pytest.fixture
def e2_segment() -> Polytope:
    return hull((0, 0), (0, 1))
