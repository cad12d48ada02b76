import random

import pytest
from hypothesis import HealthCheck, settings

from fano10.scalars import QQ, FieldDescriptor

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

F5 = FieldDescriptor.prime(5)
F7 = FieldDescriptor.prime(7)
F97 = FieldDescriptor.prime(97)
F97_2 = FieldDescriptor.ext2(97)


@pytest.fixture(scope="session")
def W97():
    from fano10.wx_geometry import build_w_model

    return build_w_model(F97)


@pytest.fixture(scope="session")
def WQ():
    from fano10.wx_geometry import build_w_model

    return build_w_model(QQ)


@pytest.fixture(scope="session")
def W5():
    from fano10.wx_geometry import build_w_model

    return build_w_model(F5)


@pytest.fixture(scope="session")
def X97(W97):
    from fano10.wx_geometry import build_X

    return build_X(W97, 0)


@pytest.fixture
def rng():
    return random.Random(20261014)
