import numpy as np
import pytest

from liepoisson.core import SpaceInstance

ALL_INSTANCES = [
    SpaceInstance.grass(1, 1),
    SpaceInstance.grass(2, 1),
    SpaceInstance.group(2),
    SpaceInstance.group(3),
]


@pytest.fixture(params=ALL_INSTANCES, ids=str)
def inst(request):
    return request.param


@pytest.fixture(params=[i for i in ALL_INSTANCES if i.kind == "group"], ids=str)
def group_inst(request):
    return request.param


def frob(m):
    return float(np.linalg.norm(m))
