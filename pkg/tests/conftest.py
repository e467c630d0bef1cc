import os

import numpy as np
import pytest

from acutile.constructions import build_structure

DEFAULT_SEED = 20240917


def seed_from_env() -> int:
    return int(os.environ.get("ACUTILE_TEST_SEED", DEFAULT_SEED))


@pytest.fixture
def rng():
    return np.random.default_rng(seed_from_env())


_MESHES = {}


@pytest.fixture(scope="session")
def structure():
    """Cached periodic Delaunay meshes by structure name."""
    def get(name):
        if name not in _MESHES:
            _MESHES[name] = build_structure(name)
        return _MESHES[name]
    return get
