import json

import pytest

from src.core.dist_core import cdf_from_atoms, point_mass
from src.core.distortion import identity_pair, make_standard_pair
from src.core.stieltjes import MonotonePL, sample_pl


@pytest.fixture
def spread():
    """{0: .5, 2: .5}, a mean-preserving spread of ``point``."""
    return cdf_from_atoms([(0, 0.5), (2, 0.5)])


@pytest.fixture
def point():
    return point_mass(1.0)


@pytest.fixture
def coin():
    return cdf_from_atoms([(0, 0.5), (1, 0.5)])


@pytest.fixture
def ident():
    return identity_pair(0.0, 2.0)


@pytest.fixture
def squared_pair():
    """u0 = x on [0, 2], v0 = a**2 sampled on quarter knots."""
    v0 = sample_pl(lambda a: a ** 2, [0.0, 0.25, 0.5, 0.75, 1.0])
    return make_standard_pair(MonotonePL.identity(0.0, 2.0), v0)


@pytest.fixture
def write_json(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding='utf-8')
        return str(path)
    return write
