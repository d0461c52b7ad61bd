import numpy as np
import pytest

from schubertcells import FIELDS


@pytest.fixture(params=FIELDS, ids=[f.letter for f in FIELDS])
def field(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
