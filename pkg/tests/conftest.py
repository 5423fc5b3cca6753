import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hspec import CatalogFamily, Family, resolve

# fixed-seed, reproducible property runs
settings.register_profile(
    "repro", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")

DECAYING = [
    CatalogFamily(Family.LORENTZIAN, 1.0),
    CatalogFamily(Family.RATIONAL_PEAK, 2.0),
    CatalogFamily(Family.GAUSSIAN, 1.0),
    CatalogFamily(Family.VALLEY, 2.0, 1.0),
    CatalogFamily(Family.RECTANGLE, 1.0),
    CatalogFamily(Family.TRIANGLE, 1.0),
]
ALL_FAMILIES = [CatalogFamily(Family.SQRT, 1.0)] + DECAYING


def fam_id(fam):
    return fam.family_id.value


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pair_of(family_id, alpha=1.0, b=None):
    if family_id is Family.VALLEY and b is None:
        b = 1.0
    return resolve(CatalogFamily(family_id, alpha, b))
