import math

import numpy as np
import pytest

from hspec import CatalogFamily, DecayClass, Family, combine, resolve
from hspec.catalog import eval_f, eval_g, validate_parameters

from conftest import ALL_FAMILIES, fam_id, pair_of


def test_sqrt_g():
    assert eval_g(pair_of(Family.SQRT), 4.0) == -2.0


def test_lorentzian_g_origin():
    assert eval_g(pair_of(Family.LORENTZIAN, 3.0), 0.0) == 0.0


def test_rectangle_g_half():
    assert eval_g(pair_of(Family.RECTANGLE), 0.5) == pytest.approx(math.log(3) / math.pi, rel=1e-15)


@pytest.mark.parametrize("x, expected", [(0.3, 2.0), (1.5, 0.0)])
def test_rectangle_f(x, expected):
    assert eval_f(pair_of(Family.RECTANGLE, 2.0), x) == expected


def test_triangle_apex_and_g_limits():
    p = pair_of(Family.TRIANGLE)
    assert eval_f(p, 0.0) == 1.0
    assert eval_g(p, 0.0) == 0.0
    # g is continuous through the removable points
    for x0 in (-1.0, 1.0):
        assert abs(eval_g(p, x0) - eval_g(p, x0 + 1e-9)) < 1e-6


def test_valley_g():
    assert eval_g(pair_of(Family.VALLEY, 2.0, 1.0), 1.0) == pytest.approx(1.0, rel=1e-15)


def test_gaussian_g_origin():
    assert eval_g(pair_of(Family.GAUSSIAN), 0.0) == 0.0


def test_rectangle_g_edges_are_infinite():
    p = pair_of(Family.RECTANGLE)
    assert eval_g(p, 1.0) == math.inf and eval_g(p, -1.0) == -math.inf


@pytest.mark.parametrize("fam", ALL_FAMILIES, ids=fam_id)
def test_parity(fam):
    p = resolve(fam)
    x = np.linspace(-20, 20, 1000)
    assert np.array_equal(p.f(-x), p.f(x))
    g, gm = p.g(x), p.g(-x)
    fin = np.isfinite(g)
    assert np.all(np.abs(gm[fin] + g[fin]) <= 1e-13 * np.maximum(np.abs(g[fin]), 1e-300))


@pytest.mark.parametrize("fam", ALL_FAMILIES, ids=fam_id)
def test_scale_linearity(fam):
    x = np.linspace(-7.3, 7.1, 997)
    unit, scaled = resolve(fam.with_alpha(1.0)), resolve(fam.with_alpha(3.7))
    g1, g3 = unit.g(x), scaled.g(x)
    assert np.allclose(g3, 3.7 * g1, rtol=1e-14, atol=0)


@pytest.mark.parametrize("fam", ALL_FAMILIES, ids=fam_id)
def test_nonnegative_f(fam):
    assert np.all(resolve(fam).f(np.linspace(-30, 30, 6001)) >= 0)


@pytest.mark.parametrize("family_id", [Family.RECTANGLE, Family.TRIANGLE])
def test_compact_support_is_exact_zero(family_id):
    p = pair_of(family_id)
    x = np.linspace(np.nextafter(1.0, 2.0), 50, 500)
    x = np.concatenate([x, -x])
    assert p.compact and p.support == (-1.0, 1.0)
    assert np.all(p.f(x) == 0.0)


def test_scalar_and_array_evaluation():
    p = pair_of(Family.GAUSSIAN)
    assert isinstance(p.f(0.5), float) and isinstance(p.g(0.5), float)
    assert p.g(np.zeros((3,))).shape == (3,)


@pytest.mark.parametrize("args", [
    (Family.LORENTZIAN, 0.0, None),
    (Family.LORENTZIAN, -1.0, None),
    (Family.GAUSSIAN, math.nan, None),
    (Family.VALLEY, 1.0, None),
    (Family.VALLEY, 1.0, -2.0),
    (Family.RECTANGLE, 1.0, 1.0),
])
def test_validation(args):
    with pytest.raises(ValueError):
        validate_parameters(*args)
    with pytest.raises(ValueError):
        CatalogFamily(*args)


def test_decay_classes():
    assert pair_of(Family.SQRT).decay_class is DecayClass.NON_DECAYING
    assert pair_of(Family.GAUSSIAN).decay_class is DecayClass.EXPONENTIAL
    assert pair_of(Family.RECTANGLE).decay_class is DecayClass.COMPACT
    assert pair_of(Family.LORENTZIAN).decay_class is DecayClass.POLYNOMIAL


def test_combine_metadata_and_values(rng):
    a, b = pair_of(Family.RECTANGLE), pair_of(Family.LORENTZIAN, 0.1)
    s = a + b
    assert s.support is None and s.decay_class is DecayClass.POLYNOMIAL
    assert s.scale == pytest.approx(1.1)
    x = rng.uniform(-5, 5, 100)
    assert np.allclose(s.g(x), a.g(x) + b.g(x), rtol=1e-12, atol=0)
    both = combine(pair_of(Family.RECTANGLE), pair_of(Family.TRIANGLE))
    assert both.support == (-1.0, 1.0)


def test_weighted_combine(rng):
    a, b = pair_of(Family.TRIANGLE), pair_of(Family.GAUSSIAN, 2.0)
    s = combine(a, b, (1.5, -0.25))
    x = rng.uniform(-4, 4, 50)
    assert np.allclose(s.f(x), 1.5 * a.f(x) - 0.25 * b.f(x), rtol=1e-15, atol=0)
    assert np.allclose(s.g(x), 1.5 * a.g(x) - 0.25 * b.g(x), rtol=1e-15, atol=1e-300)
    assert s.kinks == (-1.0, 0.0, 1.0) and s.scale == pytest.approx(2.0)
