import math
import warnings

import numpy as np
import pytest

from hspec import NonConvergenceWarning, QuadratureSpec, integrate
from hspec.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES


def test_rule_weights():
    assert math.fsum(KRONROD_WEIGHTS) == pytest.approx(2.0, abs=1e-15)
    assert math.fsum(GAUSS_WEIGHTS) == pytest.approx(2.0, abs=1e-15)
    assert np.array_equal(NODES, -NODES[::-1])


@pytest.mark.parametrize("deg", [0, 5, 13, 22])
def test_kronrod_polynomial_exactness(deg):
    # Kronrod exact through degree 22, its Gauss partner through 13
    r = integrate(lambda x: x**deg, [0.0, 1.0])
    assert r.value == pytest.approx(1 / (deg + 1), rel=1e-14)
    assert r.converged
    if deg <= 13:
        assert r.subdivisions == 0


def test_smooth_integral():
    r = integrate(np.exp, [-1.0, 0.0, 2.0], QuadratureSpec(1e-13, 1e-13))
    assert abs(r.value - (math.e**2 - math.exp(-1))) <= r.err_estimate
    assert r.err_estimate < 1e-12


def test_error_estimate_honest_for_kink():
    exact = 2.0 / 3.0 * (0.7**1.5 + 0.3**1.5)
    r = integrate(lambda x: np.sqrt(np.abs(x - 0.3)), [0.0, 1.0], QuadratureSpec(1e-11, 1e-11))
    assert r.converged
    assert abs(r.value - exact) <= r.err_estimate


def test_nonconvergence_is_flagged():
    spec = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=16)
    with pytest.warns(NonConvergenceWarning):
        r = integrate(lambda x: np.sin(1 / (x + 1e-3)), [0.0, 1.0], spec)
    assert not r.converged
    assert r.err_estimate >= 10 * spec.tolerance(r.value)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        integrate(lambda x: np.sin(1 / (x + 1e-3)), [0.0, 1.0], spec, warn=False)


def test_deterministic():
    f = lambda x: 1 / (1e-4 + x**2)  # noqa: E731
    r1 = integrate(f, [-1.0, 1.0])
    r2 = integrate(f, [-1.0, 1.0])
    assert r1.value == r2.value and r1.err_estimate == r2.err_estimate
    assert r1.value == pytest.approx(2 * 100 * math.atan(100), rel=1e-9)


def test_degenerate_interval():
    assert integrate(np.exp, [1.0, 1.0]).value == 0.0


@pytest.mark.parametrize("kw", [dict(abs_tol=0.0), dict(rel_tol=-1.0), dict(max_subdivisions=3)])
def test_spec_validation(kw):
    with pytest.raises(ValueError):
        QuadratureSpec(**kw)


def test_tolerance_rule():
    spec = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-6)
    assert spec.tolerance(1.0) == 1e-6 and spec.tolerance(0.0) == 1e-10
