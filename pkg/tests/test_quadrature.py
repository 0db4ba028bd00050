import math

import numpy as np

from pytest                   import approx
from pytest                   import mark
from pytest                   import raises
from hypothesis               import given
from hypothesis.strategies    import floats
from hypothesis.strategies    import integers

from kahlerbound.quadrature   import adaptive_simpson
from kahlerbound.quadrature   import gauss_legendre
from kahlerbound.quadrature   import gauss_legendre_batch
from kahlerbound.quadrature   import legendre_rule
from kahlerbound.types        import QuadratureEstimate


@mark.parametrize("f a b expected".split(),
                  ((np.sin,                   0.0, math.pi,     2.0),
                   (lambda x: x ** 3,         -1.0, 2.0,        15 / 4),
                   (lambda x: np.exp(-x * x), 0.0, 5.0,         0.5 * math.sqrt(math.pi) * math.erf(5.0)),
                   (lambda x: np.sin(x) ** 9, 0.0, 0.5 * math.pi, 128 / 315)))
def test_adaptive_simpson(f, a, b, expected):
    est = adaptive_simpson(f, a, b)
    assert est.value == approx(expected, rel=1e-11)
    assert est.error_estimate >= 0
    assert abs(est.value - expected) <= max(100 * est.error_estimate, 1e-13)


def test_adaptive_simpson_reversed_interval():
    assert adaptive_simpson(np.cos, math.pi / 2, 0.0).value == approx(-1.0, rel=1e-12)


def test_adaptive_simpson_empty_interval():
    assert adaptive_simpson(np.cos, 1.0, 1.0) == QuadratureEstimate(0.0, 0.0)


def test_adaptive_simpson_constant_integrand():
    assert adaptive_simpson(lambda x: 3.0, 0.0, 2.0).value == approx(6.0, rel=1e-14)


def test_adaptive_simpson_subdivision_cap(caplog):
    est = adaptive_simpson(lambda x: np.sqrt(np.abs(x - 0.3)), 0.0, 1.0,
                           epsabs=1e-15, epsrel=1e-15, initial_panels=4, max_intervals=64)
    assert est.error_estimate > 0
    assert "subdivision cap" in caplog.text


@given(integers(min_value=0, max_value=20))
def test_gauss_legendre_exact_for_polynomials(n):
    assert gauss_legendre(lambda x: x ** n, 0.0, 1.0, order=16) == approx(1 / (n + 1), rel=1e-13)


def test_legendre_rule_is_read_only_and_cached():
    x, w = legendre_rule(32)
    assert legendre_rule(32)[0] is x
    assert w.sum() == approx(2.0, rel=1e-14)
    with raises(ValueError):
        x[0] = 0.0


@given(floats(min_value=0.1, max_value=3.0))
def test_batch_matches_single(b):
    batch = gauss_legendre_batch(np.cos, np.array([0.0, 0.0]), np.array([b, 2 * b]), order=64)
    assert batch[0] == approx(math.sin(b), rel=1e-12, abs=1e-14)
    assert batch[1] == approx(gauss_legendre(np.cos, 0.0, 2 * b, order=64), rel=1e-12, abs=1e-14)


def test_quadrature_estimate_arithmetic():
    total = QuadratureEstimate(1.0, 1e-3) + QuadratureEstimate(2.0, 2e-3)
    assert total.value == 3.0
    assert total.error_estimate == approx(3e-3)
    assert total.scaled(-2.0) == QuadratureEstimate(-6.0, total.error_estimate * 2)
    assert float(total) == 3.0
    with raises(ValueError):
        QuadratureEstimate(1.0, -1.0)
