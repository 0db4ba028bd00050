import math
from fractions import Fraction

import numpy as np

from pytest                 import approx
from pytest                 import mark
from pytest                 import raises
from hypothesis             import given
from hypothesis             import settings
from hypothesis.strategies  import floats
from hypothesis.strategies  import integers
from scipy.optimize         import brentq

from kahlerbound.errors     import DomainError
from kahlerbound.quadrature import INITIAL_PANELS
from kahlerbound.quadrature import adaptive_simpson
from kahlerbound.rayleigh   import MARGIN_TOL
from kahlerbound.rayleigh   import chain_threshold
from kahlerbound.rayleigh   import closed_form_200
from kahlerbound.rayleigh   import harmonic_odd_sum
from kahlerbound.rayleigh   import prop_p_margin
from kahlerbound.rayleigh   import rayleigh_integrals
from kahlerbound.rayleigh   import rayleigh_ratio
from kahlerbound.rayleigh   import replay_chain
from kahlerbound.rayleigh   import scan_margins
from kahlerbound.rayleigh   import sin_power_integral
from kahlerbound.rayleigh   import solve_max_diameter
from kahlerbound.rayleigh   import stirling_bounds
from kahlerbound.rayleigh   import wallis_factor
from kahlerbound.types      import BoundMethod


@mark.parametrize("n theta expected".split(),
                  ((1, math.pi / 2, 1.0),
                   (3, math.pi / 2, 2 / 3),
                   (0, 1.3,         1.3),
                   (2, math.pi,     math.pi / 2),
                   (5, 0.0,         0.0)))
def test_sin_power_integral(n, theta, expected):
    for backend in ("recurrence", "quadrature"):
        assert sin_power_integral(n, theta, backend).value == approx(expected, rel=1e-12, abs=1e-15)


@mark.parametrize("theta", (math.pi / 8, math.pi / 4, math.pi / 2, 3 * math.pi / 4, 0.98 * math.pi))
def test_backends_agree(theta):
    for n in range(0, 202, 5):
        rec = sin_power_integral(n, theta, "recurrence").value
        quad = sin_power_integral(n, theta, "quadrature").value
        assert rec == approx(quad, rel=1e-10)


@settings(deadline=None)
@given(integers(min_value=0, max_value=201), floats(min_value=0.05, max_value=math.pi))
def test_recurrence_matches_quadrature(n, theta):
    rec = sin_power_integral(n, theta, "recurrence")
    quad = sin_power_integral(n, theta, "quadrature")
    assert rec.value == approx(quad.value, rel=1e-9, abs=1e-300)


@mark.parametrize("n", (0, 1, 5, 50, 201))
@mark.parametrize("theta", (math.pi / 4, math.pi / 2, 0.98 * math.pi))
def test_error_estimate_bounds_refined_evaluation(n, theta):
    est = sin_power_integral(n, theta, "quadrature")
    refined = adaptive_simpson(lambda t: np.sin(t) ** n, 0.0, theta, initial_panels=2 * INITIAL_PANELS)
    assert abs(est.value - refined.value) <= est.error_estimate


@mark.parametrize("n theta backend".split(),
                  ((-1, 1.0, "recurrence"),
                   (3, -0.1, "recurrence"),
                   (3, 4.0,  "quadrature"),
                   (3, 1.0,  "series")))
def test_sin_power_integral_domain(n, theta, backend):
    with raises(DomainError):
        sin_power_integral(n, theta, backend)


@mark.parametrize("m expected".split(), ((1, Fraction(2, 3)), (2, Fraction(8, 15))))
def test_wallis_factor(m, expected):
    assert wallis_factor(m) == expected


@mark.parametrize("m", range(1, 81))
def test_wallis_factor_is_sine_power_at_half_pi(m):
    w = float(wallis_factor(m))
    assert sin_power_integral(2 * m + 1, math.pi / 2).value == approx(w, rel=1e-12)


def test_stirling_bounds_n5():
    lo, mid, hi = (math.exp(v) for v in stirling_bounds(5))
    assert lo == approx(118.019, abs=1e-3)
    assert mid == approx(120.0, rel=1e-12)
    assert hi == approx(math.e * (5 / math.e) ** 5 * math.sqrt(5), rel=1e-12)
    assert hi > 127.9


@mark.parametrize("n", range(1, 161))
def test_stirling_bounds_bracket(n):
    lo, mid, hi = stirling_bounds(n)
    assert lo <= mid + 1e-12
    assert mid <= hi + 1e-12


def test_harmonic_odd_sum():
    assert harmonic_odd_sum(2) == Fraction(1, 3) + Fraction(1, 5)
    assert float(harmonic_odd_sum(40)) <= math.log(81)


def test_rayleigh_ratio_m2_at_pi():
    ratio = rayleigh_ratio(2, math.pi)
    assert ratio.value == approx(4.0, abs=1e-10)
    num, den = rayleigh_integrals(2, math.pi)
    assert num.value == approx(8 / 15, rel=1e-12)
    assert den.value == approx(2 / 15, rel=1e-12)


@mark.parametrize("m d".split(), ((2, 0.7), (5, 2.0), (20, 3.0)))
def test_rayleigh_integrals_sum(m, d):
    num, den = rayleigh_integrals(m, d)
    total = sin_power_integral(2 * m - 1, 0.5 * d).value
    assert num.value + den.value == approx(total, rel=1e-11)


def test_rayleigh_ratio_m2_at_half_pi():
    # N = (128 - 71 sqrt2)/420 and D = (38 - 26 sqrt2)/105 in closed form
    num, den = rayleigh_integrals(2, math.pi / 2)
    assert num.value == approx((128 - 71 * math.sqrt(2)) / 420, rel=1e-11)
    assert den.value == approx((38 - 26 * math.sqrt(2)) / 105, rel=1e-11)
    assert rayleigh_ratio(2, math.pi / 2).value == approx((586 + 315 * math.sqrt(2)) / 184, rel=1e-10)


def test_partition_identity_on_random_points():
    rng = np.random.default_rng(20240611)
    ms = rng.integers(2, 51, size=100)
    ds = rng.uniform(0.05, math.pi, size=100)
    for m, d in zip(ms, ds):
        num, den = rayleigh_integrals(int(m), float(d))
        total = num + den
        ref = sin_power_integral(2 * int(m) - 1, 0.5 * float(d))
        assert abs(total.value - ref.value) <= 2 * (total.error_estimate + ref.error_estimate)


@mark.parametrize("m d".split(), ((1, 1.0), (2, 0.0), (2, 3.5)))
def test_rayleigh_ratio_domain(m, d):
    with raises(DomainError):
        rayleigh_ratio(m, d)


def test_prop_p_margin_at_pi_is_2_minus_2m():
    for m in (2, 3, 7):
        assert prop_p_margin(m, math.pi) == approx(2 - 2 * m, abs=1e-8)


@mark.parametrize("m", range(2, 51))
def test_margin_changes_sign(m):
    assert prop_p_margin(m, 0.5) > 0
    assert prop_p_margin(m, math.pi) < 0


def test_scan_margins_agree_with_adaptive():
    d = np.array([0.5, 1.5, 2.5, math.pi])
    fast = scan_margins(5, d)
    slow = [prop_p_margin(5, x) for x in d]
    np.testing.assert_allclose(fast, slow, rtol=1e-9, atol=1e-9)


@mark.parametrize("m", (2, 3, 4, 10, 25, 50))
def test_solve_max_diameter(m):
    bound = solve_max_diameter(m, tol=1e-12)
    assert bound.method is BoundMethod.RayleighSolve
    assert 0 < bound.value < math.pi
    assert abs(bound.extra["margin"]) <= 1e-8
    assert bound.params.d_star == bound.value
    assert bound.geometry.rho == 2 * m - 1


def test_solve_max_diameter_iterations():
    assert solve_max_diameter(10, tol=1e-10).extra["iterations"] <= 60


@mark.parametrize("tol", (0.0, 1e-6))
def test_solve_max_diameter_tolerance_range(tol):
    with raises(DomainError):
        solve_max_diameter(2, tol)


def test_solve_max_diameter_is_reproducible():
    assert solve_max_diameter(3).value == solve_max_diameter(3).value


@mark.parametrize("m", range(2, 51))
def test_solve_max_diameter_default_tol_meets_margin(m):
    bound = solve_max_diameter(m)
    assert abs(bound.extra["margin"]) <= MARGIN_TOL
    assert abs(prop_p_margin(m, bound.value)) <= 1e-8
    assert bound.value < math.pi


def test_solve_max_diameter_m2_matches_independent_root():
    bound = solve_max_diameter(2)
    lo, hi = bound.extra["bracket"]
    root = brentq(lambda d: prop_p_margin(2, d), lo, hi, xtol=1e-14, rtol=1e-15)
    assert bound.value == approx(root, abs=1e-9)
    assert 0.5 * math.pi < bound.value < math.pi


@mark.parametrize("m expected".split(),
                  ((2, math.pi * (1 - 1 / (200 * math.sqrt(2) * math.log(2)))),
                   (4, math.pi * (1 - 1 / (400 * math.log(4))))))
def test_closed_form_200(m, expected):
    bound = closed_form_200(m)
    assert bound.value == approx(expected, rel=1e-15)
    assert bound.method is BoundMethod.ClosedForm200


def test_closed_form_200_m2_factor():
    assert closed_form_200(2).value / math.pi == approx(0.994900, abs=1e-6)


def test_closed_form_200_needs_m_at_least_2():
    with raises(DomainError):
        closed_form_200(1)


def test_replay_chain_m4_contradicts():
    chain = replay_chain(4, 0.001)
    assert chain.in_hypothesis
    assert chain.steps_hold
    assert chain.contradiction
    assert chain.extra["lhs"] == 14.0
    assert chain.extra["rhs"] == approx(13.5 * 1.001 ** 2)


def test_replay_chain_m2_does_not_contradict():
    chain = replay_chain(2, 0.003)
    assert chain.in_hypothesis
    assert chain.steps_hold
    assert not chain.contradiction
    assert chain.extra["lhs"] <= chain.extra["rhs"]


@mark.parametrize("m", range(4, 51))
def test_replay_chain_at_half_threshold(m):
    chain = replay_chain(m, 0.5 * chain_threshold(m))
    failing = [s.name for s in chain.steps if not s.holds]
    assert failing == []
    assert chain.contradiction


def test_replay_chain_out_of_hypothesis_is_marked():
    chain = replay_chain(10, 0.5)
    assert not chain.in_hypothesis
    assert chain.d == approx(math.pi / 1.5)


def test_replay_chain_report_layout():
    d = replay_chain(4, 0.001).to_dict()
    assert list(d)[:7] == ["m", "epsilon", "d", "in_hypothesis", "steps_hold", "contradiction", "steps"]
    assert d["steps"][0]["step"] == "trig_bounds"


@mark.parametrize("epsilon", (0.0, -0.1))
def test_replay_chain_domain(epsilon):
    with raises(DomainError):
        replay_chain(4, epsilon)
