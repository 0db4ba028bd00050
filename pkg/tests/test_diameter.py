import math
from fractions import Fraction

from pytest                 import approx
from pytest                 import mark
from pytest                 import raises
from hypothesis             import given
from hypothesis.strategies  import floats
from hypothesis.strategies  import integers

from kahlerbound.constants  import boundary_exponent
from kahlerbound.constants  import kahler_sobolev_constant
from kahlerbound.constants  import proposition_c_constant
from kahlerbound.diameter   import CHAIN_24M_STEPS
from kahlerbound.diameter   import admissible_k_interval
from kahlerbound.diameter   import bakry_ledoux_bound
from kahlerbound.diameter   import bonnet_myers_bound
from kahlerbound.diameter   import chain_24m_check
from kahlerbound.diameter   import chain_24m_steps
from kahlerbound.diameter   import closed_form_24m
from kahlerbound.diameter   import default_k
from kahlerbound.diameter   import family_bound
from kahlerbound.diameter   import family_radicand_exact
from kahlerbound.diameter   import optimize_family
from kahlerbound.diameter   import psi_exact
from kahlerbound.diameter   import rescale
from kahlerbound.errors     import AdmissibilityError
from kahlerbound.errors     import DomainError
from kahlerbound.types      import BoundMethod
from kahlerbound.types      import DiameterBound
from kahlerbound.types      import GeometryParams


@mark.parametrize("m rho expected".split(),
                  ((2, 3, math.pi),
                   (5, 9, math.pi),
                   (2, 1, math.pi * math.sqrt(3))))
def test_bonnet_myers_bound(m, rho, expected):
    assert bonnet_myers_bound(GeometryParams(m, rho)) == approx(expected, rel=1e-15)


def test_bakry_ledoux_bound():
    assert bakry_ledoux_bound(4, 1.5) == approx(math.pi * math.sqrt(3), rel=1e-15)
    A = kahler_sobolev_constant(GeometryParams(2, 1), 3)
    assert bakry_ledoux_bound(3, A) == approx(math.pi * math.sqrt(6 * A), rel=1e-15)


@mark.parametrize("p A".split(), ((2, 1.0), (3, 0.0)))
def test_bakry_ledoux_bound_domain(p, A):
    with raises(DomainError):
        bakry_ledoux_bound(p, A)


def test_family_bound_at_three_quarters():
    bound = family_bound(GeometryParams(2, 3), 0.75)
    assert bound.method is BoundMethod.FamilyAtK
    assert bound.value == approx(math.pi * math.sqrt(2123 / 2280), rel=1e-14)
    assert bound.params.p == approx(193 / 49, rel=1e-15)


def test_family_radicand_exact():
    assert family_radicand_exact(2, Fraction(3, 4)) == (Fraction(193, 49), Fraction(2123, 760))


@mark.parametrize("m", range(2, 51))
def test_family_at_k1_is_bonnet_myers(m):
    for rho in (1.0, 2 * m - 1):
        g = GeometryParams(m, rho)
        assert family_bound(g, 1.0).value == approx(bonnet_myers_bound(g), rel=1e-14)


@mark.parametrize("k", (0.05, 0.0, -1.0, 20.0))
def test_family_bound_inadmissible(k):
    with raises(AdmissibilityError):
        family_bound(GeometryParams(2, 3), k)


@given(integers(min_value=2, max_value=200))
def test_admissible_interval_contains_one(m):
    lo, hi = admissible_k_interval(m)
    assert 0 < lo < default_k(m) < 1 < hi


@mark.parametrize("m rho expected".split(),
                  ((2, 3, math.pi * (1 - 1 / 48)),
                   (10, 19, math.pi * (1 - 1 / 240)),
                   (2, 1, math.pi * math.sqrt(3) * 47 / 48)))
def test_closed_form_24m(m, rho, expected):
    assert closed_form_24m(GeometryParams(m, rho)).value == approx(expected, rel=1e-15)


def test_closed_form_24m_spot_value():
    assert closed_form_24m(GeometryParams(2, 3)).value == approx(3.076142, abs=1e-6)


@mark.parametrize("m", range(2, 200))
def test_family_default_k_below_closed_form(m):
    g = GeometryParams.einstein_normalized(m)
    assert family_bound(g, default_k(m)).value <= closed_form_24m(g).value


def test_optimize_family_m2():
    g = GeometryParams(2, 3)
    best = optimize_family(g)
    assert best.method is BoundMethod.FamilyOptimized
    assert best.value <= family_bound(g, 0.75).value + 1e-12
    lo, hi = admissible_k_interval(2)
    assert lo < best.params.k < hi


@given(integers(min_value=2, max_value=60), floats(min_value=0.25, max_value=20.0))
def test_optimize_family_never_worse_than_bonnet_myers(m, rho):
    g = GeometryParams(m, rho)
    best = optimize_family(g)
    assert best.value <= bonnet_myers_bound(g) * (1 + 1e-14)
    assert best.value <= family_bound(g, default_k(m)).value * (1 + 1e-14)


def test_optimize_family_strictly_below_bonnet_myers():
    for m in range(2, 1001):
        g = GeometryParams.einstein_normalized(m)
        at_default = family_bound(g, default_k(m)).value
        assert optimize_family(g).value <= at_default
        assert at_default < bonnet_myers_bound(g)


@mark.parametrize("m", (2, 3, 7, 30))
@mark.parametrize("rho", (1.0, 3.0))
def test_family_bound_is_bakry_ledoux_of_proposition_c(m, rho):
    g = GeometryParams(m, rho)
    lo, hi = admissible_k_interval(m)
    for j in range(1, 20):
        k = lo + (hi - lo) * j / 20
        p = boundary_exponent(m, k)
        composed = bakry_ledoux_bound(p, proposition_c_constant(g, p, k))
        assert family_bound(g, k).value == approx(composed, rel=1e-12)


@mark.parametrize("tol", (0.0, 1e-3))
def test_optimize_family_tolerance_range(tol):
    with raises(DomainError):
        optimize_family(GeometryParams(2, 3), tol)


def test_chain_24m_steps_at_m2():
    k = Fraction(3, 4)
    assert psi_exact(2, k) == Fraction(157, 64)
    p, _ = family_radicand_exact(2, k)
    assert p - 2 == Fraction(95, 49)
    steps = chain_24m_steps(2)
    assert tuple(steps) == CHAIN_24M_STEPS
    assert all(steps.values())


def test_chain_24m_check_sweep():
    report = chain_24m_check(10 ** 4)
    assert report.passed
    assert report.extra["first_failure"] is None
    assert sum(report.extra["failures"].values()) == 0


def test_chain_24m_check_domain():
    with raises(DomainError):
        chain_24m_check(1)


def test_rescale():
    assert rescale(math.pi, 3, 12) == approx(math.pi / 2, rel=1e-15)


def test_diameter_bound_must_be_positive():
    with raises(DomainError):
        DiameterBound(BoundMethod.BonnetMyers, 0.0, GeometryParams(2, 1))


def test_diameter_bound_to_dict_order():
    d = family_bound(GeometryParams(2, 3), 0.75).to_dict()
    assert list(d)[:4] == ["method", "value", "m", "rho"]
    assert d["method"] == "family"
    assert d["k"] == 0.75
