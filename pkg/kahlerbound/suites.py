# suites.py
"""
Named verification suites and their registry.

A suite takes a SuiteContext and returns SuiteRecords. Registration order is
dispatch order for "all"; a suite that raises becomes one failed record.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List

from . import coeff_algebra, diameter, model_check, rayleigh
from .log import logger
from .types import FAIL, INFO, PASS, CheckReport, GeometryParams, ManifoldSpec, ProductFunction, ZonalFunction

CHAIN_INFORMATIONAL_M = (2, 3)
RAYLEIGH_M_CAP = 50
BACKEND_ANGLES = (math.pi / 8, math.pi / 4, math.pi / 2, 3 * math.pi / 4, 0.98 * math.pi)
BACKEND_RTOL = 1e-10
WALLIS_RTOL = 1e-12
STIRLING_SLACK = 1e-12
PARTITION_D = (0.5, 1.5, 2.5, math.pi)


@dataclass
class SuiteContext:
    seed: int = 0
    m_max: int = 50
    tol: float = 1e-10
    quad_order: int = 64
    workers: int = 1
    model_count: int = 200


@dataclass
class SuiteRecord:
    label: str
    status: str
    data: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_check(cls, label: str, report: CheckReport) -> "SuiteRecord":
        return cls(label, report.status, report.to_dict())

    def to_dict(self) -> Dict[str, Any]:
        d = {"status": self.status}
        d.update(self.data)
        return d


Suite = Callable[[SuiteContext], List[SuiteRecord]]


class SuiteRegistry:
    def __init__(self):
        self._suites: Dict[str, Suite] = {}

    def add_suite(self, name: str, fn: Suite) -> Suite:
        self._suites[name] = fn
        logger.debug("Added suite %s (%s)", name, getattr(fn, "__name__", repr(fn)))
        return fn

    def on(self, name: str):
        """Decorator: @SUITES.on('identities')"""
        def deco(fn: Suite):
            return self.add_suite(name, fn)
        return deco

    def names(self) -> List[str]:
        return list(self._suites)

    def _dispatch_one(self, name: str, ctx: SuiteContext) -> List[SuiteRecord]:
        try:
            return list(self._suites[name](ctx))
        except Exception as e:
            logger.exception("Suite %s failed", name)
            return [SuiteRecord(name, FAIL, {"error": f"{type(e).__name__}: {e}"})]

    def dispatch(self, name: str, ctx: SuiteContext) -> List[SuiteRecord]:
        if name == "all":
            out: List[SuiteRecord] = []
            for n in self._suites:
                out.extend(self._dispatch_one(n, ctx))
            return out
        if name not in self._suites:
            raise KeyError(name)
        return self._dispatch_one(name, ctx)


SUITES = SuiteRegistry()


def _count_status(failures: int) -> str:
    return PASS if failures == 0 else FAIL


@SUITES.on("identities")
def identities_suite(ctx: SuiteContext) -> List[SuiteRecord]:
    records = [SuiteRecord.from_check(rep.identity, rep) for rep in coeff_algebra.verify_all()]
    records.append(SuiteRecord.from_check("E_nonneg", coeff_algebra.check_e_nonneg()))
    return records


@SUITES.on("chain-24m")
def chain_24m_suite(ctx: SuiteContext) -> List[SuiteRecord]:
    m_max = max(ctx.m_max, 2)
    records = [SuiteRecord.from_check("chain_24m", diameter.chain_24m_check(m_max))]
    worse = []
    for m in range(2, m_max + 1):
        g = GeometryParams.einstein_normalized(m)
        fam = diameter.family_bound(g, diameter.default_k(m)).value
        closed = diameter.closed_form_24m(g).value
        if fam > closed:
            worse.append(m)
    records.append(SuiteRecord("family_below_closed_24m", _count_status(len(worse)),
                               {"m_max": m_max, "failing_m": worse}))
    return records


@SUITES.on("chain-200")
def chain_200_suite(ctx: SuiteContext) -> List[SuiteRecord]:
    records = []
    for m in range(2, max(ctx.m_max, 2) + 1):
        eps = 0.5 * rayleigh.chain_threshold(m)
        chain = rayleigh.replay_chain(m, eps)
        if m in CHAIN_INFORMATIONAL_M:
            status = INFO
        else:
            status = PASS if chain.steps_hold and chain.contradiction else FAIL
        data = chain.to_dict()
        data["closed_form_200"] = rayleigh.closed_form_200(m).value
        records.append(SuiteRecord(f"chain_200_m{m}", status, data))
    return records


@SUITES.on("model")
def model_suite(ctx: SuiteContext) -> List[SuiteRecord]:
    spec = ManifoldSpec(1.0, ctx.quad_order)
    records = [
        SuiteRecord.from_check("model_beckner", model_check.random_suite(
            spec, "beckner", ctx.seed, ctx.model_count, workers=ctx.workers)),
        SuiteRecord.from_check("model_sobolev", model_check.random_suite(
            spec, "sobolev", ctx.seed, ctx.model_count, workers=ctx.workers)),
    ]
    cos1 = ProductFunction(ZonalFunction.polynomial(0.0, 1.0))
    cos12 = ProductFunction(ZonalFunction.polynomial(0.0, 1.0), ZonalFunction.polynomial(0.0, 1.0))
    eq = model_check.check_poincare(spec, cos1)
    strict = model_check.check_poincare(spec, cos12)
    records.append(SuiteRecord("poincare_equality", _count_status(int(abs(eq) > 1e-9)), {"margin": eq}))
    records.append(SuiteRecord("poincare_strict", _count_status(int(not strict > 1e-4)), {"margin": strict}))
    records.append(SuiteRecord.from_check("lambda1", model_check.check_lambda1(ManifoldSpec(3.0, ctx.quad_order))))
    ls = model_check.check_log_sobolev(spec, model_check.random_function(ctx.seed, "beckner", 0))
    records.append(SuiteRecord("log_sobolev", _count_status(int(ls < -model_check.MARGIN_TOL)), {"margin": ls}))
    return records


@SUITES.on("rayleigh")
def rayleigh_suite(ctx: SuiteContext) -> List[SuiteRecord]:
    records = []

    worst, bad = 0.0, 0
    for theta in BACKEND_ANGLES:
        for n in range(0, 202):
            rec = rayleigh.sin_power_integral(n, theta, "recurrence").value
            quad = rayleigh.sin_power_integral(n, theta, "quadrature").value
            rel = abs(rec - quad) / abs(quad)
            worst = max(worst, rel)
            bad += rel > BACKEND_RTOL
    records.append(SuiteRecord("backend_agreement", _count_status(bad),
                               {"failures": bad, "max_rel_error": worst}))

    bad = 0
    for m in range(1, 81):
        w = float(rayleigh.wallis_factor(m))
        bad += abs(w - rayleigh.sin_power_integral(2 * m + 1, math.pi / 2).value) > WALLIS_RTOL * w
    records.append(SuiteRecord("wallis", _count_status(bad), {"failures": bad, "m_max": 80}))

    bad = 0
    for n in range(1, 161):
        lo, mid, hi = rayleigh.stirling_bounds(n)
        bad += not (lo <= mid + STIRLING_SLACK and mid <= hi + STIRLING_SLACK)
    records.append(SuiteRecord("stirling", _count_status(bad), {"failures": bad, "n_max": 160}))

    m_hi = min(max(ctx.m_max, 2), RAYLEIGH_M_CAP)
    # N + D = I_{2m-1}(d/2) within twice the combined error estimates
    bad, worst = 0, 0.0
    for m in range(2, m_hi + 1):
        for d in PARTITION_D:
            num, den = rayleigh.rayleigh_integrals(m, d)
            total = num + den
            ref = rayleigh.sin_power_integral(2 * m - 1, 0.5 * d)
            allowed = 2 * (total.error_estimate + ref.error_estimate)
            gap = abs(total.value - ref.value)
            worst = max(worst, gap / allowed if allowed else 0.0)
            bad += gap > allowed
    records.append(SuiteRecord("partition", _count_status(bad), {"failures": bad, "worst_fraction": worst}))

    for m in range(2, m_hi + 1):
        at_half = rayleigh.prop_p_margin(m, 0.5)
        at_pi = rayleigh.prop_p_margin(m, math.pi)
        sol = rayleigh.solve_max_diameter(m, ctx.tol)
        ok = at_half > 0 > at_pi and sol.value < math.pi \
            and abs(sol.extra["margin"]) <= rayleigh.MARGIN_TOL
        records.append(SuiteRecord(f"rayleigh_m{m}", _count_status(int(not ok)), {
            "margin_at_0.5": at_half,
            "margin_at_pi": at_pi,
            "d_star": sol.value,
            "margin_at_d_star": sol.extra["margin"],
            "iterations": sol.extra["iterations"],
            "closed_form_200": rayleigh.closed_form_200(m).value,
        }))
    return records


def overall_status(records: List[SuiteRecord]) -> str:
    if any(r.status == FAIL for r in records):
        return FAIL
    return PASS
