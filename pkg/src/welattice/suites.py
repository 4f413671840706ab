"""Property suites: empirical certification of the tipping-price ordering,
monotonicity of the price map, the fixed-point/equilibrium equivalence, the
lattice structure of the equilibrium set, and the Hall-versus-brute-force
cross checks.  Shared by the CLI ``selfcheck`` command and the acceptance
tests.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import analysis, oracle
from .fixedpoint import (
    fixed_point_we_comparison,
    iterate_from,
    lattice_check,
)
from .generator import random_suite
from .model import Market, format_price, leq, market_doc
from .pricemap import Region, apply_f, apply_f_coord, classify_region
from .tipping import TippingEngine, drop_coord


@dataclass
class SuiteCase:
    market: Market
    _engine: TippingEngine | None = None

    @property
    def engine(self) -> TippingEngine:
        if self._engine is None:
            self._engine = TippingEngine(self.market)
        return self._engine


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, case: SuiteCase, **detail) -> None:
        self.violations.append({"market": market_doc(case.market), **detail})

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{self.name}: {status} ({self.checks} checks, {len(self.violations)} violations)"


def make_cases(markets) -> list[SuiteCase]:
    return [SuiteCase(m) for m in markets]


def default_suite_cases(trials: int = 200, seed: int = 7, **kwargs) -> list[SuiteCase]:
    return make_cases(random_suite(trials, seed, **kwargs))


def _random_price(rng: random.Random, market: Market) -> tuple:
    return tuple(rng.randint(0, market.h_ticks) for _ in range(market.m))


def _random_pair(rng: random.Random, market: Market):
    p = _random_price(rng, market)
    q = tuple(rng.randint(c, market.h_ticks) for c in p)
    return p, q


def _fmt(case: SuiteCase, p) -> list:
    return format_price(case.market, p)


# ---------------------------------------------------------------------------
# Tipping-price suites
# ---------------------------------------------------------------------------

def fact_suite(cases, rng: random.Random, prices_per_market: int = 50) -> SuiteResult:
    """inf_u dominates sup_o wherever inf_u exists, for every good."""
    res = SuiteResult("fact: inf_u >= sup_o")
    for case in cases:
        market, engine = case.market, case.engine
        for _ in range(prices_per_market):
            p = _random_price(rng, market)
            for a in range(market.m):
                p_minus = drop_coord(p, a)
                lo = engine.sup_o(a, p_minus)
                hi = engine.inf_u(a, p_minus)
                res.checks += 1
                if hi is not None and hi < lo:
                    res.record(
                        case,
                        good=market.goods[a],
                        base_prices=_fmt(case, p_minus),
                        sup_o=lo,
                        inf_u=hi,
                    )
    return res


def lemma1_suite(cases, rng: random.Random, pairs: int = 2000) -> SuiteResult:
    """Monotonicity of the neutral prices in the other-good prices."""
    res = SuiteResult("lemma1: S and I monotone in p_minus")
    for _ in range(pairs):
        case = cases[rng.randrange(len(cases))]
        market, engine = case.market, case.engine
        p, q = _random_pair(rng, market)
        for a in range(market.m):
            pm, qm = drop_coord(p, a), drop_coord(q, a)
            res.checks += 1
            sp, sq = engine.neutral_s(a, pm), engine.neutral_s(a, qm)
            ip, iq = engine.neutral_i(a, pm), engine.neutral_i(a, qm)
            if sp > sq or ip > iq:
                res.record(
                    case,
                    good=market.goods[a],
                    low=_fmt(case, p),
                    high=_fmt(case, q),
                    s_low=sp,
                    s_high=sq,
                    i_low=ip,
                    i_high=iq,
                )
    return res


def sup_o_monotone_suite(cases, rng: random.Random, pairs: int = 500) -> SuiteResult:
    """sup_o monotone in p_minus (used inside the lemma1 argument)."""
    res = SuiteResult("sup_o monotone in p_minus")
    for _ in range(pairs):
        case = cases[rng.randrange(len(cases))]
        market, engine = case.market, case.engine
        p, q = _random_pair(rng, market)
        for a in range(market.m):
            pm, qm = drop_coord(p, a), drop_coord(q, a)
            res.checks += 1
            if engine.sup_o(a, pm) > engine.sup_o(a, qm):
                res.record(case, good=market.goods[a], low=_fmt(case, p), high=_fmt(case, q))
    return res


# ---------------------------------------------------------------------------
# Price-map suites
# ---------------------------------------------------------------------------

def lemma2_suite(cases, rng: random.Random, triples: int = 1000) -> SuiteResult:
    """Per-coordinate monotonicity in the own price."""
    res = SuiteResult("lemma2: f_a monotone in own price")
    for _ in range(triples):
        case = cases[rng.randrange(len(cases))]
        market, engine = case.market, case.engine
        a = rng.randrange(market.m)
        p = _random_price(rng, market)
        lo = rng.randint(0, market.h_ticks)
        hi = rng.randint(lo, market.h_ticks)
        res.checks += 1
        p_lo = p[:a] + (lo,) + p[a + 1:]
        p_hi = p[:a] + (hi,) + p[a + 1:]
        if apply_f_coord(engine, a, p_lo) > apply_f_coord(engine, a, p_hi):
            res.record(case, good=market.goods[a], low=_fmt(case, p_lo), high=_fmt(case, p_hi))
    return res


def prop1_exhaustive(case: SuiteCase) -> SuiteResult:
    """Global monotonicity of the map over every comparable grid pair."""
    res = SuiteResult(f"prop1 exhaustive: {case.market.name or 'market'}")
    market, engine = case.market, case.engine
    points = list(itertools.product(range(market.h_ticks + 1), repeat=market.m))
    images = {p: apply_f(engine, p) for p in points}
    for p, q in itertools.combinations_with_replacement(points, 2):
        res.checks += 1
        if leq(p, q) and not leq(images[p], images[q]):
            res.record(case, low=_fmt(case, p), high=_fmt(case, q))
        if leq(q, p) and not leq(images[q], images[p]):
            res.record(case, low=_fmt(case, q), high=_fmt(case, p))
    return res


def prop1_random(cases, rng: random.Random, pairs: int = 2000) -> SuiteResult:
    res = SuiteResult("prop1: f monotone on random pairs")
    for _ in range(pairs):
        case = cases[rng.randrange(len(cases))]
        p, q = _random_pair(rng, case.market)
        res.checks += 1
        if not leq(apply_f(case.engine, p), apply_f(case.engine, q)):
            res.record(case, low=_fmt(case, p), high=_fmt(case, q))
    return res


_REGION_ORDER = {Region.BELOW_S: 0, Region.NEUTRAL: 1, Region.ABOVE_I: 2}


def figure2_suite(cases, rng: random.Random, bases_per_good: int = 10) -> SuiteResult:
    """Region classification along the own price is either uniformly inverted
    or monotone below->neutral->above, with no other transitions."""
    res = SuiteResult("figure2: region transitions along own price")
    for case in cases:
        market, engine = case.market, case.engine
        for a in range(market.m):
            bases = {
                drop_coord(_random_price(rng, market), a)
                for _ in range(bases_per_good)
            }
            for p_minus in sorted(bases):
                regions = []
                for pa in range(market.h_ticks + 1):
                    p = p_minus[:a] + (pa,) + p_minus[a:]
                    regions.append(classify_region(engine, a, p))
                res.checks += 1
                inverted = [r is Region.INVERTED for r in regions]
                if any(inverted):
                    if not all(inverted):
                        res.record(
                            case,
                            good=market.goods[a],
                            base_prices=_fmt(case, p_minus),
                            regions=[r.value for r in regions],
                        )
                    continue
                ranks = [_REGION_ORDER[r] for r in regions]
                if ranks != sorted(ranks):
                    res.record(
                        case,
                        good=market.goods[a],
                        base_prices=_fmt(case, p_minus),
                        regions=[r.value for r in regions],
                    )
    return res


def neutral_interval_suite(cases, rng: random.Random, bases_per_good: int = 5) -> SuiteResult:
    """The map fixes every own price inside [S, I]."""
    res = SuiteResult("neutral interval: f_a fixes [S, I]")
    for case in cases:
        market, engine = case.market, case.engine
        for a in range(market.m):
            for _ in range(bases_per_good):
                p_minus = drop_coord(_random_price(rng, market), a)
                s = engine.neutral_s(a, p_minus)
                i = engine.neutral_i(a, p_minus)
                for pa in range(s, i + 1):
                    p = p_minus[:a] + (pa,) + p_minus[a:]
                    res.checks += 1
                    if apply_f_coord(engine, a, p) != pa:
                        res.record(
                            case, good=market.goods[a], price=_fmt(case, p), s=s, i=i
                        )
    return res


# ---------------------------------------------------------------------------
# Fixed-point / equilibrium suites
# ---------------------------------------------------------------------------

def prop2_suite(cases) -> SuiteResult:
    """The fixed-point set equals the directly verified equilibrium set."""
    res = SuiteResult("prop2: fixed points == WE prices")
    for case in cases:
        report = fixed_point_we_comparison(case.engine)
        res.checks += 1
        if not report.equivalent:
            res.record(
                case,
                only_fixed=[_fmt(case, p) for p in sorted(report.only_fixed)],
                only_we=[_fmt(case, p) for p in sorted(report.only_we)],
            )
    return res


def lattice_suite(cases) -> SuiteResult:
    """Meet/join closure of the WE set and agreement of its componentwise
    extremes with the Tarski iterates."""
    res = SuiteResult("lattice: meet/join closure and extremes")
    for case in cases:
        cert = lattice_check(case.engine)
        res.checks += cert.pairs_checked + 1
        if not cert.certified:
            res.record(
                case,
                closure_failures=[
                    {
                        "pair": [_fmt(case, p), _fmt(case, q)],
                        "operation": op,
                        "vector": _fmt(case, v),
                    }
                    for p, q, op, v in cert.closure_failures
                ],
                extremes_match=cert.extremes_match,
            )
    return res


def characterization_suite(cases) -> SuiteResult:
    """Constructive WE check agrees with the no-over/no-underdemand
    characterization on every grid point."""
    res = SuiteResult("characterization: check_we == no over/under demand")
    for case in cases:
        market = case.market
        for p in itertools.product(range(market.h_ticks + 1), repeat=market.m):
            res.checks += 1
            direct = analysis.check_we(market, p).is_we
            char = analysis.check_we_by_characterization(market, p)
            if direct != char:
                res.record(case, price=_fmt(case, p), direct=direct, characterization=char)
    return res


def hall_vs_brute_suite(cases, max_goods: int = 4) -> SuiteResult:
    """Matching-based existence verdicts equal brute-force subset scans."""
    res = SuiteResult("hall vs brute force: over/underdemand existence")
    for case in cases:
        market = case.market
        if market.m > max_goods:
            continue
        for p in itertools.product(range(market.h_ticks + 1), repeat=market.m):
            res.checks += 1
            hall_over = analysis.exists_overdemanded(market, p).verdict == "over"
            brute_over = oracle.brute_find_overdemanded(market, p) is not None
            hall_under = analysis.exists_underdemanded(market, p).verdict == "under"
            brute_under = oracle.brute_find_underdemanded(market, p) is not None
            if hall_over != brute_over or hall_under != brute_under:
                res.record(
                    case,
                    price=_fmt(case, p),
                    hall=[hall_over, hall_under],
                    brute=[brute_over, brute_under],
                )
    return res


def iteration_bound_suite(cases) -> SuiteResult:
    """Tarski iteration from bottom and top: monotone traces, fixed finals,
    and step counts within m * (H / tick)."""
    res = SuiteResult("iteration: monotone traces within the step bound")
    for case in cases:
        market, engine = case.market, case.engine
        bound = market.m * market.h_ticks
        for start, direction in (
            ((0,) * market.m, "ascending"),
            ((market.h_ticks,) * market.m, "descending"),
        ):
            res.checks += 1
            trace = iterate_from(engine, start)
            monotone = all(
                (leq(p, q) if direction == "ascending" else leq(q, p))
                for p, q in zip(trace.points, trace.points[1:])
            )
            if trace.steps > bound or not monotone or not trace.converged:
                res.record(
                    case,
                    start=_fmt(case, start),
                    steps=trace.steps,
                    bound=bound,
                    monotone=monotone,
                )
    return res


# ---------------------------------------------------------------------------
# Top-level runner (CLI selfcheck)
# ---------------------------------------------------------------------------

def run_selfcheck(
    trials: int = 200,
    seed: int = 7,
    max_buyers: int = 3,
    max_goods: int = 3,
    max_value: int = 6,
) -> list[SuiteResult]:
    cases = default_suite_cases(
        trials, seed, max_buyers=max_buyers, max_goods=max_goods, max_value=max_value
    )
    rng = random.Random(seed + 1)
    results = [
        fact_suite(cases, rng),
        sup_o_monotone_suite(cases, rng),
        lemma1_suite(cases, rng),
        lemma2_suite(cases, rng),
        prop1_random(cases, rng),
        figure2_suite(cases, rng),
        neutral_interval_suite(cases, rng),
        prop2_suite(cases),
        lattice_suite(cases[: min(len(cases), 50)]),
        characterization_suite(cases),
        hall_vs_brute_suite(cases),
        iteration_bound_suite(cases),
    ]
    return results
