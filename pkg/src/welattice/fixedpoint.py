"""Tarski iteration, exhaustive fixed-point and equilibrium enumeration, and
lattice certification of the equilibrium price set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import check_we
from .model import Market, PriceVector, join, leq, meet, to_value
from .pricemap import apply_f
from .tipping import SearchBudgetError, TippingEngine

DEFAULT_GRID_BUDGET = 1_000_000


@dataclass(frozen=True)
class IterationTrace:
    start: PriceVector
    points: tuple  # iterates including the start
    direction: str  # "ascending" | "descending" | "none"
    converged: bool

    @property
    def steps(self) -> int:
        return len(self.points) - 1

    @property
    def final(self) -> PriceVector:
        return self.points[-1]

    def to_doc(self, market: Market) -> dict:
        from .model import format_price

        return {
            "start": format_price(market, self.start),
            "points": [format_price(market, p) for p in self.points],
            "steps": self.steps,
            "direction": self.direction,
            "converged": self.converged,
        }

    def to_rows(self, market: Market) -> list[tuple]:
        """Flat (step, good, price) rows for plotting."""
        from .model import format_value

        rows = []
        for step, p in enumerate(self.points):
            for g, c in zip(market.goods, p):
                rows.append((step, g, format_value(to_value(market, c))))
        return rows


class ConvergenceError(RuntimeError):
    """Iteration exhausted its step budget without reaching a fixed point."""

    def __init__(self, trace: IterationTrace):
        super().__init__(f"no fixed point within {trace.steps} steps")
        self.trace = trace


def iterate_from(
    engine: TippingEngine, start: PriceVector, max_steps: int | None = None
) -> IterationTrace:
    """Apply the price map until it fixes, recording every iterate.

    From the bottom or top of the grid, monotonicity guarantees termination
    within ``m * h_ticks`` steps; interior starts carry no such guarantee and
    raise :class:`ConvergenceError` when the budget runs out.
    """
    market = engine.market
    if max_steps is None:
        max_steps = market.m * market.h_ticks + 1
    points = [tuple(start)]
    converged = False
    for _ in range(max_steps):
        nxt = apply_f(engine, points[-1])
        if nxt == points[-1]:
            converged = True
            break
        points.append(nxt)
    else:
        converged = apply_f(engine, points[-1]) == points[-1]

    ascending = all(leq(p, q) for p, q in zip(points, points[1:]))
    descending = all(leq(q, p) for p, q in zip(points, points[1:]))
    if len(points) == 1 or (ascending and descending):
        direction = "none"
    elif ascending:
        direction = "ascending"
    elif descending:
        direction = "descending"
    else:
        direction = "none"
    trace = IterationTrace(tuple(start), tuple(points), direction, converged)
    if not converged:
        raise ConvergenceError(trace)
    return trace


def least_fixed_point(engine: TippingEngine) -> PriceVector:
    return iterate_from(engine, (0,) * engine.market.m).final


def greatest_fixed_point(engine: TippingEngine) -> PriceVector:
    h = engine.market.h_ticks
    return iterate_from(engine, (h,) * engine.market.m).final


def _check_grid_budget(market: Market, max_points: int) -> None:
    if (market.h_ticks + 1) ** market.m > max_points:
        raise SearchBudgetError(
            f"grid of {(market.h_ticks + 1) ** market.m} points exceeds "
            f"enumeration budget {max_points}"
        )


def enumerate_fixed_points(
    engine: TippingEngine, max_points: int = DEFAULT_GRID_BUDGET
) -> set[PriceVector]:
    """All grid vectors the price map leaves unchanged (exact equality)."""
    market = engine.market
    _check_grid_budget(market, max_points)
    out = set()
    for p in itertools.product(range(market.h_ticks + 1), repeat=market.m):
        if apply_f(engine, p) == p:
            out.add(p)
    return out


def enumerate_we(market: Market, max_points: int = DEFAULT_GRID_BUDGET) -> set[PriceVector]:
    """All grid vectors passing the constructive WE check.

    Never touches the price map; this is the independent side of the
    fixed-point/equilibrium comparison.
    """
    _check_grid_budget(market, max_points)
    return {
        p
        for p in itertools.product(range(market.h_ticks + 1), repeat=market.m)
        if check_we(market, p).is_we
    }


@dataclass(frozen=True)
class Prop2Report:
    """Fixed points versus directly verified equilibria on the same grid."""

    fixed_points: frozenset
    we_points: frozenset
    only_fixed: frozenset
    only_we: frozenset

    @property
    def equivalent(self) -> bool:
        return not self.only_fixed and not self.only_we

    def split_integer(self, market: Market):
        """Partition the discrepancies into integer and off-integer vectors."""

        def is_integer(p):
            return all(to_value(market, c).denominator == 1 for c in p)

        diff = self.only_fixed | self.only_we
        integer = frozenset(p for p in diff if is_integer(p))
        return integer, diff - integer


def fixed_point_we_comparison(
    engine: TippingEngine, max_points: int = DEFAULT_GRID_BUDGET
) -> Prop2Report:
    fixed = frozenset(enumerate_fixed_points(engine, max_points))
    we = frozenset(enumerate_we(engine.market, max_points))
    return Prop2Report(fixed, we, fixed - we, we - fixed)


@dataclass(frozen=True)
class LatticeCertificate:
    pairs_checked: int
    closure_failures: tuple  # (p, q, meet_or_join, vector) records
    bottom: PriceVector | None
    top: PriceVector | None
    extremes_match: bool

    @property
    def certified(self) -> bool:
        return not self.closure_failures and self.extremes_match


def lattice_check(
    engine: TippingEngine, sample: set[PriceVector] | None = None
) -> LatticeCertificate:
    """Meet/join closure over all pairs of equilibrium vectors, plus agreement
    of the componentwise extremes with the Tarski iterates from 0 and H."""
    market = engine.market
    if sample is None:
        sample = enumerate_we(market)
    points = sorted(sample)
    failures = []
    pairs = 0
    for p, q in itertools.combinations_with_replacement(points, 2):
        pairs += 1
        lo, hi = meet(p, q), join(p, q)
        if not check_we(market, lo).is_we:
            failures.append((p, q, "meet", lo))
        if not check_we(market, hi).is_we:
            failures.append((p, q, "join", hi))

    if points:
        enum_min = tuple(min(p[a] for p in points) for a in range(market.m))
        enum_max = tuple(max(p[a] for p in points) for a in range(market.m))
        bottom = least_fixed_point(engine)
        top = greatest_fixed_point(engine)
        extremes_match = (
            bottom == enum_min
            and top == enum_max
            and enum_min in sample
            and enum_max in sample
        )
    else:
        bottom = top = None
        extremes_match = False
    return LatticeCertificate(pairs, tuple(failures), bottom, top, extremes_match)


@dataclass(frozen=True)
class EquilibriumReport:
    """Everything the CLI emits for one market's equilibrium structure."""

    tick: Fraction
    fixed_points: tuple
    we_points: tuple
    min_we: PriceVector | None
    max_we: PriceVector | None
    lattice_certified: bool
    counterexamples: tuple

    def to_doc(self, market: Market) -> dict:
        from .model import format_price

        fmt = lambda p: None if p is None else format_price(market, p)
        return {
            "tick": str(self.tick),
            "fixed_points": [format_price(market, p) for p in self.fixed_points],
            "we_points": [format_price(market, p) for p in self.we_points],
            "min_we": fmt(self.min_we),
            "max_we": fmt(self.max_we),
            "lattice_certified": self.lattice_certified,
            "counterexamples": [
                [format_price(market, p) for p in pair] for pair in self.counterexamples
            ],
        }


def equilibrium_report(
    engine: TippingEngine, max_points: int = DEFAULT_GRID_BUDGET
) -> EquilibriumReport:
    market = engine.market
    comparison = fixed_point_we_comparison(engine, max_points)
    we_points = sorted(comparison.we_points)
    if we_points:
        min_we = tuple(min(p[a] for p in we_points) for a in range(market.m))
        max_we = tuple(max(p[a] for p in we_points) for a in range(market.m))
    else:
        min_we = max_we = None
    cert = lattice_check(engine, comparison.we_points)
    counterexamples = [sorted(comparison.only_fixed | comparison.only_we)]
    if not counterexamples[0]:
        counterexamples = []
    return EquilibriumReport(
        tick=market.tick,
        fixed_points=tuple(sorted(comparison.fixed_points)),
        we_points=tuple(we_points),
        min_we=min_we,
        max_we=max_we,
        lattice_certified=comparison.equivalent and cert.certified,
        counterexamples=tuple(counterexamples),
    )
