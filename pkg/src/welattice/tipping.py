"""Tipping and neutral prices by exact search over the discrete price grid.

For a good ``a`` and fixed prices of the other goods, the engine computes:

* ``sup_o``  - highest own price at which ``a`` can be minimally overdemanded
  (sup over the grid, promoted one tick at an open boundary; 0 when empty);
* ``inf_u``  - lowest own price at which ``a`` can be minimally underdemanded
  (demoted one tick at the open boundary; None when the set is empty);
* ``neutral_s`` / ``neutral_i`` - box-constrained infima over all weakly
  higher price vectors at which no set of goods is over/underdemanded.

All quantities are tick counts.  The engine memoizes every predicate by price
vector, so repeated calls during fixed-point iteration are cheap, and charges
each predicate evaluation against a configurable budget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .analysis import (
    minimal_over_witness,
    minimal_under_witness,
    no_overdemanded_exists,
    no_underdemanded_exists,
)
from .model import Market, PriceVector, demand_masks

DEFAULT_BUDGET = 50_000_000


class SearchBudgetError(RuntimeError):
    """A grid/box search exceeded its predicate-evaluation budget."""


def drop_coord(p: PriceVector, a: int) -> tuple:
    return p[:a] + p[a + 1:]


def insert_coord(p_minus: tuple, a: int, pa: int) -> PriceVector:
    return p_minus[:a] + (pa,) + p_minus[a:]


@dataclass(frozen=True)
class TippingProfile:
    """Tipping and neutral prices of one good at fixed other-good prices."""

    good_index: int
    base_prices: tuple  # prices of the other goods, tick counts
    sup_o: int
    inf_u: int | None
    s: int
    i: int

    def to_doc(self, market: Market) -> dict:
        from .model import format_value, to_value

        fmt = lambda c: None if c is None else format_value(to_value(market, c))
        return {
            "good": market.goods[self.good_index],
            "base_prices": [fmt(c) for c in self.base_prices],
            "sup_O": fmt(self.sup_o),
            "inf_U": fmt(self.inf_u),
            "S": fmt(self.s),
            "I": fmt(self.i),
        }


class TippingEngine:
    """Memoizing evaluator for one market's tipping machinery.

    ``s_constraint_at_base`` switches the inner constraint of the neutral
    prices from ``q_a >= sup_o(a, q_minus)`` (the default) to the base-price
    reading ``q_a >= sup_o(a, p_minus)``.  ``vacuous_empty_inf`` makes an
    empty minimally-underdemanded set satisfy (rather than fail) the
    ``q_a >= inf_u`` constraint inside ``neutral_i``.
    """

    def __init__(
        self,
        market: Market,
        *,
        s_constraint_at_base: bool = False,
        vacuous_empty_inf: bool = False,
        budget: int = DEFAULT_BUDGET,
    ):
        self.market = market
        self.s_constraint_at_base = s_constraint_at_base
        self.vacuous_empty_inf = vacuous_empty_inf
        self.budget = budget
        self.evaluations = 0
        self._demand = {}
        self._no_over = {}
        self._no_under = {}
        self._min_over = {}
        self._min_under = {}
        self._min_over_half = {}
        self._min_under_half = {}
        self._sup_o = {}
        self._inf_u = {}
        self._neutral_s = {}
        self._neutral_i = {}

    # -- predicates ---------------------------------------------------------

    def _spend(self) -> None:
        self.evaluations += 1
        if self.evaluations > self.budget:
            raise SearchBudgetError(
                f"predicate budget of {self.budget} evaluations exhausted"
            )

    def masks(self, p: PriceVector):
        r = self._demand.get(p)
        if r is None:
            r = demand_masks(self.market, p)
            self._demand[p] = r
        return r

    def no_overdemand(self, p: PriceVector) -> bool:
        self._spend()
        v = self._no_over.get(p)
        if v is None:
            v = no_overdemanded_exists(self.masks(p), self.market.m)
            self._no_over[p] = v
        return v

    def no_underdemand(self, p: PriceVector) -> bool:
        self._spend()
        v = self._no_under.get(p)
        if v is None:
            v = no_underdemanded_exists(self.masks(p), self.market.m, p)
            self._no_under[p] = v
        return v

    def minimally_overdemanded(self, a: int, p: PriceVector) -> bool:
        self._spend()
        key = (a, p)
        v = self._min_over.get(key)
        if v is None:
            v = minimal_over_witness(self.masks(p), self.market.m, a) is not None
            self._min_over[key] = v
        return v

    def minimally_underdemanded(self, a: int, p: PriceVector) -> bool:
        self._spend()
        key = (a, p)
        v = self._min_under.get(key)
        if v is None:
            v = minimal_under_witness(self.masks(p), self.market.m, a, p) is not None
            self._min_under[key] = v
        return v

    # -- tipping prices -----------------------------------------------------

    def _minimally_over_half(self, a: int, p_minus: tuple, u: int) -> bool:
        """Minimal-overdemand test at own price u/2 ticks (exact)."""
        self._spend()
        p2 = insert_coord(tuple(2 * c for c in p_minus), a, u)
        key = (a, p2)
        v = self._min_over_half.get(key)
        if v is None:
            masks = demand_masks(self.market, p2, denom=2)
            v = minimal_over_witness(masks, self.market.m, a) is not None
            self._min_over_half[key] = v
        return v

    def _minimally_under_half(self, a: int, p_minus: tuple, u: int) -> bool:
        """Minimal-underdemand test at own price u/2 ticks (exact)."""
        self._spend()
        p2 = insert_coord(tuple(2 * c for c in p_minus), a, u)
        key = (a, p2)
        v = self._min_under_half.get(key)
        if v is None:
            masks = demand_masks(self.market, p2, denom=2)
            v = minimal_under_witness(masks, self.market.m, a, p2) is not None
            self._min_under_half[key] = v
        return v

    def sup_o(self, a: int, p_minus: tuple) -> int:
        """sup of the own prices at which ``a`` is minimally overdemanded.

        Valuations and other prices sit on the grid, so the property is
        constant on each open cell between grid points; evaluating at cell
        midpoints recovers the exact open-interval supremum.  A cell where
        the property holds contributes its upper endpoint.  0 when empty.
        """
        key = (a, p_minus)
        v = self._sup_o.get(key)
        if v is not None:
            return v
        v = 0
        for u in range(2 * self.market.h_ticks + 1):
            if u % 2 == 0:
                if self.minimally_overdemanded(a, insert_coord(p_minus, a, u // 2)):
                    v = u // 2
            elif self._minimally_over_half(a, p_minus, u):
                v = (u + 1) // 2
        self._sup_o[key] = v
        return v

    def inf_u(self, a: int, p_minus: tuple) -> int | None:
        """inf of the own prices at which ``a`` is minimally underdemanded;
        a cell where the property holds contributes its lower endpoint.
        None when the property holds nowhere."""
        key = (a, p_minus)
        if key in self._inf_u:
            return self._inf_u[key]
        v = None
        for u in range(2 * self.market.h_ticks + 1):
            if u % 2 == 0:
                if self.minimally_underdemanded(a, insert_coord(p_minus, a, u // 2)):
                    v = u // 2
                    break
            elif self._minimally_under_half(a, p_minus, u):
                v = (u - 1) // 2
                break
        self._inf_u[key] = v
        return v

    # -- neutral prices -----------------------------------------------------

    def _box(self, p_minus: tuple):
        h = self.market.h_ticks
        return itertools.product(*(range(lo, h + 1) for lo in p_minus))

    def neutral_s(self, a: int, p_minus: tuple) -> int:
        """Least own price admitting some weakly higher completion with no
        overdemanded set and own price at/above the overdemand tipping point."""
        key = (a, p_minus)
        v = self._neutral_s.get(key)
        if v is not None:
            return v
        base_sup = self.sup_o(a, p_minus) if self.s_constraint_at_base else None
        for qa in range(self.market.h_ticks + 1):
            for q_minus in self._box(p_minus):
                floor = base_sup if base_sup is not None else self.sup_o(a, q_minus)
                if qa < floor:
                    continue
                if self.no_overdemand(insert_coord(q_minus, a, qa)):
                    self._neutral_s[key] = qa
                    return qa
        raise RuntimeError("neutral_s search found no feasible point")  # unreachable

    def neutral_i(self, a: int, p_minus: tuple) -> int:
        """Least own price admitting some weakly higher completion with no
        underdemanded set and own price at/above the underdemand tipping
        point; the price cap when no such point exists."""
        key = (a, p_minus)
        v = self._neutral_i.get(key)
        if v is not None:
            return v
        h = self.market.h_ticks
        base_inf = self.inf_u(a, p_minus) if self.s_constraint_at_base else None
        for qa in range(h + 1):
            for q_minus in self._box(p_minus):
                if self.s_constraint_at_base:
                    floor = base_inf
                else:
                    floor = self.inf_u(a, q_minus)
                if floor is None:
                    if not self.vacuous_empty_inf:
                        continue
                elif qa < floor:
                    continue
                if self.no_underdemand(insert_coord(q_minus, a, qa)):
                    self._neutral_i[key] = qa
                    return qa
        self._neutral_i[key] = h
        return h

    def profile(self, a: int, p_minus: tuple) -> TippingProfile:
        return TippingProfile(
            good_index=a,
            base_prices=p_minus,
            sup_o=self.sup_o(a, p_minus),
            inf_u=self.inf_u(a, p_minus),
            s=self.neutral_s(a, p_minus),
            i=self.neutral_i(a, p_minus),
        )
