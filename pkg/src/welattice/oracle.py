"""Brute-force oracles, kept deliberately independent of the production code
paths: demand by direct surplus comparison, over/underdemand by subset
enumeration, and equilibria by exhaustive allocation search.
"""

from __future__ import annotations

import itertools

from .model import DUMMY, Market, MarketError, PriceVector

MAX_SUBSET_GOODS = 12
MAX_ALLOCATION_OPTIONS = 5_000_000


def brute_demand(market: Market, p: PriceVector) -> list[frozenset]:
    """Argmax demand per buyer (by row index), recomputed from scratch.

    Sets contain good indices plus None for the dummy; surpluses in tick units.
    """
    profile = []
    for row in market.val_ticks:
        surplus = {None: 0}
        for x in range(market.m):
            surplus[x] = row[x] - p[x]
        best = max(surplus.values())
        profile.append(frozenset(k for k, s in surplus.items() if s == best))
    return profile


def _subsets(indices):
    for k in range(1, len(indices) + 1):
        yield from itertools.combinations(indices, k)


def brute_find_overdemanded(market: Market, p: PriceVector, weak: bool = False):
    """First (smallest, earliest) overdemanded subset of goods, or None."""
    if market.m > MAX_SUBSET_GOODS:
        raise MarketError(f"brute-force subset scan capped at {MAX_SUBSET_GOODS} goods")
    profile = brute_demand(market, p)
    for combo in _subsets(range(market.m)):
        s = set(combo)
        o = sum(1 for d in profile if None not in d and d <= s)
        if o >= len(s) if weak else o > len(s):
            return frozenset(market.goods[x] for x in combo)
    return None


def brute_find_underdemanded(market: Market, p: PriceVector, weak: bool = False):
    """First underdemanded subset of the positively priced goods, or None."""
    if market.m > MAX_SUBSET_GOODS:
        raise MarketError(f"brute-force subset scan capped at {MAX_SUBSET_GOODS} goods")
    profile = brute_demand(market, p)
    plus = [x for x in range(market.m) if p[x] > 0]
    for combo in _subsets(plus):
        s = set(combo)
        u = sum(1 for d in profile if d & s)
        if u <= len(s) if weak else u < len(s):
            return frozenset(market.goods[x] for x in combo)
    return None


def brute_minimally_overdemanded(market: Market, p: PriceVector, x) -> bool:
    """Whether x lies in a minimal overdemanded set: overdemanded, with no
    overdemanded proper subset at all."""
    xi = market.good_index(x)
    profile = brute_demand(market, p)

    def over(s: frozenset) -> bool:
        if not s:
            return False
        return sum(1 for d in profile if None not in d and d <= s) > len(s)

    everything = [frozenset(c) for c in _subsets(range(market.m))]
    for s in everything:
        if xi not in s or not over(s):
            continue
        if not any(t < s and over(t) for t in everything):
            return True
    return False


def brute_minimally_underdemanded(market: Market, p: PriceVector, x) -> bool:
    xi = market.good_index(x)
    profile = brute_demand(market, p)
    plus = {g for g in range(market.m) if p[g] > 0}

    def under(s: frozenset) -> bool:
        if not s or not s <= plus:
            return False
        return sum(1 for d in profile if d & s) < len(s)

    everything = [frozenset(c) for c in _subsets(range(market.m))]
    for s in everything:
        if xi not in s or not under(s):
            continue
        if not any(t < s and under(t) for t in everything):
            return True
    return False


def brute_we_allocation(market: Market, p: PriceVector):
    """Search all allocations for one satisfying WE-1 and WE-2, or None."""
    options = (market.m + 1) ** market.n
    if options > MAX_ALLOCATION_OPTIONS:
        raise MarketError("allocation search too large for the brute-force oracle")
    profile = brute_demand(market, p)
    choices = list(range(market.m)) + [DUMMY_SLOT]
    for assignment in itertools.product(choices, repeat=market.n):
        real = [a for a in assignment if a is not DUMMY_SLOT]
        if len(real) != len(set(real)):
            continue
        ok = True
        for i, a in enumerate(assignment):
            want = None if a is DUMMY_SLOT else a
            if want not in profile[i]:
                ok = False
                break
        if not ok:
            continue
        assigned = set(real)
        if any(p[x] > 0 and x not in assigned for x in range(market.m)):
            continue
        return {
            market.buyers[i]: (DUMMY if a is DUMMY_SLOT else market.goods[a])
            for i, a in enumerate(assignment)
        }
    return None


class _DummySlot:
    def __repr__(self):
        return "<dummy>"


DUMMY_SLOT = _DummySlot()


def brute_is_we(market: Market, p: PriceVector) -> bool:
    return brute_we_allocation(market, p) is not None


def brute_we_set(market: Market) -> set[PriceVector]:
    """All grid price vectors admitting a WE allocation."""
    points = (market.h_ticks + 1) ** market.m
    if points > 1_000_000:
        raise MarketError("grid too large for the brute-force WE oracle")
    return {
        p
        for p in itertools.product(range(market.h_ticks + 1), repeat=market.m)
        if brute_is_we(market, p)
    }
