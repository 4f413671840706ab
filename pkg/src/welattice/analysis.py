"""Demand-side analysis: demanders, exclusive demanders, over/underdemanded
sets, minimality search, and the direct Walrasian-equilibrium check.

Set-valued operations accept and return good/buyer ids.  The empty set is by
convention neither overdemanded nor underdemanded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .matching import combine_saturating, hall_violator, hopcroft_karp
from .model import (
    DUMMY,
    Market,
    MarketError,
    PriceVector,
    check_price,
    demand_masks,
)

#: Minimality search is by subset enumeration; refuse beyond this many goods.
MAX_MINIMALITY_GOODS = 16


@dataclass(frozen=True)
class DemandCertificate:
    """Verdict of an over/underdemand existence check with its witnesses.

    ``matching`` is the buyer-good matching the Hall check produced: saturating
    when the verdict is "none", maximum otherwise.
    """

    verdict: str  # "over" | "under" | "none"
    witness_goods: tuple = ()
    witness_buyers: tuple = ()
    matching: tuple = ()

    def to_doc(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness_goods": list(self.witness_goods),
            "witness_buyers": list(self.witness_buyers),
            "matching": [list(pair) for pair in self.matching],
        }


@dataclass(frozen=True)
class WECheck:
    """Outcome of the constructive Walrasian-equilibrium check at one price."""

    is_we: bool
    allocation: dict | None = None  # buyer id -> good id or DUMMY

    def to_doc(self) -> dict:
        alloc = None
        if self.allocation is not None:
            alloc = {str(b): g for b, g in self.allocation.items()}
        return {"is_we": self.is_we, "allocation": alloc}


# ---------------------------------------------------------------------------
# Mask-level primitives (shared with the tipping-price engine)
# ---------------------------------------------------------------------------

def count_exclusive(masks, s_mask: int) -> int:
    """|O(S, p)| for the good set encoded by ``s_mask``."""
    return sum(1 for mask, has0 in masks if not has0 and mask & ~s_mask == 0)


def count_demanders(masks, s_mask: int) -> int:
    """|U(S, p)| for the good set encoded by ``s_mask``."""
    return sum(1 for mask, _ in masks if mask & s_mask)


def _proper_submasks(mask: int):
    sub = (mask - 1) & mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def minimal_over_witness(masks, m: int, x: int) -> int | None:
    """Smallest minimal overdemanded set containing good index ``x``.

    Minimal means no proper subset whatsoever is overdemanded, so a good
    cannot qualify merely by riding along with a good that is overdemanded
    on its own.  Returns the witness bitmask, or None.
    """
    if m > MAX_MINIMALITY_GOODS:
        raise MarketError(f"minimality search capped at {MAX_MINIMALITY_GOODS} goods")

    memo = {}

    def over(mask: int, size: int) -> bool:
        v = memo.get(mask)
        if v is None:
            v = count_exclusive(masks, mask) > size
            memo[mask] = v
        return v

    others = [g for g in range(m) if g != x]
    for k in range(m):
        for combo in itertools.combinations(others, k):
            s_mask = 1 << x
            for g in combo:
                s_mask |= 1 << g
            if not over(s_mask, k + 1):
                continue
            if any(over(t, bin(t).count("1")) for t in _proper_submasks(s_mask)):
                continue
            return s_mask
    return None


def minimal_under_witness(masks, m: int, x: int, p: PriceVector) -> int | None:
    """Smallest minimal underdemanded set containing good index ``x``."""
    if m > MAX_MINIMALITY_GOODS:
        raise MarketError(f"minimality search capped at {MAX_MINIMALITY_GOODS} goods")
    if p[x] == 0:
        return None  # witness must lie inside M+

    memo = {}

    def under(mask: int, size: int) -> bool:
        v = memo.get(mask)
        if v is None:
            v = count_demanders(masks, mask) < size
            memo[mask] = v
        return v

    plus = [g for g in range(m) if g != x and p[g] > 0]
    for k in range(len(plus) + 1):
        for combo in itertools.combinations(plus, k):
            s_mask = 1 << x
            for g in combo:
                s_mask |= 1 << g
            if not under(s_mask, k + 1):
                continue
            if any(under(t, bin(t).count("1")) for t in _proper_submasks(s_mask)):
                continue
            return s_mask
    return None


def no_overdemanded_exists(masks, m: int) -> bool:
    """True iff no set of goods is overdemanded: the demand graph restricted to
    buyers that do not demand the dummy admits a matching saturating them."""
    lefts = [mask for mask, has0 in masks if not has0]
    adj = [[x for x in range(m) if mask >> x & 1] for mask in lefts]
    _, _, size = hopcroft_karp(adj, m)
    return size == len(lefts)


def no_underdemanded_exists(masks, m: int, p: PriceVector) -> bool:
    """True iff no set of goods is underdemanded: the positively priced goods
    can all be matched to distinct demanders."""
    plus = [x for x in range(m) if p[x] > 0]
    adj = [
        [i for i, (mask, _) in enumerate(masks) if mask >> x & 1] for x in plus
    ]
    _, _, size = hopcroft_karp(adj, len(masks))
    return size == len(plus)


# ---------------------------------------------------------------------------
# Id-level operations
# ---------------------------------------------------------------------------

def _good_mask(market: Market, S) -> int:
    mask = 0
    for g in S:
        mask |= 1 << market.good_index(g)
    return mask


def _mask_to_goods(market: Market, mask: int) -> tuple:
    return tuple(market.goods[x] for x in range(market.m) if mask >> x & 1)


def demanders(market: Market, p: PriceVector, S) -> set:
    """U(S, p): buyers whose demand set meets S."""
    check_price(market, p)
    s_mask = _good_mask(market, S)
    masks = demand_masks(market, p)
    return {market.buyers[i] for i, (mask, _) in enumerate(masks) if mask & s_mask}


def exclusive_demanders(market: Market, p: PriceVector, S) -> set:
    """O(S, p): buyers whose whole demand set lies inside S."""
    check_price(market, p)
    s_mask = _good_mask(market, S)
    masks = demand_masks(market, p)
    return {
        market.buyers[i]
        for i, (mask, has0) in enumerate(masks)
        if not has0 and mask & ~s_mask == 0
    }


def mplus(market: Market, p: PriceVector) -> set:
    """Goods with strictly positive price."""
    check_price(market, p)
    return {g for g, c in zip(market.goods, p) if c > 0}


def is_overdemanded(market: Market, p: PriceVector, S, weak: bool = False) -> bool:
    S = set(S)
    if not S:
        return False
    count = len(exclusive_demanders(market, p, S))
    return count >= len(S) if weak else count > len(S)


def is_underdemanded(market: Market, p: PriceVector, S, weak: bool = False) -> bool:
    S = set(S)
    if not S:
        return False
    if not S <= mplus(market, p):
        return False
    count = len(demanders(market, p, S))
    return count <= len(S) if weak else count < len(S)


def is_minimally_overdemanded(market: Market, p: PriceVector, x):
    """Whether good ``x`` sits in a minimal overdemanded set, one with no
    overdemanded proper subset.  Returns (flag, witness set)."""
    check_price(market, p)
    masks = demand_masks(market, p)
    witness = minimal_over_witness(masks, market.m, market.good_index(x))
    if witness is None:
        return False, None
    return True, frozenset(_mask_to_goods(market, witness))


def is_minimally_underdemanded(market: Market, p: PriceVector, x):
    """Underdemand analogue of :func:`is_minimally_overdemanded`."""
    check_price(market, p)
    masks = demand_masks(market, p)
    witness = minimal_under_witness(masks, market.m, market.good_index(x), p)
    if witness is None:
        return False, None
    return True, frozenset(_mask_to_goods(market, witness))


def exists_overdemanded(market: Market, p: PriceVector) -> DemandCertificate:
    """Hall reduction: some set is overdemanded iff the buyers who shun the
    dummy cannot all be matched to demanded goods."""
    check_price(market, p)
    masks = demand_masks(market, p)
    lefts = [i for i, (_, has0) in enumerate(masks) if not has0]
    adj = [[x for x in range(market.m) if masks[i][0] >> x & 1] for i in lefts]
    match_l, match_r, size = hopcroft_karp(adj, market.m)
    matching = tuple(
        (market.buyers[lefts[l]], market.goods[match_l[l]])
        for l in range(len(lefts))
        if match_l[l] != -1
    )
    if size == len(lefts):
        return DemandCertificate("none", matching=matching)
    _, rights = hall_violator(adj, match_l, match_r)
    s_mask = 0
    for r in rights:
        s_mask |= 1 << r
    witness_goods = _mask_to_goods(market, s_mask)
    witness_buyers = tuple(
        market.buyers[i]
        for i, (mask, has0) in enumerate(masks)
        if not has0 and mask & ~s_mask == 0
    )
    return DemandCertificate("over", witness_goods, witness_buyers, matching)


def exists_underdemanded(market: Market, p: PriceVector) -> DemandCertificate:
    """Dual Hall reduction on the positively priced goods."""
    check_price(market, p)
    masks = demand_masks(market, p)
    plus = [x for x in range(market.m) if p[x] > 0]
    adj = [
        [i for i, (mask, _) in enumerate(masks) if mask >> x & 1] for x in plus
    ]
    match_l, match_r, size = hopcroft_karp(adj, market.n)
    matching = tuple(
        (market.buyers[match_l[l]], market.goods[plus[l]])
        for l in range(len(plus))
        if match_l[l] != -1
    )
    if size == len(plus):
        return DemandCertificate("none", matching=matching)
    viol_lefts, viol_rights = hall_violator(adj, match_l, match_r)
    witness_goods = tuple(market.goods[plus[l]] for l in viol_lefts)
    witness_buyers = tuple(market.buyers[i] for i in viol_rights)
    return DemandCertificate("under", witness_goods, witness_buyers, matching)


def check_we(market: Market, p: PriceVector) -> WECheck:
    """Constructive WE test: find one matching saturating the dummy-averse
    buyers and one saturating the positively priced goods, then merge them."""
    check_price(market, p)
    masks = demand_masks(market, p)
    m = market.m

    lefts = [i for i, (_, has0) in enumerate(masks) if not has0]
    adj_b = [[x for x in range(m) if masks[i][0] >> x & 1] for i in lefts]
    match_bl, _, size_b = hopcroft_karp(adj_b, m)
    if size_b != len(lefts):
        return WECheck(False)

    plus = [x for x in range(m) if p[x] > 0]
    adj_g = [[i for i, (mask, _) in enumerate(masks) if mask >> x & 1] for x in plus]
    match_gl, _, size_g = hopcroft_karp(adj_g, market.n)
    if size_g != len(plus):
        return WECheck(False)

    match1 = {lefts[l]: match_bl[l] for l in range(len(lefts))}
    match2 = {match_gl[l]: plus[l] for l in range(len(plus))}
    combined = combine_saturating(match1, match2, plus)

    allocation = {}
    assigned = set()
    for i, buyer in enumerate(market.buyers):
        x = combined.get(i)
        if x is None:
            allocation[buyer] = DUMMY
        else:
            allocation[buyer] = market.goods[x]
            assigned.add(x)
    # The merge is guaranteed to produce a WE allocation; verify anyway.
    for i, buyer in enumerate(market.buyers):
        mask, has0 = masks[i]
        x = combined.get(i)
        if x is None:
            if not has0:
                raise RuntimeError("WE construction left a dummy-averse buyer unassigned")
        elif not mask >> x & 1:
            raise RuntimeError("WE construction assigned an undemanded good")
    if not set(plus) <= assigned:
        raise RuntimeError("WE construction left a positively priced good unassigned")
    return WECheck(True, allocation)


def check_we_by_characterization(market: Market, p: PriceVector) -> bool:
    """WE iff no set of goods is overdemanded and none is underdemanded."""
    return (
        exists_overdemanded(market, p).verdict == "none"
        and exists_underdemanded(market, p).verdict == "none"
    )
