"""Market model: buyers, goods, the discrete price grid, and demand.

Prices are handled exactly.  A price vector is a tuple of non-negative
integers counting grid ticks; the logical price of good ``x`` is
``count * tick`` where ``tick`` is a positive rational.  The dummy good
(id 0) always has price zero and is never stored in price vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

#: Id of the dummy (null) good in demand sets and allocations.
DUMMY = 0

#: A price vector: one tick count per real good, in good order.
PriceVector = tuple[int, ...]

DEFAULT_TICK = Fraction(1, 2)


class MarketError(ValueError):
    """Invalid market document, price vector, or good/buyer id."""


def _as_fraction(value) -> Fraction:
    """Parse a rational from an int, Fraction, or string like "1/2" or "0.5"."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise MarketError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (str, float)):
        try:
            return Fraction(str(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise MarketError(f"not a rational: {value!r}") from exc
    raise MarketError(f"not a rational: {value!r}")


@dataclass(frozen=True)
class Market:
    """An assignment market with integer valuations on a discrete price grid.

    ``valuations[i][x]`` is buyer ``buyers[i]``'s value for good ``goods[x]``
    in original units; the dummy good's value is implicitly zero.  ``h_ticks``
    is the price cap in tick units.
    """

    buyers: tuple
    goods: tuple
    valuations: tuple[tuple[int, ...], ...]
    tick: Fraction
    h_ticks: int
    name: str | None = None

    @property
    def n(self) -> int:
        return len(self.buyers)

    @property
    def m(self) -> int:
        return len(self.goods)

    @property
    def h_value(self) -> Fraction:
        return self.h_ticks * self.tick

    @cached_property
    def val_ticks(self) -> tuple[tuple[int, ...], ...]:
        """Valuations converted to tick units (always exact integers)."""
        return tuple(
            tuple(int(Fraction(v) / self.tick) for v in row) for row in self.valuations
        )

    @cached_property
    def _good_pos(self) -> dict:
        return {g: j for j, g in enumerate(self.goods)}

    @cached_property
    def _buyer_pos(self) -> dict:
        return {b: i for i, b in enumerate(self.buyers)}

    def good_index(self, good) -> int:
        try:
            return self._good_pos[good]
        except KeyError:
            raise MarketError(f"unknown good id: {good!r}") from None

    def buyer_index(self, buyer) -> int:
        try:
            return self._buyer_pos[buyer]
        except KeyError:
            raise MarketError(f"unknown buyer id: {buyer!r}") from None


def make_market(
    buyers: Sequence,
    goods: Sequence,
    valuations: Sequence[Sequence[int]],
    *,
    h=None,
    tick=DEFAULT_TICK,
    name: str | None = None,
) -> Market:
    """Validate the pieces of a market and build an immutable ``Market``."""
    buyers = tuple(buyers)
    goods = tuple(goods)
    if not buyers:
        raise MarketError("at least one buyer required")
    if not goods:
        raise MarketError("at least one good required")
    if len(set(buyers)) != len(buyers):
        raise MarketError("duplicate buyer ids")
    if len(set(goods)) != len(goods):
        raise MarketError("duplicate good ids")
    if DUMMY in goods:
        raise MarketError(f"good id {DUMMY!r} is reserved for the dummy good")

    if len(valuations) != len(buyers):
        raise MarketError("valuation matrix must have one row per buyer")
    rows = []
    for row in valuations:
        if len(row) != len(goods):
            raise MarketError("valuation matrix must have one column per good")
        vals = []
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int):
                raise MarketError(f"non-integer valuation: {v!r}")
            if v < 0:
                raise MarketError(f"negative valuation: {v!r}")
            vals.append(v)
        rows.append(tuple(vals))

    tick = _as_fraction(tick)
    if tick <= 0:
        raise MarketError(f"tick must be positive, got {tick}")
    for row in rows:
        for v in row:
            if (Fraction(v) / tick).denominator != 1:
                raise MarketError(f"valuation {v} is not a multiple of tick {tick}")

    max_val = max(max(row) for row in rows)
    if h is None:
        h_frac = Fraction(max_val)
    else:
        h_frac = _as_fraction(h)
        if h_frac < max_val:
            raise MarketError(f"price cap {h_frac} below max valuation {max_val}")
    h_ratio = h_frac / tick
    if h_ratio.denominator != 1:
        raise MarketError(f"price cap {h_frac} is not a multiple of tick {tick}")

    return Market(
        buyers=buyers,
        goods=goods,
        valuations=tuple(rows),
        tick=tick,
        h_ticks=int(h_ratio),
        name=name,
    )


def load_market(doc: Mapping) -> Market:
    """Build a market from a parsed schema document (see README)."""
    if not isinstance(doc, Mapping):
        raise MarketError("market document must be a mapping")
    unknown = set(doc) - {"name", "buyers", "goods", "valuations", "h_override", "tick"}
    if unknown:
        raise MarketError(f"unknown market fields: {sorted(unknown)}")
    for field_name in ("buyers", "goods", "valuations"):
        if field_name not in doc:
            raise MarketError(f"missing market field: {field_name}")
    tick = doc.get("tick", DEFAULT_TICK)
    return make_market(
        doc["buyers"],
        doc["goods"],
        doc["valuations"],
        h=doc.get("h_override"),
        tick=tick,
        name=doc.get("name"),
    )


def market_doc(market: Market) -> dict:
    """Serialize a market back to its schema document (replayable)."""
    doc = {
        "buyers": list(market.buyers),
        "goods": list(market.goods),
        "valuations": [list(row) for row in market.valuations],
        "tick": str(market.tick),
    }
    if market.name is not None:
        doc["name"] = market.name
    if market.h_value != price_cap(market):
        doc["h_override"] = format_value(market.h_value)
    return doc


def price_cap(market: Market) -> int:
    """The paper's cap: the largest valuation of any good by any buyer."""
    return max(max(row) for row in market.valuations)


# ---------------------------------------------------------------------------
# Price vectors
# ---------------------------------------------------------------------------

def check_price(market: Market, p: PriceVector) -> None:
    if len(p) != market.m:
        raise MarketError(f"price vector has {len(p)} entries, expected {market.m}")
    for c in p:
        if not isinstance(c, int) or isinstance(c, bool):
            raise MarketError(f"price entry is not a tick count: {c!r}")
        if c < 0 or c > market.h_ticks:
            raise MarketError(f"price {c} ticks outside [0, {market.h_ticks}]")


def meet(p: PriceVector, q: PriceVector) -> PriceVector:
    """Componentwise minimum."""
    if len(p) != len(q):
        raise MarketError("dimension mismatch in meet")
    return tuple(min(a, b) for a, b in zip(p, q))


def join(p: PriceVector, q: PriceVector) -> PriceVector:
    """Componentwise maximum."""
    if len(p) != len(q):
        raise MarketError("dimension mismatch in join")
    return tuple(max(a, b) for a, b in zip(p, q))


def leq(p: PriceVector, q: PriceVector) -> bool:
    return all(a <= b for a, b in zip(p, q))


def grid_points(market: Market) -> Iterable[PriceVector]:
    """All price vectors on the grid, lexicographically ascending."""
    return itertools.product(range(market.h_ticks + 1), repeat=market.m)


def to_value(market: Market, count: int) -> Fraction:
    return count * market.tick


def format_value(value) -> int | str:
    """Exact, JSON-friendly rendering: int when integral, else "num/den"."""
    f = Fraction(value)
    if f.denominator == 1:
        return int(f)
    return str(f)


def format_price(market: Market, p: PriceVector) -> list:
    return [format_value(to_value(market, c)) for c in p]


def parse_grid_value(market: Market, text) -> int:
    """Parse a price to an exact tick count; reject off-grid values."""
    value = _as_fraction(text)
    ratio = value / market.tick
    if ratio.denominator != 1:
        raise MarketError(f"price {value} is not a multiple of tick {market.tick}")
    count = int(ratio)
    if count < 0 or count > market.h_ticks:
        raise MarketError(f"price {value} outside [0, {market.h_value}]")
    return count


def parse_price(market: Market, csv: str) -> PriceVector:
    """Parse a comma-separated price vector onto the grid."""
    csv = csv.strip()
    tokens = [] if csv == "" else [t.strip() for t in csv.split(",")]
    if len(tokens) != market.m:
        raise MarketError(f"expected {market.m} prices, got {len(tokens)}")
    return tuple(parse_grid_value(market, t) for t in tokens)


# ---------------------------------------------------------------------------
# Demand
# ---------------------------------------------------------------------------

def demand_masks(market: Market, p: PriceVector, denom: int = 1) -> list[tuple[int, bool]]:
    """Per-buyer demand as (bitmask over good indices, dummy-in-demand flag).

    Surpluses are compared in tick units, which is exact.  The dummy good is
    demanded exactly when no real good offers strictly positive surplus.
    ``denom`` rescales: prices are taken in units of tick/denom, allowing
    exact evaluation between grid points.
    """
    out = []
    m = market.m
    for row in market.val_ticks:
        best = 0
        for x in range(m):
            s = denom * row[x] - p[x]
            if s > best:
                best = s
        mask = 0
        for x in range(m):
            if denom * row[x] - p[x] == best:
                mask |= 1 << x
        out.append((mask, best == 0))
    return out


def demand(market: Market, p: PriceVector) -> dict:
    """Full demand correspondence: buyer id -> frozenset of good ids (0 = dummy)."""
    check_price(market, p)
    profile = {}
    for buyer, (mask, has0) in zip(market.buyers, demand_masks(market, p)):
        goods = {market.goods[x] for x in range(market.m) if mask >> x & 1}
        if has0:
            goods.add(DUMMY)
        profile[buyer] = frozenset(goods)
    return profile
