"""The price-adjusting map: four-region classification per coordinate and
the simultaneous (Jacobi-style) update of the whole price vector.
"""

from __future__ import annotations

from enum import Enum

from .model import PriceVector
from .tipping import TippingEngine, drop_coord


class Region(str, Enum):
    """Where an own price sits relative to the neutral interval [S, I]."""

    BELOW_S = "below_S"    # pushed up to S
    NEUTRAL = "neutral"    # left unchanged
    ABOVE_I = "above_I"    # pulled down to I
    INVERTED = "inverted"  # I < S: mapped to the midpoint regardless of price


def classify_region(engine: TippingEngine, a: int, p: PriceVector) -> Region:
    p_minus = drop_coord(p, a)
    s = engine.neutral_s(a, p_minus)
    i = engine.neutral_i(a, p_minus)
    if i < s:
        return Region.INVERTED
    if p[a] > i:
        return Region.ABOVE_I
    if p[a] < s:
        return Region.BELOW_S
    return Region.NEUTRAL


def apply_f_coord(engine: TippingEngine, a: int, p: PriceVector) -> int:
    """One coordinate of the price-adjusting map, in tick counts.

    In the inverted region the midpoint of S and I may fall between grid
    points; it is rounded down so the map stays a self-map of the grid.
    """
    p_minus = drop_coord(p, a)
    s = engine.neutral_s(a, p_minus)
    i = engine.neutral_i(a, p_minus)
    if i < s:
        return (s + i) // 2
    if p[a] > i:
        return i
    if p[a] < s:
        return s
    return p[a]


def apply_f(engine: TippingEngine, p: PriceVector) -> PriceVector:
    """Simultaneous update: every coordinate sees the same input vector."""
    return tuple(apply_f_coord(engine, a, p) for a in range(engine.market.m))
