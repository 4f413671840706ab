"""Deterministic random market instances for the self-check suites."""

from __future__ import annotations

import random
import string
from fractions import Fraction

from .model import DEFAULT_TICK, Market, make_market


def good_ids(count: int) -> list[str]:
    """a, b, c, ... then g27, g28, ... past the alphabet."""
    letters = string.ascii_lowercase
    return [letters[j] if j < len(letters) else f"g{j + 1}" for j in range(count)]


def random_market(
    rng: random.Random,
    n_buyers: int,
    n_goods: int,
    max_value: int,
    tick: Fraction = DEFAULT_TICK,
    name: str | None = None,
) -> Market:
    """Uniform integer valuations in [0, max_value], replayable from the rng."""
    valuations = [
        [rng.randint(0, max_value) for _ in range(n_goods)] for _ in range(n_buyers)
    ]
    return make_market(
        buyers=list(range(1, n_buyers + 1)),
        goods=good_ids(n_goods),
        valuations=valuations,
        tick=tick,
        name=name,
    )


def random_suite(
    trials: int,
    seed: int,
    max_buyers: int = 3,
    max_goods: int = 3,
    max_value: int = 6,
    tick: Fraction = DEFAULT_TICK,
) -> list[Market]:
    """A seeded suite of markets with random sizes up to the given caps."""
    rng = random.Random(seed)
    suite = []
    for t in range(trials):
        n = rng.randint(1, max_buyers)
        m = rng.randint(1, max_goods)
        suite.append(
            random_market(rng, n, m, max_value, tick=tick, name=f"seed{seed}-{t}")
        )
    return suite
