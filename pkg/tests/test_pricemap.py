"""The four-region price-adjusting map."""

import random

from welattice.generator import random_suite
from welattice.model import grid_points, leq
from welattice.pricemap import Region, apply_f, apply_f_coord, classify_region
from welattice.suites import (
    figure2_suite,
    lemma2_suite,
    make_cases,
    neutral_interval_suite,
    prop1_exhaustive,
)
from welattice.tipping import TippingEngine, drop_coord


def test_e1_regions(e1):
    engine = TippingEngine(e1)
    # neutral interval is [3, 5] in original units
    assert classify_region(engine, 0, (0,)) is Region.BELOW_S
    assert classify_region(engine, 0, (6,)) is Region.NEUTRAL
    assert classify_region(engine, 0, (10,)) is Region.NEUTRAL


def test_e1_map_values(e1):
    engine = TippingEngine(e1)
    assert apply_f(engine, (0,)) == (6,)
    for pa in range(6, 11):
        assert apply_f(engine, (pa,)) == (pa,)


def test_e2_map_values(e2):
    engine = TippingEngine(e2)
    # f(0,0) = (1,0): a is pushed to its lower neutral price, b stays
    assert apply_f(engine, (0, 0)) == (2, 0)
    assert apply_f(engine, (2, 0)) == (2, 0)


def test_inverted_region_midpoint():
    # wherever I < S the map sends every own price to the floored midpoint
    rng = random.Random(5)
    seen = 0
    for market in random_suite(40, seed=5):
        engine = TippingEngine(market)
        for p in grid_points(market):
            for a in range(market.m):
                if classify_region(engine, a, p) is Region.INVERTED:
                    p_minus = drop_coord(p, a)
                    s = engine.neutral_s(a, p_minus)
                    i = engine.neutral_i(a, p_minus)
                    assert i < s
                    assert apply_f_coord(engine, a, p) == (s + i) // 2
                    seen += 1
        if seen:
            break
    # the sweep must actually exercise the inverted case
    assert seen > 0


def test_map_stays_on_grid(e2):
    engine = TippingEngine(e2)
    for p in grid_points(e2):
        q = apply_f(engine, p)
        assert all(0 <= c <= e2.h_ticks for c in q)


def test_prop1_exhaustive_examples(e1, e2):
    for market in (e1, e2):
        res = prop1_exhaustive(make_cases([market])[0])
        assert res.passed, res.violations[:1]


def test_prop1_spot(e2):
    engine = TippingEngine(e2)
    pts = sorted(grid_points(e2))
    rng = random.Random(9)
    for _ in range(300):
        p = pts[rng.randrange(len(pts))]
        q = tuple(rng.randint(c, e2.h_ticks) for c in p)
        assert leq(apply_f(engine, p), apply_f(engine, q))


def test_lemma2_and_neutral_suites(e1, e2):
    cases = make_cases([e1, e2])
    rng = random.Random(13)
    assert lemma2_suite(cases, rng, triples=300).passed
    assert neutral_interval_suite(cases, rng).passed


def test_figure2_examples(e1, e2):
    cases = make_cases([e1, e2])
    res = figure2_suite(cases, random.Random(17))
    assert res.passed, res.violations[:1]
