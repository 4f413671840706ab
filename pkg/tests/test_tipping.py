"""Tipping and neutral prices.  All engine values are tick counts."""

import pytest

from welattice.generator import random_suite
from welattice.model import make_market
from welattice.oracle import (
    brute_minimally_overdemanded,
    brute_minimally_underdemanded,
)
from welattice.tipping import (
    SearchBudgetError,
    TippingEngine,
    drop_coord,
    insert_coord,
)


def test_coord_helpers():
    assert drop_coord((1, 2, 3), 1) == (1, 3)
    assert insert_coord((1, 3), 1, 2) == (1, 2, 3)
    assert insert_coord((), 0, 7) == (7,)


def test_e1_profile(e1, e1h6):
    prof = TippingEngine(e1).profile(0, ())
    # minimally overdemanded on [0, 3); never minimally underdemanded below the cap
    assert (prof.sup_o, prof.inf_u, prof.s, prof.i) == (6, None, 6, 10)

    prof6 = TippingEngine(e1h6).profile(0, ())
    # raising the cap exposes the underdemand boundary at 5
    assert (prof6.sup_o, prof6.inf_u, prof6.s, prof6.i) == (6, 10, 6, 10)


def test_e1_profile_doc(e1):
    doc = TippingEngine(e1).profile(0, ()).to_doc(e1)
    assert doc == {
        "good": "a",
        "base_prices": [],
        "sup_O": 3,
        "inf_U": None,
        "S": 3,
        "I": 5,
    }


def test_e2_profiles(e2):
    engine = TippingEngine(e2)
    # good a against p_b = 0: over below 1, under above 3
    prof = engine.profile(0, (0,))
    assert (prof.sup_o, prof.inf_u, prof.s, prof.i) == (2, 6, 2, 6)
    # good b against p_a in {0, 1}: pinned at zero
    for pa in (0, 2):
        prof = engine.profile(1, (pa,))
        assert (prof.s, prof.i) == (0, 0)


def test_open_boundary_handling():
    # minimal overdemand holds on the open cell (3, 7/2) but not at 7/2;
    # minimal underdemand first holds exactly at 7/2.  Both tip at 7/2.
    market = make_market([1, 2], ["a", "b", "c"], [[6, 4, 3], [3, 5, 6]])
    engine = TippingEngine(market)
    p_minus = (11, 9)  # (11/2, 9/2) around good b
    assert engine.sup_o(1, p_minus) == 7
    assert engine.inf_u(1, p_minus) == 7


def test_fact_on_examples(e1, e1h6, e2):
    for market in (e1, e1h6, e2):
        engine = TippingEngine(market)
        for a in range(market.m):
            from welattice.model import grid_points

            for p in grid_points(market):
                p_minus = drop_coord(p, a)
                hi = engine.inf_u(a, p_minus)
                if hi is not None:
                    assert hi >= engine.sup_o(a, p_minus)


def test_neutral_bounds(e2):
    # S dominates sup_O and I dominates inf_U at the same base prices
    engine = TippingEngine(e2)
    from welattice.model import grid_points

    for p in grid_points(e2):
        for a in range(e2.m):
            p_minus = drop_coord(p, a)
            assert engine.neutral_s(a, p_minus) >= engine.sup_o(a, p_minus)
            hi = engine.inf_u(a, p_minus)
            i = engine.neutral_i(a, p_minus)
            if hi is not None and i < e2.h_ticks:
                assert i >= hi


def test_minimality_predicates_match_oracle():
    for market in random_suite(10, seed=23):
        engine = TippingEngine(market)
        from welattice.model import grid_points

        for p in grid_points(market):
            for a, g in enumerate(market.goods):
                assert engine.minimally_overdemanded(a, p) == (
                    brute_minimally_overdemanded(market, p, g)
                )
                assert engine.minimally_underdemanded(a, p) == (
                    brute_minimally_underdemanded(market, p, g)
                )


def test_reading_flags(e1, e2):
    # alternative readings of the neutral-price definitions are exposed as
    # flags.  Evaluating the S-constraint at the box point instead of the
    # base leaves the reference fixed points unchanged; treating an empty
    # inf-set as vacuous (instead of falling back to the price cap) shrinks
    # the neutral intervals and loses equilibria, which is why it is off by
    # default.
    from welattice.fixedpoint import enumerate_fixed_points
    from welattice.oracle import brute_we_set

    for market in (e1, e2):
        base = enumerate_fixed_points(TippingEngine(market))
        s_alt = enumerate_fixed_points(
            TippingEngine(market, s_constraint_at_base=True)
        )
        assert s_alt == base

        vac = enumerate_fixed_points(TippingEngine(market, vacuous_empty_inf=True))
        assert not brute_we_set(market) <= vac
    assert enumerate_fixed_points(TippingEngine(e1, vacuous_empty_inf=True)) == {(3,)}


def test_budget_exhaustion(e2):
    engine = TippingEngine(e2, budget=5)
    with pytest.raises(SearchBudgetError):
        engine.profile(0, (0,))


def test_memoization_is_cheap(e2):
    engine = TippingEngine(e2)
    engine.profile(0, (0,))
    spent = engine.evaluations
    engine.profile(0, (0,))
    assert engine.evaluations == spent
