"""Acceptance gate: nine certification criteria over the reference markets
and a 200-instance seeded random suite (n, m <= 3, values <= 6, half-tick
grid).  Each criterion prints a single pass/fail line (run with ``-s`` to see
the lines for passing criteria)."""

import random
from fractions import Fraction

import pytest

from welattice.fixedpoint import enumerate_fixed_points, lattice_check
from welattice.generator import random_suite
from welattice.model import make_market
from welattice.oracle import brute_we_set
from welattice.suites import (
    characterization_suite,
    fact_suite,
    figure2_suite,
    hall_vs_brute_suite,
    iteration_bound_suite,
    lattice_suite,
    lemma1_suite,
    make_cases,
    prop1_exhaustive,
    prop1_random,
    prop2_suite,
)
from welattice.tipping import TippingEngine

TRIALS = 200
SEED = 7


@pytest.fixture(scope="module")
def cases():
    return make_cases(random_suite(TRIALS, seed=SEED))


@pytest.fixture(scope="module")
def e1m():
    return make_market([1, 2], ["a"], [[5], [3]], name="e1")


@pytest.fixture(scope="module")
def e2m():
    return make_market([1, 2], ["a", "b"], [[4, 1], [3, 2]], name="e2")


def verdict(num, name, ok, detail=""):
    line = f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'}"
    if detail and not ok:
        line += f" [{detail}]"
    print(line)
    return ok


def test_criterion_1_tipping_order(cases):
    res = fact_suite(cases, random.Random(SEED + 100), prices_per_market=50)
    ok = verdict(1, "inf_U >= sup_O on the random suite", res.passed,
                 f"{len(res.violations)} violations")
    assert ok, res.violations[:1]


def test_criterion_2_neutral_monotone(cases):
    res = lemma1_suite(cases, random.Random(SEED + 200), pairs=2000)
    ok = verdict(2, "S and I monotone in the other prices", res.passed,
                 f"{len(res.violations)} violations")
    assert ok, res.violations[:1]


def test_criterion_3_map_monotone(cases, e1m, e2m):
    exhaustive = [prop1_exhaustive(case) for case in make_cases([e1m, e2m])]
    rand = prop1_random(cases, random.Random(SEED + 300), pairs=2000)
    bad = [r for r in exhaustive + [rand] if not r.passed]
    ok = verdict(3, "price map monotone (exhaustive + random)", not bad,
                 bad[0].summary() if bad else "")
    assert ok, [r.violations[:1] for r in bad]


def test_criterion_4_region_transitions(cases):
    res = figure2_suite(cases, random.Random(SEED + 400))
    ok = verdict(4, "region sweep is below->neutral->above or inverted",
                 res.passed, f"{len(res.violations)} violations")
    assert ok, res.violations[:1]


def test_criterion_5_fixed_points_equal_equilibria(cases, e1m, e2m):
    e1_fixed = enumerate_fixed_points(TippingEngine(e1m))
    e1_expected = {(c,) for c in range(6, 11)}  # 3 .. 5 by half ticks
    e1_ok = e1_fixed == e1_expected == brute_we_set(e1m)

    e2i = make_market([1, 2], ["a", "b"], [[4, 1], [3, 2]], tick=Fraction(1))
    e2_expected = {
        (pa, pb)
        for pa in range(5)
        for pb in range(3)
        if 1 <= pa - pb <= 3
    }
    e2_fixed = enumerate_fixed_points(TippingEngine(e2i))
    e2_ok = e2_fixed == e2_expected == brute_we_set(e2i)
    e2h_ok = enumerate_fixed_points(TippingEngine(e2m)) == brute_we_set(e2m)

    res = prop2_suite(cases)
    ok = verdict(
        5,
        "fixed points == equilibrium prices",
        e1_ok and e2_ok and e2h_ok and res.passed,
        f"reference markets {'ok' if e1_ok and e2_ok and e2h_ok else 'MISMATCH'}, "
        f"random suite {len(res.violations)}/{res.checks} markets differ",
    )
    assert ok, res.violations[:1]


def test_criterion_6_lattice(cases, e1m, e2m):
    example_certs = {
        "e1": lattice_check(TippingEngine(e1m)),
        "e2": lattice_check(TippingEngine(e2m)),
    }
    examples_ok = (
        all(c.certified for c in example_certs.values())
        and example_certs["e1"].bottom == (6,)
        and example_certs["e1"].top == (10,)
        and example_certs["e2"].bottom == (2, 0)
        and example_certs["e2"].top == (8, 4)
    )
    res = lattice_suite(cases[:50])
    closure_ok = all(
        not v.get("closure_failures") for v in res.violations
    )
    ok = verdict(
        6,
        "equilibrium set closed under meet/join with Tarski extremes",
        examples_ok and res.passed,
        f"examples {'ok' if examples_ok else 'MISMATCH'}, closure "
        f"{'clean' if closure_ok else 'VIOLATED'}, extreme mismatches on "
        f"{len(res.violations)}/50 instances",
    )
    assert ok, res.violations[:1]


def test_criterion_7_characterization(cases):
    res = characterization_suite(cases)
    ok = verdict(7, "direct equilibrium check == no over/underdemand",
                 res.passed, f"{len(res.violations)} disagreements")
    assert ok, res.violations[:1]


def test_criterion_8_hall_vs_brute(cases):
    res = hall_vs_brute_suite(cases)
    ok = verdict(8, "matching detection == brute-force subset scan",
                 res.passed, f"{len(res.violations)} disagreements")
    assert ok, res.violations[:1]


def test_criterion_9_iteration_bound(cases):
    res = iteration_bound_suite(cases)
    ok = verdict(9, "iteration within m*(H/tick) steps, monotone traces",
                 res.passed, f"{len(res.violations)} violations")
    assert ok, res.violations[:1]
