"""Command-line front end.

Exit codes: 0 success, 1 resource/convergence failure, 2 usage or input
error, 3 property failure in selfcheck.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys

from . import __version__, analysis
from .fixedpoint import (
    ConvergenceError,
    equilibrium_report,
    iterate_from,
    lattice_check,
)
from .generator import random_market
from .model import (
    Market,
    MarketError,
    format_price,
    format_value,
    load_market,
    market_doc,
    parse_price,
    to_value,
)
from .pricemap import apply_f, classify_region
from .suites import run_selfcheck
from .tipping import SearchBudgetError, TippingEngine, drop_coord

EXIT_OK = 0
EXIT_RESOURCE = 1
EXIT_USAGE = 2
EXIT_PROPERTY = 3


def _digest(doc: dict) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _load(args) -> Market:
    try:
        with open(args.market) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MarketError(f"cannot read market file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MarketError(f"market file is not valid JSON: {exc}") from exc
    if getattr(args, "delta", None):
        doc = dict(doc)
        doc["tick"] = args.delta
    return load_market(doc)


def _emit(args, market: Market | None, command: str, result) -> None:
    envelope = {
        "tool_version": __version__,
        "market_digest": _digest(market_doc(market)) if market is not None else None,
        "command": command,
        "result": result,
    }
    text = json.dumps(envelope, sort_keys=True, indent=2)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _good_index(market: Market, good_arg: str) -> int:
    for j, g in enumerate(market.goods):
        if str(g) == good_arg or g == good_arg:
            return j
    raise MarketError(f"unknown good id: {good_arg!r}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_demand(args) -> int:
    market = _load(args)
    p = parse_price(market, args.price)
    from .model import demand

    result = {
        "price": format_price(market, p),
        "demand": {
            str(buyer): sorted(goods, key=str) for buyer, goods in demand(market, p).items()
        },
    }
    _emit(args, market, "demand", result)
    return EXIT_OK


def cmd_analyze(args) -> int:
    market = _load(args)
    p = parse_price(market, args.price)
    over = analysis.exists_overdemanded(market, p)
    under = analysis.exists_underdemanded(market, p)
    we = analysis.check_we(market, p)
    result = {
        "price": format_price(market, p),
        "overdemand": over.to_doc(),
        "underdemand": under.to_doc(),
        "we": we.to_doc(),
        "we_by_characterization": analysis.check_we_by_characterization(market, p),
    }
    _emit(args, market, "analyze", result)
    return EXIT_OK


def cmd_tipping(args) -> int:
    market = _load(args)
    a = _good_index(market, args.good)
    tokens = args.price.strip()
    if market.m == 1:
        if tokens:
            raise MarketError("single-good market takes an empty --price")
        p_minus = ()
    else:
        full = tokens.split(",")
        if len(full) != market.m - 1:
            raise MarketError(f"expected {market.m - 1} other-good prices")
        from .model import parse_grid_value

        p_minus = tuple(parse_grid_value(market, t) for t in full)
    engine = TippingEngine(market)
    profile = engine.profile(a, p_minus)
    _emit(args, market, "tipping", profile.to_doc(market))
    return EXIT_OK


def cmd_map(args) -> int:
    market = _load(args)
    p = parse_price(market, args.price)
    engine = TippingEngine(market)
    per_good = {}
    for a, g in enumerate(market.goods):
        p_minus = drop_coord(p, a)
        per_good[str(g)] = {
            "region": classify_region(engine, a, p).value,
            "S": format_value(to_value(market, engine.neutral_s(a, p_minus))),
            "I": format_value(to_value(market, engine.neutral_i(a, p_minus))),
        }
    result = {
        "input": format_price(market, p),
        "goods": per_good,
        "output": format_price(market, apply_f(engine, p)),
    }
    _emit(args, market, "map", result)
    return EXIT_OK


def cmd_region(args) -> int:
    market = _load(args)
    p = parse_price(market, args.price)
    a = _good_index(market, args.good)
    engine = TippingEngine(market)
    result = {
        "price": format_price(market, p),
        "good": str(market.goods[a]),
        "region": classify_region(engine, a, p).value,
    }
    _emit(args, market, "region", result)
    return EXIT_OK


def cmd_iterate(args) -> int:
    market = _load(args)
    if args.start == "bottom":
        start = (0,) * market.m
    elif args.start == "top":
        start = (market.h_ticks,) * market.m
    else:
        start = parse_price(market, args.start)
    engine = TippingEngine(market)
    try:
        trace = iterate_from(engine, start, max_steps=args.max_steps)
    except ConvergenceError as exc:
        _emit(args, market, "iterate", exc.trace.to_doc(market))
        print("no fixed point reached", file=sys.stderr)
        return EXIT_RESOURCE
    if args.format == "table":
        print("step\tgood\tprice")
        for step, good, value in trace.to_rows(market):
            print(f"{step}\t{good}\t{value}")
    else:
        _emit(args, market, "iterate", trace.to_doc(market))
    print(f"fixed point reached in {trace.steps} steps", file=sys.stderr)
    return EXIT_OK


def cmd_equilibria(args, command: str = "equilibria") -> int:
    market = _load(args)
    engine = TippingEngine(market)
    report = equilibrium_report(engine)
    _emit(args, market, command, report.to_doc(market))
    return EXIT_OK


def cmd_fixpoints(args) -> int:
    return cmd_equilibria(args, command="fixpoints")


def cmd_lattice_check(args) -> int:
    market = _load(args)
    engine = TippingEngine(market)
    cert = lattice_check(engine)
    result = {
        "pairs_checked": cert.pairs_checked,
        "closure_failures": [
            {
                "pair": [format_price(market, p), format_price(market, q)],
                "operation": op,
                "vector": format_price(market, v),
            }
            for p, q, op, v in cert.closure_failures
        ],
        "bottom": None if cert.bottom is None else format_price(market, cert.bottom),
        "top": None if cert.top is None else format_price(market, cert.top),
        "extremes_match": cert.extremes_match,
        "certified": cert.certified,
    }
    _emit(args, market, "lattice-check", result)
    return EXIT_OK


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    market = random_market(
        rng,
        args.buyers,
        args.goods,
        args.max_value,
        name=f"gen-seed{args.seed}",
    )
    doc = market_doc(market)
    text = json.dumps(doc, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    results = run_selfcheck(
        trials=args.trials,
        seed=args.seed,
        max_buyers=args.buyers,
        max_goods=args.goods,
        max_value=args.max_value,
    )
    failed = False
    payload = []
    for res in results:
        print(res.summary())
        payload.append(
            {
                "name": res.name,
                "checks": res.checks,
                "passed": res.passed,
                "first_counterexample": res.violations[0] if res.violations else None,
            }
        )
        failed = failed or not res.passed
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(
                {"tool_version": __version__, "command": "selfcheck", "result": payload},
                fh,
                sort_keys=True,
                indent=2,
            )
            fh.write("\n")
    return EXIT_PROPERTY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="welattice",
        description="Walrasian equilibria of unit-demand assignment markets",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_market(p):
        p.add_argument("--market", required=True, help="path to a market JSON file")
        p.add_argument("--delta", help="override the grid tick, e.g. 1/2")
        p.add_argument("--out", help="write the report to this path")
        p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("demand", help="demand sets at a price vector")
    add_market(p)
    p.add_argument("--price", required=True)
    p.set_defaults(func=cmd_demand)

    p = sub.add_parser("analyze", help="over/underdemand certificates and WE check")
    add_market(p)
    p.add_argument("--price", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tipping", help="tipping and neutral prices for one good")
    add_market(p)
    p.add_argument("--good", required=True)
    p.add_argument("--price", required=True, help="other-good prices (CSV; empty for m=1)")
    p.set_defaults(func=cmd_tipping)

    p = sub.add_parser("map", help="apply the price-adjusting map once")
    add_market(p)
    p.add_argument("--price", required=True)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("region", help="region classification of one good")
    add_market(p)
    p.add_argument("--price", required=True)
    p.add_argument("--good", required=True)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("iterate", help="iterate the map to a fixed point")
    add_market(p)
    p.add_argument("--from", dest="start", default="bottom", help="bottom|top|CSV")
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=cmd_iterate)

    for name, func in (("fixpoints", cmd_fixpoints), ("equilibria", cmd_equilibria)):
        p = sub.add_parser(name, help="enumerate fixed points and WE prices")
        add_market(p)
        p.set_defaults(func=func)

    p = sub.add_parser("lattice-check", help="meet/join closure of the WE set")
    add_market(p)
    p.set_defaults(func=cmd_lattice_check)

    p = sub.add_parser("gen", help="deterministic random market document")
    p.add_argument("--buyers", type=int, required=True)
    p.add_argument("--goods", type=int, required=True)
    p.add_argument("--max-value", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("selfcheck", help="run the property suites on random markets")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--buyers", type=int, default=3)
    p.add_argument("--goods", type=int, default=3)
    p.add_argument("--max-value", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", "json") == "table" and args.command != "iterate":
        print("table format is only available for iterate", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except MarketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SearchBudgetError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
