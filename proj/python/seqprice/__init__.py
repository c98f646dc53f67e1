"""Exact posted-price mechanisms for sequentially arriving buyers.

Prices and welfare values come back as ``fractions.Fraction``. Prices may be
passed as Fractions, ints or "p/q" strings.
"""

import json
from fractions import Fraction

from . import _seqprice
from ._seqprice import (
    CapacityError,
    Error,
    InputError,
    InvariantViolation,
    Market,
    ParseError,
    PreconditionError,
    builtin_market,
    is_gross_substitutes,
    is_superadditive,
    load_market,
    parse_market,
    scheme_names,
    unique_optimum,
)

__all__ = [
    "CapacityError", "Error", "InputError", "InvariantViolation", "Market", "ParseError",
    "PreconditionError", "builtin_market", "demand", "dynamic_matching_prices", "feasible",
    "gs_unique_prices", "is_gross_substitutes", "is_superadditive", "is_walrasian", "load_market",
    "optimum", "parse_market", "sapb", "scheme_names", "simulate", "static_half_prices",
    "unique_optimum", "value", "welfare",
]


def _text(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        raise TypeError("use Fraction, int or a 'p/q' string for exact prices")
    return str(x)


def _prices_in(prices):
    return {item: _text(p) for item, p in prices.items()}


def _prices_out(prices):
    return {item: Fraction(p) for item, p in prices.items()}


def _bundles_out(bundles):
    return [(items, Fraction(p)) for items, p in bundles]


def value(market, agent, items):
    return Fraction(market.value(agent, list(items)))


def optimum(market):
    """(allocation, welfare) of a welfare-maximizing allocation."""
    allocation, w = _seqprice.optimum(market)
    return allocation, Fraction(w)


def welfare(market, allocation):
    return Fraction(_seqprice.welfare(market, allocation))


def demand(market, agent, prices, available=None):
    return _seqprice.demand(market, agent, _prices_in(prices), available)


def dynamic_matching_prices(market, remaining=None, unsold=None):
    return _prices_out(_seqprice.dynamic_matching_prices(market, remaining, unsold))


def gs_unique_prices(market):
    return _prices_out(_seqprice.gs_unique_prices(market))


def static_half_prices(market):
    return _bundles_out(_seqprice.static_half_prices(market))


def sapb(market, initial=None):
    r = _seqprice.sapb(market, initial)
    r["prices"] = _bundles_out(r["prices"])
    r["delta"] = Fraction(r["delta"])
    r["epsilon"] = Fraction(r["epsilon"])
    return r


def is_walrasian(market, prices, allocation):
    """(True, None) or (False, reason)."""
    reason = _seqprice.walrasian_violation(market, _prices_in(prices), allocation)
    return reason is None, reason


def simulate(market, scheme, prices=None, order=None, tie_break="adversarial", script=None, max_traces=50):
    """Runs a pricing scheme and returns the report as a dict.

    Rational fields of the report stay strings; ``worst_welfare`` and ``opt``
    are converted to Fractions.
    """
    text = _seqprice.simulate(market, scheme, None if prices is None else _prices_in(prices), order,
                              tie_break, script, max_traces)
    report = json.loads(text)
    report["worst_welfare"] = Fraction(report["worst_welfare"])
    if report["opt"] is not None:
        report["opt"] = Fraction(report["opt"])
    return report


def feasible(system):
    """Feasibility of a linear system given as text, one constraint per line."""
    r = _seqprice.feasible(system)
    if r["point"] is not None:
        r["point"] = {k: Fraction(v) for k, v in r["point"].items()}
    if "multipliers" in r:
        r["multipliers"] = [Fraction(y) for y in r["multipliers"]]
    return r
