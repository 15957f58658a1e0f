"""Canonical JSON interchange: the complex format and report payloads.

Complexes serialize as

    {"generators": [{"name": str, "alexander": int, "maslov_x4": int}, ...],
     "differential": [{"from": str, "to": str, "u_power": int}, ...]}

with generators in complex order and differential entries sorted by
(source, target) order, so emit -> parse -> emit is byte identical.
Reports never contain floats; non-integral rationals appear as
{"num": int, "den": int}.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import FilteredComplex, Generator, GradedRanks
from .errors import NonIntegral, ParseError


def fraction_json(x) -> Any:
    x = Fraction(x)
    if x.denominator == 1:
        return int(x)
    return {"num": x.numerator, "den": x.denominator}


def json_fraction(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, dict)):
        raise ParseError(f"expected integer or num/den object, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    try:
        return Fraction(v["num"], v["den"])
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {v!r}") from exc


def complex_to_json(c: FilteredComplex) -> dict:
    gens = []
    for g in c.generators:
        if g.alexander.denominator != 1:
            raise NonIntegral(f"generator {g.name} has non-integral Alexander grading")
        m4 = g.maslov * 4
        if m4.denominator != 1:
            raise NonIntegral(f"generator {g.name} has Maslov grading off the 1/4 lattice")
        gens.append({"name": g.name, "alexander": int(g.alexander), "maslov_x4": int(m4)})
    entries = [
        {"from": src, "to": tgt, "u_power": k}
        for src, tgt, k in sorted(c.entries(), key=lambda e: (c.order(e[0]), c.order(e[1])))
    ]
    return {"generators": gens, "differential": entries}


def complex_from_json(data) -> FilteredComplex:
    if not isinstance(data, dict) or "generators" not in data or "differential" not in data:
        raise ParseError("complex JSON needs 'generators' and 'differential'")
    gens = []
    try:
        for item in data["generators"]:
            gens.append(Generator(str(item["name"]), int(item["alexander"]),
                                  Fraction(int(item["maslov_x4"]), 4)))
        diff: dict[str, dict[str, int]] = {}
        for item in data["differential"]:
            diff.setdefault(str(item["from"]), {})[str(item["to"])] = int(item["u_power"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed complex JSON: {exc}") from exc
    try:
        return FilteredComplex(gens, diff)
    except Exception as exc:
        raise ParseError(f"inconsistent complex JSON: {exc}") from exc


def ranks_json(ranks: GradedRanks, keys: tuple[str, ...]) -> dict:
    table = []
    for key, rank in sorted(ranks.ranks.items(), key=lambda it: _sort_key(it[0])):
        table.append({"key": {name: fraction_json(v) for name, v in zip(keys, key)},
                      "rank": rank})
    torsion = []
    for key, orders in sorted(ranks.torsion.items(), key=lambda it: _sort_key(it[0])):
        torsion.append({"key": {name: fraction_json(v) for name, v in zip(keys, key)},
                        "orders": list(orders)})
    return {"ranks": table, "torsion": torsion, "total_rank": ranks.total_rank}


def _sort_key(key: tuple):
    return tuple(Fraction(v) for v in key)


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
