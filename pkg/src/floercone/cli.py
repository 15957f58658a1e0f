"""Command line driver: model building, surgery, dual knots, contact arithmetic.

Exit codes: 0 success, 1 domain errors (bad parameters, excluded
coefficients, unsupported models), 2 malformed input or I/O failure.
Output is deterministic: identical invocations emit identical bytes.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import serialize
from .algebra import check_complex, homology
from .cone import build_cone
from .contact import (
    LegendrianData,
    c1_plus_one_surgery,
    c1_positive_integer_surgery,
    c1_surgery_cobordism,
    characterize_all_minus_two,
    distinctness_pipeline,
    negative_expansion,
    positive_expansion,
)
from .dual import build_dual_cone, g_map, loss_grading, normal_form
from .errors import DomainError, ParseError
from .models import (
    alexander_polynomial,
    box,
    dual_normal_form_model,
    flip,
    hat_knot_homology,
    minus_twist_knot,
    mirror,
    poly_string,
    staircase,
    unknot,
)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def _read_complex(path: str | None):
    text = sys.stdin.read() if path in (None, "-") else _read_file(path)
    return serialize.complex_from_json(serialize.loads(text))


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _emit(payload, out: str | None) -> None:
    text = serialize.dumps(payload)
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _build_model(args) -> "FilteredComplex":
    picked = [name for name in ("minus_en", "dual_normal", "staircase", "box", "unknot")
              if getattr(args, name)]
    if len(picked) != 1:
        raise ParseError("pick exactly one of --minus-en, --dual-normal, "
                         "--staircase, --box, --unknot")
    name = picked[0]
    if name == "minus_en":
        c = minus_twist_knot(args.minus_en)
    elif name == "dual_normal":
        c = dual_normal_form_model(args.dual_normal)
    elif name == "staircase":
        c = staircase()
    elif name == "box":
        c = box()
    else:
        c = unknot()
    return mirror(c) if args.mirror else c


def cmd_model(args) -> int:
    _emit(serialize.complex_to_json(_build_model(args)), args.out)
    return 0


def cmd_validate(args) -> int:
    data = serialize.loads(sys.stdin.read() if args.path in (None, "-") else _read_file(args.path))
    payloads = []
    if isinstance(data, dict) and "generators" in data:
        payloads.append(data)
    elif isinstance(data, dict) and "kind" in data:
        if "complex" in data:
            payloads.append(data["complex"])
    else:
        raise ParseError("unrecognized payload: neither a complex nor a report")
    for payload in payloads:
        c = serialize.complex_from_json(payload)
        report = check_complex(c)
        if not report.ok:
            sys.stderr.write(str(report) + "\n")
            raise DomainError("complex fails validation")
    _emit({"kind": "validation", "ok": True, "complexes": len(payloads)}, None)
    return 0


def cmd_surgery(args) -> int:
    c = _read_complex(args.infile)
    cone = build_cone(c, flip(c), args.p, args.q, args.range)
    sectors = [args.sector % abs(args.p)] if args.sector is not None else list(cone.sectors)
    table = {}
    for i in sectors:
        ranks = cone.sector_homology(i, args.flavor)
        table[str(i)] = serialize.ranks_json(ranks, ("maslov",) if args.flavor == "hat"
                                             else ("maslov_parity",))
    payload = {
        "kind": "surgery_report",
        "p": args.p, "q": args.q, "flavor": args.flavor, "range": args.range,
        "genus": cone.genus,
        "vertices": [{"segment": v.segment, "t": v.t, "s": v.s} for v in cone.vertices()],
        "sectors": table,
        "complex": serialize.complex_to_json(c),
    }
    _emit(payload, args.out)
    return 0


def cmd_dualknot(args) -> int:
    if args.model.startswith("minus-en:"):
        c = minus_twist_knot(int(args.model.split(":", 1)[1]))
    elif args.model == "staircase":
        c = staircase()
    else:
        c = _read_complex(args.model)
    dc = build_dual_cone(c, flip(c), args.n)
    payload = {"kind": "dualknot_report", "framing": args.n, "genus": dc.genus}
    if args.check == "normalform":
        nf = normal_form(dc)
        payload["summands"] = [
            {"kind": s.kind, "names": list(s.names),
             "positions": [[serialize.fraction_json(a), serialize.fraction_json(m)]
                           for a, m in s.position]}
            for s in nf.summands
        ]
        payload["counts"] = {kind: nf.count(kind) for kind in ("free", "horizontal", "vertical")}
        payload["complex"] = serialize.complex_to_json(nf.form.complex)
    else:
        nf = normal_form(dc)
        rep = g_map(nf.form.complex)
        payload["gmap"] = {
            "alexander": serialize.fraction_json(rep.alexander),
            "domain_dim": rep.domain_dim,
            "codomain_dim": rep.codomain_dim,
            "rank": rep.map_rank,
            "injective": rep.injective,
            "matrix": rep.matrix,
        }
    _emit(payload, args.out)
    return 0


def cmd_dgs(args) -> int:
    r = _rational(args.r)
    exp = negative_expansion(r) if r < 0 else positive_expansion(r)
    payload = {
        "kind": "dgs_expansion",
        "r": serialize.fraction_json(r),
        "expansion_kind": exp.kind,
        "a": list(exp.a),
        "e": exp.e,
        "stabilizations": list(exp.stabilizations),
        "surgery_signs": list(exp.surgery_signs),
        "round_trip": serialize.fraction_json(exp.evaluate()),
    }
    if r < 0:
        flag, ell = characterize_all_minus_two(r)
        payload["all_minus_two"] = flag
        if ell is not None:
            payload["ell"] = ell
    _emit(payload, args.out)
    return 0


def cmd_c1(args) -> int:
    l = LegendrianData(args.tb, args.rot, args.y)
    if args.formula == "cobordism":
        value = c1_surgery_cobordism(l, args.p, args.q)
    elif args.formula == "posint":
        value = c1_positive_integer_surgery(l, args.n)
    else:
        value = c1_plus_one_surgery(l)
    _emit({"kind": "c1", "formula": args.formula, "value": value}, args.out)
    return 0


def cmd_pipeline(args) -> int:
    report = distinctness_pipeline(args.n, _rational(args.r), args.m)
    if args.format == "json":
        _emit({
            "kind": "pipeline_report",
            "n": report.n,
            "r": serialize.fraction_json(report.r),
            "m": report.m,
            "case": report.case,
            "distinct": report.distinct,
            "steps": [s.as_dict() for s in report.steps],
        }, args.out)
    else:
        lines = [f"pipeline n={report.n} r={report.r}" + (f" m={report.m}" if report.m != 1 else "")]
        for i, step in enumerate(report.steps, 1):
            mark = {True: "ok", False: "FAIL", None: "trusted"}[step.verified]
            values = ", ".join(f"{k}={v}" for k, v in step.values.items())
            lines.append(f"  {i}. [{step.kind}/{mark}] {step.title}: {values}")
        lines.append(report.verdict)
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_loss(args) -> int:
    _emit({"kind": "loss_grading", "tb": args.tb, "rot": args.rot,
           "alexander": loss_grading(args.tb, args.rot)}, args.out)
    return 0


def cmd_knot_homology(args) -> int:
    c = _build_model(args)
    ranks = hat_knot_homology(c)
    poly = alexander_polynomial(c)
    _emit({
        "kind": "knot_homology",
        "hat_ranks": serialize.ranks_json(ranks, ("alexander", "maslov")),
        "alexander_polynomial": {str(a): coef for a, coef in sorted(poly.items())},
        "alexander_polynomial_str": poly_string(poly),
    }, args.out)
    return 0


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--minus-en", dest="minus_en", type=int, metavar="N",
                   help="mirror twist-knot model, N odd")
    p.add_argument("--dual-normal", dest="dual_normal", type=int, metavar="N",
                   help="dual-knot normal form model, N odd")
    p.add_argument("--staircase", action="store_true")
    p.add_argument("--box", action="store_true")
    p.add_argument("--unknot", action="store_true")
    p.add_argument("--mirror", action="store_true", help="dualize the chosen model")
    p.add_argument("--out", default=None)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="floercone",
        description="Exact mapping-cone computations for surgery on knot Floer models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", help="emit a model complex as JSON")
    _add_model_flags(p)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("validate", help="check a complex or report file")
    p.add_argument("path", nargs="?", default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("surgery", help="mapping cone ranks for p/q surgery")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--flavor", choices=("hat", "infinity"), default="hat")
    p.add_argument("--range", choices=("paper", "full"), default="paper")
    p.add_argument("--sector", type=int, default=None)
    p.add_argument("--in", dest="infile", default=None, help="complex JSON (default stdin)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_surgery)

    p = sub.add_parser("dualknot", help="dual-knot cone reports")
    p.add_argument("--n", type=int, required=True, help="integer framing")
    p.add_argument("--model", default="-", help="minus-en:N, staircase, or a JSON path")
    p.add_argument("--check", choices=("normalform", "gmap"), default="normalform")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_dualknot)

    p = sub.add_parser("dgs", help="contact surgery continued-fraction expansion")
    p.add_argument("--r", required=True,
                   help="nonzero rational; write fractions as --r=-7/2")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_dgs)

    p = sub.add_parser("c1", help="first-Chern-class pairing formulas")
    p.add_argument("--formula", choices=("cobordism", "posint", "plusone"), required=True)
    p.add_argument("--tb", type=int, default=0)
    p.add_argument("--rot", type=int, default=0)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--y", type=int, default=1, help="order of the knot class")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_c1)

    p = sub.add_parser("pipeline", help="distinctness pipeline for contact r-surgery")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", required=True, help="negative rational; write fractions as --r=-5/2")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("loss", help="Alexander grading of the Legendrian invariant")
    p.add_argument("--tb", type=int, required=True)
    p.add_argument("--rot", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_loss)

    p = sub.add_parser("knot-homology", help="hat knot homology and Alexander polynomial")
    _add_model_flags(p)
    p.set_defaults(func=cmd_knot_homology)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
