"""Command line entry point ``skeinlab``.

Every subcommand prints one JSON document on stdout carrying a versioned
``schema`` field.  Exit status: 0 on success, 1 when a verification fails,
2 on usage or input errors (the error document names its class).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import corpus
from .atlcalc import StrandElement, reduce_annulus
from .chebseries import a_coefficients, cheb_T, t_plus_one, xc_truncated
from .diagram import MorseWord, WordError, components, format_word, parse, random_word
from .dehnverify import CalibrationError, calibrate, verify_main, verify_twist_powers
from .exactnum import MAX_ORDER, divisibility_order
from .filtration import (A_PLUS_ONE, combination_bracket, finite_type_sum, star_element,
                         valuation_algebra, valuation_strand)
from .schemas import schema_id
from .statesum import state_sum
from .tlcalc import bracket, reduce_disk, star_bracket

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 20240611


class UsageError(Exception):
    kind = "usage-error"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    env = os.environ.get("SKEINLAB_WORKERS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise UsageError(f"SKEINLAB_WORKERS must be an integer, got {env!r}") from None


def load_word(source: str) -> MorseWord:
    if source.startswith("corpus:"):
        try:
            return corpus.get(source[len("corpus:"):])
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    if source == "-":
        return parse(sys.stdin.read())
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    return parse(text)


def _doc(name: str, **fields) -> dict:
    return {"schema": schema_id(name), **fields}


def _order_json(k: int):
    return k if k < MAX_ORDER else "infinite"


# -- handlers -------------------------------------------------------------------

def cmd_parse(args):
    w = load_word(args.file)
    cmap = components(w)
    doc = _doc("parse", ok=True, ambient=w.ambient, bottom=w.bottom, top=w.top, slices=len(w.slices),
               crossings=w.crossing_count(), components=len(cmap), word=format_word(w))
    if not args.check:
        doc["component_table"] = [{"index": c.index, "closed": c.closed, "core": c.is_core, "slices": list(c.slices)}
                                  for c in cmap.components]
    return doc, EXIT_OK


def cmd_bracket(args):
    k = bracket(load_word(args.file))
    return _doc("bracket", laurent=k.to_json(), text=str(k)), EXIT_OK


def cmd_star_bracket(args):
    k = star_bracket(load_word(args.file), args.mark)
    return _doc("star-bracket", laurent=k.to_json(), marked=sorted(set(args.mark)),
                divisibility_by_A_plus_1=_order_json(divisibility_order(k, A_PLUS_ONE))), EXIT_OK


def cmd_reduce(args):
    w = load_word(args.file)
    if w.ambient == "disk":
        el = reduce_disk(w)
        terms = [{"diagram": d.to_json(), "coeff": c.to_json()}
                 for d, c in sorted(el.terms.items(), key=lambda kv: kv[0].partner)]
    else:
        terms = reduce_annulus(w).to_json()
    return _doc("reduce", ambient=w.ambient, bottom=w.bottom, top=w.top, terms=terms), EXIT_OK


def cmd_cheb(args):
    if args.n < 0:
        raise UsageError("n must be >= 0")
    poly = t_plus_one(args.n) if args.plus_one else cheb_T(args.n)
    coeffs = [str(poly.coeff(i)) for i in range(poly.degree() + 1)] if poly.degree() >= 0 else []
    return _doc("cheb", n=args.n, kind="T+1" if args.plus_one else "T", coefficients=coeffs), EXIT_OK


def cmd_acoef(args):
    if args.N < 2:
        raise UsageError("N must be >= 2")
    return _doc("acoef", N=args.N, a=[str(a) for a in a_coefficients(args.N)]), EXIT_OK


def cmd_xc(args):
    if args.order < 2:
        raise UsageError("--order must be >= 2")
    x = xc_truncated(args.order)
    return _doc("xc", order=args.order, series=x.series.to_json()), EXIT_OK


def cmd_valuation(args):
    if args.cap < 1:
        raise UsageError("--cap must be >= 1")
    w = load_word(args.file)
    if w.ambient != "annulus":
        raise UsageError("valuation needs an annulus word")
    el = reduce_annulus(w)
    if args.mode == "algebra":
        if not el.is_closed:
            raise UsageError("algebra mode needs a closed word")
        rep = valuation_algebra(el, args.cap)
    else:
        if (el.bottom, el.top) != (1, 1):
            raise UsageError("strand mode needs a word with one point on each boundary")
        rep = valuation_strand(StrandElement.from_atl(el), args.cap)
    return _doc("valuation", **rep.to_json()), EXIT_OK


def cmd_finite_type(args):
    try:
        res = finite_type_sum(load_word(args.file), args.order)
    except ValueError as exc:
        if isinstance(exc, WordError):
            raise
        raise UsageError(str(exc)) from None
    return _doc("finite-type", **res.to_json()), EXIT_OK


def cmd_star(args):
    terms = star_element(load_word(args.file), args.mark)
    k = combination_bracket(terms)
    return _doc("star", marked=sorted(set(args.mark)), laurent=k.to_json(),
                terms=[{"weight": wt, "word": format_word(w)} for wt, w in terms]), EXIT_OK


def _run_case(case):
    kind, m, n = case
    rep = verify_main(m, n) if kind == "dehn" else verify_twist_powers(m, n)
    return rep.to_json()


def cmd_verify(args):
    if args.what == "dehn":
        cases = [("dehn", m, n) for m in args.strands for n in args.order]
        for _, m, n in cases:
            if not 1 <= m <= 3 or n < 1:
                raise UsageError("dehn needs strands in 1..3 and order >= 1")
    else:
        cases = [("twist-powers", m, n) for m in args.strands for n in args.power]
        for _, m, n in cases:
            if m not in (1, 2) or not 1 <= n <= 4:
                raise UsageError("twist-powers needs strands in 1..2 and power in 1..4")
    workers = _workers(args)
    if workers > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_case, cases))
    else:
        reports = [_run_case(c) for c in cases]
    reports.sort(key=lambda r: (r["lemma"], r["strands"], r["order"]))
    passed = all(r["passed"] for r in reports)
    return _doc("verify", passed=passed, reports=reports), EXIT_OK if passed else EXIT_FAIL


def cmd_calibrate(args):
    try:
        prof = calibrate()
    except CalibrationError as exc:
        return _doc("error", error="calibration-error", message=str(exc)), EXIT_FAIL
    data = prof.to_json()
    transcript = data.pop("transcript")
    return _doc("calibrate", profile=data, transcript=transcript), EXIT_OK


def cmd_selfcheck(args):
    """Random words reduced slice by slice and by the all-states oracle."""
    rng = random.Random(args.seed)
    mismatches = []
    for i in range(args.count):
        ambient = "disk" if i % 2 else "annulus"
        bottom = rng.choice((0, 1, 2)) if ambient == "annulus" else 0
        top = bottom if ambient == "annulus" else 0
        w = random_word(rng, ambient, bottom, top, max_crossings=args.max_crossings)
        got = reduce_disk(w) if ambient == "disk" else reduce_annulus(w)
        if got != state_sum(w):
            mismatches.append(format_word(w))
    reports = [{"lemma": "oracle-agreement", "strands": 0, "order": args.count, "passed": not mismatches,
                "runtime": 0.0, "seed": args.seed, "mismatches": mismatches}]
    return _doc("verify", passed=not mismatches, reports=reports), EXIT_OK if not mismatches else EXIT_FAIL


# -- wiring -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="skeinlab", description="Kauffman bracket skein calculus for the disk and the annulus.")
    p.add_argument("--format", choices=("json", "text"), default="json", help="output format (default json)")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default $SKEINLAB_WORKERS or 1)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomised suites")
    p.add_argument("--json", dest="format", action="store_const", const="json", help="same as --format json")
    # the output flags are also accepted after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--json", dest="format", action="store_const", const="json", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common],
                       help="parse and validate a word file")
    s.add_argument("file")
    s.add_argument("--check", action="store_true", help="validate and echo the canonical form only")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("bracket", parents=[common],
                       help="Kauffman bracket of a closed disk word")
    s.add_argument("file")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("star-bracket", parents=[common],
                       help="bracket of the weighted sublink sum")
    s.add_argument("file")
    s.add_argument("--mark", type=int, nargs="*", default=[])
    s.set_defaults(func=cmd_star_bracket)

    s = sub.add_parser("reduce", parents=[common],
                       help="normal form in the Temperley-Lieb basis")
    s.add_argument("file")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("cheb", parents=[common],
                       help="Chebyshev polynomial T_n or (T+1)_n")
    s.add_argument("n", type=int)
    s.add_argument("--plus-one", action="store_true")
    s.set_defaults(func=cmd_cheb)

    s = sub.add_parser("acoef", parents=[common],
                       help="coefficients a_2..a_N of (log(1-z))^2")
    s.add_argument("N", type=int)
    s.set_defaults(func=cmd_acoef)

    s = sub.add_parser("xc", parents=[common],
                       help="truncated twist element as a series in u, w")
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_xc)

    s = sub.add_parser("valuation", parents=[common],
                       help="filtration valuation of an annulus word")
    s.add_argument("file")
    s.add_argument("--mode", choices=("algebra", "strand"), required=True)
    s.add_argument("--cap", type=int, default=8)
    s.set_defaults(func=cmd_valuation)

    s = sub.add_parser("finite-type", parents=[common],
                       help="alternating sublink sum and its (A+1)-divisibility")
    s.add_argument("file")
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_finite_type)

    s = sub.add_parser("star", parents=[common],
                       help="the weighted sublink sum as words")
    s.add_argument("file")
    s.add_argument("--mark", type=int, nargs="*", default=[])
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("verify", help="verification suites")
    vs = s.add_subparsers(dest="what", required=True, parser_class=_Parser)
    d = vs.add_parser("dehn", parents=[common], help="log of the twist against sigma(x_c)")
    d.add_argument("--strands", type=int, nargs="+", default=[1])
    d.add_argument("--order", type=int, nargs="+", default=[4])
    d.set_defaults(func=cmd_verify)
    q = vs.add_parser("twist-powers", aliases=["lemma421"], parents=[common],
                     help="powers of (t - 1) land deep in the filtration")
    q.add_argument("--strands", type=int, nargs="+", default=[1])
    q.add_argument("--power", type=int, nargs="+", default=[1])
    q.set_defaults(func=cmd_verify)

    s = sub.add_parser("selfcheck", parents=[common],
                       help="random words against the all-states oracle (uses --seed)")
    s.add_argument("--count", type=int, default=40)
    s.add_argument("--max-crossings", type=int, default=8)
    s.set_defaults(func=cmd_selfcheck)

    s = sub.add_parser("calibrate", parents=[common],
                       help="run the convention gates on all four profiles")
    s.set_defaults(func=cmd_calibrate)
    return p


def _text(doc: dict) -> str:
    lines = []
    for k, v in doc.items():
        if k == "schema":
            continue
        lines.append(f"{k}: {v if not isinstance(v, (list, dict)) else json.dumps(v)}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    fmt = "json"
    try:
        args = parser.parse_args(argv)
        fmt = args.format
        doc, code = args.func(args)
    except UsageError as exc:
        doc, code = _doc("error", error=exc.kind, message=str(exc)), EXIT_USAGE
    except WordError as exc:
        doc, code = _doc("error", **exc.to_json()), EXIT_USAGE
    if code == EXIT_USAGE:
        print(doc["message"], file=sys.stderr)
    out = json.dumps(doc, sort_keys=False) if fmt == "json" else _text(doc)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
