"""Command line interface: ``conwaytopo {cf,form,lyapunov} ...``.

Exit codes: 0 success, 2 unparseable input, 3 input outside a command's
domain (wrong form class, negative path, zero denominator, ...).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .cfrac import (
    ContinuedFraction,
    cf_canonical,
    cf_conjugate,
    cf_expand,
    cf_is_pure_periodic,
    cf_negate,
    cf_value,
    parse_cf,
    qi_is_galois,
)
from .errors import DomainError, ParseError
from .lyapunov import Path, lambda_form, lambda_monoid, lambda_monoid_exact, theorem_ratio
from .quadratic import QuadraticIrrational, as_exact, parse_value
from .render import to_dot, to_svg
from .river import find_lakes, find_river
from .topograph import (
    INFINITY,
    classify_form,
    form_values,
    is_galois_form,
    parse_form,
    roots,
)

EXIT_PARSE = 2
EXIT_DOMAIN = 3


def _read(arg: str) -> str:
    if arg == "-":
        return sys.stdin.readline().strip()
    return arg


def _looks_like_cf(text: str) -> bool:
    return text.lstrip().lstrip("-").lstrip().startswith("[")


def _cf_input(text: str) -> ContinuedFraction:
    """A continued fraction in bracket notation or any value to expand."""
    if _looks_like_cf(text):
        return parse_cf(text)
    return cf_expand(as_exact(parse_value(text)))


def _path_input(text: str) -> Path:
    stripped = text.strip()
    if stripped == "" or set(stripped) <= {"L", "R"}:
        return Path(stripped)
    if _looks_like_cf(stripped):
        return Path(parse_cf(stripped))
    return Path(as_exact(parse_value(stripped)))


def _emit(data, fmt: str, text: Optional[str] = None) -> None:
    if fmt == "json" or text is None:
        print(json.dumps(data, indent=2))
    else:
        print(text)


# -- cf -------------------------------------------------------------------


def cmd_cf(args) -> int:
    raw = _read(args.input)
    op = args.op
    if op == "expand":
        x = as_exact(parse_value(raw))
        cf = cf_expand(x)
        _emit({"value": str(x), "cf": str(cf), **cf.to_json()}, args.format, str(cf))
    elif op == "value":
        cf = parse_cf(raw) if _looks_like_cf(raw) else cf_expand(as_exact(parse_value(raw)))
        v = cf_value(cf)
        _emit({"cf": str(cf), "value": str(v)}, args.format, str(v))
    elif op == "conjugate":
        cf = _cf_input(raw)
        conj = cf_conjugate(cf)
        _emit({"cf": str(cf_canonical(cf)), "conjugate": str(conj), **conj.to_json()}, args.format, str(conj))
    elif op == "negate":
        cf = _cf_input(raw)
        neg = cf_negate(cf)
        _emit({"cf": str(cf_canonical(cf)), "negation": str(neg), **neg.to_json()}, args.format, str(neg))
    elif op == "galois":
        cf = _cf_input(raw)
        v = cf_value(cf)
        if isinstance(v, QuadraticIrrational):
            result = qi_is_galois(v)
            pure = cf_is_pure_periodic(cf_canonical(cf))
        else:
            result = pure = False
        _emit(
            {"value": str(v), "cf": str(cf_canonical(cf)), "is_galois": result, "pure_periodic": pure},
            args.format,
            "true" if result else "false",
        )
    return 0


# -- form -----------------------------------------------------------------


def _root_str(r) -> str:
    return "inf" if r == INFINITY else str(r)


def cmd_form(args) -> int:
    Q = parse_form(_read(args.input))
    op = args.op
    base = {"form": [Q.a, Q.h, Q.b], "polynomial": str(Q)}
    if op == "classify":
        cls = classify_form(Q)
        _emit({**base, "class": str(cls), "discriminant": Q.discriminant}, args.format, str(cls))
    elif op == "values":
        t = form_values(Q)
        _emit({**base, "triple": list(t)}, args.format, f"{t.a},{t.b},{t.c}")
    elif op == "roots":
        rs = [_root_str(r) for r in roots(Q)]
        _emit({**base, "roots": rs}, args.format, "\n".join(rs))
    elif op == "galois":
        g = is_galois_form(Q)
        _emit({**base, "is_galois": g}, args.format, "true" if g else "false")
    elif op == "river":
        desc = find_river(Q)
        text = f"entry={desc.entry_path or '-'} period={desc.river_period}"
        _emit({**base, **desc.to_json()}, args.format, text)
    elif op == "lakes":
        desc = find_lakes(Q)
        text = f"river={','.join(desc.river_word) or '-'}"
        _emit({**base, **desc.to_json()}, args.format, text)
    elif op == "render":
        fmt = args.format if args.format in ("dot", "svg") else "dot"
        sys.stdout.write(to_svg(Q, args.depth) if fmt == "svg" else to_dot(Q, args.depth))
    return 0


# -- lyapunov -------------------------------------------------------------


def cmd_lyapunov(args) -> int:
    op = args.op
    inputs = [_read(x) for x in args.inputs]
    expect = 2 if op in ("form", "ratio") else 1
    if len(inputs) != expect:
        raise ParseError(f"lyapunov {op} takes {expect} argument(s), got {len(inputs)}")
    if op == "exact":
        d = lambda_monoid_exact(_cf_input(inputs[0]))
        value = d.value()
        data = {**d.to_json(), "lambda": f"{value:.{args.precision}f}"}
        _emit(data, args.format, f"rho={d.rho}, m={d.period_turns}")
        return 0
    if op == "monoid":
        series = lambda_monoid(_path_input(inputs[0]), args.steps)
        data = series.to_json(args.precision, full=args.full)
        _emit(data, args.format, data["log_ratio"])
        return 0
    Q = parse_form(inputs[0])
    path = _path_input(inputs[1])
    if op == "form":
        series = lambda_form(Q, path, args.steps)
        data = series.to_json(args.precision, full=args.full)
        _emit(data, args.format, data["log_ratio"])
    else:
        r = theorem_ratio(Q, path, args.steps)
        series = lambda_form(Q, path, args.steps)
        data = series.to_json(args.precision)
        data["kind"] = "ratio"
        data["ratio"] = f"{r:.{args.precision}f}"
        _emit(data, args.format, data["ratio"])
    return 0


# -- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conwaytopo",
        description="Exact continued fractions, topographs and growth exponents.",
    )
    parser.add_argument("--precision", type=int, default=12, help="decimal digits in printed logs")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cf = sub.add_parser("cf", help="continued fractions of quadratic irrationals")
    p_cf.add_argument("op", choices=["expand", "value", "conjugate", "negate", "galois"])
    p_cf.add_argument("input", help="value such as (1+sqrt(5))/2, or [a0,..;(b1,..)]; '-' reads stdin")
    p_cf.add_argument("--format", choices=["text", "json"], default="text")
    p_cf.set_defaults(func=cmd_cf)

    p_form = sub.add_parser("form", help="binary quadratic forms and their topographs")
    p_form.add_argument("op", choices=["classify", "values", "roots", "galois", "river", "lakes", "render"])
    p_form.add_argument("input", help="'a,h,b' or a polynomial such as x^2-2*x*y-2*y^2")
    p_form.add_argument("--depth", type=int, default=3, help="render depth")
    p_form.add_argument("--format", choices=["text", "json", "dot", "svg"], default=None)
    p_form.set_defaults(func=cmd_form)

    p_ly = sub.add_parser("lyapunov", help="growth exponents along paths")
    p_ly.add_argument("op", choices=["form", "monoid", "ratio", "exact"])
    p_ly.add_argument("inputs", nargs="+", help="[form] path; a path is a value, a CF or an L/R word")
    p_ly.add_argument("--steps", type=int, default=1000)
    p_ly.add_argument("--format", choices=["text", "json"], default=None)
    p_ly.add_argument("--full", action="store_true", help="include the whole series")
    p_ly.set_defaults(func=cmd_lyapunov)
    return parser


_DEFAULT_FORMAT = {
    ("form", "river"): "json",
    ("form", "lakes"): "json",
    ("form", "render"): "dot",
    ("lyapunov", "form"): "json",
    ("lyapunov", "monoid"): "json",
    ("lyapunov", "ratio"): "json",
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", None) is None:
        args.format = _DEFAULT_FORMAT.get((args.command, args.op), "text")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, ZeroDivisionError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
