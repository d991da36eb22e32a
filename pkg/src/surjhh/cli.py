"""Command line entry point: ``surjhh {diff,compose,cut,hh,verify}``.

Exit codes: 0 on success (for ``verify``, every check passed), 1 when a
verification check fails, 2 on malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .hochschild import DEFAULT_TRUNCATION, HochschildComplex, cochain_algebra, format_bar_sum, parse_algebra
from .operad import OperadElement, compose, parse_surjection
from .pipeline import verify
from .simplicial import SIGN_CONVENTIONS, format_tensor, interval_cut_action, parse_chain, parse_space

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


class InputError(Exception):
    """Malformed command line input; the message names the offending argument."""


def _parse(what: str, fn, *args):
    try:
        return fn(*args)
    except (ValueError, KeyError) as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else err
        raise InputError(f"{what}: {msg}") from None


def _element_json(x: OperadElement) -> list[dict]:
    return [{"surjection": list(u.seq), "coefficient": c} for u, c in x]


def _emit(args, text: str, doc) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def cmd_diff(args) -> int:
    u = _parse("surjection", parse_surjection, args.surjection)
    d = OperadElement.of(u).boundary()
    if not args.integral:
        d = d.mod2()
    _emit(args, str(d), {"input": list(u.seq), "boundary": _element_json(d), "integral": args.integral})
    return EXIT_OK


def cmd_compose(args) -> int:
    u = _parse("u", parse_surjection, args.u)
    v = _parse("v", parse_surjection, args.v)
    x = _parse("k", compose, u, args.k, v)
    if not args.integral:
        x = x.mod2()
    doc = {"u": list(u.seq), "k": args.k, "v": list(v.seq), "result": _element_json(x), "integral": args.integral}
    _emit(args, str(x), doc)
    return EXIT_OK


def cmd_cut(args) -> int:
    u = _parse("surjection", parse_surjection, args.surjection)
    X = _parse("space", parse_space, args.space)
    chain = _parse("chain", parse_chain, X, args.chain)
    out = _parse("surjection", interval_cut_action, u, X, chain, args.signs)
    if not args.integral:
        out = out.mod2()
    doc = {
        "surjection": list(u.seq),
        "space": X.name,
        "chain": args.chain,
        "signs": args.signs,
        "integral": args.integral,
        "terms": [{"factors": list(t), "coefficient": c} for t, c in out.items()],
    }
    _emit(args, out.format(format_tensor), doc)
    return EXIT_OK


def _load_algebra(target: str):
    if os.path.isfile(target):
        with open(target, encoding="utf-8") as fh:
            text = fh.read()
        return _parse(target, parse_algebra, text, os.path.basename(target))
    X = _parse("space", parse_space, target)
    return cochain_algebra(X)


def cmd_hh(args) -> int:
    if args.degree < 0:
        raise InputError("degree: must be non-negative")
    algebra = _load_algebra(args.target)
    C = _parse("algebra", HochschildComplex, algebra, args.truncation)
    classes = _parse("truncation", C.homology, args.degree)
    names = [format_bar_sum(c) for c in classes]
    text = "\n".join([f"dim HH_{args.degree} = {len(classes)}", *names])
    doc = {"degree": args.degree, "dimension": len(classes), "basis": names, "truncation": args.truncation}
    _emit(args, text, doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.truncation < 4:
        raise InputError("--truncation: must be at least 4 to reach HH_2")
    report = verify(truncation=args.truncation, integral=args.integral)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surjhh", description="Surjection operad and Hochschild homology over F2.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, integral=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if integral:
            p.add_argument("--integral", action="store_true", help="show integral signs instead of the mod-2 view")

    p = sub.add_parser("diff", help="boundary of a surjection")
    p.add_argument("surjection", help='e.g. "(1,2,1)"')
    common(p)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("compose", help="partial composition u ∘_k v")
    p.add_argument("u")
    p.add_argument("k", type=int)
    p.add_argument("v")
    common(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("cut", help="interval-cut action on a chain")
    p.add_argument("surjection")
    p.add_argument("space", help="delta:n or sphere:n")
    p.add_argument("chain", help='e.g. "e2" or "[0,1] + [1,2]"')
    p.add_argument("--signs", choices=SIGN_CONVENTIONS, default="tau", help="integral sign convention")
    common(p)
    p.set_defaults(func=cmd_cut)

    p = sub.add_parser("hh", help="a basis of HH_q of a cochain algebra or an algebra file")
    p.add_argument("target", help="delta:n, sphere:n or a path to an algebra table")
    p.add_argument("degree", type=int)
    p.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)
    common(p, integral=False)
    p.set_defaults(func=cmd_hh)

    p = sub.add_parser("verify", help="run every check on the 2-sphere")
    p.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)
    p.add_argument("--json", action="store_true")
    p.add_argument("--integral", action="store_true", help="add the integral sign checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as err:
        print(f"surjhh {args.command}: error: {err}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
