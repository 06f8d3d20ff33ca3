"""Command line front end.

Negative literals must follow ``--`` (``padic-cf expand -p 2 -- -1``) or be
quoted together with their option, since a leading ``-`` otherwise reads as
a flag.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any

from . import conjugacy, dynamics, formats, padic_core, selftest
from .errors import NotDyadic, PAdicError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TRUNCATED = 3


@dataclass
class CommandResult:
    ok: bool = True
    payload: dict = field(default_factory=dict)
    text: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    error_kind: str | None = None
    message: str | None = None


def _error(kind: str, message: str) -> CommandResult:
    return CommandResult(ok=False, exit_code=EXIT_ERROR, error_kind=kind, message=message)


def cmd_expand(ctx, args) -> CommandResult:
    x = formats.parse_rational(args.x)
    exp = dynamics.cf_expand(ctx, x, args.cap)
    payload = formats.expansion_to_dict(exp)
    payload["length"] = len(exp.pairs)
    text = [
        f"pairs: {formats.format_cf(exp.pairs) or '(none)'}",
        f"terminal: {exp.terminal.value}",
        f"length: {len(exp.pairs)}",
    ]
    res = CommandResult(payload=payload, text=text)
    if not exp.terminated:
        text.append(f"residual: {exp.residual} (cap {args.cap} reached; raise --cap)")
        res.exit_code = EXIT_TRUNCATED
    return res


def cmd_eval(ctx, args) -> CommandResult:
    pairs = formats.parse_cf(ctx, args.pairs)
    tail = formats.parse_rational(args.tail)
    value = dynamics.cf_eval_exact(ctx, pairs, tail)
    return CommandResult(payload={"value": str(value)}, text=[str(value)])


def cmd_conjugate(ctx, args) -> CommandResult:
    if formats.looks_like_approx(args.x):
        a = formats.parse_approx(ctx, args.x)
        image = conjugacy.f_approx(ctx, a, args.cap)
        s = formats.format_approx(image)
        return CommandResult(payload={"image": s, "precision": str(image.precision)}, text=[s])
    x = formats.parse_rational(args.x)
    image = conjugacy.f_rational(ctx, x, args.cap)
    return CommandResult(
        payload={"image": str(image), "value": str(image.value)},
        text=[f"{image}  (= {image.value})"],
    )


def cmd_invert(ctx, args) -> CommandResult:
    if formats.looks_like_approx(args.y):
        a = formats.parse_approx(ctx, args.y)
        pre = conjugacy.f_inverse_approx(ctx, a, args.cap)
        s = formats.format_approx(pre)
        return CommandResult(payload={"preimage": s}, text=[s])
    try:
        y = formats.parse_dyadic(ctx, args.y)
    except NotDyadic as exc:
        return _error(exc.kind, f"{exc}; use 'classify' for arbitrary rationals")
    x = conjugacy.f_inverse_dyadic(ctx, y, args.cap)
    return CommandResult(payload={"preimage": str(x)}, text=[str(x)])


def cmd_classify(ctx, args) -> CommandResult:
    y = formats.parse_rational(args.y)
    c = conjugacy.classify_preimage(ctx, y, args.cap)
    if isinstance(c, conjugacy.RationalPreimage):
        text = [f"rational preimage: {c.x}"]
    else:
        text = ["irrational preimage"]
    return CommandResult(payload=formats.classification_to_dict(c), text=text)


def cmd_orbit(ctx, args) -> CommandResult:
    x = formats.parse_rational(args.x)
    if args.n < 0:
        return _error("ParseError", "number of steps must be nonnegative")
    if args.map == "sigma":
        rec = dynamics.sigma_orbit(ctx, x, args.n)
    else:
        rec = dynamics.tau_orbit(ctx, x, args.n)
    iterates = [str(v) for v in rec.iterates]
    text = list(iterates)
    if rec.terminated:
        text[-1] += " (fixed)"
    payload: dict[str, Any] = {"map": args.map, "iterates": iterates, "fixed": rec.terminated}
    if rec.pairs:
        payload["pairs"] = [[pr.e, pr.a] for pr in rec.pairs]
    return CommandResult(payload=payload, text=text)


def cmd_digits(ctx, args) -> CommandResult:
    x = formats.parse_rational(args.x)
    s = padic_core.rational_to_digit_stream(ctx, x)
    out = formats.format_stream(s)
    payload = {"stream": out}
    text = [out]
    if x == 0 or padic_core.valuation(ctx, x) < args.precision:
        trunc = formats.format_approx(padic_core.approx_from_rational(ctx, x, args.precision))
        payload["truncation"] = trunc
        text.append(f"mod {ctx.p}^{args.precision}: {trunc}")
    return CommandResult(payload=payload, text=text)


def cmd_selftest(ctx, args) -> CommandResult:
    results = selftest.run_selftest(ctx, seed=args.seed, samples=args.samples, cap=args.cap)
    text = []
    suites = {}
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        line = f"{status} {r.name}: {r.passed} passed, {r.failed} failed"
        if r.unterminated:
            line += f", {r.unterminated} not terminated within cap"
        text.append(line)
        suites[r.name] = {"passed": r.passed, "failed": r.failed, "unterminated": r.unterminated}
    ok = all(r.ok for r in results)
    res = CommandResult(ok=ok, payload={"suites": suites, "all_passed": ok}, text=text)
    if not ok:
        res.exit_code = EXIT_ERROR
        res.error_kind = "SelftestFailed"
        res.message = "one or more property suites failed"
    return res


COMMANDS = {
    "expand": cmd_expand,
    "eval": cmd_eval,
    "conjugate": cmd_conjugate,
    "invert": cmd_invert,
    "classify": cmd_classify,
    "orbit": cmd_orbit,
    "digits": cmd_digits,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--prime", type=int, default=2, help="the prime p (default 2)")
    common.add_argument("-N", "--precision", type=int, default=32, help="absolute p-adic precision (default 32)")
    common.add_argument("--cap", type=int, default=dynamics.DEFAULT_CAP, help="tau-orbit iteration cap")
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized selftest")

    parser = argparse.ArgumentParser(
        prog="padic-cf",
        description="p-adic continued fractions, the digit shift and the conjugacy between them.",
        epilog="Negative literals need '--' before them, e.g. 'padic-cf expand -p 2 -- -1'.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="continued fraction expansion of a rational")
    p.add_argument("x", help="rational literal num/den")
    p = sub.add_parser("eval", parents=[common], help="evaluate a finite continued fraction")
    p.add_argument("pairs", help='pairs like "(2,1)(1,1)"')
    p.add_argument("tail", nargs="?", default="0", help="value below the last pair (default 0)")
    p = sub.add_parser("conjugate", parents=[common], help="apply f to a rational or an approximation")
    p.add_argument("x", help="rational num/den, or approximation e:d0,d1,...")
    p = sub.add_parser("invert", parents=[common], help="preimage under f of m*p^k or an approximation")
    p.add_argument("y", help="m*p^k, a rational with p-power denominator, or e:d0,d1,...")
    p = sub.add_parser("classify", parents=[common], help="is the preimage of y rational?")
    p.add_argument("y", help="rational literal")
    p = sub.add_parser("orbit", parents=[common], help="trace an orbit of tau or sigma")
    p.add_argument("x", help="rational literal")
    p.add_argument("n", type=int, help="maximum number of steps")
    p.add_argument("--map", choices=["tau", "sigma"], default="tau")
    p = sub.add_parser("digits", parents=[common], help="exact p-adic digit stream of a rational")
    p.add_argument("x", help="rational literal")
    p = sub.add_parser("selftest", parents=[common], help="run the randomized property suites")
    p.add_argument("--samples", type=int, default=200, help="samples per suite (default 200)")
    return parser


def _emit(args, res: CommandResult, out, err) -> None:
    if args.format == "structured":
        doc: dict[str, Any] = {"command": args.command, "status": "ok" if res.ok else "error"}
        if res.error_kind:
            doc["error"] = {"kind": res.error_kind, "message": res.message}
        if res.payload:
            doc["result"] = res.payload
        out.write(json.dumps(doc) + "\n")
        if not res.ok:
            err.write(f"error: {res.message}\n")
        return
    for line in res.text:
        out.write(line + "\n")
    if not res.ok:
        err.write(f"error ({res.error_kind}): {res.message}\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.precision < 1:
            raise PAdicError("precision must be at least 1")
        if args.cap < 1:
            raise PAdicError("cap must be at least 1")
        ctx = padic_core.PrimeContext(args.prime)
        res = COMMANDS[args.command](ctx, args)
    except PAdicError as exc:
        res = _error(exc.kind, str(exc))
    _emit(args, res, out, err)
    return res.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
