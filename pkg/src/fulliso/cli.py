"""Command-line front end.

Exit status: 0 when the command succeeds and any judgment holds, 1 when a
judgment is false (types differ, evaluation got stuck, ...), 2 for errors
and ill-formed input.  ``--porcelain`` switches to tab-separated
``key<TAB>value`` lines.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .castcalc import type_of
from .elaborate import check_elab, infer_elab, simulate
from .equiv import equal_e, head_normalize, synthesize_cast
from .errors import FullIsoError, ParseError, SearchExhausted
from .evaluation import DEFAULT_FUEL, evaluate
from .kernel import parse_cast, parse_term, parse_type, show_cast, show_term, show_type
from .kernel.syntax import erase
from .subtype import (
    DEFAULT_DEPTH, check_elab_sub, decompose, infer_elab_sub, sub_equi, sub_iso, type_of_sub,
)

OK, FALSE, ERROR = 0, 1, 2


class Out:
    def __init__(self, porcelain: bool, annotations: bool):
        self.porcelain = porcelain
        self.annotations = annotations

    def emit(self, key: str, value: str, human: Optional[str] = None):
        if self.porcelain:
            print(f"{key}\t{value}")
        else:
            print(value if human is None else human)

    def term(self, e):
        return show_term(e, self.annotations)

    def cast(self, c):
        return show_cast(c, self.annotations)


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _gamma(binds):
    gamma = {}
    for b in binds or ():
        name, sep, ty = b.partition(":")
        if not sep or not name.strip():
            raise ParseError(f"--bind expects NAME:TYPE, got {b!r}")
        gamma[name.strip()] = parse_type(ty)
    return gamma


# ---------------------------------------------------------------- commands


def cmd_parse(args, out: Out) -> int:
    src = _read(args.file)
    if args.kind == "type":
        out.emit("type", show_type(parse_type(src)))
    elif args.kind == "cast":
        out.emit("cast", out.cast(parse_cast(src)))
    else:
        out.emit("term", out.term(parse_term(src)))
    return OK


def cmd_typecheck(args, out: Out) -> int:
    e, gamma = parse_term(_read(args.file)), _gamma(args.bind)
    mode = args.mode
    if mode == "iso":
        ty = type_of(gamma, e)
    elif mode == "iso-sub":
        ty = type_of_sub(gamma, e)
    elif mode == "equi":
        ty = infer_elab(gamma, e)[0]
    else:
        ty = infer_elab_sub(gamma, e, args.depth)[0]
    out.emit("type", show_type(ty))
    if args.hnf:
        out.emit("head-normal", show_type(head_normalize(ty)[0]))
    if args.expect is None:
        return OK
    want = parse_type(args.expect)
    ok = {
        "iso": lambda: ty == want,
        "iso-sub": lambda: sub_iso((), ty, want),
        "equi": lambda: equal_e(ty, want),
        "equi-sub": lambda: sub_equi(ty, want),
    }[mode]()
    out.emit("expect", _bool(ok))
    return OK if ok else FALSE


def cmd_eval(args, out: Out) -> int:
    e = parse_term(_read(args.file))
    res = evaluate(e, args.mode, args.fuel, keep_trace=args.trace, warn_mismatch=args.mode == "iso")
    if args.trace:
        for line in res.trace.lines(out.annotations):
            out.emit("step", line, line)
    else:
        out.emit("result", out.term(res.term))
    out.emit("status", res.status.value, None if out.porcelain else f"# {res.status.value} after {res.steps} steps")
    return OK if res.is_value else FALSE


def cmd_elaborate(args, out: Out) -> int:
    e, gamma = parse_term(_read(args.file)), _gamma(args.bind)
    if args.check is not None:
        want = parse_type(args.check)
        e2 = check_elab_sub(gamma, e, want, args.depth) if args.sub else check_elab(gamma, e, want)
        ty = want
    elif args.sub:
        ty, e2 = infer_elab_sub(gamma, e, args.depth)
    else:
        ty, e2 = infer_elab(gamma, e)
    out.emit("term", out.term(e2))
    out.emit("type", show_type(ty), f": {show_type(ty)}")
    if args.hnf:
        out.emit("head-normal", show_type(head_normalize(ty)[0]))
    if not args.verify:
        return OK
    got = type_of_sub(gamma, e2) if args.sub else type_of(gamma, e2)
    typed = sub_iso((), got, ty) if args.sub else got == ty
    ok = typed and erase(e2) == e
    out.emit("verified", _bool(ok))
    return OK if ok else FALSE


def cmd_erase(args, out: Out) -> int:
    out.emit("term", out.term(erase(parse_term(_read(args.file)))))
    return OK


def cmd_equal(args, out: Out) -> int:
    a, b = parse_type(args.left), parse_type(args.right)
    ok = equal_e(a, b)
    out.emit("equal", _bool(ok))
    if ok and args.emit_cast:
        out.emit("cast", out.cast(synthesize_cast(a, b)))
    return OK if ok else FALSE


def cmd_subtype(args, out: Out) -> int:
    a, b = parse_type(args.left), parse_type(args.right)
    ok = sub_iso((), a, b) if args.mode == "iso" else sub_equi(a, b)
    out.emit("subtype", _bool(ok))
    if ok and args.decompose:
        c1, c2, cin, cout = decompose(a, b, args.depth)
        out.emit("c1", show_type(c1), f"C1 = {show_type(c1)}")
        out.emit("c2", show_type(c2), f"C2 = {show_type(c2)}")
        out.emit("cast-in", out.cast(cin), f"in  = {out.cast(cin)}")
        out.emit("cast-out", out.cast(cout), f"out = {out.cast(cout)}")
    return OK if ok else FALSE


def cmd_simulate(args, out: Out) -> int:
    e = parse_term(_read(args.file))
    elab = (lambda g, t: infer_elab_sub(g, t, args.depth)) if args.sub else infer_elab
    rep = simulate(e, args.fuel, elaborate=elab)
    out.emit("simulation", "ok" if rep.ok else "mismatch")
    out.emit("equi-steps", str(len(rep.equi)), f"equi steps: {len(rep.equi)}")
    out.emit("iso-steps", str(len(rep.iso)), f"iso steps:  {len(rep.iso)}")
    if not rep.ok:
        out.emit("message", rep.message)
    if args.trace:
        for line in rep.equi.lines():
            out.emit("equi", line, f"equi {line}")
        for line in rep.iso.lines(out.annotations):
            out.emit("iso", line, f"iso  {line}")
    return OK if rep.ok else FALSE


def cmd_selftest(args, out: Out) -> int:
    from .harness.suites import Findings, run_all

    sink = open(args.findings, "w", encoding="utf-8") if args.findings else None
    try:
        results = run_all(args.max_size, args.terms, Findings(sink),
                          report=lambda r: out.emit("suite", r.summary()))
    finally:
        if sink:
            sink.close()
    for r in results:
        for f in r.failures:
            print(f"  {r.name}: {f}", file=sys.stderr)
    return OK if all(r.ok for r in results) else FALSE


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--porcelain", action="store_true", help="tab-separated key/value output")
    common.add_argument("--annotations", action="store_true", help="print declared fix types")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="fulliso", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help, file=True):
        sp = sub.add_parser(name, parents=[common], help=help)
        if file:
            sp.add_argument("file", nargs="?", help="input file (default: standard input)")
        sp.set_defaults(fn=fn)
        return sp

    def binds(sp):
        sp.add_argument("--bind", action="append", metavar="NAME:TYPE",
                        help="add a free variable to the context (repeatable)")

    sp = cmd("parse", cmd_parse, "echo the canonical form")
    sp.add_argument("--kind", choices=("term", "type", "cast"), default="term")

    sp = cmd("typecheck", cmd_typecheck, "infer the type of a term")
    sp.add_argument("--mode", choices=("iso", "equi", "iso-sub", "equi-sub"), default="iso")
    sp.add_argument("--expect", metavar="T")
    sp.add_argument("--hnf", action="store_true", help="also print the head-normal form")
    sp.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    binds(sp)

    sp = cmd("eval", cmd_eval, "evaluate a closed term")
    sp.add_argument("--mode", choices=("iso", "equi"), default="iso")
    sp.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL)
    sp.add_argument("--trace", action="store_true")

    sp = cmd("elaborate", cmd_elaborate, "elaborate an equi-recursive term into casts")
    sp.add_argument("--sub", action="store_true", help="allow subtyping")
    sp.add_argument("--check", metavar="T")
    sp.add_argument("--verify", action="store_true", help="re-typecheck and check the round trip")
    sp.add_argument("--hnf", action="store_true")
    sp.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    binds(sp)

    cmd("erase", cmd_erase, "remove every cast")

    sp = cmd("equal", cmd_equal, "decide equi-recursive type equality", file=False)
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--emit-cast", action="store_true")

    sp = cmd("subtype", cmd_subtype, "decide subtyping", file=False)
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--mode", choices=("iso", "equi"), default="equi")
    sp.add_argument("--decompose", action="store_true")
    sp.add_argument("--depth", type=_positive, default=DEFAULT_DEPTH)

    sp = cmd("simulate", cmd_simulate, "run a term and its elaboration in lockstep")
    sp.add_argument("--fuel", type=_positive, default=1000)
    sp.add_argument("--sub", action="store_true")
    sp.add_argument("--depth", type=_positive, default=DEFAULT_DEPTH)
    sp.add_argument("--trace", action="store_true")

    sp = cmd("selftest", cmd_selftest, "run the property suites", file=False)
    sp.add_argument("--max-size", type=_positive, default=5)
    sp.add_argument("--terms", type=_positive, default=200)
    sp.add_argument("--findings", metavar="FILE", help="write oracle disagreements here")
    return p


def _positive(s: str) -> int:
    n = int(s)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    out = Out(args.porcelain, args.annotations)
    try:
        return args.fn(args, out)
    except SearchExhausted as err:
        print(f"error: search exhausted at depth {err.depth}: {err}", file=sys.stderr)
    except FullIsoError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
    except RecursionError:
        print("error: input nests too deeply", file=sys.stderr)
    return ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
