"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 runtime failure (including a
``verify`` that finds a non-square pair).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from itertools import islice

from . import families
from .graphsearch import SearchBounds
from .model import MalformedTupleError, NotIntegralError, normalize, verify_dn
from .scan import DEFAULT_BOUNDS, DEFAULT_X_RANGE, WORKERS_ENV, ScanConfig, ScanError, audit, run_scan
from .secondn import find_all_n

log = logging.getLogger("dnquad")

# options whose value may start with "-" (e.g. --quad -1,7,64,119)
_VALUE_OPTIONS = ("--quad",)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _fmt(xs) -> str:
    return ", ".join(str(x) for x in xs)


def _emit(args, obj: dict, text: str) -> None:
    if args.json:
        print(json.dumps(obj))
    else:
        print(text)


def _strs(xs):
    return [str(x) for x in xs]


# -- subcommands -------------------------------------------------------------

def cmd_verify(args) -> int:
    quad = args.quad
    status = 0
    for n in args.n:
        w = verify_dn(quad, n)
        if w:
            roots = w.root_values()
            _emit(args, {"quad": _strs(w.tuple), "n": str(n), "ok": True, "roots": _strs(roots)},
                  f"OK   {{{_fmt(w.tuple)}}} is a D({n})-tuple; roots {_fmt(roots)}")
        else:
            i, j = w.pair
            _emit(args, {"quad": _strs(w.tuple), "n": str(n), "ok": False,
                         "pair": _strs((w.tuple[i], w.tuple[j])), "value": str(w.value)},
                  f"FAIL {{{_fmt(w.tuple)}}} with n = {n}: {w}")
            status = 2
    return status


def cmd_secondn(args) -> int:
    xs = find_all_n(args.quad, args.x_from, args.x_to, exclude_zero=args.exclude_zero)
    _emit(args, {"quad": _strs(sorted(args.quad)), "x_from": str(args.x_from),
                 "x_to": str(args.x_to), "ns": _strs(xs)},
          f"{{{_fmt(sorted(args.quad))}}}: n in [{args.x_from}, {args.x_to}] -> {{{_fmt(xs)}}}")
    return 0


def cmd_normalize(args) -> int:
    c = normalize(args.quad, args.n or [])
    _emit(args, {"quad": _strs(c.quad), "ns": _strs(c.ns)},
          f"{{{_fmt(c.quad)}}} / {{{_fmt(c.ns)}}}")
    return 0


def _member_out(args, m: families.FamilyMember) -> None:
    c = m.normalized
    obj = {"params": {k: str(v) for k, v in m.params.items()},
           "raw_quad": _strs(m.raw_quad), "ns": _strs(m.ns),
           "canonical_quad": _strs(c.quad), "canonical_ns": _strs(c.ns)}
    params = " ".join(f"{k}={v}" for k, v in m.params.items())
    _emit(args, obj, f"{{{_fmt(c.quad)}}} / {{{_fmt(c.ns)}}}    [{params}]")


def cmd_family(args) -> int:
    kind = args.family
    if kind == "prop1":
        _member_out(args, families.prop1_quadruple(args.v, args.w))
    elif kind == "pell17":
        for m in islice(families.pell17_stream(), args.count):
            _member_out(args, m)
    elif kind == "dnfam":
        _member_out(args, families.dn_family_quadruple(args.a, args.k))
    elif kind == "d0":
        _member_out(args, families.d0_quadruple(args.r))
    elif kind == "curve":
        r_from = args.r if args.r is not None else args.r_from
        r_to = args.r if args.r is not None else args.r_to
        if r_from is None or r_to is None:
            raise UsageError("family curve needs --r or --r-from/--r-to")
        ok_all = True
        for r in range(r_from, r_to + 1):
            ok = families.curve_point_check(r)
            ok_all &= ok
            _emit(args, {"r": str(r), "on_curve": ok}, f"r = {r}: {'OK' if ok else 'FAIL'}")
        return 0 if ok_all else 2
    return 0


def _workers_default() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer, got {env!r}")
    return 1


def cmd_scan(args) -> int:
    try:
        cfg = ScanConfig(
            n_from=args.n_from, n_to=args.n_to, out=args.out,
            bounds=SearchBounds(args.m_max, args.k_max, args.l_max),
            x_from=args.x_from, x_to=args.x_to,
            workers=args.workers if args.workers is not None else _workers_default(),
            checkpoint=args.checkpoint, skip_2mod4=args.skip_2mod4,
            include_single=args.include_single,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    summary = run_scan(cfg)
    if args.audit:
        problems = audit(cfg.out)
        for p in problems:
            log.error("audit: %s", p)
        if problems:
            return 2
    _emit(args, {"n_processed": summary.n_processed, "n_skipped": summary.n_skipped,
                 "quadruples": summary.quadruples, "records": summary.records,
                 "resumed_after": None if summary.resumed_after is None else str(summary.resumed_after),
                 "out": str(cfg.out)},
          f"processed {summary.n_processed} n values ({summary.n_skipped} skipped), "
          f"{summary.quadruples} quadruples, {summary.records} records -> {cfg.out}"
          + (f" (resumed after n = {summary.resumed_after})" if summary.resumed_after is not None else ""))
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dnquad", description="Search and verify D(n)-quadruples.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="emit JSON lines")

    sp = sub.add_parser("verify", help="check the D(n) property")
    sp.add_argument("--quad", type=_int_list, required=True)
    sp.add_argument("--n", type=int, action="append", required=True)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("secondn", help="all n in a window for a quadruple")
    sp.add_argument("--quad", type=_int_list, required=True)
    sp.add_argument("--x-from", type=int, default=DEFAULT_X_RANGE[0])
    sp.add_argument("--x-to", type=int, default=DEFAULT_X_RANGE[1])
    sp.add_argument("--exclude-zero", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_secondn)

    sp = sub.add_parser("normalize", help="canonical representative")
    sp.add_argument("--quad", type=_int_list, required=True)
    sp.add_argument("--n", type=int, action="append")
    common(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("family", help="parametric families")
    fam = sp.add_subparsers(dest="family", required=True, parser_class=_Parser)
    f = fam.add_parser("prop1")
    f.add_argument("--v", type=int, required=True)
    f.add_argument("--w", type=int, required=True)
    f = fam.add_parser("pell17")
    f.add_argument("--count", type=int, default=5)
    f = fam.add_parser("dnfam")
    f.add_argument("--a", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f = fam.add_parser("d0")
    f.add_argument("--r", type=int, required=True)
    f = fam.add_parser("curve")
    f.add_argument("--r", type=int)
    f.add_argument("--r-from", type=int)
    f.add_argument("--r-to", type=int)
    for f in fam.choices.values():
        common(f)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("scan", help="search a range of n")
    sp.add_argument("--n-from", type=int, required=True)
    sp.add_argument("--n-to", type=int, required=True)
    sp.add_argument("--m-max", type=int, default=DEFAULT_BOUNDS.m_max)
    sp.add_argument("--k-max", type=int, default=DEFAULT_BOUNDS.k_max)
    sp.add_argument("--l-max", type=int, default=DEFAULT_BOUNDS.l_max)
    sp.add_argument("--x-from", type=int, default=DEFAULT_X_RANGE[0])
    sp.add_argument("--x-to", type=int, default=DEFAULT_X_RANGE[1])
    sp.add_argument("--workers", type=int, default=None,
                    help=f"worker processes (default: ${WORKERS_ENV} or 1)")
    sp.add_argument("--out", required=True)
    sp.add_argument("--checkpoint", default=None, help="default: <out>.ckpt")
    sp.add_argument("--skip-2mod4", action="store_true")
    sp.add_argument("--include-single", action="store_true",
                    help="also record quadruples with no second n in the x window")
    sp.add_argument("--audit", action="store_true", help="re-verify all records afterwards")
    common(sp)
    sp.set_defaults(func=cmd_scan)
    return p


def _join_values(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _join_values(list(sys.argv[1:] if argv is None else argv))
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, MalformedTupleError, families.DegenerateParametersError) as exc:
        print(f"dnquad: error: {exc}", file=sys.stderr)
        return 1
    except (NotIntegralError, ScanError, OSError) as exc:
        print(f"dnquad: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
