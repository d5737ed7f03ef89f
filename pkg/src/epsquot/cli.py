"""Command-line interface.

Exit codes: 0 success, 2 malformed input, 3 outside the evaluable scope,
4 failed internal consistency check.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .errors import ConsistencyError, ExprParseError, SizeLimitError, UnsupportedScopeError
from .exprparse import parse_expr
from .hassett import canonical_form, pullback_contraction
from .invariants import f_epsilon_conifold, invariant, wall_crossing_report
from .localization import enumerate_fixed_graphs
from .quotients import CombQuotient, INF, contract, embedding_h0, is_epsilon_stable, is_mop_stable, plucker, vdim, walls

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SCOPE = 3
EXIT_CONSISTENCY = 4

_FRACTION = re.compile(r"\s*[+-]?\d+(/\d+)?\s*")


class InputError(ValueError):
    """Malformed command-line value or input file."""


def fraction(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` exactly; decimals are refused."""
    if not _FRACTION.fullmatch(text):
        raise argparse.ArgumentTypeError(f"expected an exact fraction like 1/3, got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"zero denominator in {text!r}") from None


def _fmt(x) -> str:
    return "inf" if x == INF else str(x)


def _read_quotient(path: str) -> CombQuotient:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return CombQuotient.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _write_quotient(q: CombQuotient, path: str | None):
    text = q.dumps()
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# --- subcommands ---------------------------------------------------------------


def cmd_walls(args):
    ws = walls(args.g, args.m, args.d)
    _emit(args, {"walls": [_fmt(w) for w in ws.walls]}, ws.format())


def cmd_stable(args):
    q = _read_quotient(args.inp)
    verdict = is_epsilon_stable(q, args.eps)
    text = "stable" if verdict else f"unstable: {verdict.reason}"
    _emit(args, {"stable": bool(verdict), "reason": verdict.reason}, text)


def cmd_mop_stable(args):
    q = _read_quotient(args.inp)
    ok = is_mop_stable(q)
    _emit(args, {"stable": ok}, "stable" if ok else "unstable")


def cmd_vdim(args):
    v = vdim(args.g, args.m, args.r, args.n, args.d)
    _emit(args, {"vdim": v}, str(v))


def cmd_h0(args):
    v = embedding_h0(args.g, args.m, args.d, args.l, args.k)
    _emit(args, {"h0": v}, str(v))


def cmd_contract(args):
    q = _read_quotient(args.inp)
    out = contract(q, args.frm, args.to)
    if args.json and args.out is None:
        print(json.dumps(out.to_dict(), sort_keys=True))
    else:
        _write_quotient(out, args.out)


def cmd_plucker(args):
    out = plucker(_read_quotient(args.inp))
    if args.json and args.out is None:
        print(json.dumps(out.to_dict(), sort_keys=True))
    else:
        _write_quotient(out, args.out)


def cmd_canon(args):
    e = parse_expr(args.expr, d=args.d)
    out = canonical_form(e, args.eps)
    _emit(args, {"expr": out.format()}, out.format())


def cmd_pullback(args):
    e = parse_expr(args.expr, d=args.d)
    out = pullback_contraction(e, args.frm, args.to, args.d)
    _emit(args, {"expr": out.format()}, out.format())


def cmd_graphs(args):
    graphs = enumerate_fixed_graphs(args.g, args.m, args.d, args.r, args.n, args.eps)
    if args.json:
        payload = {"count": len(graphs)}
        if args.dump:
            payload["graphs"] = [fg.to_dict() for fg in graphs]
        print(json.dumps(payload, sort_keys=True))
        return
    print(len(graphs))
    if args.dump:
        print(json.dumps([fg.to_dict() for fg in graphs], indent=2))


def cmd_invariant(args):
    value = invariant(args.geometry, args.g, args.d, args.eps)
    _emit(args, {"value": str(value)}, str(value))


def cmd_series(args):
    if args.geometry != "conifold":
        raise UnsupportedScopeError(f"series are available for the conifold only, not {args.geometry}")
    s = f_epsilon_conifold(args.eps, args.lambda_order, args.t_order)
    rows = []
    for d in range(1, args.t_order + 1):
        for k, c in s.coefficient(d).terms():
            rows.append({"t": d, "lambda": k, "coeff": str(c)})
    text = "\n".join(f"t^{r['t']} lambda^{r['lambda']}: {r['coeff']}" for r in rows)
    _emit(args, {"rows": rows}, text)


def cmd_report(args):
    rows = wall_crossing_report(args.geometry, args.g, args.d)
    if args.json:
        print(json.dumps({"rows": [r.to_dict() for r in rows]}, sort_keys=True))
        return
    table = [("chamber", "value")]
    for r in rows:
        value = str(r.value) if r.value is not None else f"unsupported ({r.note})"
        table.append((f"({r.lower}, {_fmt(r.upper)}]" if r.upper != INF else f"({r.lower}, inf)", value))
    width = max(len(a) for a, _ in table)
    print("\n".join(f"{a.ljust(width)}  {b}" for a, b in table))


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="epsquot", description="Epsilon-stable quotients: walls, classes and invariants.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    sp = add("walls", cmd_walls, "critical epsilon values")
    for flag in ("--g", "--m", "--d"):
        sp.add_argument(flag, type=int, required=True)

    sp = add("stable", cmd_stable, "epsilon-stability of a quotient file")
    sp.add_argument("--eps", type=fraction, required=True)
    sp.add_argument("--in", dest="inp", required=True)

    sp = add("mop-stable", cmd_mop_stable, "stability for all small epsilon")
    sp.add_argument("--in", dest="inp", required=True)

    sp = add("vdim", cmd_vdim, "virtual dimension")
    for flag in ("--g", "--m", "--r", "--n", "--d"):
        sp.add_argument(flag, type=int, required=True)

    sp = add("h0", cmd_h0, "sections of the embedding line bundle")
    for flag in ("--g", "--m", "--d", "--l", "--k"):
        sp.add_argument(flag, type=int, required=True)

    sp = add("contract", cmd_contract, "contract a quotient to a smaller epsilon")
    sp.add_argument("--from", dest="frm", type=fraction, required=True)
    sp.add_argument("--to", type=fraction, required=True)
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--out")

    sp = add("plucker", cmd_plucker, "image under the Pluecker embedding")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--out")

    sp = add("canon", cmd_canon, "canonical form of a class expression")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--eps", type=fraction)
    sp.add_argument("--d", type=int)

    sp = add("pullback", cmd_pullback, "pull a class expression back along a contraction")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--from", dest="frm", type=fraction, required=True)
    sp.add_argument("--to", type=fraction, required=True)
    sp.add_argument("--d", type=int, required=True)

    sp = add("graphs", cmd_graphs, "torus-fixed graphs")
    for flag in ("--g", "--m", "--d", "--r", "--n"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--eps", type=fraction, required=True)
    sp.add_argument("--dump", action="store_true")

    sp = add("invariant", cmd_invariant, "invariant of a local geometry")
    sp.add_argument("--geometry", required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--eps", type=fraction, required=True)

    sp = add("series", cmd_series, "coefficients of the epsilon-modified generating function")
    sp.add_argument("--geometry", required=True)
    sp.add_argument("--eps", type=fraction, required=True)
    sp.add_argument("--t-order", type=int, required=True)
    sp.add_argument("--lambda-order", type=int, required=True)

    sp = add("report", cmd_report, "invariant in every chamber")
    sp.add_argument("--geometry", required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except ExprParseError as exc:
        print(exc.diagnostic(), file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedScopeError as exc:
        print(f"unsupported scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except ConsistencyError as exc:
        print(f"consistency check failed: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except (InputError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
