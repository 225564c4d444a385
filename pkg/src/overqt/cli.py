"""``overqt`` command line.

Exit status: 0 success / verified, 1 failed verification or counterexample,
2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from . import conjectures, identities, involutions
from .algebra import MPoly
from .combinatorics import Overpartition
from .errors import BadIndices, MethodTooExpensive, OverqtError
from .overbinomial import METHODS, ob_coefficient, ob_compute, cross_check


def t_poly_text(coeffs: List[int]) -> str:
    """Render a polynomial in t the way the coefficient table prints it: 5+10t+5t^2."""
    toks = []
    for e, c in enumerate(coeffs):
        if not c:
            continue
        if e == 0:
            toks.append(str(c))
            continue
        mono = "t" if e == 1 else f"t^{e}"
        toks.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(toks) if toks else "0"


def table_rows(m: int, n: int) -> List[dict]:
    p = ob_compute(m, n)
    rows = []
    for N in range(m * n + 1):
        col = p.coefficient_in("q", N)
        coeffs = [col.coeff(t=k) for k in range(max(col.degree("t"), 0) + 1)]
        rows.append({"N": N, "coefficient": t_poly_text(coeffs),
                     "t_coefficients": coeffs, "t1": sum(coeffs)})
    return rows


def render_table(m: int, n: int, fmt: str = "plain") -> str:
    rows = table_rows(m, n)
    if fmt == "json":
        return json.dumps({"m": m, "n": n, "rows": rows}, indent=2) + "\n"
    if fmt == "latex":
        lines = ["\\begin{tabular}{c|c|c}",
                 "$N$ & coefficient of $q^N$ & at $t=1$ \\\\ \\hline"]
        for r in rows:
            lines.append(f"{r['N']} & ${r['coefficient']}$ & {r['t1']} \\\\")
        lines.append("\\end{tabular}")
        return "\n".join(lines) + "\n"
    lines = ["N | coefficient of q^N | t=1"]
    lines += [f"{r['N']} | {r['coefficient']} | {r['t1']}" for r in rows]
    return "\n".join(lines) + "\n"


def _emit_poly(p: MPoly, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(p.to_json_obj())
    if fmt == "latex":
        return p.to_latex()
    return p.to_text()


# ---------------------------------------------------------------------------
# verbs


def cmd_compute(args) -> int:
    print(_emit_poly(ob_compute(args.m, args.n, args.method), args.format))
    return 0


def cmd_coefficient(args) -> int:
    print(ob_coefficient(args.m, args.n, args.k, args.N))
    return 0


def cmd_table(args) -> int:
    sys.stdout.write(render_table(args.m, args.n, args.format))
    return 0


def cmd_verify(args) -> int:
    rep = identities.verify(args.identity, n=args.n, m=args.m, k=args.k, l=args.l,
                            r=args.r, h=args.h, K=args.trunc)
    if args.json:
        print(json.dumps(rep.to_json_obj(), indent=2))
    else:
        params = " ".join(f"{k}={v}" for k, v in rep.parameters.items())
        line = f"{rep.identity_id} {params}: {rep.status}"
        if rep.verified and rep.lhs is not None and rep.rhs is not None:
            line += f"; both sides = {rep.lhs}"
        elif rep.verified and rep.lhs is not None:
            line += f"; difference = {rep.lhs}"
        if rep.witness:
            line += f"; witness {json.dumps(rep.witness)}"
        print(line)
    return 0 if rep.verified else 1


def cmd_involution(args) -> int:
    if args.which == "phi5":
        if args.trace is not None:
            lam = Overpartition.parse(args.trace)
            tr = involutions.phi5(involutions.SignedOverpartition(lam, args.n))
            print(json.dumps(tr.to_json_obj(), indent=2))
            return 0
        rep = involutions.phi5_verify(args.n)
    else:
        if args.k is None or args.l is None:
            raise BadIndices("phi6 needs --k and --l")
        rep = involutions.phi6_verify(args.n, args.k, args.l, samples=args.samples,
                                      seed=args.seed)
    print(json.dumps(rep.to_json_obj(), indent=2))
    return 0 if rep.passed else 1


_SCANS = {"double-unimodal": "double", "unimodal-t1": "t1", "strict": "strict"}


def cmd_scan(args) -> int:
    if args.kind == "prellberg":
        results = conjectures.scan_prellberg(args.max, args.trunc)
    else:
        results = conjectures.scan_unimodality(_SCANS[args.kind], args.max)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["conjecture", "parameter", "holds", "detail"])
        for r in results:
            w.writerow([r.conjecture_id, json.dumps(r.parameter), int(r.holds),
                        json.dumps(r.detail)])
        sys.stdout.write(buf.getvalue())
    elif args.json:
        print(json.dumps([r.to_json_obj() for r in results], indent=2))
    else:
        for r in results:
            params = " ".join(f"{k}={v}" for k, v in r.parameter.items())
            state = "holds" if r.holds else "FAILS"
            print(f"{r.conjecture_id} {params}: {state}")
        bound = args.max
        holds = all(r.holds for r in results)
        print(f"{args.kind}: {'holds up to' if holds else 'counterexample within'} bound {bound}")
    # an open conjecture that fails a scan is a counterexample, not a usage error
    return 0 if all(r.holds for r in results) else 1


def cmd_crosscheck(args) -> int:
    rep = cross_check(args.max_m, args.max_n)
    obj = {"max_m": rep.max_m, "max_n": rep.max_n, "passed": rep.passed,
           "cells": rep.cells, "witness": rep.witness, "elapsed": round(rep.elapsed, 3)}
    if args.json:
        print(json.dumps(obj, indent=2))
    else:
        state = "pass" if rep.passed else f"FAIL at {rep.witness}"
        print(f"crosscheck {rep.max_m}x{rep.max_n}: {state} ({rep.cells} cells)")
    return 0 if rep.passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overqt",
        description="Exact over-(q,t)-binomial coefficients, identities and involutions.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("compute", help="print B(M, N)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=METHODS, default="pascal1")
    p.add_argument("--format", choices=("plain", "json", "latex"), default="plain")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("coefficient", help="coefficient of t^K q^NN in B(M, N)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_coefficient)

    p = sub.add_parser("table", help="coefficient table of B(M, N) by powers of q")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("plain", "json", "latex"), default="plain")
    p.set_defaults(func=cmd_table)

    ids = sorted(set(identities.ALL_IDS) | {i.replace("_", "-") for i in identities.ALL_IDS})
    p = sub.add_parser("verify", help="verify one identity")
    p.add_argument("identity", choices=ids, metavar="identity")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--h", type=int, default=0)
    p.add_argument("--trunc", type=int, default=identities.DEFAULT_TRUNC)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("involution", help="run or trace an involution")
    p.add_argument("which", choices=("phi5", "phi6"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--trace", help='overpartition to trace, e.g. "5,5~,3,2,0"')
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_involution)

    p = sub.add_parser("scan", help="scan a conjecture on a finite window")
    p.add_argument("kind", choices=("double-unimodal", "unimodal-t1", "strict", "prellberg"))
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--trunc", type=int, default=conjectures.DEFAULT_PRELLBERG_TRUNC)
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("crosscheck", help="compare every method on a grid")
    p.add_argument("--max-m", type=int, default=6)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (BadIndices, MethodTooExpensive, ValueError) as exc:
        print(f"overqt: error: {exc}", file=sys.stderr)
        return 2
    except OverqtError as exc:
        print(f"overqt: {exc.code}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
