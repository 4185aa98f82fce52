"""Command-line front end.

    repalg dims --m 2 --n 2 --k 2
    repalg basis --which Y --m 2 --n 2
    repalg normal-form --word "[x1,x2]" --entry 1,2
    repalg eta --aut K12 --k 1
    repalg theta --aut "U S U^-1" [--target abelian]
    repalg verify --suite all --m 3 --n 2 --seed 7

Exit codes: 0 success, 1 verification failure, 2 invalid arguments.
Set REPALG_LOG=INFO (or DEBUG) for progress messages on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction

from . import abelian as ab
from . import crossed as cr
from . import filtration as fl
from . import verify as vf
from .rep_algebra import AlgebraContext, basis_Tk_prime, context, dim_grk, s_name
from .words import WordError, parse_aut, parse_word

MAX_CAP = 6


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return str(x)


def _emit(obj, fmt: str, text: str, rows: list[list] | None = None) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2, sort_keys=False, default=str)
    if fmt == "csv":
        if rows is None:
            raise UsageError("csv output is only available for tabular commands (dims, abelian-dims, basis)")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue().rstrip("\n")
    return text


def _ctx(args, cap: int | None = None) -> AlgebraContext:
    return context(args.m, args.n, args.cap if cap is None else cap)


def _lambda_text(L, n: int) -> list[str]:
    pairs = fl.wedge_pairs(n)
    out = []
    for l in range(n):
        terms = [f"{_frac(L[r][l])} x{p}^x{q}" for r, (p, q) in enumerate(pairs) if L[r][l]]
        if terms:
            out.append(f"x{l + 1}* (x) (" + " + ".join(terms) + ")")
    return out or ["0"]


def _signed_sum(terms: list[tuple[str, str]]) -> str:
    """Join (coefficient, label) pairs as 'a X - b Y' with exact rationals."""
    out = []
    for k, (c, label) in enumerate(terms):
        neg = c.startswith("-")
        body = f"{c.lstrip('-')} {label}"
        out.append(("-" + body if neg else body) if k == 0 else ("- " if neg else "+ ") + body)
    return " ".join(out) if out else "0"


def _h_text(v) -> str:
    terms = [f"{_frac(c)} x{l + 1}" for l, c in enumerate(v) if c]
    return " + ".join(terms) if terms else "0"


# --- commands -------------------------------------------------------------------------


def cmd_dims(args) -> tuple[str, int]:
    ks = [args.k] if args.k is not None else list(range(1, args.cap + 1))
    table = [{"m": args.m, "n": args.n, "k": k, "dim": dim_grk(args.m, args.n, k)} for k in ks]
    text = "\n".join(f"m={r['m']} n={r['n']} k={r['k']} dim gr^k = {r['dim']}" for r in table)
    obj = table[0] if len(table) == 1 else table
    rows = [["m", "n", "k", "dim"]] + [[r["m"], r["n"], r["k"], r["dim"]] for r in table]
    return _emit(obj, args.format, text, rows), 0


def cmd_basis(args) -> tuple[str, int]:
    if args.which == "Y":
        H = ab.h_context(args.m, args.n)
        labels = [y.label() for y in H.Y]
        obj = {"m": args.m, "n": args.n, "k": 2, "dim": len(labels), "basis": [y.to_json() for y in H.Y]}
    else:
        k = args.k if args.k is not None else 1
        if k > args.cap:
            raise UsageError(f"--k {k} exceeds --cap {args.cap}")
        ctx = _ctx(args, max(k, 1))
        if args.which == "Tk":
            labels = [ctx.ring.mono_str(mo) for mo in ctx.basis_Tk(k)]
        else:
            labels = ["*".join(s_name(i, j, l) for (l, i, j) in mono) for mono in basis_Tk_prime(ctx, k)]
        obj = {"m": args.m, "n": args.n, "k": k, "dim": len(labels), "basis": labels}
    text = "\n".join([f"# {args.which}: {len(labels)} elements"] + labels)
    rows = [["index", "element"]] + [[i, s] for i, s in enumerate(labels)]
    return _emit(obj, args.format, text, rows), 0


def cmd_normal_form(args) -> tuple[str, int]:
    ctx = _ctx(args)
    w = parse_word(args.word, args.n)
    try:
        i, j = (int(t) for t in args.entry.split(","))
    except ValueError as exc:
        raise UsageError("--entry expects i,j") from exc
    if not (1 <= i <= args.m and 1 <= j <= args.m):
        raise UsageError(f"entry ({i},{j}) outside 1..{args.m}")
    f = ctx.s_entry(w, i, j)
    md = f.min_degree()
    obj = {"word": str(w), "entry": [i, j], "cap": args.cap, "min_degree": None if f.is_zero() else md,
           "polynomial": f.to_text()}
    text = f"s_{i}{j}({w}) mod J^{args.cap + 1} =\n{f.to_text()}\nmin degree: {'inf' if f.is_zero() else md}"
    return _emit(obj, args.format, text), 0


def cmd_eta(args) -> tuple[str, int]:
    a = parse_aut(args.aut, args.n)
    ctx = _ctx(args, max(args.cap, args.k + 1))
    if not fl.is_in_D(ctx, a, args.k):
        raise UsageError(f"{args.aut} is not in D({args.k}); eta_{args.k} is undefined")
    e = fl.eta_k(ctx, a, args.k)
    obj = {"aut": args.aut, **e.to_json()}
    lines = [f"eta_{args.k}({args.aut}):"]
    for name, col in obj["columns"].items():
        if col:
            body = _signed_sum([(c, mo) for mo, c in col.items()])
            lines.append(f"  {name} -> {body}")
    if len(lines) == 1:
        lines.append("  0")
    return _emit(obj, args.format, "\n".join(lines)), 0


def cmd_theta(args) -> tuple[str, int]:
    a = parse_aut(args.aut, args.n)
    toks = args.aut.split()
    nielsen_only = all((t[:-3] if t.endswith("^-1") else t) in cr.NIELSEN for t in toks)
    if args.target == "abelian":
        H = ab.h_context(args.m, args.n)
        t = ab.theta_H(H, a)
        fH = ab.project_fH(t)
        obj = {"aut": args.aut, "target": "abelian", "theta_H": t.to_json(), "f_H_projection": [str(x) for x in fH]}
        lines = [f"theta_H({args.aut}):"] + [f"  {k} -> " + _signed_sum([(c, y) for y, c in v.items()])
                                             for k, v in obj["theta_H"].items()]
        lines.append(f"p'(theta_H) = {_h_text(fH)}")
        return _emit(obj, args.format, "\n".join(lines)), 0
    ctx = _ctx(args)
    t = cr.theta(ctx, a)
    f1, f2 = cr.project_f1(t), cr.project_f2(t)
    obj = {"aut": args.aut, "target": "free", "theta": t.to_json(),
           "f1": [[str(x) for x in r] for r in f1], "f2_projection": [str(x) for x in f2]}
    lines = [f"theta({args.aut}):"] + [f"  {k} -> {v}" for k, v in obj["theta"].items()]
    if len(lines) == 1:
        lines.append("  0")
    lines.append("f_1 = " + "; ".join(_lambda_text(f1, args.n)))
    lines.append(f"q(theta) = {_h_text(f2)}")
    if nielsen_only and toks:
        f2r = cr.f2_value(ctx, toks)
        obj["f2_cocycle_extension"] = [str(x) for x in f2r]
        lines.append(f"f_2 (cocycle extension of generator values) = {_h_text(f2r)}")
    return _emit(obj, args.format, "\n".join(lines)), 0


def cmd_verify(args) -> tuple[str, int]:
    try:
        results = vf.run(args.suite, args.seed)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    ok = all(r.passed for r in results)
    obj = [r.to_json() for r in results]
    lines = []
    for r in results:
        lines.append(r.line())
        for name, st in r.details.items():
            if st != "pass":
                lines.append(f"    {name}: {st}")
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return _emit(obj, args.format, "\n".join(lines)), 0 if ok else 1


def cmd_abelian_dims(args) -> tuple[str, int]:
    H = ab.h_context(args.m, args.n)
    m, n = args.m, args.n
    t2 = len(H.basis_T2)
    obj = {
        "m": m, "n": n, "dim_gr1": len(H.gr1H_basis()), "dim_T2": t2, "relation_rank": ab.relation_rank(H),
        "dim_gr2": len(H.Y), "formula": ab.y_count(m, n),
        "lambda2_multiplicity_counted": str(ab.lambda_multiplicity_counted(m)),
        "lambda2_multiplicity_variant": str(ab.lambda_multiplicity_variant(m)),
    }
    obj["multiplicity_discrepancy"] = obj["lambda2_multiplicity_counted"] != obj["lambda2_multiplicity_variant"]
    text = "\n".join(f"{k}: {v}" for k, v in obj.items())
    rows = [list(obj.keys()), list(obj.values())]
    return _emit(obj, args.format, text, rows), 0


# --- argument parsing --------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--m", type=int, default=2, help="matrix size (>= 2)")
    p.add_argument("--n", type=int, default=3, help="rank of the free group (>= 1)")
    p.add_argument("--cap", type=int, default=3, help=f"truncation degree (1..{MAX_CAP})")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="repalg", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", parents=[common], help="dimensions of gr^k")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("basis", parents=[common], help="list T_k, T_k' or Y")
    p.add_argument("--which", choices=("Tk", "Tk'", "Y"), default="Tk")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("normal-form", parents=[common], help="s_ij of a word in normal form")
    p.add_argument("--word", required=True)
    p.add_argument("--entry", default="1,1")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("eta", parents=[common], help="eta_k of an automorphism in D(k)")
    p.add_argument("--aut", required=True)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("theta", parents=[common], help="theta (or theta_H) with projections")
    p.add_argument("--aut", required=True)
    p.add_argument("--target", choices=("free", "abelian"), default="free")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("verify", parents=[common], help="run acceptance suites")
    p.add_argument("--suite", default="all", help="all, algebra, action, crossed, abelian, or a list like 1,7,9")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("abelian-dims", parents=[common], help="dimensions for the free abelian case")
    p.set_defaults(func=cmd_abelian_dims)
    return parser


def _validate(args) -> None:
    if args.m < 2:
        raise UsageError("--m must be >= 2")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if not 1 <= args.cap <= MAX_CAP:
        raise UsageError(f"--cap must lie in 1..{MAX_CAP}")
    if getattr(args, "k", None) is not None and args.k < 1:
        raise UsageError("--k must be >= 1")
    if args.command in ("theta", "abelian-dims") or getattr(args, "which", None) == "Y":
        if args.n < 2 and args.command != "abelian-dims":
            raise UsageError("this command needs --n >= 2")


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("REPALG_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        out, code = args.func(args)
    except (UsageError, WordError) as exc:
        print(f"repalg: error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
