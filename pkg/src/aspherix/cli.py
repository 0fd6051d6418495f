"""Command-line front end.

Exit codes: 0 success, 1 domain error (invalid E, contradictory inputs,
failed checks), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import BUNDLED, load_matrix, load_presentation, run_corpus
from .fox import augmented_jacobian, jacobian
from .group_ring import ModelMismatchError, ShapeError, matrix_to_json, parse_model_spec
from .homology import (InvalidIdempotentError, asphericity_verdict, balanced_perfect_check,
                       format_report, homology)
from .smith import IntMatrix, NotInSpanError, snf
from .trace_rank import NotIdempotentError, compare_ranks
from .words import (PresentationError, TietzeError, Word, add_trivial_relator, render_presentation,
                    tietze_stabilize, tietze_transvect)


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _envelope(command: str, result, cd2_asserted: bool = False) -> dict:
    return {"tool": "aspherix", "version": __version__, "command": command,
            "assumptions": {"cd2_asserted": cd2_asserted}, "result": result}


def read_int_matrix(path: str) -> IntMatrix:
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith(("[", "{")):
        data = json.loads(text)
        if isinstance(data, dict):
            data = data.get("matrix", data.get("entries"))
        rows = data
    else:
        rows = [[x for x in r if x.strip()] for r in csv.reader(io.StringIO(text)) if any(x.strip() for x in r)]
    try:
        return IntMatrix.from_rows([[int(x) for x in r] for r in rows])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not an integer matrix ({exc})") from None


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands

def cmd_homology(args, out) -> int:
    p = load_presentation(args.file)
    hom = homology(p)
    bal = balanced_perfect_check(p)
    if args.format == "text":
        out.write(f"H_1(K) = {hom.h1}\nH_2(K) = {'Z^%d' % hom.h2_rank if hom.h2_rank else '0'}\n"
                  f"betti = {hom.betti}, euler = {hom.euler}\n")
    else:
        out.write(_dump(_envelope("homology", {**hom.to_json(), "balanced_check": bal.to_json()})))
    return 0


def cmd_jacobian(args, out) -> int:
    p = load_presentation(args.file)
    if args.augmented:
        m = augmented_jacobian(p)
        if args.matrix_format == "csv":
            out.write(_csv(m.tolist()))
        else:
            out.write(_dump(_envelope("jacobian", {"augmented": True, "rows": m.rows, "cols": m.cols,
                                                   "matrix": m.tolist()})))
    else:
        out.write(_dump(_envelope("jacobian", matrix_to_json(jacobian(p), p.generators))))
    return 0


def cmd_snf(args, out) -> int:
    dec = snf(read_int_matrix(args.file))
    if args.format == "text":
        out.write(f"divisors: {list(dec.divisors)}\nrank: {dec.rank}\n")
    else:
        out.write(_dump(_envelope("snf", dec.to_json())))
    return 0


def cmd_rank_check(args, out) -> int:
    model = parse_model_spec(args.group) if args.group else None
    E = load_matrix(args.file, model)
    rc = compare_ranks(E)
    if args.format == "text":
        out.write(f"t-rank: {rc.to_json()['t_rank']}\neps-rank: {rc.eps_rank}\nagree: {rc.agree}\n")
        if rc.counterexample:
            out.write(f"{rc.counterexample['message']}\n")
    else:
        out.write(_dump(_envelope("rank-check", rc.to_json())))
    return 0


def cmd_aspherical(args, out) -> int:
    p = load_presentation(args.file)
    E = load_matrix(args.idempotent) if args.idempotent else None
    report = asphericity_verdict(p, E, args.assert_cd2)
    if args.format == "text":
        out.write(format_report(report))
    else:
        out.write(_dump(_envelope("aspherical", report.to_json(), args.assert_cd2)))
    return 1 if report.contradiction else 0


def cmd_tietze(args, out) -> int:
    p = load_presentation(args.file)
    before = homology(p)
    if args.stabilize:
        p = tietze_stabilize(p, args.stabilize)
    if args.add_trivial:
        p = add_trivial_relator(p, args.add_trivial)
    for j, k in args.transvect or ():
        w = p.word(args.word) if args.word else Word()
        p = tietze_transvect(p, j, k, w, args.sign)
    text = render_presentation(p)
    if args.format == "text":
        out.write(text)
    else:
        after = homology(p)
        out.write(_dump(_envelope("tietze", {"presentation": text, "before": before.to_json(),
                                             "after": after.to_json()})))
    return 0


def cmd_corpus(args, out) -> int:
    result = run_corpus(args.directory or BUNDLED, args.assert_cd2, args.seed, args.fuzz)
    if args.directory is None:
        result["directory"] = "<bundled>"
    s = result["summary"]
    if args.format == "text":
        for e in result["entries"]:
            out.write(f"{e['name']}: {e['report']['verdict']}\n")
        for e in result["errors"]:
            out.write(f"{e['name']}: ERROR {e['error']}\n")
        out.write(f"summary: {json.dumps(s, sort_keys=True)}\n")
    else:
        out.write(_dump(_envelope("corpus", result, args.assert_cd2)))
    failed = s["errors"] or s["contradictions"] or s["fox_identity_failures"] or s["tietze_failures"]
    return 1 if failed else 0


# ---------------------------------------------------------------------------

def _add_format(sp):
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--json", dest="format", action="store_const", const="json")
    g.add_argument("--text", dest="format", action="store_const", const="text")
    sp.set_defaults(format="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aspherix", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"aspherix {__version__}")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks (never affects analyses)")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("homology", help="H_1(K), H_2(K) and Betti numbers")
    sp.add_argument("file")
    _add_format(sp)
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("jacobian", help="Fox Jacobian d2 over Z[F]")
    sp.add_argument("file")
    sp.add_argument("--augmented", action="store_true", help="emit the integer matrix eps(d2)")
    sp.add_argument("--format", dest="matrix_format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_jacobian)

    sp = sub.add_parser("snf", help="Smith normal form of an integer matrix (CSV or JSON)")
    sp.add_argument("file")
    _add_format(sp)
    sp.set_defaults(func=cmd_snf)

    sp = sub.add_parser("rank-check", help="compare t-rank and eps-rank of an idempotent")
    sp.add_argument("file")
    sp.add_argument("--group", help="model spec, e.g. free:2, free_abelian:2, abelian:0,2")
    _add_format(sp)
    sp.set_defaults(func=cmd_rank_check)

    sp = sub.add_parser("aspherical", help="asphericity verdict")
    sp.add_argument("file")
    sp.add_argument("--idempotent", metavar="E.json")
    sp.add_argument("--assert-cd2", action="store_true")
    _add_format(sp)
    sp.set_defaults(func=cmd_aspherical)

    sp = sub.add_parser("tietze", help="apply Tietze moves and print the new presentation")
    sp.add_argument("file")
    sp.add_argument("--stabilize", type=int, default=0, metavar="K")
    sp.add_argument("--add-trivial", type=int, default=0, metavar="K")
    sp.add_argument("--transvect", type=int, nargs=2, action="append", metavar=("J", "K"),
                    help="replace relator J by r_J (w r_K w^-1)^sign (0-based)")
    sp.add_argument("--word", default="", help="conjugating word w")
    sp.add_argument("--sign", type=int, choices=(1, -1), default=1)
    _add_format(sp)
    sp.set_defaults(func=cmd_tietze, format="text")

    sp = sub.add_parser("corpus", help="analyze a directory of presentations")
    sp.add_argument("directory", nargs="?")
    sp.add_argument("--assert-cd2", action="store_true")
    sp.add_argument("--fuzz", type=int, default=0, metavar="N", help="random Tietze invariance trials per file")
    _add_format(sp)
    sp.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except TietzeError as exc:
        err.write(f"aspherix: {type(exc).__name__}: {exc}\n")
        return 1
    except (UsageError, KeyError, PresentationError, OSError, json.JSONDecodeError) as exc:
        err.write(f"aspherix: error: {exc}\n")
        return 2
    except (InvalidIdempotentError, NotIdempotentError, NotInSpanError,
            ShapeError, ModelMismatchError, ValueError) as exc:
        err.write(f"aspherix: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
