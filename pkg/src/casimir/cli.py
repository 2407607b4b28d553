"""``casimir`` command-line front end.

Subcommands::

    casimir info   --algebra SPEC
    casimir grade  --algebra SPEC [--degree M]
    casimir search --algebra SPEC [--realization R] --degree M [--weight W ... | --all-weights] [--no-grading]
    casimir verify --algebra SPEC --expr FILE

Exit status is 0 on success, 2 on a usage error and 1 when an input file
cannot be read, parsed or validated.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import exprparse
from .algebra import beltrametti_blasi_count, jacobi_check, load_algebra
from .enveloping import enveloping, expression_ring
from .errors import CasimirError, ParseError
from .grading import class_sizes_by_degree, compute_grading
from .search import run_search
from .weyl import check_realization, load_realization

log = logging.getLogger("casimir")


class UsageError(Exception):
    pass


def parse_weight(text: str) -> tuple[int, ...]:
    """``"(1,0)"``, ``"1,0"`` or ``"1 0"`` -> ``(1, 0)``."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p for p in body.replace(",", " ").split() if p]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid weight tuple {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="casimir", description="Exact search for Casimir operators.")
    p.add_argument("-v", "--verbose", action="store_true", help="log per-class diagnostics to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--algebra", required=True,
                        help="builtin (filiform:N, schrodinger:D, heisenberg:D, sl2, abelian:N) or a file")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("info", help="dimension, Jacobi check, expected number of invariants")
    common(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=5)

    sp = sub.add_parser("grade", help="maximal grading and weight-class sizes")
    common(sp)
    sp.add_argument("--degree", type=int, default=None, help="also list class sizes up to this degree")

    sp = sub.add_parser("search", help="search for Casimir operators up to a degree")
    common(sp)
    sp.add_argument("--realization", default="coadjoint",
                    help="'coadjoint' (default), 'builtin', a builtin family spec, or a file")
    sp.add_argument("--degree", type=int, required=True)
    wg = sp.add_mutually_exclusive_group()
    wg.add_argument("--weight", type=parse_weight, action="append", default=None,
                    help="weight tuple in the basis printed by 'grade', e.g. '(1,0)'; repeatable")
    wg.add_argument("--all-weights", action="store_true", help="search every weight class")
    sp.add_argument("--no-grading", action="store_true", help="single ungraded ansatz (naive search)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=5)

    sp = sub.add_parser("verify", help="check whether an element is a Casimir operator")
    common(sp)
    sp.add_argument("--expr", required=True, help="file holding one enveloping-algebra element (may span lines)")
    return p


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _emit(data: dict, lines: list[str], as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def cmd_info(args, A, out) -> int:
    fail = jacobi_check(A)
    count = beltrametti_blasi_count(A, trials=args.trials, seed=args.seed)
    data = {"algebra": A.name, "dimension": A.dim, "basis": list(A.basis_names),
            "jacobi": "ok" if fail is None else fail.describe(A), "invariants": count}
    lines = [f"algebra: {A.name}", f"dimension: {A.dim}",
             "basis: " + " ".join(A.basis_names),
             f"jacobi: {data['jacobi']}",
             f"invariants (Beltrametti-Blasi): {count}"]
    _emit(data, lines, args.json, out)
    return 0 if fail is None else 1


def cmd_grade(args, A, out) -> int:
    G = compute_grading(A)
    data = {"algebra": A.name, "rank": G.rank,
            "weights": {g: list(w) for g, w in zip(A.basis_names, G.weights)}}
    lines = [f"algebra: {A.name}", f"rank: {G.rank}"]
    lines += [f"  {g}: {tuple(w)}" for g, w in zip(A.basis_names, G.weights)]
    if args.degree is not None:
        if args.degree < 1:
            raise UsageError("--degree must be >= 1")
        sizes = class_sizes_by_degree(G, A, args.degree)
        data["classes"] = [{"degree": d, "weight": list(w), "size": n}
                           for d in sorted(sizes) for w, n in sizes[d].items()]
        lines.append("class sizes:")
        for d in sorted(sizes):
            lines.append(f"  degree {d}: " + ", ".join(f"{tuple(w)}:{n}" for w, n in sizes[d].items()))
    _emit(data, lines, args.json, out)
    return 0


def search_report(run) -> dict:
    names = run.algebra.basis_names
    return {
        "algebra": run.algebra.name,
        "realization": run.realization,
        "degree": run.degree,
        "mode": run.mode,
        "classes": [
            {
                "weight": None if res.weight is None else list(res.weight),
                "ansatz_size": len(res.ansatz),
                "candidates": len(res.candidates),
                "genuine": [K.format(names) for K in res.genuine],
                "independent": [K.format(names) for K in res.independent],
            }
            for res in run.classes
        ],
    }


def cmd_search(args, A, out) -> int:
    if args.degree < 1:
        raise UsageError("--degree must be >= 1")
    if args.no_grading and (args.weight or args.all_weights):
        raise UsageError("--weight/--all-weights cannot be combined with --no-grading")
    R = load_realization(args.realization, A)
    bad = check_realization(R)
    if bad is not None:
        raise CasimirError(f"{args.realization}: not a homomorphism: {bad.describe(R)}")
    selection = "all" if args.all_weights else (args.weight or "default")
    run = run_search(A, R, args.degree, mode="naive" if args.no_grading else "graded",
                     weights=selection, trials=args.trials, seed=args.seed)
    report = search_report(run)
    lines = [f"algebra: {report['algebra']}  realization: {report['realization']}  "
             f"degree: {report['degree']}  mode: {report['mode']}"]
    for c in report["classes"]:
        w = "-" if c["weight"] is None else str(tuple(c["weight"]))
        lines.append(f"weight {w}: ansatz {c['ansatz_size']}, candidates {c['candidates']}, "
                     f"genuine {len(c['genuine'])}, independent {len(c['independent'])}")
        for e in c["genuine"]:
            mark = "*" if e in c["independent"] else " "
            lines.append(f"  {mark} {e}")
    total = sum(len(c["independent"]) for c in report["classes"])
    lines.append(f"independent Casimir operators found: {total}")
    _emit(report, lines, args.json, out)
    return 0


def read_expression(path: str, env):
    """Parse the single element in ``path``; it may span several lines."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    tokens, token_lines = [], []
    for n, raw in enumerate(text.splitlines(), 1):
        try:
            toks = exprparse.tokenize(raw.split("#", 1)[0])
        except ParseError as e:
            raise e.located(path, n) from None
        tokens += toks
        token_lines += [n] * len(toks)
    if not tokens:
        raise ParseError("no expression found", path)
    try:
        return exprparse.parse_tokens(tokens, expression_ring(env))
    except ParseError as e:
        line = token_lines[min(e.token or 0, len(token_lines) - 1)]
        raise e.located(path, line) from None


def cmd_verify(args, A, out) -> int:
    env = enveloping(A)
    K = read_expression(args.expr, env)
    bad = env.first_noncommuting(K)
    data = {"algebra": A.name, "expression": env.format(K), "casimir": bad is None}
    lines = [f"Casimir: {'yes' if bad is None else 'no'}"]
    if bad is not None:
        i, comm = bad
        data["generator"] = A.basis_names[i]
        data["commutator"] = env.format(comm)
        lines.append(f"  [K, {A.basis_names[i]}] = {data['commutator']}")
    _emit(data, lines, args.json, out)
    return 0


COMMANDS = {"info": cmd_info, "grade": cmd_grade, "search": cmd_search, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        A = load_algebra(args.algebra)
        if args.command != "info":
            fail = jacobi_check(A)
            if fail is not None:
                raise CasimirError(f"{args.algebra}: Jacobi identity fails: {fail.describe(A)}")
        return COMMANDS[args.command](args, A, out)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"casimir: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"casimir: cannot read {e.filename}: {e.strerror}", file=sys.stderr)
        return 1
    except (CasimirError, ValueError) as e:
        print(f"casimir: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
