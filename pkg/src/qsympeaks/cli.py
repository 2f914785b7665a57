"""Command-line front end: ``qsym <command> ...``.

Commands are thin wrappers over the library; JSON output uses sorted keys so
identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .combinatorics import (
    IndexSet,
    count_extended_peak_sets,
    enumerate_extended_peak_sets,
)
from .linalg import build_B_direct, rank
from .ppartitions import LabelledWeightedPoset, gamma_q
from .qsym import eta, fundamental_L, monomial, realize, symbolic_q, universal_U
from .scalars import rho, scalar_str
from .theorems import SUITES, run_suite


def parse_q(spec: str):
    """``symbolic`` | ``rho:<p>`` | ``rational:<a>/<b>`` (or ``rational:<a>``)."""
    kind, _, arg = spec.partition(":")
    if kind == "symbolic" and not arg:
        return symbolic_q()
    if kind == "rho" and arg.isdigit() and int(arg) >= 1:
        return rho(int(arg))
    if kind == "rational" and arg:
        try:
            return Fraction(arg)
        except (ValueError, ZeroDivisionError):
            pass
    raise argparse.ArgumentTypeError(
        f"bad q-spec {spec!r}; expected symbolic, rho:<p> or rational:<a>/<b>"
    )


def parse_int_list(text: str) -> list[int]:
    if text.strip() in ("", "{}", "[]"):
        return []
    try:
        return [int(x) for x in text.strip("{}[]").split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", type=Path, help="write the document here instead of stdout")

    p = sub.add_parser("expand", help="expand a basis element in the monomial basis")
    p.add_argument("--basis", choices=["L", "eta", "U", "M"], required=True)
    p.add_argument("--n", type=positive_int, help="degree (L, eta)")
    p.add_argument("--set", type=parse_int_list, default=[], help="index set, e.g. 1,3")
    p.add_argument("--composition", type=parse_int_list, help="weights (U, M)")
    p.add_argument("--q", type=parse_q, default="symbolic")
    p.add_argument("--vars", type=positive_int, help="also realise in x_1..x_K")
    p.add_argument("--format", choices=["json", "text"], default="json")
    add_out(p)

    p = sub.add_parser("matrix", help="the transition matrix B_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=parse_q, default="symbolic")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    add_out(p)

    p = sub.add_parser("rank", help="rank of B_n at rho_p (or another q)")
    p.add_argument("--n", type=positive_int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=positive_int)
    group.add_argument("--q", type=parse_q)
    p.add_argument("--format", choices=["json", "text"], default="text")
    add_out(p)

    p = sub.add_parser("count", help="number of p-extended peak sets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=positive_int, required=True)
    p.add_argument("--list", action="store_true", help="also list the sets")
    add_out(p)

    p = sub.add_parser("oracle", help="brute-force generating functions")
    osub = p.add_subparsers(dest="oracle", required=True)
    g = osub.add_parser("gamma", help="q-weighted enriched P-partition generating function")
    g.add_argument("--poset", type=Path, required=True)
    g.add_argument("--vars", type=positive_int, required=True)
    g.add_argument("--q", type=parse_q, default="symbolic")
    add_out(g)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--max-n", type=positive_int, default=6)
    p.add_argument("--max-p", type=positive_int, default=3)
    p.add_argument("--format", choices=["text", "json"], default="text")
    add_out(p)
    return parser


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_expand(args, parser) -> int:
    q = args.q
    try:
        if args.basis in ("L", "eta"):
            if args.n is None:
                parser.error("--n is required for L and eta")
            subset = IndexSet.of(args.n, args.set)
            f = fundamental_L(args.n, subset, q) if args.basis == "L" else eta(args.n, subset, q)
        elif args.basis == "U":
            if not args.composition:
                parser.error("--composition is required for U")
            f = universal_U(IndexSet.of(len(args.composition), args.set), args.composition, q)
        else:
            if not args.composition:
                parser.error("--composition is required for M")
            f = monomial(args.composition)
    except ValueError as exc:
        parser.error(f"--set/--composition: {exc}")
    if args.format == "text":
        text = repr(f) + "\n"
    else:
        doc = f.to_json()
        if args.vars:
            doc["realization"] = realize(f, args.vars).to_json()
        text = _dump(doc)
    _emit(text, args.out)
    return 0


def cmd_matrix(args, parser) -> int:
    if args.n < 0:
        parser.error("--n must be nonnegative")
    B = build_B_direct(args.n, args.q)
    _emit(B.to_csv() if args.format == "csv" else _dump(B.to_json()), args.out)
    return 0


def cmd_rank(args, parser) -> int:
    q = rho(args.p) if args.p else args.q
    rk = rank(build_B_direct(args.n, q))
    doc = {"n": args.n, "rank": rk, "kernel_dimension": 2 ** (args.n - 1) - rk}
    if args.p:
        doc["p"] = args.p
        doc["extended_peak_sets"] = count_extended_peak_sets(args.n, args.p)
    else:
        doc["q"] = scalar_str(q)
    if args.format == "json":
        text = _dump(doc)
    else:
        text = "\n".join(f"{k}: {v}" for k, v in sorted(doc.items())) + "\n"
    _emit(text, args.out)
    return 0


def cmd_count(args, parser) -> int:
    if args.n < 0:
        parser.error("--n must be nonnegative")
    text = f"{count_extended_peak_sets(args.n, args.p)}\n"
    if args.list and args.n >= 1:
        text += "".join(f"{list(s.members)}\n" for s in enumerate_extended_peak_sets(args.n, args.p))
    _emit(text, args.out)
    return 0


def cmd_oracle(args, parser) -> int:
    try:
        poset = LabelledWeightedPoset.from_json(args.poset)
    except (OSError, ValueError, KeyError) as exc:
        parser.error(f"--poset: {exc}")
    _emit(_dump(gamma_q(poset, args.vars, args.q).to_json()), args.out)
    return 0


def cmd_verify(args, parser) -> int:
    reports = run_suite(args.suite, args.max_n, args.max_p)
    ok = all(r.passed for r in reports)
    if args.format == "json":
        text = _dump({"passed": ok, "suites": [r.to_json() for r in reports]})
    else:
        text = "\n".join(r.to_text() for r in reports) + f"\n{'ALL PASSED' if ok else 'FAILED'}\n"
    _emit(text, args.out)
    return 0 if ok else 1


COMMANDS = {
    "expand": cmd_expand,
    "matrix": cmd_matrix,
    "rank": cmd_rank,
    "count": cmd_count,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if isinstance(getattr(args, "q", None), str):
        args.q = parse_q(args.q)
    return COMMANDS[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())
