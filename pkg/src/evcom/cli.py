"""Command-line entry point: ``evcom analyze|lift|oracle|verify-paper``.

Exit codes: 0 success, 1 input error (or a failed check), 2 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction
from typing import Optional, Sequence

from .groups import EnumerationCapError
from .harness import FAIL, SKIPPED, format_table, run_all
from .oracle import DEFAULT_MAX_K, OracleCapError, Verdict, build_graph, equivalent, identity_group_raw
from .perm import Permutation, PermutationError, TwoTermIdentity, format_perm, parse_perm, parse_rational
from .report import PredictionMismatch, analyze
from .saturation import SaturationCapError, lift_Ti

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 1, 2


class InputError(Exception):
    """Bad flags; the message names the offending flag."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# --- flag helpers ---------------------------------------------------------------

def _sigma(args) -> Permutation:
    try:
        oneline = args.sigma.strip().startswith("[")
        sigma = parse_perm(args.sigma, None if oneline else args.n)
    except PermutationError as exc:
        raise InputError(f"--sigma: {exc}") from None
    if args.n is not None and sigma.size != args.n:
        raise InputError(f"--n: {args.n} does not match --sigma of size {sigma.size}")
    return sigma


def _q(text: str) -> Fraction:
    try:
        q = parse_rational(text)
    except ValueError as exc:
        raise InputError(f"--q: {exc}") from None
    if q == 0:
        raise InputError("--q: q must be nonzero (q=0 is not a two-term identity)")
    return q


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


# --- subcommands ----------------------------------------------------------------

def cmd_analyze(args) -> int:
    ident = TwoTermIdentity(_sigma(args), _q(args.q))
    if args.max_degree is not None and args.max_degree < ident.n:
        raise InputError(f"--max-degree: {args.max_degree} is below n = {ident.n}")
    if args.oracle_max_k < 0:
        raise InputError("--oracle-max-k: must be nonnegative")
    doc = analyze(ident, max_degree=args.max_degree, oracle_max_k=args.oracle_max_k,
                  seed_latyshev=args.seed_latyshev == "on")
    _emit(args, doc.to_json_dict(), doc.to_text())
    return EXIT_OK


def cmd_lift(args) -> int:
    sigma = _sigma(args)
    m = sigma.size
    if args.i is not None and not 0 <= args.i <= m + 1:
        raise InputError(f"--i: {args.i} outside 0..{m + 1}")
    indices = [args.i] if args.i is not None else list(range(m + 2))
    ident = Permutation.identity(m + 1).monomial()
    records, lines = [], [f"sigma = {format_perm(sigma)} = {format_perm(sigma, 'cycles')}; "
                          f"f_sigma = {Permutation.identity(m).monomial()} - {sigma.monomial()}"]
    for i in indices:
        tau = lift_Ti(sigma, i)
        records.append({"i": i, "oneline": format_perm(tau),
                        "cycles": format_perm(tau, "cycles"),
                        "f": [ident, tau.monomial()]})
        lines.append(f"T_{i}: {format_perm(tau)}  {format_perm(tau, 'cycles')}  "
                     f"{ident} - {tau.monomial()}")
    _emit(args, {"sigma": format_perm(sigma), "lifts": records}, "\n".join(lines))
    return EXIT_OK


def _verdict(v) -> str:
    return v.value if isinstance(v, Verdict) else str(v)


def _census(components: list[tuple[int, bool]]) -> str:
    sizes = Counter(size for size, _ in components)
    parts = [f"{c} component{'s' if c != 1 else ''} of size {s}" for s, c in sorted(sizes.items())]
    return ", ".join(parts)


def cmd_oracle(args) -> int:
    ident = TwoTermIdentity(_sigma(args), _q(args.q))
    if args.k < ident.n:
        raise InputError(f"--k: {args.k} is below n = {ident.n}")
    if args.prime is not None and args.prime < 2:
        raise InputError("--prime: must be a prime")
    queries = []
    for text in args.query or []:
        parts = text.split(";")
        if len(parts) != 2:
            raise InputError(f"--query: expected 'a;b', got {text!r}")
        try:
            queries.append(tuple(parse_perm(p, args.k) for p in parts))
        except PermutationError as exc:
            raise InputError(f"--query: {exc}") from None
    try:
        graph = build_graph(ident, args.k, prime=args.prime, allow_k9=args.allow_k9)
    except ValueError as exc:
        raise InputError(f"--prime: {exc}") from None
    k = args.k
    if queries:
        answers = [(a, b, equivalent(graph, a, b)) for a, b in queries]
        payload = {"k": k, "queries": [
            {"a": format_perm(a), "b": format_perm(b), "verdict": _verdict(v)} for a, b, v in answers
        ]}
        text = "\n".join(f"x_{format_perm(a)} vs x_{format_perm(b)}: {_verdict(v)}"
                         for a, b, v in answers)
        _emit(args, payload, text)
        return EXIT_OK
    comps = graph.components()
    dead = sum(1 for _, d in comps if d)
    h = len(identity_group_raw(graph))
    if dead == len(comps):
        dead_txt = "all components dead"
    elif dead:
        dead_txt = f"{dead} dead"
    else:
        dead_txt = "no dead components"
    payload = {"k": k, "components": [{"size": s, "dead": d} for s, d in comps],
               "dead_components": dead, "identity_group_order": h,
               "edges_inserted": graph.edges_inserted}
    _emit(args, payload, f"{_census(comps)}; |H_{k}| = {h}; {dead_txt}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    if args.max_n < 3:
        raise InputError("--max-n: must be at least 3")
    rows = run_all(args.max_n, skip_oracle=args.skip_oracle)
    failed = [r for r in rows if r.status == FAIL]
    if args.format == "json":
        payload = {"rows": [vars(r) for r in rows], "failed": len(failed)}
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(format_table(rows))
        skipped = sum(r.status == SKIPPED for r in rows)
        print(f"\n{len(rows) - len(failed) - skipped} passed, {len(failed)} failed, "
              f"{skipped} skipped")
    return EXIT_INPUT if failed else EXIT_OK


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evcom", description="Eventual commutativity of two-term identities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, q=True):
        p.add_argument("--sigma", required=True, help='"[3,2,1]" or "(1 3)" (cycles need --n)')
        p.add_argument("--n", type=int, default=None)
        if q:
            p.add_argument("--q", default="1", help='rational, e.g. "2", "-1", "1/2"')
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("analyze", help="saturate, classify and cross-check one identity")
    common(p)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--oracle-max-k", type=int, default=6)
    p.add_argument("--seed-latyshev", choices=("on", "off"), default="on")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lift", help="apply the degree-raising lifts T_i")
    common(p, q=False)
    p.add_argument("--i", type=int, default=None)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("oracle", help="brute-force consequence graph in one degree")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--query", action="append", help='"a;b", repeatable')
    p.add_argument("--allow-k9", action="store_true", help=f"raise the cap from {DEFAULT_MAX_K} to 9")
    p.add_argument("--prime", type=int, default=None, help="work modulo this prime")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify-paper", help="run the verification table")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--skip-oracle", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    for stream in (sys.stdout, sys.stderr):
        try:
            stream.reconfigure(encoding="utf-8", line_buffering=True)
        except (AttributeError, ValueError):
            pass
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PermutationError) as exc:
        print(f"evcom {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PredictionMismatch as exc:
        print(f"evcom {args.command}: prediction mismatch: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SaturationCapError, EnumerationCapError, OracleCapError) as exc:
        print(f"evcom {args.command}: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
