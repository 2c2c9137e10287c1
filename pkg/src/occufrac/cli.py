"""Command-line front end. Every subcommand prints a single JSON report to
stdout (rationals as "p/q" strings, insertion-ordered keys) and reserves
stderr for diagnostics.

Exit codes: 0 pass / not-applicable, 1 failed check, 2 usage error,
3 capability (size limit) error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import bounds, corpus, hardcore, matching, selftest
from .errors import (
    CapabilityError,
    CertificateError,
    DomainError,
    FormatError,
    StructureError,
)
from .exactmath import format_rational, parse_rational
from .graphs import (
    Graph,
    complete,
    complete_bipartite,
    cycle,
    hypercube,
    kdd_union,
    parse_edge_list,
    parse_graph6,
    petersen,
    prism,
)
from .lp import solve
from .polynomials import (
    edge_occupancy,
    independence_poly,
    matching_poly,
    occupancy,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAPABILITY = 3


def _rat(value) -> str:
    return format_rational(Fraction(value))


def parse_graph_spec(spec: str, fmt: str = "graph6") -> Graph:
    """kdd:D, hdn:D:N, cycle:N, complete:N, prism:N, hypercube:K, petersen,
    or file:PATH (decoded per --format)."""
    if spec == "petersen":
        return petersen()
    kind, _, rest = spec.partition(":")
    try:
        if kind == "kdd":
            return complete_bipartite(int(rest))
        if kind == "hdn":
            d, n = rest.split(":")
            return kdd_union(int(d), int(n))
        if kind == "cycle":
            return cycle(int(rest))
        if kind == "complete":
            return complete(int(rest))
        if kind == "prism":
            return prism(int(rest))
        if kind == "hypercube":
            return hypercube(int(rest))
        if kind == "file":
            with open(rest, encoding="utf-8") as fh:
                text = fh.read()
            if fmt == "graph6":
                return parse_graph6(text.strip().splitlines()[0])
            return parse_edge_list(text)
    except ValueError as exc:
        raise DomainError(f"bad graph spec {spec!r}: {exc}") from None
    raise DomainError(f"unknown graph spec {spec!r}")


def load_corpus(path: str | None, fmt: str):
    """A corpus file is one graph per line: graph6 lines, or `spec:` graph
    specs; without a file the bundled regular corpus is used."""
    if path is None:
        return corpus.regular_corpus(12)
    named = []
    with open(path, encoding="utf-8") as fh:
        for idx, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            if fmt == "graph6":
                named.append((f"line{idx}", parse_graph6(s)))
            else:
                named.append((f"line{idx}", parse_graph_spec(s, fmt)))
    return named


def _positive_fugacity(text: str) -> Fraction:
    lam = parse_rational(text)
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    return lam


def _grid_arg(text: str | None):
    if not text:
        return corpus.FUGACITY_GRID
    return tuple(_positive_fugacity(part) for part in text.split(","))


def _report(command: str, inputs: dict, results: dict, verdict: str, start: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "verdict": verdict,
        "timing_ms": round((time.monotonic() - start) * 1000, 3),
    }


def _emit(report: dict) -> None:
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_poly(args, start):
    g = parse_graph_spec(args.graph, args.format)
    lam = _positive_fugacity(args.lam)
    ip = independence_poly(g)
    mp = matching_poly(g)
    results = {
        "independence": [str(c) for c in ip.coeffs],
        "matching": [str(c) for c in mp.coeffs],
        "occupancy": _rat(occupancy(g, lam)),
        "edge_occupancy": _rat(edge_occupancy(g, lam)) if g.edge_count else None,
    }
    return _report("poly", {"graph": args.graph, "lambda": args.lam}, results, "pass", start), EXIT_PASS


def cmd_occupancy(args, start):
    g = parse_graph_spec(args.graph, args.format)
    lam = _positive_fugacity(args.lam)
    results = {"occupancy": _rat(occupancy(g, lam))}
    return _report("occupancy", {"graph": args.graph, "lambda": args.lam}, results, "pass", start), EXIT_PASS


def cmd_counts(args, start):
    g = parse_graph_spec(args.graph, args.format)
    independent, matchings_by_size = bounds.counts(g)
    results = {
        "independent_sets": [str(c) for c in independent],
        "matchings": [str(c) for c in matchings_by_size],
    }
    return _report("counts", {"graph": args.graph}, results, "pass", start), EXIT_PASS


def cmd_certify_hardcore(args, start):
    lam = _positive_fugacity(args.lam)
    inputs = {"d": args.d, "lambda": args.lam}
    try:
        report = hardcore.dual_certificate(args.d, lam)
    except CertificateError as exc:
        results = {"error": str(exc)}
        return _report("certify hardcore", inputs, results, "fail", start), EXIT_FAIL
    lp_value = solve(hardcore.build_primal(args.d, lam)).value
    results = {
        "optimum": _rat(report.optimum),
        "lp_optimum": _rat(lp_value),
        "dual": {k: _rat(v) for k, v in report.dual_values.items()},
        "tight": list(report.tight),
        "slacks": [[cid, _rat(s)] for cid, s in report.slacks],
    }
    verdict = "pass" if report.optimum == lp_value else "fail"
    return _report("certify hardcore", inputs, results, verdict, start), (
        EXIT_PASS if verdict == "pass" else EXIT_FAIL
    )


def cmd_certify_matching(args, start):
    inputs = {"d": args.d, "grid": args.grid or "default"}
    grid = _grid_arg(args.grid) if args.grid else (_positive_fugacity(args.lam),)
    results_by_lam = {}
    verdict = "pass"
    for lam in grid:
        key = format_rational(lam)
        try:
            report = matching.check_dual_constraints(args.d, lam)
            duals = matching.dual_row_prices(args.d, lam)
            profile = [
                _rat(matching.slack_profile(t, duals)) for t in range(args.d)
            ]
            results_by_lam[key] = {
                "optimum": _rat(report.optimum),
                "dual": {k: _rat(v) for k, v in report.dual_values.items()},
                "slacks": [[cid, _rat(s)] for cid, s in report.slacks],
                "slack_profile": profile,
                "laguerre": matching.laguerre_identity_holds(args.d),
            }
        except CertificateError as exc:
            results_by_lam[key] = {"error": str(exc)}
            verdict = "fail"
    return _report("certify matching", inputs, results_by_lam, verdict, start), (
        EXIT_PASS if verdict == "pass" else EXIT_FAIL
    )


def cmd_tree(args, start):
    lam = _positive_fugacity(args.lam)
    tol = parse_rational(args.tol)
    bracket = bounds.tree_occupancy(args.d, lam, tol)
    results = {
        "alpha_low": _rat(bracket.alpha_low),
        "alpha_high": _rat(bracket.alpha_high),
        "width": _rat(bracket.width),
    }
    if args.d >= 3:
        results["uniqueness_threshold"] = _rat(bounds.uniqueness_threshold(args.d))
    return _report(
        "tree", {"d": args.d, "lambda": args.lam, "tol": args.tol}, results, "pass", start
    ), EXIT_PASS


def cmd_verify_lower_bound(args, start):
    if args.corpus is None:
        named = corpus.transitive_bipartite_corpus()
    else:
        named = load_corpus(args.corpus, args.format)
    grid = _grid_arg(args.grid)
    rows = []
    verdict = "pass"
    for name, g in named:
        for lam in grid:
            v = bounds.verify_lower_bound(
                g, lam, assume_vertex_transitive=args.assume_vertex_transitive
            )
            rows.append(
                {
                    "graph": name,
                    "lambda": format_rational(lam),
                    "status": v.status,
                    "occupancy": _rat(v.alpha),
                    "tree_high": _rat(v.bracket.alpha_high),
                }
            )
            if v.status == "fail":
                verdict = "fail"
            elif v.status == "inconclusive" and verdict == "pass":
                verdict = "inconclusive"
    exit_code = EXIT_PASS if verdict == "pass" else EXIT_FAIL
    return _report(
        "verify lower-bound", {"corpus": args.corpus or "builtin", "grid": [format_rational(x) for x in grid]},
        {"checks": rows}, verdict, start
    ), exit_code


def cmd_verify_given_size(args, start):
    named = load_corpus(args.corpus, args.format)
    if args.corpus is None:
        named = corpus.given_size_corpus()
    rows = []
    verdict = "pass"
    any_applicable = False
    for name, g in named:
        v = bounds.given_size_bound(g)
        rows.append(
            {
                "graph": name,
                "applicable": v.applicable,
                "ok": v.ok,
                "failures": [list(f) for f in v.failures],
            }
        )
        any_applicable = any_applicable or v.applicable
        if not v.ok:
            verdict = "fail"
    if verdict == "pass" and not any_applicable:
        verdict = "not-applicable"
    exit_code = EXIT_PASS if verdict in ("pass", "not-applicable") else EXIT_FAIL
    return _report(
        "verify given-size", {"corpus": args.corpus or "builtin"}, {"checks": rows}, verdict, start
    ), exit_code


def cmd_conjectures(args, start):
    named = load_corpus(args.corpus, args.format)
    if args.corpus is None:
        # the bundled corpus mixes degrees and sizes; keep the matching slice
        from .graphs import regular_degree

        named = [
            (name, g)
            for name, g in named
            if regular_degree(g) == args.d and g.n == args.n
        ]
        if not named:
            raise DomainError(
                f"no bundled {args.d}-regular graphs on {args.n} vertices"
            )
    report = bounds.ratio_conjecture_report(named, args.d, args.n)
    results = {}
    for which, rows in report.items():
        results[which] = [
            {
                "k": row["k"],
                "max_ratio": _rat(row["max"]),
                "achievers": row["achievers"],
                "extremal_candidate": (
                    _rat(row["extremal_candidate"])
                    if row["extremal_candidate"] is not None
                    else None
                ),
                "candidate_attains_max": row["candidate_attains_max"],
            }
            for row in rows
        ]
    # empirical evidence only: the verdict never fails on a counterexample
    return _report(
        "conjectures", {"corpus": args.corpus or "builtin", "d": args.d, "n": args.n},
        results, "pass", start
    ), EXIT_PASS


def cmd_selftest(args, start):
    results = selftest.run_all(quick=args.quick)
    rows = [r.to_json() for r in results]
    ok = all(r.passed for r in results)
    return _report(
        "selftest", {"quick": args.quick}, {"criteria": rows}, "pass" if ok else "fail", start
    ), (EXIT_PASS if ok else EXIT_FAIL)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="occufrac",
        description="Exact occupancy fractions, LP relaxations and dual "
        "certificates for d-regular graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_arg(p):
        p.add_argument("--graph", required=True, help="kdd:D | hdn:D:N | cycle:N | complete:N | prism:N | hypercube:K | petersen | file:PATH")
        p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")

    p = sub.add_parser("poly", help="independence and matching polynomials")
    add_graph_arg(p)
    p.add_argument("--lambda", dest="lam", default="1", help="fugacity p/q")
    p.set_defaults(fn=cmd_poly)

    p = sub.add_parser("occupancy", help="exact occupancy fraction")
    add_graph_arg(p)
    p.add_argument("--lambda", dest="lam", default="1")
    p.set_defaults(fn=cmd_occupancy)

    p = sub.add_parser("counts", help="independent set and matching counts by size")
    add_graph_arg(p)
    p.set_defaults(fn=cmd_counts)

    p = sub.add_parser("certify", help="dual certificates")
    certify_sub = p.add_subparsers(dest="which", required=True)
    ph = certify_sub.add_parser("hardcore")
    ph.add_argument("--d", type=int, required=True)
    ph.add_argument("--lambda", dest="lam", required=True)
    ph.set_defaults(fn=cmd_certify_hardcore)
    pm = certify_sub.add_parser("matching")
    pm.add_argument("--d", type=int, required=True)
    pm.add_argument("--lambda", dest="lam", default="1")
    pm.add_argument("--grid", help="comma-separated fugacities, e.g. 1/4,1,4")
    pm.set_defaults(fn=cmd_certify_matching)

    p = sub.add_parser("tree", help="bracket the infinite-tree occupancy")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--tol", default="1/1000000000")
    p.set_defaults(fn=cmd_tree)

    p = sub.add_parser("verify", help="corpus verification")
    verify_sub = p.add_subparsers(dest="which", required=True)
    pl = verify_sub.add_parser("lower-bound")
    pl.add_argument("--corpus")
    pl.add_argument("--format", choices=("graph6", "spec"), default="graph6")
    pl.add_argument("--grid")
    pl.add_argument("--assume-vertex-transitive", action="store_true")
    pl.set_defaults(fn=cmd_verify_lower_bound)
    pg = verify_sub.add_parser("given-size")
    pg.add_argument("--corpus")
    pg.add_argument("--format", choices=("graph6", "spec"), default="graph6")
    pg.set_defaults(fn=cmd_verify_given_size)

    p = sub.add_parser("conjectures", help="empirical successive-ratio report")
    p.add_argument("--corpus")
    p.add_argument("--format", choices=("graph6", "spec"), default="graph6")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_conjectures)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--quick", action="store_true")
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    start = time.monotonic()
    try:
        report, code = args.fn(args, start)
    except (DomainError, FormatError, StructureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    _emit(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
