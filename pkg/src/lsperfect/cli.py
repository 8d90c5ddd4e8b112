"""Command line entry point.

Graphs are given either as an edge-list file or as a generator name followed
by integer parameters, e.g. ``lsperfect check-lsplus web 10 2``.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .graphcore import CapacityError, Graph, GraphInputError, stability_number
from .harness import (
    GENERATORS,
    SUITES,
    ConfigError,
    emit_report,
    generate,
    load_config,
    parse_graph_file,
    run_verification,
    theorem_suites,
)
from .inequalities import is_joined_a_perfect
from .lsplus import GAP_TOL, MAX_ITER, THRESHOLD, eta_plus_outcome, is_lsplus_perfect
from .polytope import UnsupportedInputError, stab_facets

EXIT_OK, EXIT_CONFIG, EXIT_INCONSISTENT = 0, 1, 2


def _graph_from(tokens: list[str]) -> Graph:
    if not tokens:
        raise ConfigError("no graph given")
    if len(tokens) == 1 and Path(tokens[0]).is_file():
        return parse_graph_file(tokens[0])
    try:
        params = [int(t) for t in tokens[1:]]
    except ValueError:
        raise ConfigError(f"generator parameters must be integers: {tokens[1:]}") from None
    return generate(tokens[0], *params)


def _add_graph_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", nargs="+", help="edge-list file, or generator name and parameters")


def _add_solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=GAP_TOL, help="relative duality gap target")
    p.add_argument("--threshold", type=float, default=THRESHOLD, help="violation needed for imperfect")
    p.add_argument("--max-iter", type=int, default=MAX_ITER)


def cmd_generate(args) -> int:
    g = _graph_from([args.name, *map(str, args.params)])
    text = g.to_edge_list()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_facets(args) -> int:
    g = _graph_from(args.graph)
    for f in stab_facets(g).inequalities:
        print(f.format())
    return EXIT_OK


def cmd_check_lsplus(args) -> int:
    g = _graph_from(args.graph)
    eta = eta_plus_outcome(g, args.tol, args.max_iter)
    st = is_lsplus_perfect(g, args.threshold, args.tol, args.max_iter)
    print(f"status: {st.summary()}")
    print(f"alpha: {stability_number(g)}")
    print(f"eta_plus: {eta.value:.9f} (bound {eta.bound:.9f})")
    print(f"{'facet':<40} {'value':>12} {'bound':>12}  verdict")
    for c in st.checks:
        if c.excess >= args.threshold:
            verdict = "violated"
        elif c.bound <= c.facet.rhs + args.threshold:
            verdict = "valid"
        else:
            verdict = "open"
        print(f"{c.facet.format():<40} {c.value:>12.8f} {c.bound:>12.8f}  {verdict}")
    return EXIT_OK


def cmd_check_joined(args) -> int:
    g = _graph_from(args.graph)
    rep = is_joined_a_perfect(g)
    print(f"joined_a_perfect: {str(rep.joined_a_perfect).lower()}")
    for f in rep.facets:
        d = rep.recognized.get(f)
        if d is None:
            print(f"{f.format():<40} unrecognized")
        else:
            parts = " + ".join("clique" if p.is_clique else f"antiweb{p.kind}" for p in d.parts)
            print(f"{f.format():<40} {parts}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    if args.workers is not None:
        cfg.workers = args.workers
    for key in ("tol", "threshold", "max_iter"):
        if getattr(args, key) is not None:
            setattr(cfg, key, getattr(args, key))
    output = args.output or cfg.output
    fmt = args.format or cfg.format
    verdicts = run_verification(cfg)
    text = emit_report(verdicts, output, fmt)
    if output is None:
        print(text)
    bad = [v.graph_id for v in verdicts if v.consistent is False]
    errors = [v.graph_id for v in verdicts if v.error]
    log.info("%d graphs, %d inconsistent, %d errors", len(verdicts), len(bad), len(errors))
    if bad:
        print(f"inconsistent: {', '.join(bad)}", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_suites(args) -> int:
    for r in theorem_suites(args.suite or None, args.threshold):
        print(r.line())
    return EXIT_OK


log = logging.getLogger("lsperfect")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lsperfect", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated graph as an edge list")
    p.add_argument("name", choices=sorted(GENERATORS))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("facets", help="facets of the stable set polytope")
    _add_graph_arg(p)
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("check-lsplus", help="decide LS+-perfection facet by facet")
    _add_graph_arg(p)
    _add_solver_args(p)
    p.set_defaults(func=cmd_check_lsplus)

    p = sub.add_parser("check-joined-aperfect", help="recognise every facet as a joined antiweb constraint")
    _add_graph_arg(p)
    p.set_defaults(func=cmd_check_joined)

    p = sub.add_parser("verify-conjecture", help="run the corpus in a config file")
    p.add_argument("config")
    p.add_argument("--workers", type=int)
    p.add_argument("--output")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--tol", type=float)
    p.add_argument("--threshold", type=float)
    p.add_argument("--max-iter", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("theorem-suites", help="run the named experiments")
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--threshold", type=float, default=THRESHOLD)
    p.set_defaults(func=cmd_suites)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ConfigError, GraphInputError, CapacityError, UnsupportedInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
