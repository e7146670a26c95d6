"""Command-line interface: ``twdichotomy <subcommand> ...``.

Exit codes: 0 success (``analyze``: Bounded, ``recognize``: member,
``detect``: found), 1 the negative answer, 2 input errors, 3 budget
exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Any

from . import constants as const
from .blocks import block_report
from .certificates import SubdivisionModel
from .decomposition import exact_treewidth
from .detection import DEFAULT_BUDGET, find_induced
from .dichotomy import SurveyRow, decide_bounded, split_forbidden, survey
from .errors import BudgetExceeded, ContractError, GraphParseError, SpecError
from .extraction import bigclique_extract, block_subdivision_extract, lemma_clique_extract
from .formats import graph_from_json, load_graph, to_dot, write_edge_list, write_graph6
from .generators import generate, parse_generator_spec
from .recognition import RECOGNIZERS, is_complete_bipartite, is_line_of_tripod

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _emit(obj: Any) -> None:
    print(json.dumps(obj, indent=2))


def _cmd_analyze(args: argparse.Namespace) -> int:
    names = split_forbidden(args.forbidden)
    verdict = decide_bounded(names, lenient_bipartite=args.lenient_bipartite)
    if args.json:
        _emit(verdict.to_json())
    else:
        for c, name in verdict.slots.items():
            print(f"{c:20s} {name if name is not None else 'Missing'}")
        print("overall: " + ("Bounded" if verdict.bounded else "Unbounded (missing: " + ", ".join(verdict.missing) + ")"))
        print(f"suggested_p: {verdict.suggested_p}")
        for note in verdict.notes:
            print(f"note: {note}")
    return EXIT_OK if verdict.bounded else EXIT_NO


def _cmd_treewidth(args: argparse.Namespace) -> int:
    g = load_graph(args.graph, args.format)
    try:
        tw, td = exact_treewidth(g, args.budget)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc.lower} <= tw <= {exc.upper}", file=sys.stderr)
        return EXIT_BUDGET
    print(tw)
    if args.decomposition:
        Path(args.decomposition).write_text(json.dumps(td.to_json(), indent=2) + "\n")
    if args.dot:
        Path(args.dot).write_text(td.to_dot())
    return EXIT_OK


def _cmd_recognize(args: argparse.Namespace) -> int:
    g = load_graph(args.graph, args.format)
    if args.family == "line-tripod":
        verdict = is_line_of_tripod(g, strict=args.strict)
    elif args.family == "bipartite":
        verdict = is_complete_bipartite(g, lenient=args.lenient)
    else:
        verdict = RECOGNIZERS[args.family](g)
    _emit(verdict.to_json())
    return EXIT_OK if verdict.member else EXIT_NO


def _cmd_detect(args: argparse.Namespace) -> int:
    pattern, host = load_graph(args.pattern), load_graph(args.host)
    try:
        emb = find_induced(pattern, host, args.budget, mode="subgraph" if args.subgraph else "induced")
    except BudgetExceeded as exc:
        _emit({"found": None, "reason": str(exc)})
        return EXIT_BUDGET
    _emit({"found": emb is not None, "embedding": emb.to_json() if emb else None})
    return EXIT_OK if emb is not None else EXIT_NO


def _cmd_blocks(args: argparse.Namespace) -> int:
    _emit(block_report(load_graph(args.graph, args.format), args.k).to_json())
    return EXIT_OK


def _cmd_generate(args: argparse.Namespace) -> int:
    g = generate(parse_generator_spec(args.spec))
    if args.out == "graph6":
        print(write_graph6(g).decode("ascii"))
    elif args.out == "edges":
        sys.stdout.write(write_edge_list(g))
    else:
        sys.stdout.write(to_dot(g))
    return EXIT_OK


def _cmd_constants(args: argparse.Namespace) -> int:
    try:
        vals = [int(a) for a in args.args.split(",") if a.strip()]
    except ValueError as exc:
        raise ContractError(f"--args must be comma-separated integers: {exc}") from exc
    value = const.evaluate(args.name, vals, args.ramsey, args.max_bits)
    print(const.format_value(value, args.max_bits))
    return EXIT_OK


def _cmd_extract(args: argparse.Namespace) -> int:
    src = args.inputs
    text = Path(src).read_text() if Path(src).exists() else src
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ContractError(f"--inputs is neither a JSON file nor JSON text: {exc}") from exc
    try:
        g = graph_from_json(data["graph"])
        if args.procedure == "clique":
            out = lemma_clique_extract(g, data["sets"], int(data["a"]), int(data["b"]))
        elif args.procedure == "bigclique":
            model = SubdivisionModel.from_json(data["model"])
            out = bigclique_extract(g, model, int(data["p"]), int(data["r"]))
        else:
            out = block_subdivision_extract(g, data["block"], int(data["p"]), int(data["m_target"]))
    except KeyError as exc:
        raise ContractError(f"missing input field {exc}") from exc
    _emit(out.to_json())
    return EXIT_OK if out.ok else EXIT_NO


def _write_survey_csv(rows: list[SurveyRow], handle) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(SurveyRow.FIELDS)
    for r in rows:
        writer.writerow(["" if v is None else v for v in r.as_tuple()])


def _cmd_survey(args: argparse.Namespace) -> int:
    names = split_forbidden(args.forbidden)
    rows = survey(names, args.n_min, args.n_max, args.samples, args.seed, args.budget, args.edge_probability)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            _write_survey_csv(rows, fh)
    else:
        _write_survey_csv(rows, sys.stdout)
    plot = args.plot
    if plot is None and args.csv and not args.no_plot:
        plot = str(Path(args.csv).with_suffix(".png"))
    if plot and not args.no_plot:
        from .plotting import plot_survey

        plot_survey(rows, plot, title="F = {" + ", ".join(names) + f"}}, seed {args.seed}")
        print(f"figure written to {plot}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twdichotomy", description="Tree-width dichotomy toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide boundedness of tree-width for a forbidden set")
    p.add_argument("--forbidden", required=True,
                   help="comma-separated files, generator specs (family:params) or graph6 strings")
    p.add_argument("--json", action="store_true")
    p.add_argument("--lenient-bipartite", action="store_true",
                   help="count edgeless members as complete bipartite graphs")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("treewidth", help="exact tree-width")
    p.add_argument("graph")
    p.add_argument("--format", choices=["graph6", "edges"])
    p.add_argument("--decomposition", metavar="OUT.json")
    p.add_argument("--dot", metavar="OUT.dot")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_treewidth)

    p = sub.add_parser("recognize", help="membership in a critical class")
    p.add_argument("--family", required=True, choices=sorted(RECOGNIZERS))
    p.add_argument("--strict", action="store_true", help="line-tripod: reject path components")
    p.add_argument("--lenient", action="store_true", help="bipartite: accept edgeless graphs")
    p.add_argument("--format", choices=["graph6", "edges"])
    p.add_argument("graph")
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("detect", help="induced (or subgraph) embedding search")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--subgraph", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("blocks", help="k-blocks and block number")
    p.add_argument("graph")
    p.add_argument("--k", type=int)
    p.add_argument("--format", choices=["graph6", "edges"])
    p.set_defaults(func=_cmd_blocks)

    p = sub.add_parser("generate", help="build a graph from a generator spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", choices=["graph6", "edges", "dot"], default="graph6")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("constants", help="evaluate a constant exactly")
    p.add_argument("--name", required=True)
    p.add_argument("--args", required=True)
    p.add_argument("--ramsey", choices=["upper", "exact"], default="upper")
    p.add_argument("--max-bits", type=int, default=const.DEFAULT_MAX_BITS)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("extract", help="run an extraction procedure")
    p.add_argument("--procedure", required=True, choices=["clique", "bigclique", "block"])
    p.add_argument("--inputs", required=True, help="JSON file or JSON text")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("survey", help="sample F-free random graphs and measure tree-width")
    p.add_argument("--forbidden", required=True)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--edge-probability", type=float)
    p.add_argument("--csv", metavar="OUT.csv")
    p.add_argument("--plot", metavar="OUT.png", help="figure path (default: next to --csv)")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=_cmd_survey)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ContractError, SpecError, GraphParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
