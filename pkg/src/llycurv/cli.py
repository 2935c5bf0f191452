"""
``curv``: exact edge curvature and Bonnet-Myers sharpness from the command line.

Verbs:
  curvature <file> [--edge U V | --all]   per-edge curvature
  analyze <file>                          verdict with the full pole suite
  generate <family> <params> [-o FILE]    write a named family as an edge list
  verify-sharp <file> [--strict]          exit 0 iff sharp (and every check passes)
  crosscheck <file> [--oracle ...]        exit 0 iff every oracle agrees

A file argument of '-' reads standard input. Exit status is 2 for input
errors and 1 when verify-sharp or crosscheck finds a false verdict.
"""

import argparse
import sys
from typing import Sequence, TextIO

from llycurv.curvature import all_edge_reports, edge_curvature
from llycurv.generators import FAMILIES, generate
from llycurv.graph import format_edge_list, read_edge_list
from llycurv.report import Buildable, CurvatureDocument, SharpnessDocument
from llycurv.sharpness import sharpness_verdict
from llycurv.util import UTIL, logger, set_verbose
from llycurv.validators import CurvatureError

_ORACLE_CHOICES = {"lp": ("lp",), "lipschitz": ("lipschitz",), "both": ("lp", "lipschitz")}


def build_parser() -> argparse.ArgumentParser:
    verbose = argparse.ArgumentParser(add_help=False)
    verbose.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")

    # Reporting verbs; generate only writes an edge list.
    common = argparse.ArgumentParser(add_help=False, parents=[verbose])
    common.add_argument("--format", choices=("text", "json", "xml"), default="text",
                        help="Output format (default: text)")
    common.add_argument("--processes", type=int, default=None,
                        help="Worker processes for per-edge work (default: UTIL.processes)")

    parser = argparse.ArgumentParser(prog="curv", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    verbs = parser.add_subparsers(dest="verb", required=True)

    curvature = verbs.add_parser("curvature", parents=[common], help="Exact curvature of edges")
    curvature.add_argument("path", help="Edge-list file or '-'")
    which = curvature.add_mutually_exclusive_group()
    which.add_argument("--edge", nargs=2, metavar=("U", "V"), help="Only the edge U V")
    which.add_argument("--all", action="store_true", help="Every edge (the default)")

    analyze = verbs.add_parser("analyze", parents=[common], help="Full sharpness report")
    analyze.add_argument("path", help="Edge-list file or '-'")

    gen = verbs.add_parser("generate", parents=[verbose], help="Write a named graph family")
    gen.add_argument("family", choices=sorted(FAMILIES))
    gen.add_argument("params", nargs="*", type=int, help="Integer family parameters")
    gen.add_argument("-o", "--output", help="Write to this file instead of stdout")

    verify = verbs.add_parser("verify-sharp", parents=[common], help="Exit 0 iff the graph is sharp")
    verify.add_argument("path", help="Edge-list file or '-'")
    verify.add_argument("--strict", action="store_true", help="Also require every pole check to pass")

    cross = verbs.add_parser("crosscheck", parents=[common], help="Audit oracle agreement on every edge")
    cross.add_argument("path", help="Edge-list file or '-'")
    cross.add_argument("--oracle", choices=sorted(_ORACLE_CHOICES), default="both")
    return parser


def _render(document: Buildable, output_format: str) -> str:
    if output_format == "json":
        return document.to_json() + "\n"
    if output_format == "xml":
        return document.to_pretty_xml()
    return document.to_text()


def _curvature(args: argparse.Namespace, out: TextIO) -> int:
    graph = read_edge_list(args.path)
    if args.edge:
        u, v = (graph.index(label) for label in args.edge)
        report = edge_curvature(graph, u, v)
        if args.format == "text":
            out.write(UTIL.format_rational(report.kappa) + "\n")
            return 0
        reports = [report]
    else:
        reports = list(all_edge_reports(graph, processes=args.processes).values())
    out.write(_render(CurvatureDocument(graph, reports), args.format))
    return 0


def _analyze(args: argparse.Namespace, out: TextIO) -> int:
    graph = read_edge_list(args.path)
    verdict = sharpness_verdict(graph, strict=True, processes=args.processes)
    out.write(_render(SharpnessDocument(graph, verdict), args.format))
    return 0


def _generate(args: argparse.Namespace, out: TextIO) -> int:
    text = format_edge_list(generate(args.family, *args.params))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as file:
            file.write(text)
    else:
        out.write(text)
    return 0


def _verify_sharp(args: argparse.Namespace, out: TextIO) -> int:
    graph = read_edge_list(args.path)
    verdict = sharpness_verdict(graph, strict=args.strict, processes=args.processes)
    out.write(_render(SharpnessDocument(graph, verdict), args.format))
    accepted = verdict.all_checks_pass if args.strict else verdict.sharp
    return 0 if accepted else 1


def _crosscheck(args: argparse.Namespace, out: TextIO) -> int:
    graph = read_edge_list(args.path)
    reports = all_edge_reports(graph, oracles=_ORACLE_CHOICES[args.oracle], processes=args.processes)
    out.write(_render(CurvatureDocument(graph, reports.values()), args.format))
    disagreeing = [edge for edge, report in reports.items() if not report.agrees]
    logger.info("%d of %d edges agree", len(reports) - len(disagreeing), len(reports))
    return 1 if disagreeing else 0


_HANDLERS = {
    "curvature": _curvature,
    "analyze": _analyze,
    "generate": _generate,
    "verify-sharp": _verify_sharp,
    "crosscheck": _crosscheck,
}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    """
    Execute one ``curv`` command.

    Returns:
        The process exit status.
    """
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.verbose:
        set_verbose(True)
    try:
        processes = getattr(args, "processes", None)
        if processes is not None and processes < 1:
            raise CurvatureError(f"--processes must be >= 1, got {processes}")
        return _HANDLERS[args.verb](args, stdout)
    except (CurvatureError, OSError) as err:
        stderr.write(f"error: {err}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
