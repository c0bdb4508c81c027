"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 IO or parse failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from . import report
from .errors import HcaRankError, IoError, ParseError
from .ingest import load_corpus, read_config
from .model import AssessmentConfig, CostMode, Window
from .pipeline import compare_cost_modes, run_assessment

log = logging.getLogger("hcarank")

_DEFAULTS = {
    "data": ".",
    "config": None,
    "window": None,
    "format": "csv",
    "cost_mode": None,
    "top_fraction": None,
    "output": None,
    "quiet": False,
    "percentile": False,
    "shifters_only": False,
}


def _build_parser() -> argparse.ArgumentParser:
    # SUPPRESS so a flag given before the verb is not reset by the subparser
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--data", help="corpus directory (default: current directory)")
    common.add_argument("--config", help="key = value assessment config file")
    common.add_argument("--window", help="assessment window, e.g. 2008-2012 (overrides config)")
    common.add_argument("--format", choices=("csv", "json"), help="report format (default: csv)")
    common.add_argument("--cost-mode", choices=("salary", "years"), help="override the config cost mode")
    common.add_argument("--top-fraction", type=float, help="HCA top fraction (default 0.10)")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("-q", "--quiet", action="store_true", help="suppress validation warnings")

    parser = argparse.ArgumentParser(
        prog="hcarank",
        description="Highly-cited articles per unit of research labor cost: league tables and comparisons.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("detect-hca", parents=[common], help="percentile and HCA flag of every publication")
    p = sub.add_parser("rank-sds", parents=[common], help="league table of one SDS")
    p.add_argument("sds")
    p.add_argument("--percentile", action="store_true", help="add the rank-percentile column")
    p = sub.add_parser("rank-uda", parents=[common], help="league table of one UDA")
    p.add_argument("uda")
    p.add_argument("--percentile", action="store_true", help="add the rank-percentile column")
    p = sub.add_parser("rank-overall", parents=[common], help="whole-institution league table")
    p.add_argument("--percentile", action="store_true", help="add the rank-percentile column")
    p = sub.add_parser("profile", parents=[common], help="national standing of one university")
    p.add_argument("university")
    p = sub.add_parser("compare-cost-modes", parents=[common],
                       help="salary-normalised vs years-only rankings per UDA and overall")
    p.add_argument("--shifters-only", action="store_true",
                   help="average shifts over units that moved rather than all units")
    return parser


def _config(args: argparse.Namespace) -> AssessmentConfig:
    overrides = {
        "window": args.window,
        "cost_mode": args.cost_mode,
        "hca_top_fraction": args.top_fraction,
    }
    if args.config:
        return read_config(args.config, **overrides)
    if not args.window:
        raise ParseError("either --config or --window is required")
    return AssessmentConfig(
        window=Window.parse(args.window),
        cost_mode=CostMode.parse(args.cost_mode) if args.cost_mode else CostMode.SALARY,
        **({"hca_top_fraction": args.top_fraction} if args.top_fraction is not None else {}),
    )


def _run(args: argparse.Namespace) -> None:
    config = _config(args)
    corpus = load_corpus(args.data, config)
    if not args.quiet:
        corpus.report.log(log)

    if args.command == "compare-cost-modes":
        reports = compare_cost_modes(config, corpus, shifters_only=args.shifters_only)
        records = report.comparison_records(reports)
        report.emit_report(records, args.format, args.output, report.COMPARISON_COLUMNS)
        return

    result = run_assessment(config, corpus)
    columns: Sequence[str]
    if args.command == "detect-hca":
        records, columns = report.hca_records(result), report.HCA_COLUMNS
    elif args.command == "profile":
        records, columns = report.profile_records(result, args.university), report.PROFILE_COLUMNS
    else:
        if args.command == "rank-sds":
            if args.sds not in result.sds_tables:
                raise HcaRankError(f"SDS {args.sds!r} is not assessed (unknown or below coverage)")
            rows = result.sds_tables[args.sds]
        elif args.command == "rank-uda":
            if args.uda not in result.uda_tables:
                raise HcaRankError(f"UDA {args.uda!r} has no assessed units")
            rows = result.uda_tables[args.uda]
        else:
            rows = result.overall_table
        records = report.league_records(rows, include_percentile=args.percentile)
        columns = report.LEAGUE_COLUMNS + (("percentile",) if args.percentile else ())
    report.emit_report(records, args.format, args.output, columns)


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    for name, value in _DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, value)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("hcarank: %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(logging.WARNING)
    try:
        _run(args)
    except (ParseError, IoError, OSError) as exc:
        log.error("error: %s", exc)
        return 2
    except HcaRankError as exc:
        stage = f" [{exc.stage}]" if exc.stage else ""
        log.error("error%s: %s", stage, exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
