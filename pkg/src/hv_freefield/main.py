"""
hv-freefield command line.

    hv-freefield verify [SUITE ...]               run verification suites
    hv-freefield compute 'OPERATORS @ STATE'     apply an operator word to a state
    hv-freefield diagram --family PiPR --depth 2  DOT diagram of a module family
    hv-freefield enumerate-singular               level-p singular vectors, p <= 3

Exit codes: 0 success, 1 verification failure, 2 configuration or parse error.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from hv_freefield.config import RunConfig, parse_bindings, resolve_config, suite_names
from hv_freefield.constants import CONFIG_ENV_VAR, DiagramFamily, ExitCode, Indexing, OutputFormat, SuiteName
from hv_freefield.errors import ConfigurationError, HvFreeFieldError
from hv_freefield.tools.compute_tool import ComputeTool
from hv_freefield.tools.diagram_tool import DiagramTool
from hv_freefield.tools.runner import SuiteRunner, format_report
from hv_freefield.tools.singular_tool import EnumerateSingularTool

log = logging.getLogger(__name__)


def _shared_options() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--bind", action="append", default=[], metavar="NAME=RATIONAL",
                        help="Bind a parameter (cL, cLI, r, h, hI, lambda/lam, mu, cW); repeatable")
    shared.add_argument("--degree", type=int, default=None, help="Degree bound for graded bases (default 6)")
    shared.add_argument("--modes", type=int, default=None, help="Mode bound |n| for bracket checks (default 4)")
    shared.add_argument("--p", type=int, action="append", default=None, help="p value; repeatable (default 1 2 3)")
    shared.add_argument("--r", default=None, help="Module label r (default symbolic r)")
    shared.add_argument("--lam", default=None, help="Whittaker eigenvalue lambda (default symbolic lambda)")
    shared.add_argument("--format", choices=[f.value for f in OutputFormat], default=None, help="Output format")
    shared.add_argument("--indexing", choices=[i.value for i in Indexing], default=None,
                        help="Exponential-mode indices in operator words (default ordinary)")
    shared.add_argument("--deformed", action="store_true", default=None,
                        help="Use tilde L(n) = L(n) + e^c_n for L and phi")
    shared.add_argument("--config", default=None, help=f"JSON config file (default ${CONFIG_ENV_VAR})")
    shared.add_argument("-v", "--verbose", action="count", default=0, help="-v progress, -vv engine traces")
    shared.add_argument("-q", "--quiet", action="store_true", help="Errors only")
    return shared


def build_parser() -> argparse.ArgumentParser:
    shared = _shared_options()
    parser = argparse.ArgumentParser(
        prog="hv-freefield",
        description="Exact free-field realization of the twisted Heisenberg-Virasoro algebra at level zero",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[shared], help="Run verification suites")
    verify.add_argument("suites", nargs="*", metavar="SUITE",
                        help=f"Suites to run (default all): {', '.join(s.value for s in SuiteName)}")

    compute = commands.add_parser("compute", parents=[shared], help="Apply an operator word to a state")
    compute.add_argument("expression", help="e.g. 'Q @ v[-2,r,0]' or 'phi(1) @ vac-verma[h,0]'")

    diagram = commands.add_parser("diagram", parents=[shared], help="DOT diagram of a module family")
    diagram.add_argument("--family", choices=[f.value for f in DiagramFamily], required=True)
    diagram.add_argument("--depth", type=int, default=2, help="Diagram depth (default 2)")

    singular = commands.add_parser("enumerate-singular", parents=[shared],
                                   help="Basis of the level-p singular vectors (p <= 3)")
    singular.add_argument("--h", default=None, help="L(0) highest weight (default h_{p,r+2})")
    singular.add_argument("--hI", dest="h_i", default=None, help="I(0) highest weight (default (1-p) cLI)")
    return parser


def configure_logging(verbose: int, quiet: bool):
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {
        "degree_bound": args.degree,
        "mode_bound": args.modes,
        "p_values": tuple(args.p) if args.p else None,
        "r": args.r,
        "lam": args.lam,
        "output_format": OutputFormat(args.format) if args.format else None,
        "indexing": Indexing(args.indexing) if args.indexing else None,
        "deformed": args.deformed,
    }
    if args.bind:
        overrides["bindings"] = parse_bindings(args.bind)
    return overrides


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    names = suite_names(args.suites)
    if config.output_format is OutputFormat.DOT:
        raise ConfigurationError("verify reports are text or json")
    report = SuiteRunner(config).run(names)
    if config.output_format is OutputFormat.JSON:
        print(json.dumps({"config": config.to_dict(), **report.to_dict()}, indent=2))
    else:
        print(format_report(report))
    return int(ExitCode.OK if report.passed else ExitCode.VERIFICATION_FAILED)


def cmd_compute(args: argparse.Namespace, config: RunConfig) -> int:
    if config.output_format is OutputFormat.DOT:
        raise ConfigurationError("compute output is text or json")
    output = ComputeTool(args.expression).execute(config)
    print(output.render(config.output_format))
    return int(ExitCode.OK)


def cmd_diagram(args: argparse.Namespace, config: RunConfig) -> int:
    output = DiagramTool(DiagramFamily(args.family), args.depth).execute(config)
    print(output.render(config.output_format))
    return int(ExitCode.OK)


def cmd_enumerate_singular(args: argparse.Namespace, config: RunConfig) -> int:
    if config.output_format is OutputFormat.DOT:
        raise ConfigurationError("enumerate-singular output is text or json")
    output = EnumerateSingularTool(args.h, args.h_i).execute(config)
    print(output.render(config.output_format))
    return int(ExitCode.OK)


COMMANDS = {
    "verify": cmd_verify,
    "compute": cmd_compute,
    "diagram": cmd_diagram,
    "enumerate-singular": cmd_enumerate_singular,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        config = resolve_config(args.config, overrides=_overrides(args))
        log.info(f"[CONFIG] {config.to_dict()}")
        return COMMANDS[args.command](args, config)
    except HvFreeFieldError as e:
        log.debug(f"{type(e).__name__} in {args.command}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return int(e.exit_code)


def cli():
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    cli()
