#!/usr/bin/env python3
"""
Command line for the elementary commutator verification engine

    member    ideal membership with witnesses
    verify    formula-table suites
    certify   build and emit a congruence certificate
    check     re-verify certificate files
    theorem1  bracket-tree reduction
    oracle    finite-ring closure, centrality and numeric shadows

Reports go to stdout; logs and progress bars go to stderr.
"""
import argparse
import logging
import sys
from typing import List, Optional

from app.Commands import COMMANDS
from app.Commands.base_command import settings_from_args
from app.Helper.helper_constant import ENGINE_DEFAULTS, LOG_FORMAT
from app.Helper.helper_exceptions import EngineError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--verbose', action='store_true', help='INFO logging and progress bars on stderr')
    common.add_argument('--debug', action='store_true', help='DEBUG logging on stderr')
    common.add_argument('--experimental-n3', action='store_true',
                        help='Attempt quadruple commutators at n=3 and report where the construction stops')
    common.add_argument('--jobs', type=int, default=None,
                        help=f"Worker processes for certificate checks (default {ENGINE_DEFAULTS['jobs']})")
    common.add_argument('--cap', type=int, default=None,
                        help=f"Closure size cap (default {ENGINE_DEFAULTS['closure_cap']})")

    parser = argparse.ArgumentParser(description='Symbolic verification of elementary commutator identities')
    subparsers = parser.add_subparsers(dest='command', required=True, metavar='COMMAND')
    for name, command in COMMANDS.items():
        sub = subparsers.add_parser(name, help=command.description, description=command.description,
                                    parents=[common])
        command.add_arguments(sub)
    return parser


def configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run one command, print its report and return the exit status."""
    args = build_parser().parse_args(argv)
    configure_logging(args)
    try:
        settings = settings_from_args(args)
        outcome = COMMANDS[args.command](settings).run(args)
    except EngineError as exc:
        logger.error(f"{args.command} failed: {exc}")
        return int(exc.exit_code)
    for line in outcome.lines:
        print(line)
    return int(outcome.exit_code)


def main():
    """Main entry point"""
    sys.exit(run())


if __name__ == '__main__':
    main()
