# Copyright (C) 2025 tifs-toolkit contributors

# This file is part of tifs-toolkit.

# tifs-toolkit is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public License
# as published by the Free Software Foundation; either version 3
# of the License, or (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program; if not, see <https://www.gnu.org/licenses>.


"""Command line: ``tifs <command> [flags]``.

Machine output (graph6, DOT, JSON) goes to standard output or ``--out``;
diagnostics go to standard error. Exit status is 0 on success, 1 when a
verdict or realization does not hold and 2 on usage errors.
"""

import argparse
import sys
from pathlib import Path

from .classes import RunConfig
from .constants import EMIT_FORMATS, EXIT_CODES, FINISHED, USAGE
from .errors import PreconditionError
from .logs import configure_logging, get_logger
from .operators import classesToRegister, find_operator

logger = get_logger("cli")


def _shared_flags() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    shared.add_argument("--config", help="TOML file of defaults; flags override it")
    shared.add_argument("--d", type=int, help=RunConfig.describe("d"))
    shared.add_argument("--tolerance", type=float, help=RunConfig.describe("tolerance"))
    shared.add_argument("--seed", type=int, help=RunConfig.describe("seed"))
    shared.add_argument("--workers", type=int, help=RunConfig.describe("workers"))
    shared.add_argument("--emit", choices=EMIT_FORMATS, help=RunConfig.describe("emit"))
    shared.add_argument("--out", help=RunConfig.describe("out"))
    shared.add_argument("--progress", action="store_true", help=RunConfig.describe("progress"))
    shared.add_argument("-v", "--verbose", action="count", help="More diagnostics")
    shared.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    return shared


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tifs",
        description="Minimal true-implies-false and true-implies-true sets of propositions",
        argument_default=argparse.SUPPRESS,
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")
    shared = _shared_flags()
    for cls in classesToRegister:
        sub = commands.add_parser(
            cls.idname,
            parents=[shared],
            help=cls.description,
            description=cls.description,
            argument_default=argparse.SUPPRESS,
        )
        cls.add_arguments(sub)
    return parser


def dispatch(argv: list[str]) -> int:
    try:
        namespace = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_CODES[USAGE] if exc.code else EXIT_CODES[FINISHED]

    flags = vars(namespace)
    verbose = flags.pop("verbose", 0)
    quiet = flags.pop("quiet", False)
    config_path = flags.pop("config", None)
    if quiet:
        flags["verbosity"] = -1
    elif verbose:
        flags["verbosity"] = verbose

    try:
        config = RunConfig.from_sources(flags, config_path)
    except (PreconditionError, TypeError) as e:
        configure_logging(0)
        logger.error(f"Invalid configuration: {e}")
        return EXIT_CODES[USAGE]

    configure_logging(config.verbosity)
    operator = find_operator(config.command)()
    status = operator.run(config)

    text = "".join(operator.output)
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return EXIT_CODES[status]


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
