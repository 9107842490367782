#!/usr/bin/env python3

import argparse
import sys

from formal_path_integral import generalLogger
from formal_path_integral.controllers import HANDLERS
from formal_path_integral.controllers.run_controller import EXIT_ERROR
from formal_path_integral.models import Error


class _Parser(argparse.ArgumentParser):
    # usage errors exit with the configuration error status
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="spi", description="Formal path integrals as D0-graded loop series.")
    subparsers = parser.add_subparsers(dest="subcommand", metavar="<subcommand>")
    subparsers.required = True
    for name in HANDLERS:
        sub = subparsers.add_parser(name)
        sub.add_argument("--config", action="append", default=[], metavar="PATH",
                         help="run configuration (INI); repeat for `divergences`")
        sub.add_argument("--out", default=None, metavar="PATH", help="result document (default: stdout)")
        sub.add_argument("--table", default=None, metavar="PATH", help="CSV table, when the subcommand has one")
        sub.add_argument("--max-order", type=int, default=None, metavar="N", help="loop order cap")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_order is not None and args.max_order < 0:
        parser.error("--max-order must be a non-negative integer")

    handler = HANDLERS[args.subcommand]
    response, code = handler(args.config, args.out, args.table, args.max_order)

    if isinstance(response, Error):
        print(response.error, file=sys.stderr)
    generalLogger.debug(f"`{args.subcommand}` finished with exit code {code}")
    return code


if __name__ == '__main__':
    sys.exit(main())
