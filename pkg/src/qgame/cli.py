"""Command-line entry point.

Exit codes: 0 when every comparison passes, 1 on a numeric mismatch,
2 on a configuration or usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .config import load_config_file
from .errors import ConfigError, SearchBudgetExceeded, UnknownFixture
from .fixtures import FIXTURES, list_fixtures, reproduce
from .report import FORMATS, export
from .scenario import run_scenario

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("qgame")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qgame", description="Quantized 2x2 game analysis and reproduction harness.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--format", choices=FORMATS, default="text-table")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("analyze", help="run a scenario config")
    p.add_argument("config")
    output_flags(p)

    p = sub.add_parser("reproduce", help="reproduce an embedded fixture (or all)")
    p.add_argument("target", help="fixture id or 'all'")
    output_flags(p)

    sub.add_parser("list-fixtures", help="list embedded fixture ids")
    return ap


def _emit(payload: bytes, out: str | None) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

    if args.command == "list-fixtures":
        for ident, title in list_fixtures():
            print(f"{ident:24s} {title}")
        return EXIT_OK

    try:
        if args.command == "analyze":
            docs = [run_scenario(load_config_file(args.config))]
        else:
            targets = list(FIXTURES) if args.target == "all" else [args.target]
            docs = []
            for t in targets:
                log.info("reproducing %s", t)
                docs.append(reproduce(t))
    except (ConfigError, UnknownFixture, SearchBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    _emit(b"".join(export(d, args.format) for d in docs), args.out)
    failed = [d for d in docs if not d.passed]
    for d in failed:
        print(f"mismatch: {d.scenario}", file=sys.stderr)
    return EXIT_MISMATCH if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
