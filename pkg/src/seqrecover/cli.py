from __future__ import annotations

import argparse
import importlib.metadata
import json
import logging
import pathlib
from collections.abc import Sequence

from seqrecover import main as seqrecover
from seqrecover.core import distances
from seqrecover.core.configuration import Configuration
from seqrecover.core.exceptions import SeqRecoverError, UnknownNameError

SUCCESS = 0
FAILURE = 1
USAGE = 2


def _get_version() -> str:
    return f"%(prog)s {importlib.metadata.version('seqrecover')}"


def _configuration(args: argparse.Namespace) -> Configuration:
    configuration = (
        Configuration.from_file(args.config)
        if args.config
        else Configuration.from_default()
    )
    if args.workers is not None:
        configuration = configuration.with_options(workers=args.workers)
    return configuration


def _oracle(args: argparse.Namespace) -> int:
    value = seqrecover.oracle(args.distance, args.x, args.y, args.p)
    print(distances.format_number(value))
    return SUCCESS


def _recover(args: argparse.Namespace) -> int:
    configuration = _configuration(args)
    if args.replay is not None:
        report = seqrecover.replay(args.strategy, args.replay, configuration)
        print(seqrecover.to_json_line(report.to_dict(), configuration))
        return SUCCESS if report.bound_ok else FAILURE

    result = SUCCESS
    for outcome in seqrecover.recover(
        strategy_id=args.strategy,
        n=args.n,
        configuration=configuration,
        hidden=args.hidden,
        random_spec=tuple(args.random) if args.random else None,
        exhaustive=args.exhaustive,
        include_transcript=args.transcript,
    ):
        print(seqrecover.to_json_line(outcome.to_dict(), configuration))
        if not outcome.ok:
            result = FAILURE

    return result


def _table(args: argparse.Namespace) -> int:
    configuration = _configuration(args)
    n = args.n or configuration.table_n
    records = seqrecover.table(n, configuration, pretty=args.pretty)
    if not args.pretty:
        for record in records:
            print(seqrecover.to_json_line({"n": n, **record}, configuration))

    failed = any(record["wrong"] or record["over_bound"] for record in records)
    return FAILURE if failed else SUCCESS


def _verify(args: argparse.Namespace) -> int:
    configuration = _configuration(args)
    report = seqrecover.verify(args.suite, configuration)
    data = report.to_dict() | {"config": configuration.to_dict()}
    print(json.dumps(data, indent=2 if args.pretty else None, default=str))
    return SUCCESS if report.result else FAILURE


def main(argv: Sequence[str] | None = None) -> int:
    """
    Parse the arguments and run the command.
    """

    options = argparse.ArgumentParser(add_help=False)
    options.add_argument(
        "--config",
        type=pathlib.Path,
        help="YAML file of options to layer over the defaults.",
    )
    options.add_argument(
        "--workers",
        type=int,
        help="Number of worker processes.",
    )

    parser = argparse.ArgumentParser()
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version=_get_version(),
    )
    subparsers = parser.add_subparsers(dest="command")

    parser__oracle = subparsers.add_parser(
        "oracle",
        help="Print the exact distance between two sequences.",
    )
    parser__oracle.add_argument(
        "distance",
        choices=[str(kind) for kind in distances.DistanceKind],
    )
    parser__oracle.add_argument("x", help="The first sequence.")
    parser__oracle.add_argument("y", help="The second sequence.")
    parser__oracle.add_argument(
        "--p",
        default="1",
        help="The exponent of p-DTW, an integer or 'inf'.",
    )

    parser__recover = subparsers.add_parser(
        "recover",
        parents=[options],
        help="Run a strategy against hidden inputs, one JSON line each.",
    )
    parser__recover.add_argument("strategy", help="The strategy id.")
    parser__recover.add_argument(
        "n",
        type=int,
        help="The maximum length of the hidden input.",
    )
    parser__recover_inputs = parser__recover.add_mutually_exclusive_group(
        required=True
    )
    parser__recover_inputs.add_argument(
        "--hidden",
        help="A single hidden input.",
    )
    parser__recover_inputs.add_argument(
        "--random",
        nargs=2,
        type=int,
        metavar=("SEED", "COUNT"),
        help="COUNT random hidden inputs from SEED.",
    )
    parser__recover_inputs.add_argument(
        "--exhaustive",
        action="store_true",
        help="Every hidden input the strategy supports.",
    )
    parser__recover_inputs.add_argument(
        "--replay",
        type=pathlib.Path,
        help="A recorded transcript to answer from instead of a hidden input.",
    )
    parser__recover.add_argument(
        "--transcript",
        action="store_true",
        help="Include each session's transcript, without the hidden input.",
    )

    parser__table = subparsers.add_parser(
        "table",
        parents=[options],
        help="Summarise every strategy's query counts against its bound.",
    )
    parser__table.add_argument(
        "n",
        type=int,
        nargs="?",
        help="The maximum input length; defaults to the `table-n` option.",
    )
    parser__table.add_argument(
        "--pretty",
        action="store_true",
        help="Print a table instead of JSON lines.",
    )

    parser__verify = subparsers.add_parser(
        "verify",
        parents=[options],
        help="Run a verification suite.",
    )
    parser__verify.add_argument("suite", help="The suite name.")
    parser__verify.add_argument(
        "--pretty",
        action="store_true",
        help="Indent the JSON report.",
    )

    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return SUCCESS

    seqrecover.configure_logging()
    commands = {
        "oracle": _oracle,
        "recover": _recover,
        "table": _table,
        "verify": _verify,
    }
    try:
        return commands[args.command](args)
    except (ValueError, UnknownNameError) as error:
        logging.error(f"{type(error).__name__}: {error}")
        return USAGE
    except SeqRecoverError as error:
        logging.error(f"{type(error).__name__}: {error}")
        return FAILURE
