"""`cesaro-ca` command line.

    cesaro-ca cesaro --rule wall.rule --measure bern.measure --param u=2012 N=64 --format csv
    cesaro-ca blocking search --rule catalog:wall-xor --max-len 3 --out certs.json

Exit status: 0 on success, 2 when a hypothesis of the requested result does
not hold, 1 on any other error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path

from cesaro_ca.blocking import DEFAULT_HORIZON, search_blocking_words_async
from cesaro_ca.caps import Caps
from cesaro_ca.catalog import by_name
from cesaro_ca.errors import CesaroCAError, HypothesisNotMetError
from cesaro_ca.experiments import CATALOG_PREFIX, EXPERIMENTS, PARAM_KEYS, ExperimentConfig, run_async
from cesaro_ca.files import parse_rule, parse_space

logger = logging.getLogger("cesaro_ca")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_HYPOTHESIS = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rule", required=True, help="rule file, or catalog:<name>")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    parser.add_argument("--out", type=Path, help="report path (default: stdout)")


def _run_experiment(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        experiment=args.experiment,
        rule=args.rule,
        measure=args.measure,
        space=args.space,
        parameters=ExperimentConfig.parse_parameters(args.param),
        seed=args.seed,
        concurrency=args.concurrency,
        caps=Caps.from_env(),
        out=args.out,
        format=args.format,
    )
    report = asyncio.run(run_async(config))
    if args.out is None:
        sys.stdout.write(report.render(args.format))
    return EXIT_OK


def _blocking_search(args: argparse.Namespace) -> int:
    space = parse_space(args.space) if args.space is not None else None
    if args.rule.startswith(CATALOG_PREFIX):
        if space is not None:
            raise ValueError("catalog rules live on the full shift; drop --space or use a rule file")
        rule = by_name(args.rule.removeprefix(CATALOG_PREFIX))
    else:
        rule = parse_rule(args.rule, domain=space)
    outcome = asyncio.run(
        search_blocking_words_async(
            rule,
            args.max_len,
            args.strip,
            args.horizon,
            seed=args.seed,
            concurrency=args.concurrency,
            caps=Caps.from_env(),
        )
    )
    certificates = outcome.certificates
    text = json.dumps([c.to_dict() for c in certificates], indent=2, sort_keys=True) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
        logger.info("%d certificates written to %s", len(certificates), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cesaro-ca",
        description="Blocking words, equicontinuity and Cesàro limits of cellular automata",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name in EXPERIMENTS:
        sub = subparsers.add_parser(name, help=f"run the {name} experiment")
        _add_common(sub)
        sub.add_argument("--measure", type=Path, help="measure file")
        sub.add_argument("--space", type=Path, help="shift space file (default: full shift)")
        sub.add_argument(
            "--param",
            nargs="*",
            default=[],
            metavar="KEY=VALUE",
            help=f"experiment parameters: {', '.join(sorted(PARAM_KEYS[name]))}",
        )
        sub.add_argument("--format", choices=["csv", "json"], default="json")
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--concurrency", type=int, default=4)
        sub.set_defaults(func=_run_experiment, experiment=name)

    blocking = subparsers.add_parser("blocking", help="blocking word tools")
    blocking_sub = blocking.add_subparsers(dest="action", required=True)
    search = blocking_sub.add_parser("search", help="certify blocking words up to a length")
    _add_common(search)
    search.add_argument("--max-len", type=int, default=4)
    search.add_argument("--strip", type=int, default=None, help="maximum strip width")
    search.add_argument("--horizon", type=int, default=DEFAULT_HORIZON, help="falsifier horizon")
    search.add_argument("--space", type=Path, help="shift space file (default: full shift)")
    search.add_argument("--seed", type=int, default=0)
    search.add_argument("--concurrency", type=int, default=4)
    search.set_defaults(func=_blocking_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except HypothesisNotMetError as exc:
        logger.error("hypothesis not met: %s", exc)
        return EXIT_HYPOTHESIS
    except (CesaroCAError, ValueError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
