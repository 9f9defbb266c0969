"""Named experiments: load inputs, run one module operation, build a Report."""

from __future__ import annotations

import asyncio
import hashlib
import json
import logging
import time
from collections.abc import Awaitable, Callable
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from cesaro_ca.blocking import (
    DEFAULT_HORIZON,
    ClassifyParams,
    EquicontinuityVerdict,
    SearchOutcome,
    classify_equicontinuity,
    classify_equicontinuity_async,
    search_blocking_outcome,
    search_blocking_words_async,
)
from cesaro_ca.caps import Caps
from cesaro_ca.catalog import by_name
from cesaro_ca.cesaro import cesaro_mean, convergence_diagnostic, pushforward_series
from cesaro_ca.errors import HypothesisNotMetError
from cesaro_ca.files import parse_measure, parse_rule, parse_space
from cesaro_ca.formula import default_blocks, mu_c_estimate, support_tests
from cesaro_ca.limit_set import limit_set_approx
from cesaro_ca.measure import MarkovMeasure
from cesaro_ca.periodic_points import construct_f_periodic_point
from cesaro_ca.report import FORMATS, Report, Table, exact, fraction_cells
from cesaro_ca.rule import LocalRule
from cesaro_ca.shift_space import ShiftSpace
from cesaro_ca.surjectivity import PARRY_MAX_LENGTH, is_surjective

logger = logging.getLogger(__name__)

CATALOG_PREFIX = "catalog:"

PARAM_KEYS: dict[str, frozenset[str]] = {
    "blocking-search": frozenset({"max_len", "strip", "horizon"}),
    "classify": frozenset({"max_len", "strip", "horizon"}),
    "surjectivity": frozenset({"length"}),
    "periodic-points": frozenset({"v", "block", "max_period", "max_len"}),
    "pushforward": frozenset({"u", "n"}),
    "cesaro": frozenset({"u", "N", "window", "tol"}),
    "formula": frozenset({"u", "k", "m", "N", "block", "max_len"}),
    "support": frozenset({"depth", "block", "alternate", "max_len"}),
    "limit-set": frozenset({"n", "length"}),
}
EXPERIMENTS = tuple(PARAM_KEYS)
NEEDS_MEASURE = frozenset({"pushforward", "cesaro", "formula", "support"})


@dataclass
class ExperimentConfig:
    experiment: str
    rule: str
    measure: Path | None = None
    space: Path | None = None
    parameters: dict[str, str] = field(default_factory=dict)
    seed: int = 0
    concurrency: int = 4
    caps: Caps = field(default_factory=Caps.from_env)
    out: Path | None = None
    format: str = "json"

    def __post_init__(self) -> None:
        if self.experiment not in PARAM_KEYS:
            raise ValueError(f"unknown experiment '{self.experiment}', expected one of {EXPERIMENTS}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown report format '{self.format}', expected one of {FORMATS}")
        unknown = sorted(set(self.parameters) - PARAM_KEYS[self.experiment])
        if unknown:
            raise ValueError(
                f"unknown parameter(s) {unknown} for '{self.experiment}', "
                f"expected a subset of {sorted(PARAM_KEYS[self.experiment])}"
            )
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")
        if self.concurrency < 1:
            raise ValueError(f"concurrency must be >= 1, got {self.concurrency}")
        if self.experiment in NEEDS_MEASURE and self.measure is None:
            raise ValueError(f"experiment '{self.experiment}' needs a measure file")

    @staticmethod
    def parse_parameters(pairs: list[str]) -> dict[str, str]:
        """`key=value` strings into a dict; a repeated key is an error."""
        out: dict[str, str] = {}
        for pair in pairs:
            key, sep, value = pair.partition("=")
            if not sep or not key:
                raise ValueError(f"parameter '{pair}' is not of the form key=value")
            if key in out:
                raise ValueError(f"parameter '{key}' given twice")
            out[key] = value
        return out


@dataclass
class _Inputs:
    rule: LocalRule
    measure: MarkovMeasure | None
    space: ShiftSpace | None
    digest: str


def _load(config: ExperimentConfig) -> _Inputs:
    h = hashlib.sha256()
    space = None
    if config.space is not None:
        space = parse_space(config.space)
        h.update(b"space\0" + config.space.read_bytes())
    if config.rule.startswith(CATALOG_PREFIX):
        if space is not None:
            raise ValueError("catalog rules live on the full shift; drop --space or use a rule file")
        rule = by_name(config.rule.removeprefix(CATALOG_PREFIX))
        h.update(b"rule\0" + config.rule.encode())
    else:
        path = Path(config.rule)
        rule = parse_rule(path, domain=space)
        h.update(b"rule\0" + path.read_bytes())
    measure = None
    if config.measure is not None:
        measure = parse_measure(config.measure)
        h.update(b"measure\0" + config.measure.read_bytes())
        if measure.alphabet != rule.alphabet:
            raise ValueError(
                f"measure alphabet {measure.alphabet.symbols} differs from rule alphabet {rule.alphabet.symbols}"
            )
    h.update(json.dumps({"experiment": config.experiment, "parameters": config.parameters}, sort_keys=True).encode())
    return _Inputs(rule, measure, space, h.hexdigest())


# ── Parameter helpers ──


def _int(params: dict[str, str], key: str, default: int | None = None, *, minimum: int = 0) -> int:
    if key not in params:
        if default is None:
            raise ValueError(f"parameter '{key}' is required")
        return default
    try:
        value = int(params[key])
    except ValueError:
        raise ValueError(f"parameter '{key}' must be an integer, got '{params[key]}'") from None
    if value < minimum:
        raise ValueError(f"parameter '{key}' must be >= {minimum}, got {value}")
    return value


def _optional_int(params: dict[str, str], key: str) -> int | None:
    return _int(params, key, minimum=1) if key in params else None


def _words(params: dict[str, str], key: str) -> list[str]:
    if key not in params or not params[key]:
        raise ValueError(f"parameter '{key}' is required")
    return [w.strip() for w in params[key].split(",")]


def _int_list(params: dict[str, str], key: str, default: list[int]) -> list[int]:
    if key not in params:
        return default
    try:
        return [int(v) for v in params[key].split(",")]
    except ValueError:
        raise ValueError(f"parameter '{key}' must be comma-separated integers, got '{params[key]}'") from None


def _classify_params(config: ExperimentConfig, default_max_len: int) -> ClassifyParams:
    p = config.parameters
    return ClassifyParams(
        max_len=_int(p, "max_len", default_max_len, minimum=1),
        strip_width=_optional_int(p, "strip"),
        horizon=_int(p, "horizon", ClassifyParams.horizon, minimum=1),
        seed=config.seed,
        concurrency=config.concurrency,
    )


def _certificate_table(certificates) -> Table:
    table = Table("certificates", ["word", "offset", "width", "preperiod", "period", "column"])
    for c in certificates:
        table.add(c.word, c.offset, c.width, c.preperiod, c.period, " ".join(c.column))
    return table


def _blocks(config: ExperimentConfig, inputs: _Inputs) -> tuple[str, ...]:
    if "block" in config.parameters:
        return tuple(_words(config.parameters, "block"))
    return default_blocks(inputs.rule, inputs.measure, _classify_params(config, 3), caps=config.caps)


# ── Experiments ──


def _search_args(config: ExperimentConfig) -> tuple[int, int | None, int]:
    p = config.parameters
    return (
        _int(p, "max_len", 4, minimum=1),
        _optional_int(p, "strip"),
        _int(p, "horizon", DEFAULT_HORIZON, minimum=1),
    )


def _search_report(config: ExperimentConfig, inputs: _Inputs, outcome: SearchOutcome) -> Report:
    summary = {
        "rule": inputs.rule.describe(),
        "certified": len(outcome.certificates),
        "tested": {str(k): v for k, v in sorted(outcome.tested.items())},
        "falsified": {str(k): v for k, v in sorted(outcome.falsified.items())},
        "unknown": {str(k): v for k, v in sorted(outcome.unknown.items())},
    }
    return Report(config.experiment, inputs.digest, summary=summary, tables=[_certificate_table(outcome.certificates)])


def _blocking_search(config: ExperimentConfig, inputs: _Inputs) -> Report:
    max_len, strip, horizon = _search_args(config)
    outcome = search_blocking_outcome(inputs.rule, max_len, strip, horizon, seed=config.seed, caps=config.caps)
    return _search_report(config, inputs, outcome)


async def _blocking_search_async(config: ExperimentConfig, inputs: _Inputs) -> Report:
    max_len, strip, horizon = _search_args(config)
    outcome = await search_blocking_words_async(
        inputs.rule,
        max_len,
        strip,
        horizon,
        seed=config.seed,
        concurrency=config.concurrency,
        caps=config.caps,
    )
    return _search_report(config, inputs, outcome)


def _verdict_report(config: ExperimentConfig, inputs: _Inputs, verdict: EquicontinuityVerdict) -> Report:
    summary = verdict.to_dict()
    del summary["certificates"]
    summary["rule"] = inputs.rule.describe()
    return Report(config.experiment, inputs.digest, summary=summary, tables=[_certificate_table(verdict.certificates)])


def _classify(config: ExperimentConfig, inputs: _Inputs) -> Report:
    verdict = classify_equicontinuity(inputs.rule, _classify_params(config, 5), caps=config.caps)
    return _verdict_report(config, inputs, verdict)


async def _classify_async(config: ExperimentConfig, inputs: _Inputs) -> Report:
    verdict = await classify_equicontinuity_async(inputs.rule, _classify_params(config, 5), caps=config.caps)
    return _verdict_report(config, inputs, verdict)


def _surjectivity(config: ExperimentConfig, inputs: _Inputs) -> Report:
    length = _int(config.parameters, "length", PARRY_MAX_LENGTH, minimum=1)
    verdict = is_surjective(inputs.rule, max_length=length, caps=config.caps)
    summary = verdict.to_dict()
    summary["rule"] = inputs.rule.describe()
    return Report(config.experiment, inputs.digest, summary=summary)


def _periodic_points(config: ExperimentConfig, inputs: _Inputs) -> Report:
    p = config.parameters
    max_period = _int(p, "max_period", 256, minimum=1)
    if "block" in p:
        block = p["block"]
    else:
        params = _classify_params(config, 3)
        certificates = classify_equicontinuity(inputs.rule, params, caps=config.caps).certificates
        if not certificates:
            raise HypothesisNotMetError(f"no blocking word up to length {params.max_len}")
        block = certificates[0]
    table = Table("periodic_points", ["v", "generator", "period"])
    for v in _words(p, "v"):
        point, period = construct_f_periodic_point(inputs.rule, v, block, max_period, caps=config.caps)
        table.add(v, point.generator, period)
    return Report(config.experiment, inputs.digest, summary={"rule": inputs.rule.describe()}, tables=[table])


def _pushforward(config: ExperimentConfig, inputs: _Inputs) -> Report:
    p = config.parameters
    n = _int(p, "n", 8)
    table = Table("series", ["n", "u", "value_num", "value_den"])
    for u in _words(p, "u"):
        for i, value in enumerate(pushforward_series(inputs.rule, inputs.measure, u, n + 1, caps=config.caps)):
            table.add(i, u, *fraction_cells(value))
    return Report(config.experiment, inputs.digest, summary={"measure": inputs.measure.describe()}, tables=[table])


def _cesaro(config: ExperimentConfig, inputs: _Inputs) -> Report:
    p = config.parameters
    N = _int(p, "N", 64, minimum=1)
    window = _int(p, "window", 8, minimum=1)
    tol = float(p.get("tol", "1e-3"))
    table = Table("series", ["n", "u", "value_num", "value_den"])
    summary: dict = {"measure": inputs.measure.describe(), "last": {}, "diagnostic": {}}
    for u in _words(p, "u"):
        series = cesaro_mean(inputs.rule, inputs.measure, u, N, caps=config.caps)
        for n, value in enumerate(series.values, start=1):
            table.add(n, u, *fraction_cells(value))
        summary["last"][u] = exact(series.last)
        if N >= 2 * window:
            summary["diagnostic"][u] = {
                "pushforward": convergence_diagnostic(series.pushforward, window, tol).value,
                "cesaro": convergence_diagnostic(series.values, window, tol).value,
            }
    return Report(config.experiment, inputs.digest, summary=summary, tables=[table])


def _formula(config: ExperimentConfig, inputs: _Inputs) -> Report:
    p = config.parameters
    N = _int(p, "N", 64, minimum=1)
    schedule = _int_list(p, "m", [1, 2, 3])
    if "u" in p:
        words = _words(p, "u")
    else:
        words = list(inputs.rule.alphabet.words(2 * _int(p, "k", 0) + 1))
    blocks = _blocks(config, inputs)
    if all(inputs.measure.cylinder_prob(b) == 0 for b in blocks):
        raise HypothesisNotMetError("no positive-measure blocking word")

    table = Table("formula", ["m", "u", "value_num", "value_den", "rkm_mass_num", "rkm_mass_den"])
    estimates: dict[str, dict] = {}
    for u in words:
        est = mu_c_estimate(inputs.rule, inputs.measure, u, schedule, N, blocks, caps=config.caps)
        for ev, value in zip(est.evaluations, est.formula_values):
            table.add(ev.m, u, *fraction_cells(value), *fraction_cells(ev.rkm_mass))
        estimates[u] = {
            "formula": exact(est.formula_values[-1]),
            "cesaro": exact(est.cesaro.last),
            "gap": exact(est.gap),
            "slack": exact(est.slack),
            "within_slack": est.gap <= est.slack + Fraction(5, N),
        }
    summary = {"blocks": list(blocks), "N": N, "m": schedule, "estimates": estimates}
    return Report(config.experiment, inputs.digest, summary=summary, tables=[table])


def _support(config: ExperimentConfig, inputs: _Inputs) -> Report:
    p = config.parameters
    depth = _int(p, "depth", 2, minimum=1)
    blocks = _blocks(config, inputs)
    report = support_tests(
        inputs.rule, inputs.measure, blocks, depth, alternate=p.get("alternate"), caps=config.caps
    )
    table = Table("witnesses", ["y", "m"])
    for y, m in sorted(report.witnessed.items(), key=lambda item: (len(item[0]), item[0])):
        table.add(y, m)
    summary = {
        "blocks": list(blocks),
        "complete": report.complete,
        "missing": list(report.missing),
        "outside_support": list(report.outside_support),
    }
    if report.independence is not None:
        summary["independence"] = dict(sorted(report.independence.items()))
    return Report(config.experiment, inputs.digest, summary=summary, tables=[table])


def _limit_set(config: ExperimentConfig, inputs: _Inputs) -> Report:
    p = config.parameters
    n = _int(p, "n", 3, minimum=1)
    length = _int(p, "length", 4, minimum=1)
    space = inputs.rule.domain
    images = limit_set_approx(inputs.rule, space, n, caps=config.caps)
    table = Table("languages", ["step", "length", "words"])
    for step, image in enumerate([space, *images]):
        for ell in range(1, length + 1):
            table.add(step, ell, sum(1 for _ in image.language_words(ell)))
    summary = {"images": [image.describe() for image in images]}
    return Report(config.experiment, inputs.digest, summary=summary, tables=[table])


RUNNERS: dict[str, Callable[[ExperimentConfig, _Inputs], Report]] = {
    "blocking-search": _blocking_search,
    "classify": _classify,
    "surjectivity": _surjectivity,
    "periodic-points": _periodic_points,
    "pushforward": _pushforward,
    "cesaro": _cesaro,
    "formula": _formula,
    "support": _support,
    "limit-set": _limit_set,
}


ASYNC_RUNNERS: dict[str, Callable[[ExperimentConfig, _Inputs], Awaitable[Report]]] = {
    "blocking-search": _blocking_search_async,
    "classify": _classify_async,
}


def _finish(config: ExperimentConfig, report: Report, started: float) -> Report:
    report.parameters = dict(config.parameters)
    report.seed = config.seed
    report.wall_time = time.perf_counter() - started
    logger.info("%s finished in %.2fs", config.experiment, report.wall_time)
    if config.out is not None:
        report.save(config.out, config.format)
        logger.info("report written to %s", config.out)
    return report


def run(config: ExperimentConfig) -> Report:
    """Run one experiment and, when `config.out` is set, write its report."""
    started = time.perf_counter()
    inputs = _load(config)
    logger.info("running %s on %s", config.experiment, inputs.rule.describe())
    return _finish(config, RUNNERS[config.experiment](config, inputs), started)


async def run_async(config: ExperimentConfig) -> Report:
    """As `run`, certifying blocking words concurrently where the experiment searches for them."""
    started = time.perf_counter()
    inputs = _load(config)
    logger.info("running %s on %s", config.experiment, inputs.rule.describe())
    if config.experiment in ASYNC_RUNNERS:
        report = await ASYNC_RUNNERS[config.experiment](config, inputs)
    else:
        report = await asyncio.to_thread(RUNNERS[config.experiment], config, inputs)
    return _finish(config, report, started)
