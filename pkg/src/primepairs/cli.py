"""Command line entry point: ``primepairs <command> [options]``.

Commands
--------
twin-scan   twin counts and predictions for every window 7 <= p_n <= --p-max
predict     prediction breakdown only, no counting
polignac    pair counts per even gap over a range of odd-prime indices
scenario    three-placement sensitivity of the (p-2)/p product
estimate    large-n predictions on a geometric grid of prime indices

Exit status is 0 on success, 1 for invalid options and 2 for compute or I/O
failures.  Progress goes to stderr; data goes to --out (stdout by default).
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import asymptotics, polignac, prediction, report, twins
from .primes import DEFAULT_SEGMENT_SIZE, nth_prime_upper_bound, segmented_window, sieve_upto

log = logging.getLogger("primepairs")

THREADS_ENV = "PRIMEPAIRS_THREADS"
COMMANDS = ("twin-scan", "predict", "polignac", "scenario", "estimate")
#: seconds for a full twin scan to p_n = 250000 on one desktop core; cost grows ~ p^3
TWIN_SCAN_SECONDS_AT_250K = 10.0


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output_path: str = "-"
    threads: int = 1
    segment_size: int = DEFAULT_SEGMENT_SIZE


def twin_scan_estimate(p_max: int) -> float:
    return TWIN_SCAN_SECONDS_AT_250K * (p_max / 250_000) ** 3


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output file (default: stdout)")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default: ${THREADS_ENV} or 1)")
    common.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE,
                        help="integers per sieve segment (default: 2^22)")
    common.add_argument("-q", "--quiet", action="store_true", help="no progress messages")

    p = argparse.ArgumentParser(prog="primepairs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("twin-scan", parents=[common], help="count twins per window and compare")
    s.add_argument("--p-max", type=int, default=250_000, help="largest p_n (default: 250000)")
    s.add_argument("--exact-mertens", action="store_true", help="use 2e^-gamma instead of 1.12292")
    s.add_argument("--max-seconds", type=float, default=900.0,
                   help="refuse scans estimated to take longer (default: 900)")

    s = sub.add_parser("predict", parents=[common], help="prediction breakdown per window")
    s.add_argument("--p-max", type=int, default=250_000)
    s.add_argument("--exact-mertens", action="store_true")

    s = sub.add_parser("polignac", parents=[common], help="pair counts per even gap m")
    s.add_argument("--low-index", type=int, default=1_000_000,
                   help="first Low member, as an odd-prime index (default: 1000000)")
    s.add_argument("--high-index", type=int, default=21_000_000,
                   help="last Low member, as an odd-prime index (default: 21000000)")
    s.add_argument("--low-value", type=int, default=None, help="first Low member by value (overrides --low-index)")
    s.add_argument("--high-value", type=int, default=None, help="last Low member by value (overrides --high-index)")
    s.add_argument("--m-max", type=int, default=polignac.PAPER_M_MAX, help="scan m = 2, 4, ..., m-max (default: 3000)")
    s.add_argument("--extra-m", type=int, action="append", default=None,
                   help="additional gap, repeatable (default: 30030)")

    s = sub.add_parser("scenario", parents=[common], help="prime-placement sensitivity experiment")
    s.add_argument("--low-index", type=int, default=1_000_000, help="first odd-prime index (default: 1000000)")
    s.add_argument("--high-index", type=int, default=5_000_000, help="last odd-prime index (default: 5000000)")

    s = sub.add_parser("estimate", parents=[common], help="large-n predictions")
    s.add_argument("--low-index", type=int, default=1_000, help="smallest n (default: 1000)")
    s.add_argument("--high-index", type=int, default=10_000_000, help="largest n (default: 10^7)")
    s.add_argument("--points", type=int, default=100, help="geometric grid size (default: 100)")
    return p


def build_config(args) -> RunConfig:
    threads = args.threads
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        try:
            threads = int(env) if env else 1
        except ValueError:
            raise ConfigError(f"${THREADS_ENV} must be an integer, got {env!r}")
    if threads < 1:
        raise ConfigError("--threads must be >= 1")
    if args.segment_size < 128:
        raise ConfigError("--segment-size must be >= 128")
    params = {k: v for k, v in vars(args).items()
              if k not in ("command", "out", "threads", "segment_size", "quiet")}
    cfg = RunConfig(args.command, params, args.out, threads, args.segment_size)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig):
    p = cfg.params
    if cfg.command in ("twin-scan", "predict"):
        if p["p_max"] < 2:
            raise ConfigError("--p-max must be >= 2")
        if cfg.command == "twin-scan":
            est = twin_scan_estimate(p["p_max"])
            if est > p["max_seconds"]:
                raise ConfigError(
                    f"twin scan to p_n = {p['p_max']} is estimated at {est:.0f} s, above "
                    f"--max-seconds {p['max_seconds']:.0f}")
    elif cfg.command == "polignac":
        if p["extra_m"] is None:
            p["extra_m"] = list(polignac.PAPER_EXTRA_MS)
        if p["m_max"] < 2 or p["m_max"] % 2:
            raise ConfigError("--m-max must be an even integer >= 2")
        for m in p["extra_m"]:
            if m < 2 or m % 2:
                raise ConfigError(f"--extra-m values must be even and >= 2, got {m}")
        if p["low_value"] is None and not 2 <= p["low_index"] <= p["high_index"]:
            raise ConfigError("need 2 <= --low-index <= --high-index")
        if p["low_value"] is not None and p["low_value"] < 5:
            raise ConfigError("--low-value must be >= 5")
        if p["high_value"] is not None and p["low_value"] is not None and p["high_value"] < p["low_value"]:
            raise ConfigError("--high-value must be >= --low-value")
    elif cfg.command == "scenario":
        if not 1 <= p["low_index"] <= p["high_index"] or (p["high_index"] - p["low_index"]) % 2:
            raise ConfigError("need 1 <= --low-index <= --high-index with an even difference")
    elif cfg.command == "estimate":
        if not 10 <= p["low_index"] <= p["high_index"]:
            raise ConfigError("need 10 <= --low-index <= --high-index")
        if p["points"] < 1:
            raise ConfigError("--points must be >= 1")


def run_twin_scan(cfg: RunConfig) -> None:
    p_max = cfg.params["p_max"]
    table = sieve_upto(max(p_max, 2), segment_size=cfg.segment_size)
    p_values, counts, found = twins.count_twins_all(p_max, table, cfg.threads)
    _, _, _, preds = prediction.predict_many(p_max, table, cfg.params.get("exact_mertens", False))
    empty = [p for p, t in zip(p_values.tolist(), found.tolist()) if t == 0]
    comments = [f"windows_without_twins,{len(empty)}"] if p_values.size else []
    if empty:
        log.warning("windows without twin pairs: %s", empty[:20])
    report.write_csv(cfg.output_path, report.TWIN_SCAN_HEADER,
                     report.twin_scan_rows(p_values, counts, found, preds), comments)


def run_predict(cfg: RunConfig) -> None:
    p_max = cfg.params["p_max"]
    table = sieve_upto(max(p_max, 2), segment_size=cfg.segment_size)
    exact = cfg.params.get("exact_mertens", False)
    p_values, products, counts, preds = prediction.predict_many(p_max, table, exact)
    corr = prediction.mertens_factor(exact) ** 2
    rows = zip(p_values.tolist(), products.tolist(), counts.tolist(), [corr] * len(preds), preds.tolist())
    report.write_csv(cfg.output_path, report.PREDICT_HEADER, rows)


def resolve_polignac_range(params: dict, segment_size: int) -> tuple[int, int]:
    lo, hi = params.get("low_value"), params.get("high_value")
    need = [i for i, v in ((params["low_index"], lo), (params["high_index"], hi)) if v is None]
    if need:
        table = sieve_upto(nth_prime_upper_bound(max(need) + 1), segment_size=segment_size)
        if lo is None:
            lo = table.odd_prime(params["low_index"])
        if hi is None:
            hi = table.odd_prime(params["high_index"])
    return lo, hi


def run_polignac(cfg: RunConfig) -> list:
    p = cfg.params
    lo, hi = resolve_polignac_range(p, cfg.segment_size)
    log.info("Low member range [%d, %d]", lo, hi)
    ms = polignac.gap_list(p["m_max"], p["extra_m"])
    top = hi + ms[-1]
    window = segmented_window(lo, top, sieve_upto(max(2, math.isqrt(top))),
                              segment_size=cfg.segment_size, threads=cfg.threads)
    records = polignac.build_records(polignac.count_all_gaps(lo, hi, ms, window, cfg.threads))
    stats = polignac.ratio_stats(records)
    comments = [f"low_prime,{lo}", f"high_prime,{hi}"] + report.stats_comments(stats)
    report.write_csv(cfg.output_path, report.POLIGNAC_HEADER, report.polignac_rows(records), comments)
    return records


def run_scenario(cfg: RunConfig) -> asymptotics.ScenarioResult:
    first, last = cfg.params["low_index"], cfg.params["high_index"]
    table = sieve_upto(nth_prime_upper_bound(last + 3), segment_size=cfg.segment_size)
    res = asymptotics.scenario_experiment(table, first, last)
    text = "".join(f"prod{i} {v:.9f}\n" for i, v in enumerate(res.as_tuple(), start=1))
    with report._open_out(cfg.output_path) as fh:
        fh.write(text)
    return res


def run_estimate(cfg: RunConfig) -> None:
    p = cfg.params
    grid = np.unique(np.geomspace(p["low_index"], p["high_index"], p["points"]).round().astype(np.int64))
    anchor = sieve_upto(asymptotics.ANCHOR_LIMIT)
    rows = []
    for n in grid.tolist():
        a = asymptotics.predict_twins_asymptotic(n, anchor)
        rows.append((a.n, a.p_n_estimate, a.product_estimate, a.candidates_estimate, a.predicted_twins))
    report.write_csv(cfg.output_path, report.ESTIMATE_HEADER, rows)


RUNNERS = {
    "twin-scan": run_twin_scan,
    "predict": run_predict,
    "polignac": run_polignac,
    "scenario": run_scenario,
    "estimate": run_estimate,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        stream=sys.stderr, format="%(asctime)s %(levelname)s %(message)s")
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        print(f"primepairs: {exc}", file=sys.stderr)
        return 1
    try:
        RUNNERS[cfg.command](cfg)
    except OSError as exc:
        print(f"primepairs: I/O error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, IndexError, MemoryError) as exc:
        print(f"primepairs: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
