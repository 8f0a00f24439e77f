"""Benchmark harness comparing simple and optimized operators.

Three experiment families, each producing one :class:`ComparisonRow` per
swept parameter value:

* ``mutation``  - batches of bit-flip mutations over (n, pm);
* ``crossover`` - batches of uniform crossovers over (n, pu), pu <= 0.5;
* ``ga``        - full OneMax GA runs over pc for one crossover kind.

Each (variant, parameter) cell gets one untimed warm-up batch, then trials of
the two variants alternate so ambient load hits both equally.  Timed regions
are single calls into compiled batch kernels, measured with
``time.perf_counter``.

With ``count_rng=True`` the same batches run through a
:class:`~binomial_ga.rng.CountingRandomSource` and no timing is recorded;
the resulting CSV is byte-identical across runs with the same seed.

Command line::

    bench mutation --n 1024 --pm 1/1024,1/4 --trials 30 --ops 10000
    bench crossover --n 1024 --pu 0.1,0.5 --out crossover.csv
    bench ga --crossover onepoint --pc 0.05,0.5,0.95 --trials 30
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
import time
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TextIO

import numpy as np
from numba import njit

from .binomial import BinomialSampler
from .bitvector import fill_random_words, word_count
from .ga import CrossoverKind, GAConfig, run_ga
from .operators import (
    MutationParams,
    optimized_mutation_words,
    optimized_uniform_crossover_words,
    simple_mutation_words,
    simple_uniform_crossover_words,
)
from .rng import CountingRandomSource, from_seed
from .stats import summarize, welch_t_test

log = logging.getLogger(__name__)

__all__ = [
    "Profile",
    "QUICK",
    "PAPER",
    "TrialRecord",
    "ComparisonRow",
    "default_mutation_rates",
    "run_mutation_bench",
    "run_crossover_bench",
    "run_ga_bench",
    "emit_csv",
    "read_csv",
    "main",
]

SEED_MODULUS = 1 << 64
DEFAULT_LENGTHS = (16, 32, 64, 128, 256, 512, 1024)
DEFAULT_PUS = (0.1, 0.2, 0.3, 0.4, 0.5)
DEFAULT_PCS = (0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95)


@dataclass(frozen=True)
class Profile:
    trials: int
    ops: int
    ga_trials: int
    generations: int = 1000


QUICK = Profile(trials=30, ops=10_000, ga_trials=30)
PAPER = Profile(trials=100, ops=100_000, ga_trials=100)


@dataclass
class TrialRecord:
    experiment: str
    variant: str
    n: int
    param_name: str
    param_value: float
    elapsed: float | None = None
    rng_real_calls: int | None = None
    rng_int_calls: int | None = None
    rng_block_calls: int | None = None
    solution: int | None = None


@dataclass
class ComparisonRow:
    experiment: str
    n: int
    param: str
    value: float
    crossover: str = ""
    mean_simple: float | None = None
    mean_optimized: float | None = None
    percent_less: float | None = None
    p_time: float | None = None
    mean_solution_simple: float | None = None
    mean_solution_optimized: float | None = None
    p_solution: float | None = None
    simple_real_calls: int | None = None
    simple_int_calls: int | None = None
    simple_block_calls: int | None = None
    optimized_real_calls: int | None = None
    optimized_int_calls: int | None = None
    optimized_block_calls: int | None = None

    @property
    def speedup(self) -> float:
        return self.mean_simple / self.mean_optimized


# -- batch kernels ------------------------------------------------------------


@njit
def _simple_mutation_batch(words, n, pm, src, ops):
    for _ in range(ops):
        simple_mutation_words(words, n, pm, src)


@njit
def _optimized_mutation_batch(words, n, pm, sampler, src, ops):
    for _ in range(ops):
        optimized_mutation_words(words, n, pm, sampler, src)


@njit
def _simple_crossover_batch(w1, w2, n, pu, src, ops):
    for _ in range(ops):
        simple_uniform_crossover_words(w1, w2, n, pu, src)


@njit
def _optimized_crossover_batch(w1, w2, n, pu, sampler, src, ops):
    for _ in range(ops):
        optimized_uniform_crossover_words(w1, w2, n, pu, sampler, src)


# -- helpers ------------------------------------------------------------------


def _trial_seed(base: int, trial: int, variant_index: int) -> int:
    # both variants get distinct, independent streams
    return (base + 2 * trial + variant_index) % SEED_MODULUS


def _warmup_seed(base: int, trials: int, variant_index: int) -> int:
    return _trial_seed(base, trials, variant_index)


def _source(seed: int, count_rng: bool):
    src = from_seed(seed)
    return CountingRandomSource(src) if count_rng else src


def _random_words(n: int, src) -> np.ndarray:
    words = np.zeros(word_count(n), dtype=np.uint32)
    fill_random_words(words, n, src)
    return words


def _check_common(trials: int, ops: int | None, seed: int) -> None:
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if ops is not None and ops < 1:
        raise ValueError(f"ops must be at least 1, got {ops}")
    if not 0 <= seed < SEED_MODULUS:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")


def _check_lengths(lengths: Sequence[int]) -> None:
    for n in lengths:
        if n < 1:
            raise ValueError(f"n must be a positive bit count, got n={n}")


def default_mutation_rates(n: int) -> list[float]:
    """1/n, 2/n, 4/n, ... up to 1/4."""
    rates = []
    k = 1
    while 4 * k <= n:
        rates.append(k / n)
        k *= 2
    return rates or [0.25]


def _compare(
    experiment: str,
    n: int,
    param: str,
    value: float,
    simple: list[TrialRecord],
    optimized: list[TrialRecord],
    crossover: str = "",
) -> ComparisonRow:
    row = ComparisonRow(experiment, n, param, value, crossover)
    if simple[0].elapsed is not None:
        a = summarize([r.elapsed for r in simple])
        b = summarize([r.elapsed for r in optimized])
        row.mean_simple = a.mean
        row.mean_optimized = b.mean
        row.percent_less = 100.0 * (1.0 - b.mean / a.mean) if a.mean > 0 else None
        if a.count >= 2:
            row.p_time = welch_t_test(a, b).p_value
    if simple[0].solution is not None:
        a = summarize([r.solution for r in simple])
        b = summarize([r.solution for r in optimized])
        row.mean_solution_simple = a.mean
        row.mean_solution_optimized = b.mean
        if a.count >= 2:
            row.p_solution = welch_t_test(a, b).p_value
    if simple[0].rng_real_calls is not None:
        row.simple_real_calls = sum(r.rng_real_calls for r in simple)
        row.simple_int_calls = sum(r.rng_int_calls for r in simple)
        row.simple_block_calls = sum(r.rng_block_calls for r in simple)
        row.optimized_real_calls = sum(r.rng_real_calls for r in optimized)
        row.optimized_int_calls = sum(r.rng_int_calls for r in optimized)
        row.optimized_block_calls = sum(r.rng_block_calls for r in optimized)
    return row


def _measure(
    experiment: str,
    variant: str,
    n: int,
    param: str,
    value: float,
    src,
    body: Callable[[], int | None],
    count_rng: bool,
) -> TrialRecord:
    rec = TrialRecord(experiment, variant, n, param, value)
    if count_rng:
        src.reset()
        rec.solution = body()
        rec.rng_real_calls = int(src.real_count)
        rec.rng_int_calls = int(src.int_count)
        rec.rng_block_calls = int(src.block_count)
    else:
        start = time.perf_counter()
        rec.solution = body()
        rec.elapsed = time.perf_counter() - start
    return rec


def _paired_trials(
    experiment: str,
    n: int,
    param: str,
    value: float,
    make_body: Callable[[str, object], Callable[[], int | None]],
    trials: int,
    seed: int,
    count_rng: bool,
    records: list | None,
    crossover: str = "",
) -> ComparisonRow:
    variants = ("simple", "optimized")
    for vi, variant in enumerate(variants):
        warm = _source(_warmup_seed(seed, trials, vi), False)
        make_body(variant, warm)()
    results: dict[str, list[TrialRecord]] = {v: [] for v in variants}
    for t in range(trials):
        for vi, variant in enumerate(variants):
            src = _source(_trial_seed(seed, t, vi), count_rng)
            body = make_body(variant, src)
            rec = _measure(experiment, variant, n, param, value, src, body, count_rng)
            results[variant].append(rec)
    if records is not None:
        for t in range(trials):
            records.extend(results[v][t] for v in variants)
    row = _compare(experiment, n, param, value, results["simple"], results["optimized"], crossover)
    log.info("%s n=%d %s=%g: %s", experiment, n, param, value, _describe(row))
    return row


def _describe(row: ComparisonRow) -> str:
    if row.percent_less is not None:
        return f"{row.percent_less:.1f}% less time"
    return f"counts simple={row.simple_real_calls} real, optimized={row.optimized_real_calls} real"


# -- experiments --------------------------------------------------------------


def run_mutation_bench(
    lengths: Iterable[int] = DEFAULT_LENGTHS,
    rates: dict[int, Sequence[float]] | Sequence[float] | None = None,
    ops: int = QUICK.ops,
    trials: int = QUICK.trials,
    seed: int = 0,
    count_rng: bool = False,
    records: list | None = None,
) -> list[ComparisonRow]:
    """Time ``ops`` mutations per trial for each (n, pm).

    ``rates`` may be one list used for every n, a dict keyed by n, or None
    for :func:`default_mutation_rates`.  Every trial starts from a fresh
    random vector.
    """
    lengths = list(lengths)
    _check_common(trials, ops, seed)
    _check_lengths(lengths)
    rows = []
    for n in lengths:
        if rates is None:
            pms = default_mutation_rates(n)
        elif isinstance(rates, dict):
            pms = rates[n]
        else:
            pms = rates
        for pm in pms:
            pm = float(pm)
            if not 0.0 <= pm <= 1.0:
                raise ValueError(f"pm must lie in [0, 1], got pm={pm}")
            sampler = BinomialSampler(n, pm)

            def make_body(variant, src, n=n, pm=pm, sampler=sampler):
                words = _random_words(n, src)
                if variant == "simple":
                    return lambda: _simple_mutation_batch(words, n, pm, src, ops)
                return lambda: _optimized_mutation_batch(words, n, pm, sampler, src, ops)

            rows.append(_paired_trials("mutation", n, "pm", pm, make_body, trials, seed, count_rng, records))
    return rows


def run_crossover_bench(
    lengths: Iterable[int] = DEFAULT_LENGTHS,
    pus: Sequence[float] = DEFAULT_PUS,
    ops: int = QUICK.ops,
    trials: int = QUICK.trials,
    seed: int = 0,
    count_rng: bool = False,
    records: list | None = None,
) -> list[ComparisonRow]:
    """Time ``ops`` uniform crossovers per trial for each (n, pu)."""
    lengths = list(lengths)
    _check_common(trials, ops, seed)
    _check_lengths(lengths)
    for pu in pus:
        if not 0.0 <= pu <= 0.5:
            raise ValueError(
                f"pu must lie in [0, 0.5], got pu={pu}; exchanging with probability "
                "pu > 0.5 yields the same children as 1 - pu"
            )
    rows = []
    for n in lengths:
        for pu in pus:
            pu = float(pu)
            sampler = BinomialSampler(n, pu)

            def make_body(variant, src, n=n, pu=pu, sampler=sampler):
                w1 = _random_words(n, src)
                w2 = _random_words(n, src)
                if variant == "simple":
                    return lambda: _simple_crossover_batch(w1, w2, n, pu, src, ops)
                return lambda: _optimized_crossover_batch(w1, w2, n, pu, sampler, src, ops)

            rows.append(_paired_trials("crossover", n, "pu", pu, make_body, trials, seed, count_rng, records))
    return rows


def run_ga_bench(
    crossover: CrossoverKind = CrossoverKind.uniform(0.33),
    pcs: Sequence[float] = DEFAULT_PCS,
    trials: int = QUICK.ga_trials,
    seed: int = 0,
    genome_bits: int = 1024,
    population_size: int = 100,
    pm: float = 1 / 1024,
    generations: int = 1000,
    count_rng: bool = False,
    records: list | None = None,
) -> list[ComparisonRow]:
    """Time full OneMax runs of both GA variants per pc and compare best fitness."""
    _check_common(trials, None, seed)
    rows = []
    for pc in pcs:
        pc = float(pc)
        base = GAConfig(
            genome_bits=genome_bits,
            population_size=population_size,
            pc=pc,
            mutation=MutationParams(pm),
            crossover=crossover,
            generations=generations,
        )

        def make_body(variant, src, base=base):
            return lambda: run_ga(base, variant, src=src).best_fitness

        rows.append(
            _paired_trials("ga", genome_bits, "pc", pc, make_body, trials, seed, count_rng, records, str(crossover))
        )
    return rows


# -- CSV ----------------------------------------------------------------------

CSV_COLUMNS = [f.name for f in fields(ComparisonRow)]
_SECONDS = {"mean_simple", "mean_optimized"}
_PVALUES = {"p_time", "p_solution"}
_INTS = {"n"} | {c for c in CSV_COLUMNS if c.endswith("_calls")}
_TEXT = {"experiment", "param", "crossover"}


def _format(name: str, value) -> str:
    if value is None:
        return ""
    if name in _TEXT:
        return str(value)
    if name in _INTS:
        return str(int(value))
    if name in _SECONDS:
        return f"{value:.6g}"
    if name in _PVALUES:
        return "0" if value == 0 else f"{value:.6e}"
    return repr(float(value)) if name == "value" else f"{value:.6g}"


def _parse(name: str, text: str):
    if text == "":
        return None
    if name in _TEXT:
        return text
    if name in _INTS:
        return int(text)
    return float(text)


def _write_rows(rows: Iterable[ComparisonRow], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_format(c, getattr(row, c)) for c in CSV_COLUMNS])


def emit_csv(rows: Iterable[ComparisonRow], destination: str | TextIO | None = None) -> None:
    """Write a header plus one line per row to a path, an open file, or stdout."""
    if destination is None:
        _write_rows(rows, sys.stdout)
    elif isinstance(destination, str):
        try:
            with open(destination, "w", newline="") as fh:
                _write_rows(rows, fh)
        except OSError as exc:
            raise OSError(f"cannot write CSV to {destination}: {exc.strerror or exc}") from exc
    else:
        _write_rows(rows, destination)


def read_csv(source: str | TextIO) -> list[ComparisonRow]:
    """Parse CSV written by :func:`emit_csv`."""
    if isinstance(source, str):
        with open(source, newline="") as fh:
            return read_csv(fh)
    reader = csv.DictReader(source)
    if reader.fieldnames != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [ComparisonRow(**{c: _parse(c, rec[c]) for c in CSV_COLUMNS}) for rec in reader]


# -- CLI ----------------------------------------------------------------------


def _number_list(text: str) -> list[float]:
    try:
        return [float(Fraction(tok.strip())) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from exc


def _seed(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"seed must be a decimal integer: {text!r}") from exc
    if not 0 <= value < SEED_MODULUS:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description=__doc__.split("\n\n")[0])
    parser.add_argument("experiment", choices=["mutation", "crossover", "ga"])
    parser.add_argument("--n", type=_int_list, help="bit lengths, comma separated (ga: genome bits)")
    parser.add_argument("--pm", type=_number_list, help="mutation rates, e.g. 1/1024,1/4 (ga: single rate)")
    parser.add_argument("--pu", type=_number_list, help="uniform crossover rates <= 0.5")
    parser.add_argument("--pc", type=_number_list, help="GA crossover rates")
    parser.add_argument("--crossover", choices=["uniform", "onepoint", "twopoint"], default="uniform")
    parser.add_argument("--pu-for-uniform", type=float, default=0.33, help="pu of GA uniform crossover")
    parser.add_argument("--ops", type=int, help="operations per trial")
    parser.add_argument("--trials", type=int)
    parser.add_argument("--generations", type=int)
    parser.add_argument("--pop", type=int, default=100, help="GA population size")
    parser.add_argument("--seed", type=_seed, default=0)
    scale = parser.add_mutually_exclusive_group()
    scale.add_argument("--quick", dest="profile", action="store_const", const=QUICK,
                       help="desk scale: 30 trials x 10^4 ops (default)")
    scale.add_argument("--paper", dest="profile", action="store_const", const=PAPER,
                       help="full scale: 100 trials x 10^5 ops")
    parser.add_argument("--count-rng", action="store_true", help="count RNG calls instead of timing")
    parser.add_argument("--out", help="CSV path (default: standard output)")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.set_defaults(profile=QUICK)
    return parser


def _run(args: argparse.Namespace) -> list[ComparisonRow]:
    profile: Profile = args.profile
    ops = args.ops if args.ops is not None else profile.ops
    if args.experiment == "mutation":
        return run_mutation_bench(
            lengths=args.n or DEFAULT_LENGTHS,
            rates=args.pm,
            ops=ops,
            trials=args.trials if args.trials is not None else profile.trials,
            seed=args.seed,
            count_rng=args.count_rng,
        )
    if args.experiment == "crossover":
        return run_crossover_bench(
            lengths=args.n or DEFAULT_LENGTHS,
            pus=args.pu or DEFAULT_PUS,
            ops=ops,
            trials=args.trials if args.trials is not None else profile.trials,
            seed=args.seed,
            count_rng=args.count_rng,
        )
    if args.n is not None and len(args.n) != 1:
        raise ValueError(f"ga takes a single genome length, got n={args.n}")
    if args.pm is not None and len(args.pm) != 1:
        raise ValueError(f"ga takes a single mutation rate, got pm={args.pm}")
    genome_bits = args.n[0] if args.n else 1024
    kind = {
        "uniform": CrossoverKind.uniform(args.pu_for_uniform),
        "onepoint": CrossoverKind.single_point(),
        "twopoint": CrossoverKind.two_point(),
    }[args.crossover]
    return run_ga_bench(
        crossover=kind,
        pcs=args.pc or DEFAULT_PCS,
        trials=args.trials if args.trials is not None else profile.ga_trials,
        seed=args.seed,
        genome_bits=genome_bits,
        population_size=args.pop,
        pm=args.pm[0] if args.pm else 1 / genome_bits,
        generations=args.generations if args.generations is not None else profile.generations,
        count_rng=args.count_rng,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        rows = _run(args)
        emit_csv(rows, args.out)
    except ValueError as exc:
        print(f"bench: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"bench: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
