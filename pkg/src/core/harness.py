import math
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator, List, Optional, Sequence

import numpy as np

from ..models.arithmetic import IterationTrace
from ..models.fp import MANTISSA_BITS, FpValue
from ..models.sweep import Corpus, SweepRecord
from ..models.tables import LookupTable, TableKind, TableSpec
from ..numerics.fp_core import decompose, error_exponent, ulp_error
from ..numerics.lut_builder import DEFAULT_GRID_POINTS, build_table
from ..numerics.nr_engine import DEFAULT_FRACTION_BITS, DEFAULT_MAX_ITER, iterate, operand
from ..numerics.seed_gen import seed_for
from ..utils.logger import setup_logger

logger = setup_logger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
# Samples needed per trace for the "error after 2nd iteration" statistic.
RECORDED_ITERATIONS = 2
ACCEPTABLE_EXPONENT = -MANTISSA_BITS


class SplitMix64:
    """64-bit splitmix generator."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


def sample_bits(word: int) -> int:
    """Positive normal bit pattern from one 64-bit draw.

    The exponent field is the high 32 bits scaled onto [1, 254]; the fraction
    is the low 23 bits.
    """
    exponent_field = 1 + (((word >> 32) * 254) >> 32)
    return (exponent_field << MANTISSA_BITS) | (word & ((1 << MANTISSA_BITS) - 1))


def gen_corpus(prng_seed: int, count: int) -> Corpus:
    """Deterministic corpus of `count` random positive normals."""
    if count < 1:
        raise ValueError("count must be at least 1")
    generator = SplitMix64(prng_seed)
    samples = tuple(decompose(sample_bits(next(generator))) for _ in range(count))
    return Corpus(prng_seed=prng_seed, count=count, samples=samples)


def trace_sample(
    table: LookupTable,
    x: FpValue,
    fraction_bits: int,
    max_iter: int,
    record_min: int = RECORDED_ITERATIONS,
) -> IterationTrace:
    """Seed and iterate one operand."""
    return iterate(
        operand(x, fraction_bits),
        seed_for(table, x),
        x,
        max_iter=max_iter,
        record_min=record_min,
    )


def _trace_chunk(
    table: LookupTable,
    samples: Sequence[FpValue],
    fraction_bits: int,
    max_iter: int,
) -> List[IterationTrace]:
    return [trace_sample(table, x, fraction_bits, max_iter) for x in samples]


def _chunks(samples: Sequence[FpValue], parts: int) -> List[Sequence[FpValue]]:
    size = math.ceil(len(samples) / parts)
    return [samples[i:i + size] for i in range(0, len(samples), size)]


def trace_corpus(
    table: LookupTable,
    corpus: Corpus,
    fraction_bits: int = DEFAULT_FRACTION_BITS,
    max_iter: int = DEFAULT_MAX_ITER,
    workers: int = 1,
) -> List[IterationTrace]:
    """Traces in corpus order, optionally computed by a process pool."""
    if workers <= 1 or corpus.count < 2 * workers:
        return _trace_chunk(table, corpus.samples, fraction_bits, max_iter)
    chunks = _chunks(corpus.samples, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = pool.map(
            _trace_chunk,
            [table] * len(chunks),
            chunks,
            [fraction_bits] * len(chunks),
            [max_iter] * len(chunks),
        )
        return [trace for chunk in results for trace in chunk]


def _mean_finite(values: Iterable[float]) -> float:
    data = np.fromiter(values, dtype=np.float64)
    data = data[np.isfinite(data)]
    return float(data.mean()) if data.size else math.nan


def _acceptable_after(traces: Sequence[IterationTrace], n: int) -> bool:
    if not traces:
        return False
    return all(
        len(t.error_exponents) >= n and t.error_exponents[n - 1] < ACCEPTABLE_EXPONENT
        for t in traces
    )


def aggregate(
    spec: TableSpec,
    corpus: Corpus,
    traces: Sequence[IterationTrace],
    fraction_bits: int,
    max_iter: Optional[int] = None,
) -> SweepRecord:
    """Reduce per-sample traces to the study metrics; diverged samples only count as divergence."""
    converged = [t for t in traces if not t.diverged]
    diverged = len(traces) - len(converged)
    iterations = np.fromiter((t.iterations_to_converge for t in converged), dtype=np.float64)
    return SweepRecord(
        spec=spec,
        corpus_id=corpus.corpus_id,
        fraction_bits=fraction_bits,
        max_iter=max_iter,
        avg_error_exp_iter1=_mean_finite(t.error_exponents[0] for t in converged if len(t.error_exponents) >= 1),
        avg_error_exp_iter2=_mean_finite(t.error_exponents[1] for t in converged if len(t.error_exponents) >= 2),
        divergence_pct=100.0 * diverged / len(traces),
        avg_iterations=float(iterations.mean()) if iterations.size else math.nan,
        acceptable_after_1=_acceptable_after(converged, 1),
        acceptable_after_2=_acceptable_after(converged, 2),
    )


def evaluate_config(
    spec: TableSpec,
    corpus: Corpus,
    fraction_bits: int = DEFAULT_FRACTION_BITS,
    max_iter: int = DEFAULT_MAX_ITER,
    workers: int = 1,
    table: Optional[LookupTable] = None,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> SweepRecord:
    """Build (or take) the table, run every sample and aggregate."""
    if table is None:
        table = build_table(spec, grid_points)
    traces = trace_corpus(table, corpus, fraction_bits, max_iter, workers)
    record = aggregate(table.spec, corpus, traces, fraction_bits, max_iter)
    logger.info(
        f"{table.spec.label}: divergence {record.divergence_pct:.2f}%, "
        f"avg iterations {record.avg_iterations:.3f}, "
        f"error exponents {record.avg_error_exp_iter1:.2f}/{record.avg_error_exp_iter2:.2f}"
    )
    return record


def sweep(
    kind: TableKind,
    addr_bits_list: Sequence[int],
    interp_list: Sequence[int],
    corpus: Corpus,
    fraction_bits: int = DEFAULT_FRACTION_BITS,
    max_iter: int = DEFAULT_MAX_ITER,
    word_bits: Optional[int] = None,
    workers: int = 1,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> List[SweepRecord]:
    """Evaluate the cross product of address widths and interpolation factors."""
    if not addr_bits_list or not interp_list:
        raise ValueError("sweep needs at least one address width and one interpolation factor")
    records = []
    for addr_bits in sorted(set(addr_bits_list)):
        for factor in sorted(set(interp_list)):
            spec = TableSpec(kind=kind, addr_bits=addr_bits, word_bits=word_bits, interp_factor=factor)
            records.append(evaluate_config(spec, corpus, fraction_bits, max_iter, workers, grid_points=grid_points))
    return records


def convergence_profile(
    spec: TableSpec,
    corpus: Corpus,
    fraction_bits: int = DEFAULT_FRACTION_BITS,
    iterations: int = 3,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> List[float]:
    """Mean error exponent of the seed (index 0) and after each of `iterations` steps."""
    table = build_table(spec, grid_points)
    seeds: List[float] = []
    steps: List[List[float]] = [[] for _ in range(iterations)]
    for x in corpus.samples:
        seed = seed_for(table, x)
        seeds.append(error_exponent(ulp_error(seed.absolute, x)))
        # A zero target never converges, so every step is taken.
        trace = iterate(operand(x, fraction_bits), seed, x, max_iter=iterations, target_ulps=0.0)
        for step, value in enumerate(trace.error_exponents):
            steps[step].append(value)
    profile = [_mean_finite(seeds)] + [_mean_finite(values) for values in steps]
    logger.info(f"{spec.label} convergence profile: " + ", ".join(f"{v:.2f}" for v in profile))
    return profile
