import math

import pytest

from src.core.harness import (
    SplitMix64,
    aggregate,
    convergence_profile,
    evaluate_config,
    gen_corpus,
    sample_bits,
    sweep,
    trace_corpus,
)
from src.models.arithmetic import IterationTrace
from src.models.fp import UlpError
from src.models.tables import TableKind, TableSpec
from src.numerics.fp_core import compose
from src.numerics.lut_builder import build_table
from src.numerics.nr_engine import DEFAULT_FRACTION_BITS, DEFAULT_MAX_ITER

FACTORS = [2, 4, 8, 16, 32, 64]


def spec(kind, addr_bits, factor=1, word_bits=None):
    return TableSpec(kind=kind, addr_bits=addr_bits, word_bits=word_bits, interp_factor=factor)


def test_splitmix_reference_outputs(golden_corpus):
    generator = SplitMix64(golden_corpus["prng_seed"])
    outputs = [next(generator) for _ in golden_corpus["outputs"]]
    assert outputs == [int(value, 16) for value in golden_corpus["outputs"]]


def test_sample_bits(golden_corpus):
    for output, bits in zip(golden_corpus["outputs"], golden_corpus["bit_patterns"]):
        assert sample_bits(int(output, 16)) == int(bits, 16)


def test_corpus_is_deterministic(golden_corpus):
    corpus = gen_corpus(42, 3)
    assert [compose(x) for x in corpus.samples] == [int(b, 16) for b in golden_corpus["bit_patterns"]]
    assert gen_corpus(42, 3) == corpus
    assert corpus.corpus_id == (42, 3)
    assert gen_corpus(43, 3) != corpus


def test_corpus_covers_exponent_range(corpus42):
    exponents = [x.exponent for x in corpus42.samples]
    assert min(exponents) >= -126
    assert max(exponents) <= 127
    assert len(set(exponents)) > 200


def test_corpus_rejects_empty():
    with pytest.raises(ValueError):
        gen_corpus(42, 0)


def trace(exponents, converged_at):
    return IterationTrace(
        error_exponents=exponents,
        iterations_to_converge=converged_at,
        diverged=converged_at is None,
        final_ulp=UlpError(ulps=0.25 if converged_at else 4.0),
    )


def test_aggregate_excludes_diverged_samples():
    corpus = gen_corpus(1, 3)
    traces = [trace([-30.0, -31.0], 1), trace([-20.0, -24.0], 2), trace([-10.0, -12.0], None)]
    record = aggregate(spec("mlt", 11), corpus, traces, fraction_bits=30, max_iter=4)
    assert record.divergence_pct == pytest.approx(100 / 3)
    assert record.avg_iterations == 1.5
    assert record.avg_error_exp_iter1 == -25.0
    assert record.avg_error_exp_iter2 == -27.5
    assert not record.acceptable_after_1
    assert record.acceptable_after_2
    assert record.corpus_id == (1, 3)


def test_aggregate_ignores_exact_results():
    corpus = gen_corpus(1, 2)
    traces = [trace([-math.inf, -math.inf], 1), trace([-28.0, -30.0], 1)]
    record = aggregate(spec("mlt", 11), corpus, traces, fraction_bits=30)
    assert record.avg_error_exp_iter1 == -28.0
    assert record.acceptable_after_1


def test_aggregate_all_diverged():
    corpus = gen_corpus(1, 1)
    record = aggregate(spec("mlt", 11), corpus, [trace([-10.0], None)], fraction_bits=30)
    assert record.divergence_pct == 100.0
    assert math.isnan(record.avg_iterations)
    assert not record.acceptable_after_2


@pytest.fixture(scope="module")
def mlt11_records(corpus42):
    return sweep(TableKind.MLT, [11], [1] + FACTORS, corpus42)


def test_full_tables_converge_in_one_step(mlt11_records, corpus42):
    full = mlt11_records[0]
    assert full.spec.interp_factor == 1
    assert full.avg_iterations == 1.0
    assert full.divergence_pct == 0.0
    assert full.acceptable_after_1 and full.acceptable_after_2
    assert -30 <= full.avg_error_exp_iter1 <= -27
    assert full.avg_error_exp_iter2 <= -29.5
    assert full.corpus_id == corpus42.corpus_id


def test_interpolated_mlt_cost(mlt11_records):
    interpolated = mlt11_records[1:]
    assert [r.spec.interp_factor for r in interpolated] == FACTORS
    for record in interpolated:
        assert 1.0 <= record.avg_iterations <= 1.40
        assert record.divergence_pct <= 0.5
        assert record.acceptable_after_2
    costs = [r.avg_iterations for r in interpolated]
    assert all(later >= earlier - 0.05 for earlier, later in zip(costs, costs[1:]))


def test_larger_tables_start_closer(corpus42):
    k11 = evaluate_config(spec("mlt", 11), corpus42)
    k12 = evaluate_config(spec("mlt", 12), corpus42)
    assert k12.avg_error_exp_iter1 < k11.avg_error_exp_iter1


def test_alt_cost_falls_with_address_width(corpus42):
    records = sweep(TableKind.ALT, [6, 8, 10], [1], corpus42)
    assert [r.spec.addr_bits for r in records] == [6, 8, 10]
    costs = [r.avg_iterations for r in records]
    assert all(later <= earlier for earlier, later in zip(costs, costs[1:]))
    assert costs[0] > 1.5
    assert records[1].acceptable_after_2 and records[2].acceptable_after_2


def test_alt_4k_table(corpus42):
    record = evaluate_config(spec("alt", 12), corpus42)
    assert record.spec.word_bits == 25
    assert record.divergence_pct <= 0.1
    assert record.avg_iterations <= 1.1
    assert record.acceptable_after_1
    assert record.acceptable_after_2


def test_alt_4k_error_after_first_iteration(corpus42):
    table = build_table(spec("alt", 12))
    traces = trace_corpus(table, corpus42, DEFAULT_FRACTION_BITS, DEFAULT_MAX_ITER)
    converged = [t for t in traces if not t.diverged]
    within_one_ulp = sum(1 for t in converged if t.error_exponents[0] < -23)
    assert within_one_ulp >= 0.999 * len(converged)


def test_alt_4k_interpolated_after_two(corpus42):
    records = sweep(TableKind.ALT, [12], FACTORS, corpus42)
    assert all(r.acceptable_after_2 for r in records)


def test_workers_match_serial():
    corpus = gen_corpus(11, 200)
    serial = evaluate_config(spec("mlt", 11, 8), corpus)
    parallel = evaluate_config(spec("mlt", 11, 8), corpus, workers=2)
    assert parallel == serial


def test_sweep_requires_axes(corpus42):
    with pytest.raises(ValueError):
        sweep(TableKind.MLT, [], [1], corpus42)


def test_convergence_profile_of_small_table(small_corpus):
    corpus = small_corpus.model_copy(update={"samples": small_corpus.samples[:200], "count": 200})
    profile = convergence_profile(spec("mlt", 6, word_bits=6), corpus, fraction_bits=52, iterations=3)
    assert len(profile) == 4
    assert all(later < earlier for earlier, later in zip(profile, profile[1:]))
    assert profile[0] > -10
    assert profile[3] < -23


def test_mlt_4k_interpolated_by_four(corpus42):
    record = evaluate_config(spec("mlt", 12, 4), corpus42)
    assert 1.0 <= record.avg_iterations <= 1.45
    assert record.divergence_pct <= 0.5
    assert record.acceptable_after_2
