from .fp_core import classify, compose, decompose, error_exponent, ref_rsqrt, ulp_error
from .lut_builder import build_alt, build_mlt, build_table, compute_thresholds, reduce
from .nr_engine import iterate, nr_step
from .seed_gen import seed_for

__all__ = [
    'classify',
    'decompose',
    'compose',
    'ref_rsqrt',
    'ulp_error',
    'error_exponent',
    'build_mlt',
    'build_alt',
    'reduce',
    'compute_thresholds',
    'build_table',
    'seed_for',
    'nr_step',
    'iterate',
]
