import math
from typing import List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.concurrency import run_in_threadpool
from pydantic import ValidationError

from ..core.config import get_settings
from ..core.harness import gen_corpus, sweep
from ..exceptions import ExponentRangeError, FloatDomainError, TableSpecError, TableStructureError
from ..models.api import EvalRequest, EvalResponse, SweepRequest
from ..models.sweep import SweepRecord
from ..models.tables import BitThresholds, TableSpec
from ..numerics.fp_core import decompose, error_exponent, ulp_error
from ..numerics.lut_builder import build_table, compute_thresholds
from ..numerics.nr_engine import iterate, operand
from ..numerics.seed_gen import seed_for
from ..utils.logger import setup_logger
from ..utils.validation import parse_operand

logger = setup_logger(__name__)

DOMAIN_ERRORS = (FloatDomainError, ExponentRangeError, TableSpecError, TableStructureError, ValidationError, ValueError)

app = FastAPI(
    title="rsqrt-lut",
    description="Reciprocal square root seeds from lookup tables, refined by Newton-Raphson",
    version="0.1.0",
    docs_url="/api/docs",
    redoc_url="/api/redoc"
)

def _finite(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def _evaluate(request: EvalRequest) -> EvalResponse:
    settings = get_settings()
    fraction_bits = request.fraction_bits or settings.fraction_bits
    max_iter = request.max_iter or settings.max_iter
    spec = TableSpec(
        kind=request.kind,
        addr_bits=request.addr_bits,
        word_bits=request.word_bits,
        interp_factor=request.interp,
        compressed=request.compressed,
    )
    x = decompose(parse_operand(request.x))
    table = build_table(spec, settings.alt_grid_points)
    seed = seed_for(table, x)
    trace = iterate(operand(x, fraction_bits), seed, x, max_iter=max_iter)
    return EvalResponse(
        table=spec.label,
        seed=float(seed),
        seed_error_exponent=_finite(error_exponent(ulp_error(seed.absolute, x))),
        error_exponents=[_finite(e) for e in trace.error_exponents],
        iterations=trace.iterations_to_converge,
        diverged=trace.diverged,
        final_ulp=trace.final_ulp.ulps,
        final_value=float(trace.final_iterate) if trace.final_iterate is not None else None,
    )


def _sweep(request: SweepRequest) -> List[SweepRecord]:
    settings = get_settings()
    corpus = gen_corpus(
        request.prng_seed if request.prng_seed is not None else settings.prng_seed,
        request.samples or settings.samples,
    )
    return sweep(
        request.kind,
        request.addr_bits,
        request.interp,
        corpus,
        fraction_bits=request.fraction_bits or settings.fraction_bits,
        max_iter=request.max_iter or settings.max_iter,
        word_bits=request.word_bits,
        workers=settings.workers,
        grid_points=settings.alt_grid_points,
    )


@app.post("/rsqrt/eval", response_model=EvalResponse)
async def evaluate(request: EvalRequest):
    """Seed one operand from a table and iterate it."""
    try:
        return await run_in_threadpool(_evaluate, request)
    except DOMAIN_ERRORS as e:
        logger.warning(f"Rejected eval request for {request.x}: {e}")
        raise HTTPException(status_code=422, detail=str(e))


@app.get("/tables/mlt/{addr_bits}/thresholds", response_model=BitThresholds)
async def thresholds(addr_bits: int):
    """Second and third MSB thresholds of the 23-bit MLT with this address width."""
    try:
        return await run_in_threadpool(compute_thresholds, addr_bits)
    except DOMAIN_ERRORS as e:
        raise HTTPException(status_code=422, detail=str(e))


@app.post("/sweeps", response_model=List[SweepRecord])
async def run_sweep(request: SweepRequest):
    """Evaluate the cross product of address widths and interpolation factors."""
    try:
        return await run_in_threadpool(_sweep, request)
    except DOMAIN_ERRORS as e:
        logger.warning(f"Rejected sweep request: {e}")
        raise HTTPException(status_code=422, detail=str(e))


@app.get("/health")
async def health_check():
    """Health check endpoint to ensure API is working."""
    return {"status": "healthy"}
