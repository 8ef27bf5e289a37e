from .arithmetic import FixedPoint, IterationTrace, Seed
from .cli import CliConfig, Command
from .fp import ExactScaled, FpValue, UlpError
from .sweep import Corpus, SweepRecord
from .tables import BitThresholds, LookupTable, TableKind, TableSpec

__all__ = [
    "BitThresholds",
    "CliConfig",
    "Command",
    "Corpus",
    "ExactScaled",
    "FixedPoint",
    "FpValue",
    "IterationTrace",
    "LookupTable",
    "Seed",
    "SweepRecord",
    "TableKind",
    "TableSpec",
    "UlpError",
]
