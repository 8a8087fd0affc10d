"""Hierarchical hypersparse matrices for high-rate streaming inserts."""

from ._hhm import (
    CascadeStats,
    ConfigError,
    CutSchedule,
    Error,
    HierarchicalMatrix,
    HypersparseMatrix,
    OverflowError,
    ParseError,
    StreamConfig,
    degree_histogram,
    generate_batch,
    run_bench,
    run_ingest,
    run_verify,
)

__all__ = [
    "CascadeStats",
    "ConfigError",
    "CutSchedule",
    "Error",
    "HierarchicalMatrix",
    "HypersparseMatrix",
    "OverflowError",
    "ParseError",
    "StreamConfig",
    "degree_histogram",
    "generate_batch",
    "run_bench",
    "run_ingest",
    "run_verify",
]
