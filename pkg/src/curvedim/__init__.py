"""Certified dimensions of plane linear systems with general multiple points."""

from .classify import conjectured_dim, dim_small_n, minus_one_special
from .core import (
    DimensionResult,
    LinearSystem,
    Provenance,
    Source,
    expected_dim,
    genus,
    intersect,
    self_intersection,
    virtual_dim,
)
from .cremona import dim_above, dim_anchor, dim_below, dim_quasi
from .degen import (
    DegenerationWitness,
    capital_D,
    evaluate_pair,
    interval_witness,
    limit_dim,
    search_witness,
    subsystems,
)
from .engine import (
    ConjectureCertificate,
    Engine,
    MemoStore,
    Undecided,
    check_conjecture,
    check_degree,
    critical_n,
    dim_homogeneous,
    verify_paper_tables,
)
from .oracle import OracleConfig, RankCertificate, certify_dim, certify_empty, generic_dim

__version__ = "0.1.0"

__all__ = [
    "ConjectureCertificate",
    "DegenerationWitness",
    "DimensionResult",
    "Engine",
    "LinearSystem",
    "MemoStore",
    "OracleConfig",
    "Provenance",
    "RankCertificate",
    "Source",
    "Undecided",
    "capital_D",
    "certify_dim",
    "certify_empty",
    "check_conjecture",
    "check_degree",
    "conjectured_dim",
    "critical_n",
    "dim_above",
    "dim_anchor",
    "dim_below",
    "dim_homogeneous",
    "dim_quasi",
    "dim_small_n",
    "evaluate_pair",
    "expected_dim",
    "generic_dim",
    "genus",
    "interval_witness",
    "intersect",
    "limit_dim",
    "minus_one_special",
    "search_witness",
    "self_intersection",
    "subsystems",
    "verify_paper_tables",
    "virtual_dim",
]
