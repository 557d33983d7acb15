"""Admissible chains, face maps, logarithmic integrals and the dilogarithm periods.

Rationals are passed as "p/q" strings or Python ints. Chain bundles, cell chains,
presentations and bar elements are JSON documents given as dicts or strings.
"""

from ._tatep import (
    AdmissibilityError,
    ContractError,
    DomainError,
    Error,
    GenericityError,
    ObstructionError,
    ParseError,
    PreconditionError,
    ScenarioError,
    SolvabilityError,
    StructuralError,
    ValidationError,
    bar_differential,
    boundary,
    cubical_differential,
    dilog_periods,
    disk_box_chain,
    integrate,
    normalize_rational,
    run_suite,
    shuffle,
    suite_names,
    verify_cauchy,
    verify_cauchy_disk_box,
)

__all__ = [name for name in dir() if not name.startswith("_")]
