"""
Cardinality formulas and the counting sweep

Closed forms, Burnside orbit counts and enumeration compared side by side.
"""

from .models import CountQuery, SweepRow
from .counting import (
    binom,
    denumerant,
    closed_form,
    burnside_count,
    necklace_crosscheck,
    expand_queries,
    evaluate,
    sweep,
    write_sweep_csv,
    E7_COEFFICIENTS,
)

__all__ = [
    "CountQuery",
    "SweepRow",
    "binom",
    "denumerant",
    "closed_form",
    "burnside_count",
    "necklace_crosscheck",
    "expand_queries",
    "evaluate",
    "sweep",
    "write_sweep_csv",
    "E7_COEFFICIENTS",
]
