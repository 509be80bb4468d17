"""extset: exact-arithmetic workbench for degree statistics of set families.

Builds the classical extremal families, computes their invariants exactly,
verifies a catalog of binomial identities and inequalities in rational
arithmetic, and runs isomorph-free exhaustive searches that maximize minimum
t-degrees under intersection and matching constraints.
"""

__version__ = "0.1.0"

from . import constructions, core, exact, invariants, search
from .core import Family, KSet

__all__ = [
    "Family",
    "KSet",
    "__version__",
    "constructions",
    "core",
    "exact",
    "invariants",
    "search",
]
