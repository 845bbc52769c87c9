"""Multiple orthogonal polynomials, Hermite-Padé approximation and their
classical applications, in exact and multiprecision arithmetic."""

__version__ = "0.1.0"

from .measures import (APERY_PAIR, APERY_TRIPLE, LEBESGUE, MeasureSpec, cauchy_series,  # noqa: E402
                       hermite_external, moment, moment_table, preset)
from .mopcore import (MultiIndex, assemble_systems, is_normal, mixed_solve,  # noqa: E402
                      nn_recurrence, perfectness_scan, type_i, type_ii)
from .numerics import EXACT, Polynomial, ScalarDomain  # noqa: E402

__all__ = [
    "__version__", "EXACT", "ScalarDomain", "Polynomial", "MultiIndex", "MeasureSpec",
    "LEBESGUE", "APERY_PAIR", "APERY_TRIPLE", "hermite_external", "moment_table", "preset",
    "moment", "cauchy_series", "type_i", "type_ii", "assemble_systems", "is_normal",
    "perfectness_scan", "mixed_solve", "nn_recurrence",
]
