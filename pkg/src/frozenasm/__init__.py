"""Frozen-corner enumeration of alternating sign matrices.

B(n, s) counts n x n ASMs whose top-left s x s block is zero. It is computed
here by a monotone-triangle oracle, by the determinant formula
A_n det(1 - M), and by a constant-term extraction, and the large-n boundary
statistics are compared with the GUE Tracy-Widom law.
"""

__version__ = "0.1.0"

from .asm_enum import asm_count, g_poly, refined_count, verify_properties  # noqa: E402
from .conjecture import IntegrityError, conjecture_count, frozen_matrix  # noqa: E402
from .frozen_oracle import brute_force_frozen, count_frozen  # noqa: E402
from .mir import mir_count  # noqa: E402

__all__ = [
    "__version__",
    "asm_count",
    "refined_count",
    "g_poly",
    "verify_properties",
    "count_frozen",
    "brute_force_frozen",
    "conjecture_count",
    "frozen_matrix",
    "mir_count",
    "IntegrityError",
]
