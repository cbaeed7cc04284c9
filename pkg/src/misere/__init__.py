"""Misere partizan game engine.

Interned game forms, misere outcomes, tipping points, universe membership,
comparison modulo the blocking universe, exhaustive enumeration, and
executable verification suites for the supporting theory.
"""

from .forms import Form, FormId, Interner, ZERO
from .notation import ParseError, parse, print_form
from .outcomes import Outcome, outcome, outcome_geq, strictly_p_free, sum_outcome

__version__ = "0.1.0"

__all__ = [
    "Form",
    "FormId",
    "Interner",
    "ZERO",
    "ParseError",
    "parse",
    "print_form",
    "Outcome",
    "outcome",
    "outcome_geq",
    "strictly_p_free",
    "sum_outcome",
    "__version__",
]
