"""Upper, dual upper and cylindrical dimensions of set families, with team logic on top."""

from .dims import (
    CoverResult,
    SearchBudget,
    all_dimensions,
    cylindrical_dimension,
    dual_upper_dimension,
    upper_dimension,
)
from .errors import (
    ArityError,
    BudgetExceededError,
    CapExceededError,
    ParseError,
    TeamDimError,
    UnsupportedError,
)
from .setfam import BaseSet, Family, Interval, parse_family

__all__ = [
    "ArityError", "BaseSet", "BudgetExceededError", "CapExceededError", "CoverResult", "Family",
    "Interval", "ParseError", "SearchBudget", "TeamDimError", "UnsupportedError", "all_dimensions",
    "cylindrical_dimension", "dual_upper_dimension", "parse_family", "upper_dimension",
]
