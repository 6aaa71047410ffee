"""First-order team logic: syntax, parsing, evaluation and definable families."""

from .compose import Composer, composed_family
from .parser import parse_formula
from .quantifiers import (
    CATALOG,
    EVEN,
    EXISTS,
    FORALL,
    MAJORITY,
    QuantifierClass,
    at_least,
    lindstrom_apply,
    projection,
    proper_projection,
    quantifier_class,
    shuffle,
    unshuffle,
)
from .semantics import (
    TeamEvaluator,
    UnboundVariableError,
    check_formula_locality,
    dim_function,
    satisfies,
    team_family,
)
from .structures import (
    Structure,
    Team,
    VarContext,
    context,
    format_structure,
    format_team,
    parse_structure,
    parse_team,
)
from .syntax import Formula, free_variables

__all__ = [
    "CATALOG", "EVEN", "EXISTS", "FORALL", "MAJORITY", "Composer", "Formula", "QuantifierClass",
    "Structure", "Team", "TeamEvaluator", "UnboundVariableError", "VarContext", "at_least",
    "check_formula_locality", "composed_family", "context", "dim_function", "format_structure",
    "format_team", "free_variables", "lindstrom_apply", "parse_formula", "parse_structure",
    "parse_team", "projection", "proper_projection", "quantifier_class", "satisfies", "shuffle",
    "team_family", "unshuffle",
]
