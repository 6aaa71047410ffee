"""Team satisfaction, definable families and related checks.

``satisfies`` hands implication-free subformulas to the SAT encoder.
Intuitionistic implication quantifies over all subteams, so formulas
containing it are unfolded concretely down to their implication-free parts.
A search node that still contains an implication falls back to the
exhaustive evaluator.
"""

from __future__ import annotations

import time
from itertools import combinations
from typing import Iterable, Literal

from ..dims import SearchBudget, cylindrical_dimension, dual_upper_dimension, upper_dimension
from ..errors import ArityError, BudgetExceededError, TeamDimError, UnsupportedError
from ..setfam import BaseSet, Family
from .compose import Composer
from .naive import NaiveEvaluator
from .satenc import SatChecker, is_local
from .structures import Structure, Team, VarContext, all_rows, check_cap, encode_row
from .syntax import Binary, Formula, Quant, free_variables, relation_symbols, subformulas, uses_connective


class UnboundVariableError(TeamDimError):
    pass


def check_formula(model: Structure, node: Formula, ctx: Iterable[str]) -> None:
    """Free variables must be in the context and relation symbols interpreted with matching arity."""
    ctx = tuple(ctx)
    missing = [v for v in free_variables(node) if v not in ctx]
    if missing:
        raise UnboundVariableError(f"free variables {missing} are not in the context {ctx}")
    vocab = model.vocabulary
    for name, arity in relation_symbols(node).items():
        if name not in vocab:
            raise UnsupportedError(f"relation {name!r} is not interpreted in the structure")
        if vocab[name] != arity:
            raise ArityError(f"{name} has arity {vocab[name]} in the structure but {arity} in the formula")


def _is_flat(node: Formula) -> bool:
    """No quantifier and no splitting connective: direct checking is linear in the team."""
    return all(
        not isinstance(f, Quant) and not (isinstance(f, Binary) and f.op != "and")
        for f in subformulas(node)
    )


class TeamEvaluator:
    def __init__(self, model: Structure, budget: SearchBudget | None = None):
        self.model = model
        self.budget = budget or SearchBudget.default()
        self.sat = SatChecker(model, self.budget)
        self.naive = NaiveEvaluator(model, self.budget)
        self.deadline = time.monotonic() + self.budget.wallClock

    def satisfies(self, node: Formula, ctx: tuple[str, ...], rows: Iterable[tuple[int, ...]]) -> bool:
        return self._eval(node, tuple(ctx), frozenset(rows))

    def _eval(self, node: Formula, ctx: tuple[str, ...], team: frozenset) -> bool:
        if _is_flat(node):
            return self.naive.check(node, ctx, team)
        if not uses_connective(node, "implies"):
            return self.sat.satisfies(node, ctx, team)
        if is_local(node):
            keep = [i for i, v in enumerate(ctx) if v in set(free_variables(node))]
            if len(keep) < len(ctx):
                ctx = tuple(ctx[i] for i in keep)
                team = frozenset(tuple(row[i] for i in keep) for row in team)
        if isinstance(node, Binary):
            if node.op == "and":
                return self._eval(node.left, ctx, team) and self._eval(node.right, ctx, team)
            if node.op == "ior":
                return self._eval(node.left, ctx, team) or self._eval(node.right, ctx, team)
            if node.op == "implies":
                rows = sorted(team)
                for k in range(len(rows) + 1):
                    for sub in combinations(rows, k):
                        if time.monotonic() > self.deadline:
                            raise BudgetExceededError("subteam enumeration exceeded its budget")
                        sub = frozenset(sub)
                        if self._eval(node.left, ctx, sub) and not self._eval(node.right, ctx, sub):
                            return False
                return True
        if isinstance(node, Quant) and node.kind in ("A", "A1", "E1", "d1"):
            return self._deterministic_quantifier(node, ctx, team)
        return self.naive.check(node, ctx, team)

    def _deterministic_quantifier(self, node: Quant, ctx, team) -> bool:
        size = self.model.size
        (x,) = node.variables
        if node.kind == "d1":
            at = ctx.index(x)
            return all(self._eval(node.body, ctx, frozenset(s for s in team if s[at] == a)) for a in range(size))
        inner = ctx if x in ctx else ctx + (x,)
        at = inner.index(x)

        def put(row, a):
            row = list(row) + [0] * (len(inner) - len(row))
            row[at] = a
            return tuple(row)

        if node.kind == "A":
            return self._eval(node.body, inner, frozenset(put(s, a) for s in team for a in range(size)))
        results = (self._eval(node.body, inner, frozenset(put(s, a) for s in team)) for a in range(size))
        return any(results) if node.kind == "E1" else all(results)

    def close(self) -> None:
        self.sat.close()


def satisfies(model: Structure, team: Team, node: Formula, budget: SearchBudget | None = None) -> bool:
    if team.size != model.size:
        raise ValueError("team and structure have different universes")
    check_formula(model, node, team.context)
    evaluator = TeamEvaluator(model, budget)
    try:
        return evaluator.satisfies(node, team.context.names, team.rows)
    finally:
        evaluator.close()


Method = Literal["per-team", "compose"]


def team_family(
    model: Structure,
    node: Formula,
    ctx: VarContext | Iterable[str],
    method: Method = "per-team",
    budget: SearchBudget | None = None,
) -> Family:
    """All teams over ``ctx`` satisfying ``node``, as a family over ``M^m``."""
    names = tuple(ctx.names if isinstance(ctx, VarContext) else ctx)
    check_formula(model, node, names)
    cells = check_cap(model.size, len(names))
    if method == "compose":
        return Composer(model).family(node, names)
    rows = all_rows(model.size, len(names))
    evaluator = TeamEvaluator(model, budget)
    try:
        members = [
            mask for mask in range(1 << cells)
            if evaluator.satisfies(node, names, (rows[i] for i in range(cells) if mask >> i & 1))
        ]
    finally:
        evaluator.close()
    return Family(BaseSet(cells), members)


def check_formula_locality(
    model: Structure, node: Formula, ctx: VarContext | Iterable[str], budget: SearchBudget | None = None
) -> bool:
    """Whether every team over ``ctx`` agrees with its restriction to the free variables."""
    names = tuple(ctx.names if isinstance(ctx, VarContext) else ctx)
    check_formula(model, node, names)
    cells = check_cap(model.size, len(names))
    free = set(free_variables(node))
    keep = [i for i, v in enumerate(names) if v in free]
    small = tuple(names[i] for i in keep)
    rows = all_rows(model.size, len(names))
    evaluator = TeamEvaluator(model, budget)
    try:
        for mask in range(1 << cells):
            team = [rows[i] for i in range(cells) if mask >> i & 1]
            restricted = {tuple(row[i] for i in keep) for row in team}
            if evaluator.satisfies(node, names, team) != evaluator.satisfies(node, small, restricted):
                return False
    finally:
        evaluator.close()
    return True


def dim_function(
    node: Formula,
    ctx: VarContext | Iterable[str],
    size: int,
    which: Literal["dd", "ddd", "cd"] = "dd",
    budget: SearchBudget | None = None,
) -> int:
    """Dimension of the definable family over the bare structure of the given size.

    Only equality-only formulas are accepted: all structures of one size are
    then isomorphic, so one structure realizes the supremum over models.
    """
    symbols = relation_symbols(node)
    if symbols:
        raise UnsupportedError(
            f"the supremum over structures is not computed for vocabularies with {sorted(symbols)}"
        )
    fam = team_family(Structure.bare(size), node, ctx, budget=budget)
    solver = {"dd": upper_dimension, "ddd": dual_upper_dimension, "cd": cylindrical_dimension}[which]
    result = solver(fam, budget)
    if not result.exact:
        raise BudgetExceededError(f"{which} search stopped at an upper bound of {result.value}")
    return result.value


def team_mask(team: Team) -> int:
    return sum(1 << encode_row(row, team.size) for row in team.rows)
