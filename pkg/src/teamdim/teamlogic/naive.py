"""Literal, exhaustive team semantics.

Every clause is checked by brute force straight from its definition: all
splits for disjunctions, all choice functions for quantifiers, all subteams
for implication. It is exponential and meant for tiny teams and as the
reference oracle for the faster evaluators.
"""

from __future__ import annotations

import time
from itertools import combinations, product
from typing import Iterable, Iterator

from ..dims import SearchBudget
from ..errors import BudgetExceededError, UnsupportedError
from .quantifiers import quantifier_class
from .structures import Structure, encode_row
from .syntax import (
    Ano,
    Binary,
    Const,
    Dep,
    Eq,
    Even,
    Exc,
    Formula,
    Half,
    Inc,
    Ind,
    NonEmpty,
    Quant,
    Rel,
)

Rows = frozenset  # of tuples over the current context


def _subsets(items: list) -> Iterator[frozenset]:
    for k in range(len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def literal_holds(model: Structure, node: Formula, row: dict[str, int]) -> bool:
    if isinstance(node, Eq):
        value = row[node.left] == row[node.right]
    else:
        value = model.holds(node.name, tuple(row[v] for v in node.args))
    return value != node.negated


def atom_holds(node: Formula, size: int, values: Iterable[dict[str, int]]) -> bool:
    """Team satisfaction of a dependency atom; ``values`` are the team's assignments."""
    team = list(values)

    def pick(s: dict[str, int], names) -> tuple[int, ...]:
        return tuple(s[v] for v in names)

    if isinstance(node, NonEmpty):
        return bool(team)
    if isinstance(node, Dep):
        seen: dict[tuple, int] = {}
        for s in team:
            key = pick(s, node.determiners)
            if seen.setdefault(key, s[node.target]) != s[node.target]:
                return False
        return True
    if isinstance(node, Const):
        return len({pick(s, node.args) for s in team}) <= 1
    if isinstance(node, Exc):
        lefts = {pick(s, node.left) for s in team}
        rights = {pick(s, node.right) for s in team}
        return not lefts & rights
    if isinstance(node, Inc):
        rights = {pick(s, node.right) for s in team}
        return all(pick(s, node.left) in rights for s in team)
    if isinstance(node, Ano):
        seen_y: dict[tuple, set[int]] = {}
        for s in team:
            seen_y.setdefault(pick(s, node.left), set()).add(s[node.target])
        return all(len(ys) >= 2 for ys in seen_y.values())
    if isinstance(node, Ind):
        triples = {(pick(s, node.condition), pick(s, node.left), pick(s, node.right)) for s in team}
        for z, x, _ in triples:
            for z2, _, y in triples:
                if z == z2 and (z, x, y) not in triples:
                    return False
        return True
    if isinstance(node, Even):
        return len({pick(s, node.args) for s in team}) % 2 == 0
    if isinstance(node, Half):
        return 2 * len({pick(s, node.args) for s in team}) <= size ** len(node.args)
    raise TypeError(f"not an atom: {node!r}")


class NaiveEvaluator:
    def __init__(self, model: Structure, budget: SearchBudget | None = None):
        self.model = model
        self.size = model.size
        self.budget = budget or SearchBudget.default()
        self.deadline = time.monotonic() + self.budget.wallClock
        self.steps = 0
        self.memo: dict[tuple, bool] = {}

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget.maxNodes or time.monotonic() > self.deadline:
            raise BudgetExceededError("exhaustive team search exceeded its budget")

    def satisfies(self, node: Formula, ctx: tuple[str, ...], rows: Iterable[tuple[int, ...]]) -> bool:
        return self.check(node, tuple(ctx), frozenset(rows))

    def check(self, node: Formula, ctx: tuple[str, ...], team: Rows) -> bool:
        key = (node, ctx, team)
        if key not in self.memo:
            self._tick()
            self.memo[key] = self._check(node, ctx, team)
        return self.memo[key]

    # -- helpers

    def _dicts(self, ctx, team):
        return [dict(zip(ctx, row)) for row in team]

    def _extend(self, ctx: tuple[str, ...], names: tuple[str, ...]) -> tuple[tuple[str, ...], list[int]]:
        """Context after binding ``names`` and the slot of each bound name."""
        new_ctx = ctx + tuple(v for v in names if v not in ctx)
        return new_ctx, [new_ctx.index(v) for v in names]

    def _assign(self, row: tuple[int, ...], width: int, slots: list[int], values: tuple[int, ...]) -> tuple[int, ...]:
        out = list(row) + [0] * (width - len(row))
        for slot, v in zip(slots, values):
            out[slot] = v
        return tuple(out)

    # -- semantics

    def _check(self, node: Formula, ctx: tuple[str, ...], team: Rows) -> bool:
        size = self.size
        if isinstance(node, (Eq, Rel)):
            return all(literal_holds(self.model, node, s) for s in self._dicts(ctx, team))
        if isinstance(node, Binary):
            return self._binary(node, ctx, team)
        if isinstance(node, Quant):
            return self._quant(node, ctx, team)
        return atom_holds(node, size, self._dicts(ctx, team))

    def _binary(self, node: Binary, ctx, team: Rows) -> bool:
        left, right, op = node.left, node.right, node.op
        if op == "and":
            return self.check(left, ctx, team) and self.check(right, ctx, team)
        if op == "ior":
            return self.check(left, ctx, team) or self.check(right, ctx, team)
        if op == "implies":
            return all(
                not self.check(left, ctx, sub) or self.check(right, ctx, sub)
                for sub in _subsets(sorted(team))
            )
        if op == "or":
            members = sorted(team)
            for first in _subsets(members):
                if not self.check(left, ctx, first):
                    continue
                for extra in _subsets(sorted(first)):
                    if self.check(right, ctx, (team - first) | extra):
                        return True
            return False
        if op == "tand":
            # T = U ∩ V with U ⊇ T and V ⊇ T, both ranging over all teams of the context.
            outside = sorted(set(product(range(self.size), repeat=len(ctx))) - team)
            for more_u in _subsets(outside):
                if not self.check(left, ctx, team | more_u):
                    continue
                free = sorted(set(outside) - more_u)
                for more_v in _subsets(free):
                    if self.check(right, ctx, team | more_v):
                        return True
            return False
        raise UnsupportedError(f"unknown connective {op}")

    def _quant(self, node: Quant, ctx, team: Rows) -> bool:
        size = self.size
        kind, body = node.kind, node.body
        if kind == "d1":
            (x,) = node.variables
            at = ctx.index(x)
            return all(self.check(body, ctx, frozenset(s for s in team if s[at] == a)) for a in range(size))
        new_ctx, slots = self._extend(ctx, node.variables)
        width = len(new_ctx)
        rows = sorted(team)
        r = len(node.variables)
        tuples = list(product(range(size), repeat=r))

        def apply(choice) -> Rows:
            return frozenset(
                self._assign(s, width, slots, values)
                for s, chosen in zip(rows, choice)
                for values in chosen
            )

        if kind == "A":
            return self.check(body, new_ctx, apply([tuples] * len(rows)))
        if kind in ("E1", "A1"):
            results = (self.check(body, new_ctx, apply([[t]] * len(rows))) for t in tuples)
            return any(results) if kind == "E1" else all(results)
        if kind == "E":
            options = [list(t) for t in _subsets(tuples) if t]
        else:
            qclass = quantifier_class(node.qclass)
            options = []
            for picked in _subsets(tuples):
                mask = 0
                for t in picked:
                    mask |= 1 << encode_row(t, size)
                if qclass.contains(size, r, mask):
                    options.append(sorted(picked))
        tried: set[Rows] = set()
        for choice in product(options, repeat=len(rows)):
            result = apply(choice)
            if result in tried:
                continue
            tried.add(result)
            if self.check(body, new_ctx, result):
                return True
        return False
