"""Per-team model checking by reduction to SAT.

Each subformula gets one Boolean variable per assignment over its variables,
meaning "this assignment is in the team handed to the subformula". The
existential parts of team semantics (disjunction splits, tensor-conjunction
supersets, witness sets of quantifiers, the choice in ``ior`` and ``E1``)
become free variables of the CNF; everything else becomes clauses.

Subformulas without tensor conjunction are local, so their teams are taken
over their free variables only. Intuitionistic implication quantifies over
all subteams and is not encoded; callers evaluate it outside the solver.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from itertools import product
from typing import Sequence

from pysat.card import CardEnc, EncType
from pysat.solvers import Solver

from ..dims import SearchBudget
from ..errors import BudgetExceededError, CapExceededError, UnsupportedError
from .naive import literal_holds
from .quantifiers import quantifier_class
from .structures import Structure, decode_row, encode_row
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
    atom_variables,
    free_variables,
    uses_connective,
)

TRUE, FALSE = 1, -1
ROW_CAP = 200_000
SOLVER_NAME = "glucose4"


@lru_cache(maxsize=None)
def is_local(node: Formula) -> bool:
    return not uses_connective(node, "tand")


@lru_cache(maxsize=None)
def is_first_order(node: Formula) -> bool:
    """Built from literals with ``and``, ``or``, ``tand``, ``E`` and ``A``; such formulas are flat."""
    if isinstance(node, (Eq, Rel)):
        return True
    if isinstance(node, Binary):
        return node.op in ("and", "or", "tand") and is_first_order(node.left) and is_first_order(node.right)
    if isinstance(node, Quant):
        return node.kind in ("E", "A") and is_first_order(node.body)
    return False


@lru_cache(maxsize=None)
def _free(node: Formula) -> frozenset[str]:
    return frozenset(free_variables(node))


def classical_holds(model: Structure, node: Formula, row: dict[str, int]) -> bool:
    """Tarskian truth of a first-order formula under one assignment."""
    if isinstance(node, (Eq, Rel)):
        return literal_holds(model, node, row)
    if isinstance(node, Binary):
        left = classical_holds(model, node.left, row)
        if node.op == "or":
            return left or classical_holds(model, node.right, row)
        return left and classical_holds(model, node.right, row)
    (x,) = node.variables
    results = (classical_holds(model, node.body, {**row, x: a}) for a in range(model.size))
    return any(results) if node.kind == "E" else all(results)


class NeedsConcreteEvaluation(UnsupportedError):
    """Raised for intuitionistic implication, which has no encoding here."""


class Encoder:
    def __init__(self, model: Structure):
        self.model = model
        self.size = model.size
        self.top = 1
        self.clauses: list[list[int]] = [[TRUE]]

    # -- clause helpers

    def new(self) -> int:
        self.top += 1
        return self.top

    def add(self, lits: Sequence[int], guard: Sequence[int] = ()) -> None:
        """Add ``lits`` as a clause that only binds while every guard literal is false."""
        if TRUE in lits:
            return
        self.clauses.append([l for l in lits if l != FALSE] + list(guard))

    def any_of(self, lits: Sequence[int]) -> int:
        lits = [l for l in lits if l != FALSE]
        if TRUE in lits:
            return TRUE
        if not lits:
            return FALSE
        if len(set(lits)) == 1:
            return lits[0]
        out = self.new()
        self.clauses.append([-out] + lits)
        for l in lits:
            self.clauses.append([-l, out])
        return out

    def both(self, a: int, b: int) -> int:
        if FALSE in (a, b):
            return FALSE
        if a == TRUE:
            return b
        if b == TRUE or a == b:
            return a
        out = self.new()
        self.clauses += [[-out, a], [-out, b], [out, -a, -b]]
        return out

    def xor(self, a: int, b: int) -> int:
        if a == FALSE:
            return b
        if b == FALSE:
            return a
        out = self.new()
        self.clauses += [[-out, a, b], [-out, -a, -b], [out, -a, b], [out, a, -b]]
        return out

    # -- teams

    def rows(self, names: Sequence[str]) -> int:
        count = self.size ** len(names)
        if count > ROW_CAP:
            raise CapExceededError(f"{count} assignments exceed the encoder cap of {ROW_CAP}")
        return count

    def project(self, team: list[int], names: tuple[str, ...], target: tuple[str, ...]) -> list[int]:
        if names == target:
            return team
        idx = [names.index(v) for v in target]
        groups: list[list[int]] = [[] for _ in range(self.rows(target))]
        width = len(names)
        for i, lit in enumerate(team):
            if lit == FALSE:
                continue
            row = decode_row(i, self.size, width)
            groups[encode_row((row[j] for j in idx), self.size)].append(lit)
        return [self.any_of(g) for g in groups]

    def child_names(self, node: Formula, scope: tuple[str, ...]) -> tuple[str, ...]:
        if is_local(node):
            free = _free(node)
            return tuple(v for v in scope if v in free)
        return scope

    def descend(self, node, names, team, guard, scope) -> None:
        target = self.child_names(node, scope)
        self.encode(node, target, self.project(team, names, target), guard, scope)

    # -- formulas

    def encode(self, node: Formula, names: tuple[str, ...], team: list[int], guard: tuple[int, ...], scope: tuple[str, ...]) -> None:
        if is_first_order(node):
            for i, lit in enumerate(team):
                if lit != FALSE:
                    row = dict(zip(names, decode_row(i, self.size, len(names))))
                    if not classical_holds(self.model, node, row):
                        self.add([-lit], guard)
        elif isinstance(node, Binary):
            self._binary(node, names, team, guard, scope)
        elif isinstance(node, Quant):
            self._quant(node, names, team, guard, scope)
        else:
            self._atom(node, names, team, guard)

    def _binary(self, node: Binary, names, team, guard, scope) -> None:
        op = node.op
        if op == "and":
            self.descend(node.left, names, team, guard, scope)
            self.descend(node.right, names, team, guard, scope)
        elif op == "ior":
            pick = self.new()
            self.descend(node.left, names, team, guard + (-pick,), scope)
            self.descend(node.right, names, team, guard + (pick,), scope)
        elif op == "or":
            left, right = [], []
            for lit in team:
                if lit == FALSE:
                    left.append(FALSE)
                    right.append(FALSE)
                    continue
                l, r = self.new(), self.new()
                self.clauses += [[-lit, l, r], [-l, lit], [-r, lit]]
                left.append(l)
                right.append(r)
            self.descend(node.left, names, left, guard, scope)
            self.descend(node.right, names, right, guard, scope)
        elif op == "tand":
            left, right = [], []
            for lit in team:
                u, v = self.new(), self.new()
                if lit == FALSE:
                    self.clauses.append([-u, -v])
                else:
                    self.clauses += [[-lit, u], [-lit, v], [lit, -u, -v]]
                left.append(u)
                right.append(v)
            self.descend(node.left, names, left, guard, scope)
            self.descend(node.right, names, right, guard, scope)
        else:
            raise NeedsConcreteEvaluation("intuitionistic implication is evaluated outside the solver")

    def _quant(self, node: Quant, names, team, guard, scope) -> None:
        size = self.size
        kind, bound = node.kind, node.variables
        if kind == "d1":
            at = names.index(bound[0])
            for a in range(size):
                part = [lit if decode_row(i, size, len(names))[at] == a else FALSE for i, lit in enumerate(team)]
                self.descend(node.body, names, part, guard, scope)
            return
        inner_scope = scope + tuple(v for v in bound if v not in scope)
        inner = names + tuple(v for v in bound if v not in names)
        slots = [inner.index(v) for v in bound]
        values = list(product(range(size), repeat=len(bound)))
        self.rows(inner)

        def spread(choose) -> list[int]:
            """Body team from a choice literal for each (row, value tuple)."""
            groups: list[list[int]] = [[] for _ in range(size ** len(inner))]
            for i, lit in enumerate(team):
                if lit == FALSE:
                    continue
                base = list(decode_row(i, size, len(names))) + [0] * (len(inner) - len(names))
                for b in values:
                    c = choose(i, lit, b)
                    if c == FALSE:
                        continue
                    row = list(base)
                    for slot, v in zip(slots, b):
                        row[slot] = v
                    groups[encode_row(row, size)].append(c)
            return [self.any_of(g) for g in groups]

        if kind == "A":
            self.descend(node.body, inner, spread(lambda i, lit, b: lit), guard, inner_scope)
        elif kind == "A1":
            for fixed in values:
                body = spread(lambda i, lit, b: lit if b == fixed else FALSE)
                self.descend(node.body, inner, body, guard, inner_scope)
        elif kind == "E1":
            selector = {b: self.new() for b in values}
            self.clauses.append(list(selector.values()))
            for b1, b2 in _pairs(values):
                self.clauses.append([-selector[b1], -selector[b2]])
            body = spread(lambda i, lit, b: self.both(lit, selector[b]))
            self.descend(node.body, inner, body, guard, inner_scope)
        else:
            qclass = quantifier_class(node.qclass) if kind == "Q" else None
            if qclass is not None and qclass.name == "forall":
                self.descend(node.body, inner, spread(lambda i, lit, b: lit), guard, inner_scope)
                return
            choice: dict[tuple[int, tuple[int, ...]], int] = {}
            for i, lit in enumerate(team):
                if lit == FALSE:
                    continue
                cs = []
                for b in values:
                    c = self.new()
                    self.clauses.append([-c, lit])
                    choice[i, b] = c
                    cs.append(c)
                if qclass is None or qclass.name == "exists":
                    self.add([-lit] + cs, guard)
                else:
                    self._class_constraint(qclass, len(bound), lit, cs, guard)
            self.descend(node.body, inner, spread(lambda i, lit, b: choice[i, b]), guard, inner_scope)

    def _class_constraint(self, qclass, r: int, lit: int, cs: list[int], guard) -> None:
        cells = len(cs)
        if cells > 16:
            raise CapExceededError(f"class constraints over {cells} cells are not encoded")
        for relation in range(1 << cells):
            if qclass.contains(self.size, r, relation):
                continue
            clause = [-lit]
            for j, c in enumerate(cs):
                clause.append(-c if relation >> j & 1 else c)
            self.add(clause, guard)

    def _atom(self, node: Formula, names, team, guard) -> None:
        size = self.size
        local = atom_variables(node)
        proj = self.project(team, names, local)
        if isinstance(node, NonEmpty):
            self.add([proj[0]], guard)
            return
        rows = [dict(zip(local, decode_row(i, size, len(local)))) for i in range(len(proj))]

        def key(i: int, vs) -> tuple[int, ...]:
            return tuple(rows[i][v] for v in vs)

        present = [i for i, lit in enumerate(proj) if lit != FALSE]
        if isinstance(node, (Dep, Const)):
            same = node.determiners if isinstance(node, Dep) else ()
            target = (node.target,) if isinstance(node, Dep) else node.args
            for a, b in _pairs(present):
                if key(a, same) == key(b, same) and key(a, target) != key(b, target):
                    self.add([-proj[a], -proj[b]], guard)
        elif isinstance(node, Exc):
            for a in present:
                for b in present:
                    if key(a, node.left) == key(b, node.right):
                        self.add([-proj[a], -proj[b]], guard)
        elif isinstance(node, Inc):
            by_right: dict[tuple, list[int]] = {}
            for b in present:
                by_right.setdefault(key(b, node.right), []).append(proj[b])
            for a in present:
                self.add([-proj[a]] + by_right.get(key(a, node.left), []), guard)
        elif isinstance(node, Ano):
            for a in present:
                others = [proj[b] for b in present
                          if key(b, node.left) == key(a, node.left) and rows[b][node.target] != rows[a][node.target]]
                self.add([-proj[a]] + others, guard)
        elif isinstance(node, Ind):
            by_zxy = {(key(c, node.condition), key(c, node.left), key(c, node.right)): [] for c in present}
            for c in present:
                by_zxy[key(c, node.condition), key(c, node.left), key(c, node.right)].append(proj[c])
            for a in present:
                for b in present:
                    z = key(a, node.condition)
                    if z != key(b, node.condition):
                        continue
                    witnesses = by_zxy.get((z, key(a, node.left), key(b, node.right)), [])
                    self.add([-proj[a], -proj[b]] + witnesses, guard)
        elif isinstance(node, Even):
            parity = FALSE
            for i in present:
                parity = self.xor(parity, proj[i])
            if parity != FALSE:
                self.add([-parity], guard)
        elif isinstance(node, Half):
            bound = size ** len(node.args) // 2
            lits = [proj[i] for i in present]
            if TRUE in lits:
                bound -= lits.count(TRUE)
                lits = [l for l in lits if l != TRUE]
            if bound < 0:
                self.add([], guard)
            elif len(lits) > bound:
                card = CardEnc.atmost(lits=lits, bound=bound, top_id=self.top, encoding=EncType.seqcounter)
                self.top = max(self.top, card.nv)
                for clause in card.clauses:
                    self.add(clause, guard)
        else:
            raise UnsupportedError(f"no encoding for {node!r}")


def _pairs(items):
    items = list(items)
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            yield a, b


class SatChecker:
    """Caches one solver per (formula, context); teams are passed as assumptions."""

    def __init__(self, model: Structure, budget: SearchBudget | None = None):
        self.model = model
        self.budget = budget or SearchBudget.default()
        self._cache: dict[tuple, tuple[Solver, tuple[str, ...], list[int]]] = {}

    def _prepare(self, node: Formula, ctx: tuple[str, ...]):
        key = (node, ctx)
        if key not in self._cache:
            enc = Encoder(self.model)
            names = enc.child_names(node, ctx)
            team = [enc.new() for _ in range(enc.rows(names))]
            enc.encode(node, names, team, (), ctx)
            solver = Solver(name=SOLVER_NAME, bootstrap_with=enc.clauses)
            self._cache[key] = (solver, names, team)
        return self._cache[key]

    def satisfies(self, node: Formula, ctx: tuple[str, ...], rows) -> bool:
        ctx = tuple(ctx)
        solver, names, team = self._prepare(node, ctx)
        idx = [ctx.index(v) for v in names]
        present = {encode_row((row[j] for j in idx), self.model.size) for row in rows}
        assumptions = [lit if i in present else -lit for i, lit in enumerate(team)]
        timer = threading.Timer(self.budget.wallClock, solver.interrupt)
        timer.start()
        try:
            verdict = solver.solve_limited(assumptions=assumptions, expect_interrupt=True)
        finally:
            timer.cancel()
        if verdict is None:
            solver.clear_interrupt()
            raise BudgetExceededError("SAT search exceeded its wall-clock budget")
        return bool(verdict)

    def close(self) -> None:
        for solver, _, _ in self._cache.values():
            solver.delete()
        self._cache.clear()
