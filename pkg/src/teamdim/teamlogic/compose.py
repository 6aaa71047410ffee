"""Families of formulas built bottom-up from the family operators.

A family over a context of ``m`` variables is a boolean vector indexed by
team bitmasks (length ``2**(n**m)``). Connectives act on these vectors as
set operators; quantifiers go through the Lindström projection operator.
No team is ever checked against a formula here, which makes this path an
independent oracle for per-team evaluation.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import CapExceededError, UnsupportedError
from ..setfam import BaseSet, Family
from .naive import atom_holds, literal_holds
from .quantifiers import EXISTS, FORALL, QuantifierClass, quantifier_class
from .structures import TEAM_CAP_BITS, Structure, decode_row, encode_row
from .syntax import Binary, Eq, Formula, Quant, Rel, atom_variables

Vector = np.ndarray


def _rows(size: int, width: int) -> int:
    cells = size ** width
    if cells > TEAM_CAP_BITS:
        raise CapExceededError(f"{size}^{width} = {cells} rows exceed the cap of {TEAM_CAP_BITS}")
    return cells


def _teams(cells: int) -> np.ndarray:
    return np.arange(1 << cells, dtype=np.int64)


def _butterfly(values: np.ndarray, cells: int, combine) -> np.ndarray:
    out = values.copy()
    for bit in range(cells):
        view = out.reshape(-1, 2, 1 << bit)
        combine(view[:, 1, :], view[:, 0, :])
    return out


def subset_sums(values: np.ndarray, cells: int) -> np.ndarray:
    """``out[C] = sum of values[D] over D ⊆ C``."""
    return _butterfly(values.astype(np.int64), cells, np.ndarray.__iadd__)


def mobius(values: np.ndarray, cells: int) -> np.ndarray:
    return _butterfly(values.astype(np.int64), cells, np.ndarray.__isub__)


def up_closure(members: Vector, cells: int) -> Vector:
    return _butterfly(members.astype(bool), cells, np.ndarray.__ior__)


def remap_teams(cells: int, target_of_row: list[int]) -> np.ndarray:
    """Image of every team when row ``i`` is sent to row ``target_of_row[i]`` (-1 drops it)."""
    teams = _teams(cells)
    out = np.zeros_like(teams)
    for i, target in enumerate(target_of_row):
        if target >= 0:
            out |= ((teams >> i) & 1) << target
    return out


def tensor_or(a: Vector, b: Vector, cells: int) -> Vector:
    """``{A ∪ B}``: count pairs with union exactly C by zeta and Möbius transforms."""
    pairs = mobius(subset_sums(a, cells) * subset_sums(b, cells), cells)
    return pairs > 0


def tensor_and(a: Vector, b: Vector, cells: int) -> Vector:
    """``{A ∩ B}``, the complement-dual of ``tensor_or``."""
    return tensor_or(a[::-1], b[::-1], cells)[::-1]


def implication(a: Vector, b: Vector, cells: int) -> Vector:
    """Teams none of whose subteams lie in ``a`` but not in ``b``."""
    return ~up_closure(a & ~b, cells)


def lindstrom(qclass: QuantifierClass, body: Vector, size: int, outer_width: int, r: int) -> Vector:
    """Projection operator for quantified variables sitting in the last ``r`` slots."""
    outer_cells = _rows(size, outer_width)
    inner_cells = _rows(size, outer_width + r)
    fiber_cells = size ** r
    table = np.array([qclass.contains(size, r, f) for f in range(1 << fiber_cells)], dtype=bool)
    members = np.flatnonzero(body).astype(np.int64)
    seeds = np.zeros_like(members)
    valid = np.ones(len(members), dtype=bool)
    empty_ok = bool(table[0])
    for a in range(outer_cells):
        fiber = np.zeros_like(members)
        for b in range(fiber_cells):
            fiber |= ((members >> (a + outer_cells * b)) & 1) << b
        nonempty = fiber != 0
        in_class = table[fiber]
        valid &= ~nonempty | in_class
        chosen = nonempty if empty_ok else in_class
        seeds |= chosen.astype(np.int64) << a
    assert inner_cells == outer_cells * fiber_cells
    out = np.zeros(1 << outer_cells, dtype=bool)
    out[seeds[valid]] = True
    return up_closure(out, outer_cells) if empty_ok else out


@lru_cache(maxsize=None)
def _atom_vector(node: Formula, size: int) -> np.ndarray:
    names = atom_variables(node)
    cells = _rows(size, len(names))
    rows = [dict(zip(names, decode_row(i, size, len(names)))) for i in range(cells)]
    out = np.zeros(1 << cells, dtype=bool)
    for team in range(1 << cells):
        out[team] = atom_holds(node, size, (rows[i] for i in range(cells) if team >> i & 1))
    return out


class Composer:
    def __init__(self, model: Structure):
        self.model = model
        self.size = model.size

    def family(self, node: Formula, ctx: tuple[str, ...]) -> Family:
        vec = self.vector(node, tuple(ctx))
        cells = self.size ** len(ctx)
        return Family(BaseSet(cells), (int(i) for i in np.flatnonzero(vec)))

    def vector(self, node: Formula, ctx: tuple[str, ...]) -> Vector:
        size = self.size
        cells = _rows(size, len(ctx))
        if isinstance(node, (Eq, Rel)):
            good = 0
            for i in range(cells):
                if literal_holds(self.model, node, dict(zip(ctx, decode_row(i, size, len(ctx))))):
                    good |= 1 << i
            return (_teams(cells) & ~good) == 0
        if isinstance(node, Binary):
            left = self.vector(node.left, ctx)
            right = self.vector(node.right, ctx)
            if node.op == "and":
                return left & right
            if node.op == "ior":
                return left | right
            if node.op == "or":
                return tensor_or(left, right, cells)
            if node.op == "tand":
                return tensor_and(left, right, cells)
            return implication(left, right, cells)
        if isinstance(node, Quant):
            return self._quant(node, ctx, cells)
        names = atom_variables(node)
        missing = [v for v in names if v not in ctx]
        if missing:
            raise UnsupportedError(f"variables {missing} are not in the context")
        idx = [ctx.index(v) for v in names]
        targets = [encode_row((decode_row(i, size, len(ctx))[j] for j in idx), size) for i in range(cells)]
        return _atom_vector(node, size)[remap_teams(cells, targets)]

    def _quant(self, node: Quant, ctx: tuple[str, ...], cells: int) -> Vector:
        size = self.size
        kind = node.kind
        if kind == "d1":
            at = ctx.index(node.variables[0])
            body = self.vector(node.body, ctx)
            out = np.ones(1 << cells, dtype=bool)
            teams = _teams(cells)
            for a in range(size):
                keep = sum(1 << i for i in range(cells) if decode_row(i, size, len(ctx))[at] == a)
                out &= body[teams & keep]
            return out
        clash = [v for v in node.variables if v in ctx]
        if clash:
            raise UnsupportedError(f"bound variables {clash} shadow context variables; rename them")
        inner = ctx + node.variables
        body = self.vector(node.body, inner)
        r = len(node.variables)
        if kind in ("E1", "A1"):
            combine = np.logical_or if kind == "E1" else np.logical_and
            out = np.zeros(1 << cells, dtype=bool) if kind == "E1" else np.ones(1 << cells, dtype=bool)
            for b in range(size ** r):
                image = remap_teams(cells, [i + cells * b for i in range(cells)])
                out = combine(out, body[image])
            return out
        qclass = {"E": EXISTS, "A": FORALL}.get(kind) or quantifier_class(node.qclass)
        return lindstrom(qclass, body, size, len(ctx), r)


def composed_family(model: Structure, node: Formula, ctx) -> Family:
    return Composer(model).family(node, tuple(ctx))
