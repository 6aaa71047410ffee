"""Random formulas for property tests and the consistency battery."""

from __future__ import annotations

import random
from dataclasses import dataclass

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

COMPOSABLE_CONNECTIVES = ("and", "or", "ior", "tand")
COMPOSABLE_QUANTIFIERS = ("E", "A", "Q")
QUANTIFIER_CLASSES = ("exists", "forall", "majority", "even", "atleast2")


@dataclass
class FormulaShape:
    connectives: tuple[str, ...] = COMPOSABLE_CONNECTIVES
    quantifiers: tuple[str, ...] = COMPOSABLE_QUANTIFIERS
    atoms: bool = True
    nonempty: bool = True
    relations: dict[str, int] | None = None
    max_bound: int = 1  # quantified variables on any branch
    fresh_bound: bool = True  # bound names never clash with names in scope


def random_formula(rng: random.Random, names: tuple[str, ...], depth: int, shape: FormulaShape | None = None) -> Formula:
    shape = shape or FormulaShape()
    counter = [0]

    def fresh() -> str:
        counter[0] += 1
        return f"u{counter[0]}"

    def pick_vars(scope, k):
        return tuple(rng.choice(scope) for _ in range(k))

    def leaf(scope: tuple[str, ...]) -> Formula:
        options = ["eq", "neq"]
        if shape.relations:
            options += ["rel", "nrel"]
        if shape.atoms:
            options += ["dep", "const", "exc", "inc", "ano", "ind", "even", "half"]
        if shape.nonempty:
            options.append("ne")
        kind = rng.choice(options)
        if kind in ("eq", "neq"):
            a, b = pick_vars(scope, 2)
            return Eq(a, b, negated=kind == "neq")
        if kind in ("rel", "nrel"):
            name = rng.choice(sorted(shape.relations))
            return Rel(name, pick_vars(scope, shape.relations[name]), negated=kind == "nrel")
        if kind == "ne":
            return NonEmpty()
        if kind == "dep":
            return Dep(pick_vars(scope, rng.randint(0, 1)), rng.choice(scope))
        if kind == "const":
            return Const(pick_vars(scope, 1))
        if kind in ("exc", "inc"):
            k = rng.randint(1, min(2, len(scope)))
            cls = Exc if kind == "exc" else Inc
            return cls(pick_vars(scope, k), pick_vars(scope, k))
        if kind == "ano":
            return Ano(pick_vars(scope, 1), rng.choice(scope))
        if kind == "ind":
            return Ind(pick_vars(scope, 1), pick_vars(scope, rng.randint(0, 1)), pick_vars(scope, 1))
        if kind == "even":
            return Even(pick_vars(scope, rng.randint(1, min(2, len(scope)))))
        return Half(pick_vars(scope, 1))

    def build(scope: tuple[str, ...], left: int, bound: int) -> Formula:
        if left == 0 or rng.random() < 0.25:
            return leaf(scope)
        can_bind = bound < shape.max_bound and shape.quantifiers
        if can_bind and rng.random() < 0.35:
            kind = rng.choice(shape.quantifiers)
            if kind == "d1":
                return Quant("d1", (rng.choice(scope),), build(scope, left - 1, bound))
            var = fresh() if shape.fresh_bound else rng.choice(scope + (fresh(),))
            inner = scope + ((var,) if var not in scope else ())
            body = build(inner, left - 1, bound + 1)
            qclass = rng.choice(QUANTIFIER_CLASSES) if kind == "Q" else None
            return Quant(kind, (var,), body, qclass)
        op = rng.choice(shape.connectives)
        return Binary(op, build(scope, left - 1, bound), build(scope, left - 1, bound))

    return build(tuple(names), depth, 0)
