"""Verification batteries: computed values against closed forms or a second oracle.

Each battery yields ``Case`` records; the command line prints them and the
acceptance tests assert on them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .atomcat import RELATION_FAMILIES, AtomSpec, closed_form_dims, gen_family, relation_closed_form, relation_family
from .dims import SearchBudget, all_dimensions, cylindrical_dimension, dual_upper_dimension, upper_dimension
from .dnfbridge import BoolFunc, boolfunc_to_family, minimal_dnf_length
from .errors import TeamDimError
from .kripke import apply_kripke, catalog, check_star_flat, check_star_sharp, check_union_lemma, random_local_relation
from .setfam import BaseSet, Interval, Family
from .tensor import ALL_OPS, tensor_apply, tensor_interval_apply


@dataclass(frozen=True)
class Case:
    name: str
    expected: str
    computed: str
    ok: bool
    status: str = "exact"

    def fields(self) -> dict[str, str]:
        return {
            "case": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
            "result": "PASS" if self.ok else "FAIL",
        }


def _triple(dd, ddd, cd) -> str:
    return f"dd:{dd},ddd:{ddd},cd:{cd}"


def _dims_case(name: str, fam: Family, expected, budget: SearchBudget | None) -> Case:
    dd, ddd, cd = all_dimensions(fam, budget)
    exact = dd.exact and ddd.exact and cd.exact
    return Case(
        name,
        _triple(expected.dd, expected.ddd, expected.cd),
        _triple(dd.value, ddd.value, cd.value),
        exact and expected.matches(dd.value, ddd.value, cd.value),
        "exact" if exact else "upperBoundBudget",
    )


def relation_family_cases(l: int, n: int, budget: SearchBudget | None = None) -> Iterator[Case]:
    """The five relation families over an l-set and an n-set against their closed forms."""
    for name in RELATION_FAMILIES:
        label = f"{name}(l={l},n={n})"
        try:
            fam = relation_family(name, l, n)
        except TeamDimError as exc:
            yield Case(label, "-", str(exc), False, "error")
            continue
        yield _dims_case(label, fam, relation_closed_form(name, l, n), budget)


def atom_case(spec: AtomSpec, budget: SearchBudget | None = None) -> Case:
    label = f"{spec.kind}(n={spec.n},m={spec.m},k={spec.k},s={spec.s})"
    try:
        fam = gen_family(spec)
    except TeamDimError as exc:
        return Case(label, "-", str(exc), False, "error")
    return _dims_case(label, fam, closed_form_dims(spec), budget)


def translation_cases(
    n: int, samples: int = 20, seed: int = 0, budget: SearchBudget | None = None
) -> Iterator[Case]:
    """Atom definitions: full family equality at n=2, random teams at larger n."""
    from .teamlogic.semantics import TeamEvaluator, team_family
    from .teamlogic.structures import Structure, all_rows
    from .teamlogic.translations import counting_catalog, single_value_catalog, translation_catalog

    model = Structure.bare(n)
    rng = random.Random(seed)
    for tr in translation_catalog() + single_value_catalog() + counting_catalog():
        try:
            if n == 2:
                left = team_family(model, tr.target, tr.context, budget=budget)
                right = team_family(model, tr.definition, tr.context, budget=budget)
                yield Case(tr.name, f"members={len(left)}", f"members={len(right)}", left == right)
                continue
            evaluator = TeamEvaluator(model, budget)
            rows = all_rows(n, len(tr.context))
            agree = 0
            try:
                for _ in range(samples):
                    density = rng.choice((0.2, 0.5, 0.8))
                    team = [r for r in rows if rng.random() < density]
                    agree += evaluator.satisfies(tr.target, tr.context, team) == evaluator.satisfies(
                        tr.definition, tr.context, team
                    )
            finally:
                evaluator.close()
            yield Case(tr.name, f"agree={samples}/{samples}", f"agree={agree}/{samples}", agree == samples)
        except TeamDimError as exc:
            yield Case(tr.name, "-", str(exc), False, "error")


def random_interval(rng: random.Random, base: BaseSet) -> Interval:
    lower = rng.getrandbits(base.size) if base.size else 0
    upper = lower | (rng.getrandbits(base.size) if base.size else 0)
    return Interval(lower, upper)


def operator_cases(samples: int = 1000, max_base: int = 6, seed: int = 0) -> Iterator[Case]:
    """Tensor operators on intervals against the Kleene closed form."""
    rng = random.Random(seed)
    for i in range(samples):
        base = BaseSet(rng.randint(1, max_base))
        operation = rng.choice(ALL_OPS)
        first, second = random_interval(rng, base), random_interval(rng, base)
        brute = tensor_apply(operation, Family(base, first.members()), Family(base, second.members()))
        closed = tensor_interval_apply(operation, first, second, base)
        ok = brute == Family(base, closed.members())
        yield Case(
            f"op{operation.code}#{i}",
            f"[{closed.lower},{closed.upper}]",
            f"members={len(brute)}",
            ok,
        )


def random_boolfunc(rng: random.Random, var_count: int) -> BoolFunc:
    density = rng.random()
    return BoolFunc(var_count, tuple(int(rng.random() < density) for _ in range(1 << var_count)))


def dnf_cases(n: int, samples: int, seed: int = 0, budget: SearchBudget | None = None) -> Iterator[Case]:
    """Minimal DNF length against the cylindrical dimension of the same family."""
    rng = random.Random(seed)
    for i in range(samples):
        f = random_boolfunc(rng, n)
        dnf = minimal_dnf_length(f, budget)
        cd = cylindrical_dimension(boolfunc_to_family(f), budget)
        exact = dnf.exact and cd.exact
        yield Case(
            f"dnf(n={n})#{i}",
            f"cd={cd.value}",
            f"dnf={dnf.value}",
            exact and dnf.value == cd.value,
            "exact" if exact else "upperBoundBudget",
        )


def random_family(rng: random.Random, base: BaseSet, max_members: int = 5) -> Family:
    count = rng.randint(1, max_members)
    return Family(base, (rng.getrandbits(base.size) if base.size else 0 for _ in range(count)))


def _random_split(rng: random.Random, fam: Family, parts: int) -> list[Family]:
    buckets: list[list[int]] = [[] for _ in range(parts)]
    for member in fam:
        buckets[rng.randrange(parts)].append(member)
    return [Family(fam.base, b) for b in buckets]


def kripke_cases(samples: int = 100, max_base: int = 4, seed: int = 0) -> Iterator[Case]:
    """Union lemma on the catalog, preservation and product bounds on random local relations."""
    rng = random.Random(seed)
    for size in range(1, max_base + 1):
        for name, rel in catalog(size).items():
            args = [random_family(rng, rel.source) for _ in range(rel.arity)]
            parts = [_random_split(rng, fam, rng.randint(1, 3)) for fam in args]
            ok = check_union_lemma(rel, parts)
            yield Case(f"union[{name},base={size}]", "true", str(ok).lower(), ok)
    for i in range(samples):
        separating = i % 2 == 1
        arity = rng.randint(1, 2)
        rel = random_local_relation(
            rng, arity, rng.randint(1, max_base), rng.randint(1, max_base), separating=separating
        )
        label = f"local{'+sep' if separating else ''}#{i}"
        sharp = check_star_sharp(rel)
        yield Case(f"{label}:star-sharp", "true", str(sharp).lower(), sharp)
        flat = check_star_flat(rel) if separating else None
        if separating:
            yield Case(f"{label}:star-flat", "true", str(flat).lower(), bool(flat))
        args = [random_family(rng, rel.source) for _ in range(arity)]
        image = apply_kripke(rel, *args)
        if not len(image):
            continue
        bounds = [("dd", upper_dimension, sharp)]
        if separating:
            bounds += [("ddd", dual_upper_dimension, flat), ("cd", cylindrical_dimension, sharp and flat)]
        for which, solver, applies in bounds:
            if not applies:
                continue
            product = 1
            for fam in args:
                product *= solver(fam).value
            value = solver(image).value
            yield Case(f"{label}:{which}-product", f"<={product}", str(value), value <= product)
