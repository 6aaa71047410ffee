"""Generators for the concrete families studied in the dimension tables, and
the closed-form values of their three dimensions.

Product bases ``X × Y (× Z)`` are indexed mixed-radix with the last
coordinate varying fastest, so ``(x, y)`` is element ``x * |Y| + y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Iterator, Union

from .errors import CapExceededError
from .setfam import BaseSet, Family, popcount

GEN_CAP_BITS = 20

KINDS = ("dep", "exc", "inc", "ano", "pureInd", "condInd", "even", "half", "ne")


# ---------------------------------------------------------------------------
# The five families over X × Y (or X × X)


def _pair_index(x: int, y: int, width: int) -> int:
    return x * width + y


def _check_cap(size: int) -> None:
    if size > GEN_CAP_BITS:
        raise CapExceededError(f"base of {size} elements exceeds the cap of {GEN_CAP_BITS}")


def functions_family(l: int, n: int) -> Family:
    """Partial functions from an l-set to an n-set (the family F)."""
    _check_cap(l * n)
    members = []
    for choice in product(range(-1, n), repeat=l):
        mask = 0
        for x, y in enumerate(choice):
            if y >= 0:
                mask |= 1 << _pair_index(x, y, n)
        members.append(mask)
    return Family(BaseSet(l * n), members)


def _relations(l: int) -> Iterator[tuple[int, int, int]]:
    """Every relation on an l-set as (mask, domain mask, range mask)."""
    _check_cap(l * l)
    for mask in range(1 << (l * l)):
        dom = rng = 0
        for x in range(l):
            row = (mask >> (x * l)) & ((1 << l) - 1)
            if row:
                dom |= 1 << x
                rng |= row
        yield mask, dom, rng


def exclusion_family(l: int) -> Family:
    """Relations on an l-set whose domain and range are disjoint (the family X)."""
    return Family(BaseSet(l * l), (m for m, d, r in _relations(l) if d & r == 0))


def inclusion_family(l: int) -> Family:
    """Relations on an l-set whose domain is contained in the range."""
    return Family(BaseSet(l * l), (m for m, d, r in _relations(l) if d & ~r == 0))


def anonymity_family(l: int, n: int) -> Family:
    """Relations X × Y in which every domain point has at least two images."""
    _check_cap(l * n)
    rows = [r for r in range(1 << n) if r == 0 or popcount(r) >= 2]
    members = []
    for choice in product(rows, repeat=l):
        mask = 0
        for x, row in enumerate(choice):
            mask |= row << (x * n)
        members.append(mask)
    return Family(BaseSet(l * n), members)


def _rectangle(a: int, b: int, l: int, n: int) -> int:
    mask = 0
    for x in range(l):
        if a >> x & 1:
            mask |= b << (x * n)
    return mask


def product_family(l: int, n: int) -> Family:
    """All rectangles A × B with A ⊆ X, B ⊆ Y (the family I-perp)."""
    _check_cap(l * n)
    members = {_rectangle(a, b, l, n) for a in range(1 << l) for b in range(1 << n)}
    return Family(BaseSet(l * n), members)


def layered_product_family(l: int, n: int, s: int) -> Family:
    """Unions over c in Z of A_c × B_c × {c}, with |Z| = s."""
    _check_cap(l * n * s)
    layer_masks = []
    for a in range(1 << l):
        for b in range(1 << n):
            rect = _rectangle(a, b, l, n)
            layer_masks.append(rect)
    layer_masks = sorted(set(layer_masks))
    members = set()
    for choice in product(layer_masks, repeat=s):
        mask = 0
        for c, rect in enumerate(choice):
            # element (x, y) of the rectangle becomes (x, y, c) = (x*n + y)*s + c
            for e in range(l * n):
                if rect >> e & 1:
                    mask |= 1 << (e * s + c)
        members.add(mask)
    return Family(BaseSet(l * n * s), members)


def even_family(size: int) -> Family:
    _check_cap(size)
    return Family(BaseSet(size), (m for m in range(1 << size) if popcount(m) % 2 == 0))


def half_family(size: int) -> Family:
    _check_cap(size)
    return Family(BaseSet(size), (m for m in range(1 << size) if 2 * popcount(m) <= size))


def nonempty_family(size: int) -> Family:
    _check_cap(size)
    return Family(BaseSet(size), range(1, 1 << size))


RELATION_FAMILIES = ("F", "X", "Isub", "Y", "Iperp")


def relation_family(name: str, l: int, n: int) -> Family:
    if name == "F":
        return functions_family(l, n)
    if name == "X":
        return exclusion_family(l)
    if name == "Isub":
        return inclusion_family(l)
    if name == "Y":
        return anonymity_family(l, n)
    if name == "Iperp":
        return product_family(l, n)
    raise ValueError(f"unknown family {name!r}")


# ---------------------------------------------------------------------------
# Closed forms


@dataclass(frozen=True)
class Bracket:
    lower: int
    upper: int

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError("bracket lower bound exceeds upper bound")

    def __contains__(self, value: object) -> bool:
        return isinstance(value, int) and self.lower <= value <= self.upper

    def __str__(self) -> str:
        return f"[{self.lower},{self.upper}]"


Value = Union[int, Bracket]


@dataclass(frozen=True)
class DimFormulaResult:
    dd: Value
    ddd: Value
    cd: Value

    def matches(self, dd: int, ddd: int, cd: int) -> bool:
        return all(_agrees(f, v) for f, v in ((self.dd, dd), (self.ddd, ddd), (self.cd, cd)))


def _agrees(formula: Value, value: int) -> bool:
    if isinstance(formula, Bracket):
        return value in formula
    return formula == value


def _inclusion_dual(l: int) -> int:
    return 1 + sum(comb(l, k) * k ** k for k in range(2, l + 1))


def _anonymity_dual(l: int, n: int) -> int:
    return sum(comb(l, k) * comb(n, 2) ** k for k in range(l + 1))


def _rect_core(l: int, n: int) -> int:
    return (2 ** l - l - 1) * (2 ** n - n - 1)


def relation_closed_form(name: str, l: int, n: int) -> DimFormulaResult:
    """Closed forms for the five families over |X| = l, |Y| = n (both at least 2)."""
    if name == "F":
        v = n ** l
        return DimFormulaResult(v, 1, v)
    if name == "X":
        v = 2 ** l - 2
        return DimFormulaResult(v, 1, v)
    if name == "Isub":
        d = _inclusion_dual(l)
        return DimFormulaResult(2 ** l - l, d, d)
    if name == "Y":
        d = _anonymity_dual(l, n)
        return DimFormulaResult(2 ** l, d, d)
    if name == "Iperp":
        core = _rect_core(l, n)
        return DimFormulaResult(core + l + n, core + 1, core + l + n)
    raise ValueError(f"unknown family {name!r}")


@dataclass(frozen=True)
class AtomSpec:
    """An atom kind with its arities over a universe of size n.

    ``m`` is the length of the first variable tuple, ``k`` of the second, and
    ``s`` of the condition tuple (conditional independence only). For the
    cardinality atoms (even, half, ne) ``k`` is the tuple length.
    """

    kind: str
    n: int
    m: int = 1
    k: int = 1
    s: int = 1

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.n < 1 or self.m < 1 or self.k < 1 or self.s < 1:
            raise ValueError("universe size and arities must be positive")


def gen_family(spec: AtomSpec) -> Family:
    """The extensional family of teams satisfying the atom, in product indexing."""
    n, m, k = spec.n, spec.m, spec.k
    kind = spec.kind
    if kind == "dep":
        return functions_family(n ** m, n)
    if kind == "exc":
        return exclusion_family(n ** m)
    if kind == "inc":
        return inclusion_family(n ** m)
    if kind == "ano":
        return anonymity_family(n ** m, n)
    if kind == "pureInd":
        return product_family(n ** m, n ** k)
    if kind == "condInd":
        return layered_product_family(n ** m, n ** k, n ** spec.s)
    if kind == "even":
        return even_family(n ** k)
    if kind == "half":
        return half_family(n ** k)
    return nonempty_family(n ** k)


def closed_form_dims(spec: AtomSpec) -> DimFormulaResult:
    n, m, k = spec.n, spec.m, spec.k
    kind = spec.kind
    if kind == "dep":
        return relation_closed_form("F", n ** m, n)
    if kind == "exc":
        return relation_closed_form("X", n ** m, n)
    if kind == "inc":
        return relation_closed_form("Isub", n ** m, n)
    if kind == "ano":
        return relation_closed_form("Y", n ** m, n)
    if kind == "pureInd":
        return relation_closed_form("Iperp", n ** m, n ** k)
    if kind == "condInd":
        core = _rect_core(n ** m, n ** k)
        lo_dd, lo_ddd = core + n ** m + n ** k, core + 1
        layers = n ** spec.s
        return DimFormulaResult(
            Bracket(lo_dd, lo_dd ** layers),
            Bracket(lo_ddd, lo_ddd ** layers),
            Bracket(lo_dd, lo_dd ** layers),
        )
    if kind == "even":
        v = 2 ** (n ** k - 1)
        return DimFormulaResult(v, v, v)
    if kind == "half":
        # Downward closed: one interval per maximal team, each of size floor(N/2).
        size = n ** k
        v = comb(size, size // 2)
        return DimFormulaResult(v, 1, v)
    size = n ** k
    return DimFormulaResult(1, size, size)


_GROWTH = {
    "dep": ("F:m", "E:0", "F:m"),
    "exc": ("E:m", "E:0", "E:m"),
    "inc": ("E:m", "F:m", "F:m"),
    "ano": ("E:m", "F:0", "E:m"),
    "pureInd": ("E:mk", "E:mk", "E:mk"),
    "condInd": ("E:mks", "E:mks", "E:mks"),
}


def growth_label(spec: AtomSpec, which: str = "dd") -> str:
    """Catalog growth-class label (E_j or F_j) for one of dd, ddd, cd.

    These are reported labels, not verified asymptotics.
    """
    if spec.kind not in _GROWTH:
        raise ValueError(f"no catalog growth label for {spec.kind!r}")
    letter, degree = _GROWTH[spec.kind][("dd", "ddd", "cd").index(which)].split(":")
    arity = {"m": spec.m, "k": spec.k, "s": spec.s}
    level = 0 if degree == "0" else sum(arity[c] for c in degree)
    return f"{letter}_{level}"
