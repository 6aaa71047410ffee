"""Lindström quantifiers of type (r): classes, projections and the family operator.

A class is given by a predicate on ``(universe size, r, relation)``, the
relation being a bitmask over ``M^r`` in row-index order. Every catalog
predicate looks only at the size of the relation, so the classes are
closed under isomorphism by construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from ..errors import CapExceededError, UnsupportedError
from ..setfam import BaseSet, Family, bits_of, popcount, submasks
from .structures import TEAM_CAP_BITS, decode_row, encode_row

Predicate = Callable[[int, int, int], bool]


@dataclass(frozen=True)
class QuantifierClass:
    name: str
    predicate: Predicate
    arity: int | None = None  # None: usable at every arity

    def contains(self, size: int, r: int, relation: int) -> bool:
        if self.arity is not None and r != self.arity:
            raise ValueError(f"class {self.name} has arity {self.arity}, used with {r}")
        return bool(self.predicate(size, r, relation))

    def contains_empty(self, size: int, r: int) -> bool:
        return self.contains(size, r, 0)

    def members(self, size: int, r: int) -> list[int]:
        """All relations over ``M^r`` in the class (for small ``size**r``)."""
        cells = size ** r
        if cells > TEAM_CAP_BITS:
            raise CapExceededError(f"{cells} cells exceed the cap of {TEAM_CAP_BITS}")
        return [rel for rel in range(1 << cells) if self.contains(size, r, rel)]


EXISTS = QuantifierClass("exists", lambda n, r, rel: rel != 0)
FORALL = QuantifierClass("forall", lambda n, r, rel: rel == (1 << n ** r) - 1)
MAJORITY = QuantifierClass("majority", lambda n, r, rel: 2 * popcount(rel) > n ** r)
EVEN = QuantifierClass("even", lambda n, r, rel: popcount(rel) % 2 == 0)


def at_least(k: int) -> QuantifierClass:
    return QuantifierClass(f"atleast{k}", lambda n, r, rel: popcount(rel) >= k)


CATALOG = {q.name: q for q in (EXISTS, FORALL, MAJORITY, EVEN)}


def quantifier_class(name: str) -> QuantifierClass:
    """Catalog lookup; ``atleastK`` for any natural ``K`` is also accepted."""
    if name in CATALOG:
        return CATALOG[name]
    match = re.fullmatch(r"atleast(\d+)", name)
    if match:
        return at_least(int(match.group(1)))
    known = ", ".join(sorted(CATALOG)) + ", atleastK"
    raise UnsupportedError(f"unknown quantifier class {name!r} (known: {known})")


# ---------------------------------------------------------------------------
# shuffling


def _check_positions(positions: Sequence[int], width: int) -> None:
    if len(set(positions)) != len(positions):
        raise ValueError("shuffle positions clash")
    if any(not 0 <= p < width for p in positions):
        raise ValueError("shuffle position out of range")


def shuffle(rest: Sequence, chosen: Sequence, positions: Sequence[int]) -> tuple:
    """Place ``chosen[j]`` at ``positions[j]`` and fill the other slots with ``rest`` in order."""
    width = len(rest) + len(chosen)
    if len(chosen) != len(positions):
        raise ValueError("one position per chosen item is required")
    _check_positions(positions, width)
    out: list = [None] * width
    for p, item in zip(positions, chosen):
        out[p] = item
    filler = iter(rest)
    for i in range(width):
        if i not in positions:
            out[i] = next(filler)
    return tuple(out)


def unshuffle(combined: Sequence, positions: Sequence[int]) -> tuple[tuple, tuple]:
    _check_positions(positions, len(combined))
    chosen = tuple(combined[p] for p in positions)
    rest = tuple(v for i, v in enumerate(combined) if i not in positions)
    return rest, chosen


# ---------------------------------------------------------------------------
# projections


def _width(size: int, base_size: int) -> int:
    width, cells = 0, 1
    while cells < base_size:
        cells *= size
        width += 1
    if cells != base_size:
        raise ValueError(f"base of size {base_size} is not a power of {size}")
    return width


def fibers(team: int, size: int, width: int, positions: Sequence[int]) -> dict[int, int]:
    """Map each outer row index to its fiber, a bitmask over ``M^r``."""
    out: dict[int, int] = {}
    for i in bits_of(team):
        rest, chosen = unshuffle(decode_row(i, size, width), positions)
        key = encode_row(rest, size)
        out[key] = out.get(key, 0) | 1 << encode_row(chosen, size)
    return out


def projection(team: int, qclass: QuantifierClass, positions: Sequence[int], size: int, width: int) -> int:
    """Outer rows whose fiber (possibly empty) is in the class."""
    r = len(positions)
    fib = fibers(team, size, width, positions)
    out = 0
    for key in range(size ** (width - r)):
        if qclass.contains(size, r, fib.get(key, 0)):
            out |= 1 << key
    return out


def proper_projection(
    team: int, qclass: QuantifierClass, positions: Sequence[int], size: int, width: int
) -> int | None:
    """The projection when every row with a nonempty fiber lands in it, else ``None``."""
    fib = fibers(team, size, width, positions)
    image = projection(team, qclass, positions, size, width)
    support = sum(1 << key for key in fib)
    return image if support & ~image == 0 else None


def _support_if_fibers_fit(team, qclass, positions, size, width) -> int | None:
    r = len(positions)
    fib = fibers(team, size, width, positions)
    if all(qclass.contains(size, r, f) for f in fib.values()):
        return sum(1 << key for key in fib)
    return None


def lindstrom_apply(
    qclass: QuantifierClass, positions: Sequence[int], fam: Family, size: int, verbatim: bool = False
) -> Family:
    """Map the family of the body to the family of the quantified formula.

    Without the empty relation in the class, the result is the set of proper
    projections. With it, every superset of a suitable team is included; here
    the suitable team is the support of a body team whose nonempty fibers all
    lie in the class. ``verbatim=True`` uses the unrestricted projection
    instead, which disagrees with per-team satisfaction when the empty
    relation is in the class.
    """
    width = _width(size, fam.base.size)
    r = len(positions)
    outer = BaseSet(size ** (width - r))
    if outer.size > TEAM_CAP_BITS:
        raise CapExceededError(f"{outer.size} rows exceed the cap of {TEAM_CAP_BITS}")
    seeds = set()
    for team in fam:
        if verbatim or not qclass.contains_empty(size, r):
            seed = proper_projection(team, qclass, positions, size, width)
        else:
            seed = _support_if_fibers_fit(team, qclass, positions, size, width)
        if seed is not None:
            seeds.add(seed)
    if not qclass.contains_empty(size, r):
        return Family(outer, seeds)
    full = outer.full
    result = set()
    for seed in seeds:
        for extra in submasks(full & ~seed):
            result.add(seed | extra)
    return Family(outer, result)
