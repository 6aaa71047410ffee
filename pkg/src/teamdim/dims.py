"""Upper, dual upper and cylindrical dimension of a family.

All three are minimum set-cover problems whose universe is the family itself:

* upper dimension: cover by convex shadows (dominated convex pieces),
* dual upper dimension: cover by dual convex shadows (supported convex pieces),
* cylindrical dimension: cover by intervals lying inside the family.

The covers are solved exactly by a branch-and-bound search with the usual
reductions (essential candidates, dominated candidates, dominated rows).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .errors import NotASubfamilyError
from .setfam import (
    Family,
    Interval,
    _dual_shadow_list,
    _maximal_shadows,
    _shadow_list,
    bits_of,
    max_sets,
    min_sets,
    popcount,
    shadow_masks,
)

EXACT = "exact"
BUDGET = "upperBoundBudget"


@dataclass(frozen=True)
class SearchBudget:
    maxNodes: int = 10_000_000
    wallClock: float = 30.0  # seconds

    def __post_init__(self) -> None:
        if self.maxNodes <= 0 or self.wallClock <= 0:
            raise ValueError("budget limits must be positive")

    @classmethod
    def default(cls) -> "SearchBudget":
        """Default limits, with ``TEAMDIM_BUDGET_MS`` overriding the wall clock."""
        raw = os.environ.get("TEAMDIM_BUDGET_MS")
        if raw:
            return cls(wallClock=int(raw) / 1000.0)
        return cls()

    def scaled(self, factor: float) -> "SearchBudget":
        return SearchBudget(int(self.maxNodes * factor), self.wallClock * factor)


@dataclass
class CoverResult:
    value: int
    witness: list = field(default_factory=list)
    status: str = EXACT

    @property
    def exact(self) -> bool:
        return self.status == EXACT


class _Meter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.wallClock
        self.exhausted = False

    def tick(self) -> bool:
        self.nodes += 1
        if self.nodes >= self.budget.maxNodes:
            self.exhausted = True
        elif time.monotonic() > self.deadline:
            self.exhausted = True
        return self.exhausted


def _greedy(universe: int, cands: Sequence[int], chosen: Iterable[int] = ()) -> list[int]:
    picked = list(chosen)
    left = universe
    for i in picked:
        left &= ~cands[i]
    while left:
        best, gain = -1, 0
        for i, c in enumerate(cands):
            g = popcount(c & left)
            if g > gain:
                best, gain = i, g
        if best < 0:
            raise ValueError("candidates do not cover the universe")
        picked.append(best)
        left &= ~cands[best]
    return picked


def _prune_columns(cands: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Drop candidates contained in another one (earlier index wins ties)."""
    ordered = sorted(cands, key=lambda ic: (-popcount(ic[1]), ic[0]))
    kept: list[tuple[int, int]] = []
    for i, c in ordered:
        if not any(c & ~k == 0 for _, k in kept):
            kept.append((i, c))
    kept.sort()
    return kept


def _cover_map(universe: int, cands: list[tuple[int, int]]) -> dict[int, int]:
    """Element -> bitset of positions (in ``cands``) that cover it."""
    covers: dict[int, int] = {}
    for pos, (_, c) in enumerate(cands):
        for e in bits_of(c & universe):
            covers[e] = covers.get(e, 0) | (1 << pos)
    return covers


def _prune_rows(universe: int, cands: list[tuple[int, int]]) -> int:
    """Remove elements whose covering set contains another element's covering set."""
    covers = _cover_map(universe, cands)
    elems = sorted(covers, key=lambda e: (popcount(covers[e]), e))
    kept: list[int] = []
    for e in elems:
        ce = covers[e]
        if not any(covers[f] & ~ce == 0 for f in kept):
            kept.append(e)
    out = 0
    for e in kept:
        out |= 1 << e
    return out


def _packing_bound(universe: int, cands: list[tuple[int, int]], covers: dict[int, int]) -> int:
    used = 0
    bound = 0
    for e in sorted((e for e in bits_of(universe)), key=lambda e: (popcount(covers.get(e, 0)), e)):
        ce = covers.get(e, 0)
        if ce & used == 0:
            used |= ce
            bound += 1
    return bound


def _cyclic_core(universe: int, pool: list[tuple[int, int]]) -> tuple[int, list[tuple[int, int]], list[int]]:
    """Apply essential-candidate, column and row reductions until none changes anything.

    Returns the remaining elements, the remaining candidates and the indices
    taken as essential. An uncoverable element is left in place for the caller.
    """
    taken: list[int] = []
    while True:
        pool = [(i, c & universe) for i, c in pool if c & universe]
        covers = _cover_map(universe, pool)
        essential = 0
        for e, cv in covers.items():
            if cv & (cv - 1) == 0:
                essential |= cv
        if essential:
            for pos in bits_of(essential):
                i, c = pool[pos]
                taken.append(i)
                universe &= ~c
            continue
        size = (len(pool), popcount(universe))
        pool = _prune_columns(pool)
        if len(pool) * popcount(universe) <= 4_000_000:
            universe = _prune_rows(universe, pool)
        pool = [(i, c & universe) for i, c in pool if c & universe]
        if (len(pool), popcount(universe)) == size:
            return universe, pool, taken


MILP_MIN_ELEMENTS = 40


def _milp_cover(left: int, pool: list[tuple[int, int]], seconds: float, nodes: int) -> tuple[list[int] | None, bool]:
    """Solve a reduced cover instance with the HiGHS MILP solver.

    Returns the chosen candidate indices (or None if no solution was found in
    time) and whether optimality was proven.
    """
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import csr_matrix

    row_of = {e: r for r, e in enumerate(bits_of(left))}
    rows, cols = [], []
    for col, (_, c) in enumerate(pool):
        for e in bits_of(c & left):
            rows.append(row_of[e])
            cols.append(col)
    incidence = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(row_of), len(pool)))
    res = milp(
        np.ones(len(pool)),
        constraints=LinearConstraint(incidence, lb=1, ub=np.inf),
        integrality=np.ones(len(pool)),
        bounds=Bounds(0, 1),
        options={"time_limit": max(seconds, 0.01), "node_limit": nodes, "mip_rel_gap": 0.0},
    )
    if res.x is None:
        return None, False
    chosen = [pool[p][0] for p in range(len(pool)) if res.x[p] > 0.5]
    return chosen, res.status == 0


def solve_cover(
    universe: int,
    cands: Sequence[int],
    forced: Iterable[int] = (),
    budget: SearchBudget | None = None,
) -> tuple[list[int], bool]:
    """Minimum-cardinality choice of candidate indices whose union is ``universe``.

    Returns the chosen indices (sorted) and whether optimality was proven
    within the budget. After the root reductions, instances with at least
    ``MILP_MIN_ELEMENTS`` elements go to a MILP solver; smaller ones are
    searched directly with a disjoint-row packing bound.
    """
    budget = budget or SearchBudget.default()
    forced = sorted(set(forced))
    cands = list(cands)
    meter = _Meter(budget)

    base_left = universe
    for i in forced:
        base_left &= ~cands[i]
    greedy = _greedy(universe, cands, forced)
    best: list[list[int]] = [sorted(set(greedy))]

    root = [(i, c & base_left) for i, c in enumerate(cands) if c & base_left and i not in forced]
    root_universe, root, taken = _cyclic_core(base_left, root)
    forced = sorted(forced + taken)

    def search(left: int, pool: list[tuple[int, int]], chosen: list[int]) -> None:
        if meter.tick():
            return
        chosen = list(chosen)
        # Essential candidates: an element covered by a single candidate.
        while True:
            pool = [(i, c & left) for i, c in pool if c & left]
            if not left:
                break
            covers = _cover_map(left, pool)
            if len(covers) < popcount(left):
                return  # some element cannot be covered any more
            essential = next((cv for e, cv in sorted(covers.items()) if cv & (cv - 1) == 0), None)
            if essential is None:
                break
            i, c = pool[essential.bit_length() - 1]
            chosen.append(i)
            left &= ~c
            if len(forced) + len(chosen) >= len(best[0]):
                return
        total = len(forced) + len(chosen)
        if not left:
            if total < len(best[0]):
                best[0] = sorted(forced + chosen)
            return
        pool = _prune_columns(pool)
        covers = _cover_map(left, pool)
        if total + _packing_bound(left, pool, covers) >= len(best[0]):
            return
        pivot = min(bits_of(left), key=lambda e: (popcount(covers[e]), e))
        options = [pool[p] for p in bits_of(covers[pivot])]
        options.sort(key=lambda ic: (-popcount(ic[1]), ic[0]))
        for i, c in options:
            rest = [(j, d) for j, d in pool if j != i]
            search(left & ~c, rest, chosen + [i])
            if meter.exhausted:
                return
            # Once a candidate is rejected for the pivot, later branches never need it.
            pool = [(j, d) for j, d in pool if j != i]

    if popcount(root_universe) >= MILP_MIN_ELEMENTS:
        chosen, proven = _milp_cover(root_universe, root, meter.deadline - time.monotonic(), budget.maxNodes)
        if chosen is not None and len(forced) + len(chosen) < len(best[0]):
            best[0] = sorted(forced + chosen)
        return best[0], proven
    search(root_universe, root, [])
    return best[0], not meter.exhausted


# ---------------------------------------------------------------------------
# Cover checks


def _require_subfamily(fam: Family, pieces: Iterable[int]) -> list[int]:
    pieces = list(pieces)
    for p in pieces:
        if p not in fam:
            raise NotASubfamilyError(f"{fam.base.describe(p)} is not a member of the family")
    return pieces


def check_dominating(fam: Family, generators: Iterable[int]) -> bool:
    """True iff the convex shadows of ``generators`` together give the family."""
    covered: set[int] = set()
    for g in _require_subfamily(fam, generators):
        covered.update(_shadow_list(fam, g))
    return len(covered) == len(fam)


def check_supporting(fam: Family, generators: Iterable[int]) -> bool:
    covered: set[int] = set()
    for g in _require_subfamily(fam, generators):
        covered.update(_dual_shadow_list(fam, g))
    return len(covered) == len(fam)


def check_interval_cover(fam: Family, pieces: Iterable[Interval]) -> bool:
    covered: set[int] = set()
    for piece in pieces:
        for m in piece.members():
            if m not in fam:
                return False
            covered.add(m)
    return len(covered) == len(fam)


# ---------------------------------------------------------------------------
# Prime intervals


def prime_intervals(fam: Family) -> list[Interval]:
    """All inclusion-maximal intervals contained in the family, canonically sorted.

    An interval [L, U] inside the family is exactly a pair with L in the
    convex shadow of U. It is maximal when L is minimal in that shadow and
    no one-element enlargement of U still has L in its shadow.
    """
    shadows = {m: set(_shadow_list(fam, m)) for m in fam.members}
    full = fam.base.full
    out: list[Interval] = []
    for top, shadow in shadows.items():
        for low in shadow:
            if any((low ^ (1 << x)) in shadow for x in bits_of(low)):
                continue
            grows = False
            for x in bits_of(full & ~top):
                above = shadows.get(top | (1 << x))
                if above is not None and low in above:
                    grows = True
                    break
            if not grows:
                out.append(Interval(low, top))
    out.sort(key=lambda iv: (iv.lower, iv.upper))
    return out


# ---------------------------------------------------------------------------
# Dimensions


def _positions(fam: Family, members: Iterable[int]) -> list[int]:
    where = {m: i for i, m in enumerate(fam.members)}
    return [where[m] for m in members]


def _shadow_cover(fam: Family, dual: bool, budget: SearchBudget | None) -> CoverResult:
    if not fam:
        return CoverResult(0, [])
    shadows = shadow_masks(fam, dual=dual)
    crit = sorted(_maximal_shadows(shadows))
    forced_members = (min_sets(fam) if dual else max_sets(fam)).members
    gens = sorted(set(crit) | set(forced_members))
    cands = [shadows[g] for g in gens]
    forced = [gens.index(m) for m in forced_members]
    universe = (1 << len(fam)) - 1
    chosen, exact = solve_cover(universe, cands, forced, budget)
    witness = [gens[i] for i in chosen]
    return CoverResult(len(witness), witness, EXACT if exact else BUDGET)


def upper_dimension(fam: Family, budget: SearchBudget | None = None) -> CoverResult:
    """Fewest dominated convex subfamilies covering the family; witness = generating members."""
    return _shadow_cover(fam, dual=False, budget=budget)


def dual_upper_dimension(fam: Family, budget: SearchBudget | None = None) -> CoverResult:
    return _shadow_cover(fam, dual=True, budget=budget)


def _interval_masks(fam: Family, pieces: Sequence[Interval]) -> list[int]:
    where = {m: i for i, m in enumerate(fam.members)}
    masks = []
    for piece in pieces:
        bits = 0
        for m in piece.members():
            bits |= 1 << where[m]
        masks.append(bits)
    return masks


def cylindrical_dimension(fam: Family, budget: SearchBudget | None = None) -> CoverResult:
    """Fewest intervals inside the family whose union is the family."""
    if not fam:
        return CoverResult(0, [])
    primes = prime_intervals(fam)
    cands = _interval_masks(fam, primes)
    chosen, exact = solve_cover((1 << len(fam)) - 1, cands, (), budget)
    witness = [primes[i] for i in chosen]
    return CoverResult(len(witness), witness, EXACT if exact else BUDGET)


Mode = Literal["dominate", "support", "interval"]


def greedy_cover(fam: Family, mode: Mode) -> CoverResult:
    """A quick valid cover, used as an upper bound. Status is always upper-bound."""
    if not fam:
        return CoverResult(0, [], EXACT)
    if mode == "interval":
        pieces: list = prime_intervals(fam)
        cands = _interval_masks(fam, pieces)
    elif mode in ("dominate", "support"):
        shadows = shadow_masks(fam, dual=(mode == "support"))
        pieces = list(fam.members)
        cands = [shadows[m] for m in pieces]
    else:
        raise ValueError(f"unknown greedy mode {mode!r}")
    chosen = _greedy((1 << len(fam)) - 1, cands)
    return CoverResult(len(chosen), [pieces[i] for i in chosen], BUDGET)


def all_dimensions(fam: Family, budget: SearchBudget | None = None) -> tuple[CoverResult, CoverResult, CoverResult]:
    return upper_dimension(fam, budget), dual_upper_dimension(fam, budget), cylindrical_dimension(fam, budget)


def format_witness(fam: Family, result: CoverResult) -> list[str]:
    """Witness lines in the family-file element syntax."""
    fmt = fam.base.format_subset
    lines = []
    for piece in result.witness:
        if isinstance(piece, Interval):
            lines.append(f"[{fmt(piece.lower)}] [{fmt(piece.upper)}]")
        else:
            lines.append(fmt(piece))
    return lines
