"""Subsets and families of subsets over a finite indexed base set.

A subset is a plain ``int`` bitmask: element ``i`` is present when bit ``i``
is set. Families keep their members sorted by numeric value, which is the
canonical order used for every tie-break in the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import BaseMismatchError, EmptyFamilyError, NotAMemberError, ParseError


def bits_of(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in decreasing numeric order, ending with 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class BaseSet:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError("base size must be non-negative")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.size:
                raise ValueError("labels must match the base size")
            if len(set(self.labels)) != self.size:
                raise ValueError("labels must be pairwise distinct")

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def check(self, mask: int) -> int:
        if mask < 0 or mask >> self.size:
            raise BaseMismatchError(f"subset {mask:#x} does not fit a base of size {self.size}")
        return mask

    def same_as(self, other: "BaseSet") -> bool:
        return self.size == other.size

    def subset(self, elements: Iterable[int]) -> int:
        return self.check(mask_of(elements))

    def format_subset(self, mask: int) -> str:
        """Family-file syntax: ``-`` for the empty set, else ascending indices."""
        if mask == 0:
            return "-"
        return " ".join(str(i) for i in bits_of(mask))

    def describe(self, mask: int) -> str:
        names = self.labels or tuple(str(i) for i in range(self.size))
        return "{" + ",".join(names[i] for i in bits_of(mask)) + "}"


class Interval(NamedTuple):
    """The family of all sets between ``lower`` and ``upper``; never empty."""

    lower: int
    upper: int

    def __contains__(self, mask: object) -> bool:  # type: ignore[override]
        return isinstance(mask, int) and mask & self.lower == self.lower and mask & ~self.upper == 0

    def members(self) -> Iterator[int]:
        free = self.upper & ~self.lower
        for sub in submasks(free):
            yield self.lower | sub

    @property
    def size(self) -> int:
        return 1 << popcount(self.upper & ~self.lower)


class Family:
    """An immutable, deduplicated, canonically sorted family of subsets."""

    __slots__ = ("base", "members", "_index")

    def __init__(self, base: BaseSet | int, members: Iterable[int] = ()):
        if isinstance(base, int):
            base = BaseSet(base)
        self.base = base
        uniq = set(members)
        for m in uniq:
            base.check(m)
        self.members: tuple[int, ...] = tuple(sorted(uniq))
        self._index = frozenset(uniq)

    @classmethod
    def of_sets(cls, base: BaseSet | int, sets: Iterable[Iterable[int]]) -> "Family":
        return cls(base, (mask_of(s) for s in sets))

    @classmethod
    def powerset(cls, base: BaseSet | int) -> "Family":
        size = base if isinstance(base, int) else base.size
        return cls(base, range(1 << size))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self._index

    def __bool__(self) -> bool:
        return bool(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.base.same_as(other.base) and self._index == other._index

    def __hash__(self) -> int:
        return hash((self.base.size, self._index))

    def __repr__(self) -> str:
        shown = ", ".join(self.base.describe(m) for m in self.members[:8])
        more = ", ..." if len(self.members) > 8 else ""
        return f"Family(base={self.base.size}, [{shown}{more}])"

    @property
    def index(self) -> frozenset[int]:
        return self._index

    def _same_base(self, other: "Family") -> None:
        if not self.base.same_as(other.base):
            raise BaseMismatchError(f"bases of size {self.base.size} and {other.base.size} differ")

    def union_of_members(self) -> int:
        acc = 0
        for m in self.members:
            acc |= m
        return acc

    def intersection_of_members(self) -> int:
        if not self.members:
            raise EmptyFamilyError("intersection of an empty family is undefined")
        acc = self.base.full
        for m in self.members:
            acc &= m
        return acc

    def __or__(self, other: "Family") -> "Family":
        self._same_base(other)
        return Family(self.base, self._index | other._index)

    def __and__(self, other: "Family") -> "Family":
        self._same_base(other)
        return Family(self.base, self._index & other._index)

    def __sub__(self, other: "Family") -> "Family":
        self._same_base(other)
        return Family(self.base, self._index - other._index)

    def issubfamily(self, other: "Family") -> bool:
        self._same_base(other)
        return self._index <= other._index

    def complement(self) -> "Family":
        """All subsets of the base that are not members."""
        return Family(self.base, (m for m in range(1 << self.base.size) if m not in self._index))

    def to_text(self) -> str:
        lines = [f"base {self.base.size}"]
        lines.extend(self.base.format_subset(m) for m in self.members)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FamilyProfile:
    convex: bool
    dominated: bool
    supported: bool
    downwardClosed: bool
    sperner: bool
    unionClosed: bool

    @property
    def interval(self) -> bool:
        return self.dominated and self.supported and self.convex


def interval(base: BaseSet | int, lower: int, upper: int) -> Family:
    """The family [lower, upper]; empty when lower is not a subset of upper."""
    if isinstance(base, int):
        base = BaseSet(base)
    base.check(lower)
    base.check(upper)
    if lower & ~upper:
        return Family(base)
    return Family(base, Interval(lower, upper).members())


def _down_closure(members: Iterable[int], within: int | None = None) -> set[int]:
    seen: set[int] = set()
    stack = [m for m in members if within is None or m & ~within == 0]
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        for b in bits_of(m):
            sub = m ^ (1 << b)
            if sub not in seen:
                stack.append(sub)
    return seen


def _up_closure(members: Iterable[int], within: int) -> set[int]:
    seen: set[int] = set()
    stack = [m for m in members if m & ~within == 0]
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        for b in bits_of(within & ~m):
            sup = m | (1 << b)
            if sup not in seen:
                stack.append(sup)
    return seen


def _is_convex(fam: Family) -> bool:
    # The convex hull is the meet of the up- and down-closures; the family is
    # convex exactly when nothing new appears in that meet.
    down = _down_closure(fam.members)
    up = _up_closure(fam.members, fam.base.full)
    return len(down & up) == len(fam)


def classify(fam: Family) -> FamilyProfile:
    members = fam.members
    index = fam.index
    dominated = bool(members) and fam.union_of_members() in index
    supported = bool(members) and fam.intersection_of_members() in index
    downward = all((m ^ (1 << b)) in index for m in members for b in bits_of(m))
    sperner = True
    union_closed = True
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if sperner and (a & b == a or a & b == b):
                sperner = False
            if union_closed and (a | b) not in index:
                union_closed = False
        if not sperner and not union_closed:
            break
    return FamilyProfile(
        convex=_is_convex(fam),
        dominated=dominated,
        supported=supported,
        downwardClosed=downward,
        sperner=sperner,
        unionClosed=union_closed,
    )


def max_sets(fam: Family) -> Family:
    members = fam.members
    # Scanning from the largest value down, anything that is a subset of a
    # later member can only have been seen after it.
    kept: list[int] = []
    for m in sorted(members, key=lambda s: (-popcount(s), s)):
        if not any(m & k == m for k in kept):
            kept.append(m)
    return Family(fam.base, kept)


def min_sets(fam: Family) -> Family:
    kept: list[int] = []
    for m in sorted(fam.members, key=lambda s: (popcount(s), s)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return Family(fam.base, kept)


def _shadow_list(fam: Family, top: int) -> list[int]:
    """Members B of the convex shadow of ``top``, largest value first."""
    index = fam.index
    if (1 << popcount(top)) <= len(fam):
        candidates: Iterable[int] = submasks(top)
    else:
        candidates = sorted((m for m in fam.members if m & ~top == 0), reverse=True)
    good: set[int] = set()
    out: list[int] = []
    for b in candidates:
        if b not in index:
            continue
        # [b, top] lies in the family iff each one-step extension inside top
        # already does; extensions are numerically larger, hence visited.
        if all((b | (1 << x)) in good for x in bits_of(top & ~b)):
            good.add(b)
            out.append(b)
    return out


def _dual_shadow_list(fam: Family, bottom: int) -> list[int]:
    index = fam.index
    free = fam.base.full & ~bottom
    if (1 << popcount(free)) <= len(fam):
        candidates: Iterable[int] = (bottom | s for s in reversed(list(submasks(free))))
    else:
        candidates = (m for m in fam.members if m & bottom == bottom)
    good: set[int] = set()
    out: list[int] = []
    for b in candidates:
        if b not in index:
            continue
        if all((b & ~(1 << x)) in good for x in bits_of(b & ~bottom)):
            good.add(b)
            out.append(b)
    return out


def convex_shadow(fam: Family, top: int) -> Family:
    """{B subset of top : the interval [B, top] lies inside the family}."""
    if top not in fam:
        raise NotAMemberError(f"{fam.base.describe(top)} is not a member")
    return Family(fam.base, _shadow_list(fam, top))


def dual_convex_shadow(fam: Family, bottom: int) -> Family:
    if bottom not in fam:
        raise NotAMemberError(f"{fam.base.describe(bottom)} is not a member")
    return Family(fam.base, _dual_shadow_list(fam, bottom))


def shadow_masks(fam: Family, dual: bool = False) -> dict[int, int]:
    """Map every member to its (dual) shadow, encoded as a bitset over member positions."""
    position = {m: i for i, m in enumerate(fam.members)}
    build = _dual_shadow_list if dual else _shadow_list
    out: dict[int, int] = {}
    for m in fam.members:
        bits = 0
        for b in build(fam, m):
            bits |= 1 << position[b]
        out[m] = bits
    return out


def _maximal_shadows(shadows: dict[int, int]) -> list[int]:
    items = list(shadows.items())
    keep = []
    for m, s in items:
        # Distinct members always have distinct shadows (each contains its
        # generator and no larger/smaller member), so strict containment
        # is just containment with inequality.
        if not any(t != s and s & ~t == 0 for _, t in items):
            keep.append(m)
    return keep


def critical_sets(fam: Family) -> Family:
    return Family(fam.base, _maximal_shadows(shadow_masks(fam)))


def dual_critical_sets(fam: Family) -> Family:
    return Family(fam.base, _maximal_shadows(shadow_masks(fam, dual=True)))


def convex_hull(fam: Family) -> Family:
    if not fam:
        return Family(fam.base)
    down = _down_closure(fam.members)
    up = _up_closure(fam.members, fam.base.full)
    return Family(fam.base, down & up)


def dominated_hull(fam: Family) -> Family:
    """Least dominated convex superfamily: every set between a member and the union."""
    if not fam:
        raise EmptyFamilyError("dominated hull of the empty family")
    return Family(fam.base, _up_closure(fam.members, fam.union_of_members()))


def supported_hull(fam: Family) -> Family:
    if not fam:
        raise EmptyFamilyError("supported hull of the empty family")
    floor = fam.intersection_of_members()
    return Family(fam.base, (s for s in _down_closure(fam.members) if s & floor == floor))


def is_shattered(fam: Family, target: int) -> bool:
    traces = {m & target for m in fam.members}
    return len(traces) == 1 << popcount(target)


def vc_dimension(fam: Family) -> int:
    """Largest cardinality of a shattered subset; 0 for the empty family."""
    if not fam:
        return 0
    top = min(fam.base.size, len(fam).bit_length() - 1)
    for k in range(top, 0, -1):
        for combo in combinations(range(fam.base.size), k):
            if is_shattered(fam, mask_of(combo)):
                return k
    return 0


def parse_family(text: str) -> Family:
    """Read the line-oriented family format (``base N`` then one member per line)."""
    lines = [(no, raw.strip()) for no, raw in enumerate(text.splitlines(), start=1)]
    lines = [(no, line) for no, line in lines if line and not line.startswith("#")]
    if not lines:
        raise ParseError("missing 'base N' header", 1)
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "base" or not parts[1].isdigit():
        raise ParseError(f"expected 'base N', got {header!r}", no)
    base = BaseSet(int(parts[1]))
    seen: set[int] = set()
    for no, line in lines[1:]:
        mask = _parse_member(line, base, no)
        if mask in seen:
            raise ParseError(f"duplicate member {line!r}", no)
        seen.add(mask)
    return Family(base, seen)


def _parse_member(line: str, base: BaseSet, no: int) -> int:
    if line == "-":
        return 0
    mask = 0
    for tok in line.split():
        if not tok.isdigit():
            raise ParseError(f"bad element {tok!r}", no)
        e = int(tok)
        if e >= base.size:
            raise ParseError(f"element {e} outside base of size {base.size}", no)
        if mask >> e & 1:
            raise ParseError(f"element {e} repeated", no)
        mask |= 1 << e
    return mask


def parse_subset(text: str, base: BaseSet) -> int:
    return _parse_member(text.strip(), base, 1)


def sets_of(fam: Family) -> list[tuple[int, ...]]:
    """Members as sorted element tuples; handy in tests and reports."""
    return [tuple(bits_of(m)) for m in fam.members]


def family_from_predicate(base: BaseSet | int, keep, candidates: Sequence[int] | None = None) -> Family:
    if isinstance(base, int):
        base = BaseSet(base)
    pool = range(1 << base.size) if candidates is None else candidates
    return Family(base, (m for m in pool if keep(m)))
