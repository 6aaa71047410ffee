"""Finite structures, variable contexts and teams.

An assignment over a context ``(x_0, ..., x_{m-1})`` in a universe of size
``n`` is stored as its row index ``sum(s(x_i) * n**i)``, so the first
variable is the least significant digit. A team is a bitmask over those
row indices, i.e. a subset of the base ``M^m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping

from ..errors import ArityError, CapExceededError, ParseError
from ..setfam import BaseSet, bits_of

TEAM_CAP_BITS = 20


@dataclass(frozen=True)
class Structure:
    size: int
    relations: Mapping[str, tuple[int, frozenset[tuple[int, ...]]]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("a structure needs a nonempty universe")
        clean: dict[str, tuple[int, frozenset[tuple[int, ...]]]] = {}
        for name, (arity, tuples) in dict(self.relations).items():
            tuples = frozenset(tuple(t) for t in tuples)
            for t in tuples:
                if len(t) != arity:
                    raise ArityError(f"tuple {t} of {name} does not have arity {arity}")
                if any(not 0 <= v < self.size for v in t):
                    raise ValueError(f"tuple {t} of {name} leaves the universe")
            clean[name] = (arity, tuples)
        object.__setattr__(self, "relations", clean)

    @classmethod
    def bare(cls, size: int) -> "Structure":
        """The structure with empty vocabulary on ``{0, ..., size-1}``."""
        return cls(size)

    @property
    def vocabulary(self) -> dict[str, int]:
        return {name: arity for name, (arity, _) in self.relations.items()}

    def holds(self, name: str, values: tuple[int, ...]) -> bool:
        if name not in self.relations:
            raise KeyError(f"relation {name!r} is not interpreted in the structure")
        arity, tuples = self.relations[name]
        if len(values) != arity:
            raise ArityError(f"{name} has arity {arity}, got {len(values)} arguments")
        return values in tuples


@dataclass(frozen=True)
class VarContext:
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("context variables must be distinct")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        return self.names.index(name)

    def extend(self, *names: str) -> "VarContext":
        return VarContext(self.names + tuple(names))


def context(names: Iterable[str] | str) -> VarContext:
    if isinstance(names, str):
        names = names.split()
    return VarContext(tuple(names))


def row_count(size: int, width: int) -> int:
    return size ** width


def check_cap(size: int, width: int, cap: int = TEAM_CAP_BITS) -> int:
    rows = size ** width
    if rows > cap:
        raise CapExceededError(f"{size}^{width} = {rows} rows exceed the cap of {cap}")
    return rows


def encode_row(values: Iterable[int], size: int) -> int:
    index, weight = 0, 1
    for v in values:
        index += v * weight
        weight *= size
    return index


def decode_row(index: int, size: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        index, digit = divmod(index, size)
        out.append(digit)
    return tuple(out)


def all_rows(size: int, width: int) -> list[tuple[int, ...]]:
    """Every assignment, ordered by row index."""
    return [decode_row(i, size, width) for i in range(size ** width)]


@dataclass(frozen=True)
class Team:
    context: VarContext
    size: int
    rows: frozenset[tuple[int, ...]]

    def __post_init__(self) -> None:
        rows = frozenset(tuple(r) for r in self.rows)
        for r in rows:
            if len(r) != len(self.context):
                raise ArityError(f"row {r} does not match the context {self.context.names}")
            if any(not 0 <= v < self.size for v in r):
                raise ValueError(f"row {r} leaves the universe")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_mask(cls, ctx: VarContext, size: int, mask: int) -> "Team":
        return cls(ctx, size, frozenset(decode_row(i, size, len(ctx)) for i in bits_of(mask)))

    @property
    def mask(self) -> int:
        out = 0
        for r in self.rows:
            out |= 1 << encode_row(r, self.size)
        return out

    def base(self) -> BaseSet:
        return BaseSet(self.size ** len(self.context))

    def restrict(self, names: Iterable[str]) -> "Team":
        names = tuple(names)
        idx = [self.context.index(v) for v in names]
        return Team(VarContext(names), self.size, frozenset(tuple(r[i] for i in idx) for r in self.rows))

    def __len__(self) -> int:
        return len(self.rows)


def restrict_mask(mask: int, size: int, ctx: VarContext, names: Iterable[str]) -> int:
    """Project a team bitmask onto a sub-context (in the order given)."""
    idx = [ctx.index(v) for v in names]
    out = 0
    for i in bits_of(mask):
        row = decode_row(i, size, len(ctx))
        out |= 1 << encode_row((row[j] for j in idx), size)
    return out


# ---------------------------------------------------------------------------
# Files


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _ints(line: str, no: int) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in line.split())
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", no) from None


def parse_structure(text: str) -> Structure:
    """``universe n`` then blocks ``rel NAME ARITY`` / tuple lines / ``end``."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing 'universe n' header", 1)
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "universe" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise ParseError("expected 'universe n' with n >= 1", no, 1)
    size = int(parts[1])
    rels: dict[str, tuple[int, set[tuple[int, ...]]]] = {}
    current: str | None = None
    for no, line in lines[1:]:
        if current is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "rel" or not parts[2].isdigit():
                raise ParseError("expected 'rel NAME ARITY'", no, 1)
            if parts[1] in rels:
                raise ParseError(f"relation {parts[1]!r} declared twice", no)
            current = parts[1]
            rels[current] = (int(parts[2]), set())
            continue
        if line == "end":
            current = None
            continue
        values = _ints(line, no)
        arity = rels[current][0]
        if len(values) != arity:
            raise ParseError(f"{current} has arity {arity}, got {len(values)} values", no)
        if any(not 0 <= v < size for v in values):
            raise ParseError(f"tuple {values} leaves the universe of size {size}", no)
        rels[current][1].add(values)
    if current is not None:
        raise ParseError(f"relation {current!r} is missing its 'end'")
    return Structure(size, {k: (a, frozenset(t)) for k, (a, t) in rels.items()})


def parse_team(text: str, size: int) -> Team:
    """``vars x y ...`` then one assignment per line."""
    lines = list(_content_lines(text))
    if not lines or not lines[0][1].startswith("vars"):
        raise ParseError("missing 'vars ...' header", lines[0][0] if lines else 1, 1)
    no, head = lines[0]
    names = tuple(head.split()[1:])
    try:
        ctx = VarContext(names)
    except ValueError as exc:
        raise ParseError(str(exc), no) from None
    rows = set()
    for no, line in lines[1:]:
        values = _ints(line, no)
        if len(values) != len(ctx):
            raise ParseError(f"expected {len(ctx)} values, got {len(values)}", no)
        if any(not 0 <= v < size for v in values):
            raise ParseError(f"assignment {values} leaves the universe of size {size}", no)
        rows.add(values)
    return Team(ctx, size, frozenset(rows))


def format_structure(model: Structure) -> str:
    out = [f"universe {model.size}"]
    for name, (arity, tuples) in sorted(model.relations.items()):
        out.append(f"rel {name} {arity}")
        out.extend(" ".join(map(str, t)) for t in sorted(tuples))
        out.append("end")
    return "\n".join(out) + "\n"


def format_team(team: Team) -> str:
    out = ["vars " + " ".join(team.context.names)]
    out.extend(" ".join(map(str, r)) for r in sorted(team.rows))
    return "\n".join(out) + "\n"


def all_assignments(size: int, width: int) -> Iterator[tuple[int, ...]]:
    """Assignments in lexicographic order (differs from row-index order)."""
    return product(range(size), repeat=width)
