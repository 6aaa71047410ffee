"""Kripke operators on families of sets.

A relation ``R`` between output subsets of a target base ``Y`` and ``n``-tuples
of input subsets of a source base ``X`` induces the operator

    apply_kripke(R, F_0, ..., F_{n-1}) = {B : (B, A_0, ..., A_{n-1}) in R for some A_i in F_i}.

Relations can be intensional (a membership predicate, or a function giving
the outputs of an input tuple) for application. Locality, the separating
property and the two preservation conditions quantify over all rows, so
those checks work on the materialized extension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .errors import ArityError, BaseMismatchError, CapExceededError, ParseError
from .setfam import BaseSet, Family, _parse_member, bits_of
from .tensor import BoolOp2, op

Row = tuple[int, ...]  # (output, input_0, ..., input_{n-1})

MATERIALIZE_CAP_BITS = 24
CHECK_CAP_SIZE = 12


@dataclass(frozen=True)
class KripkeRelation:
    """A relation R ⊆ P(target) × P(source)^arity.

    Give at least one of ``rows`` (explicit extension), ``outputs`` (input
    tuple -> iterable of outputs) or ``contains`` (membership predicate on a
    full row).
    """

    arity: int
    source: BaseSet
    target: BaseSet
    rows: frozenset[Row] | None = None
    outputs: Callable[[tuple[int, ...]], Iterable[int]] | None = None
    contains: Callable[[Row], bool] | None = None
    name: str = "R"
    _by_output: dict = field(default=None, init=False, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise ArityError("arity must be non-negative")
        if self.rows is None and self.outputs is None and self.contains is None:
            raise ValueError("a relation needs rows, an output function or a predicate")
        if self.rows is not None:
            rows = frozenset(tuple(r) for r in self.rows)
            for r in rows:
                self._check_row(r)
            object.__setattr__(self, "rows", rows)

    def _check_row(self, row: Row) -> None:
        if len(row) != self.arity + 1:
            raise ArityError(f"row {row} does not have {self.arity + 1} components")
        self.target.check(row[0])
        for part in row[1:]:
            self.source.check(part)

    def __contains__(self, row: object) -> bool:
        if not isinstance(row, tuple):
            return False
        if self.rows is not None:
            return row in self.rows
        if self.contains is not None:
            return self.contains(row)
        return row[0] in set(self.outputs(row[1:]))  # type: ignore[misc]

    @property
    def is_explicit(self) -> bool:
        return self.rows is not None

    def section(self, output: int) -> frozenset[tuple[int, ...]]:
        """R[output]: the input tuples related to ``output``."""
        table = self._sections()
        return table.get(output, frozenset())

    def _sections(self) -> dict[int, frozenset[tuple[int, ...]]]:
        if self._by_output is None:
            grouped: dict[int, set[tuple[int, ...]]] = {}
            for row in materialize(self).rows:  # type: ignore[union-attr]
                grouped.setdefault(row[0], set()).add(row[1:])
            object.__setattr__(self, "_by_output", {k: frozenset(v) for k, v in grouped.items()})
        return self._by_output


def materialize(rel: KripkeRelation) -> KripkeRelation:
    """The same relation with its explicit extension filled in."""
    if rel.rows is not None:
        return rel
    bits = rel.target.size + rel.arity * rel.source.size
    if bits > MATERIALIZE_CAP_BITS:
        raise CapExceededError(f"extension of {bits} bits exceeds the cap of {MATERIALIZE_CAP_BITS}")
    inputs = product(range(1 << rel.source.size), repeat=rel.arity)
    rows: set[Row] = set()
    if rel.outputs is not None:
        for args in inputs:
            rows.update((out,) + args for out in rel.outputs(args))
    else:
        for args in inputs:
            for out in range(1 << rel.target.size):
                if rel.contains((out,) + args):  # type: ignore[misc]
                    rows.add((out,) + args)
    return KripkeRelation(rel.arity, rel.source, rel.target, frozenset(rows), rel.outputs, rel.contains, rel.name)


def apply_kripke(rel: KripkeRelation, *args: Family) -> Family:
    if len(args) != rel.arity:
        raise ArityError(f"{rel.name} takes {rel.arity} arguments, got {len(args)}")
    for fam in args:
        if not fam.base.same_as(rel.source):
            raise BaseMismatchError(f"argument base {fam.base.size} differs from source base {rel.source.size}")
    if rel.rows is not None:
        return Family(rel.target, (r[0] for r in rel.rows if all(a in f for a, f in zip(r[1:], args))))
    tuples = product(*(f.members for f in args))
    if rel.outputs is not None:
        out: set[int] = set()
        for t in tuples:
            out.update(rel.outputs(t))
        return Family(rel.target, out)
    everything = range(1 << rel.target.size)
    return Family(rel.target, {b for t in tuples for b in everything if rel.contains((b,) + t)})  # type: ignore[misc]


def _require_small(rel: KripkeRelation) -> KripkeRelation:
    if max(rel.source.size, rel.target.size) > CHECK_CAP_SIZE:
        raise CapExceededError(f"row checks are limited to bases of size {CHECK_CAP_SIZE}")
    return materialize(rel)


def _unions_of_choices(choices: Sequence[Iterable[tuple[int, ...]]], arity: int) -> set[tuple[int, ...]]:
    """Componentwise unions over every way of picking one tuple from each choice list."""
    acc: set[tuple[int, ...]] = {(0,) * arity}
    for options in choices:
        options = list(options)
        acc = {tuple(x | y for x, y in zip(t, o)) for t in acc for o in options}
        if not acc:
            break
    return acc


def local_closure_sections(singletons: dict[int, Iterable[tuple[int, ...]]], target_size: int, arity: int) -> dict[int, set[tuple[int, ...]]]:
    """R[A] for every A, as forced by the singleton sections under locality."""
    out: dict[int, set[tuple[int, ...]]] = {}
    for a in range(1 << target_size):
        out[a] = _unions_of_choices([singletons.get(x, ()) for x in bits_of(a)], arity)
    return out


def is_local(rel: KripkeRelation) -> bool:
    """True iff every section R[A] is exactly the set of componentwise unions of
    one tuple from each singleton section R[{a}], a in A (so R[∅] = {(∅,…,∅)})."""
    rel = _require_small(rel)
    singles = {x: rel.section(1 << x) for x in range(rel.target.size)}
    expected = local_closure_sections(singles, rel.target.size, rel.arity)
    return all(rel.section(a) == expected[a] for a in range(1 << rel.target.size))


def is_separating(rel: KripkeRelation) -> bool:
    rel = _require_small(rel)
    singles = [rel.section(1 << x) for x in range(rel.target.size)]
    for x in range(len(singles)):
        for y in range(x + 1, len(singles)):
            for s in singles[x]:
                for t in singles[y]:
                    if any(p & q for p, q in zip(s, t)):
                        return False
    return True


def check_union_lemma(rel: KripkeRelation, parts: Sequence[Sequence[Family]]) -> bool:
    """Image of the unions equals the union of images over all part combinations."""
    if len(parts) != rel.arity:
        raise ArityError(f"{rel.name} takes {rel.arity} arguments, got {len(parts)}")
    unions = []
    for pieces in parts:
        members: set[int] = set()
        for p in pieces:
            members.update(p.members)
        unions.append(Family(rel.source, members))
    left = apply_kripke(rel, *unions)
    right: set[int] = set()
    for combo in product(*parts):
        right.update(apply_kripke(rel, *combo).members)
    return set(left.members) == right


def _in_lower_hull(c: int, a: int, b: int) -> bool:
    """c in [a, a∪b] ∪ [b, a∪b]."""
    return c & ~(a | b) == 0 and (a & ~c == 0 or b & ~c == 0)


def _in_upper_hull(c: int, a: int, b: int) -> bool:
    """c in [a∩b, a] ∪ [a∩b, b]."""
    common = a & b
    return common & ~c == 0 and (c & ~a == 0 or c & ~b == 0)


def _sharp_candidates(a: int, b: int) -> Iterator[int]:
    top = a | b
    seen = set()
    for low in (a, b):
        free = top & ~low
        sub = free
        while True:
            c = low | sub
            if c not in seen:
                seen.add(c)
                yield c
            if sub == 0:
                break
            sub = (sub - 1) & free


def _flat_candidates(a: int, b: int) -> Iterator[int]:
    common = a & b
    seen = set()
    for high in (a, b):
        free = high & ~common
        sub = free
        while True:
            c = common | sub
            if c not in seen:
                seen.add(c)
                yield c
            if sub == 0:
                break
            sub = (sub - 1) & free


def _star_condition(rel: KripkeRelation, hull_members, in_hull) -> bool:
    rel = _require_small(rel)
    sections = {a: rel.section(a) for a in range(1 << rel.target.size)}
    nonempty = [a for a, s in sections.items() if s]
    for a in nonempty:
        for b in nonempty:
            for c in hull_members(a, b):
                targets = sections[c]
                for s in sections[a]:
                    for t in sections[b]:
                        if not any(all(in_hull(ci, si, ti) for ci, si, ti in zip(u, s, t)) for u in targets):
                            return False
    return True


def check_star_sharp(rel: KripkeRelation) -> bool:
    """Exact row condition for weak preservation of dominated convexity."""
    return _star_condition(rel, _sharp_candidates, _in_lower_hull)


def check_star_flat(rel: KripkeRelation) -> bool:
    """Exact row condition for weak preservation of supported convexity."""
    return _star_condition(rel, _flat_candidates, _in_upper_hull)


# ---------------------------------------------------------------------------
# Catalog


def _base(size: BaseSet | int) -> BaseSet:
    return size if isinstance(size, BaseSet) else BaseSet(size)


def intersection_relation(base: BaseSet | int) -> KripkeRelation:
    base = _base(base)
    rows = frozenset((d, d, d) for d in range(1 << base.size))
    return KripkeRelation(2, base, base, rows, name="intersection")


def tensor_relation(operation: BoolOp2 | str, base: BaseSet | int) -> KripkeRelation:
    operation = op(operation)
    base = _base(base)
    full = base.full
    return KripkeRelation(
        2, base, base,
        outputs=lambda args: (operation.on_sets(args[0], args[1], full),),
        name=f"tensor[{operation.code}]",
    )


def disjunction_relation(base: BaseSet | int) -> KripkeRelation:
    return tensor_relation("or", base)


def conjunction_relation(base: BaseSet | int) -> KripkeRelation:
    return tensor_relation("and", base)


def negation_relation(base: BaseSet | int) -> KripkeRelation:
    base = _base(base)
    full = base.full
    return KripkeRelation(1, base, base, outputs=lambda args: (full & ~args[0],), name="negation")


def restricted_union_relation(base: BaseSet | int) -> KripkeRelation:
    base = _base(base)
    rows = frozenset(r for a in range(1 << base.size) for r in ((a, a, 0), (a, 0, a)))
    return KripkeRelation(2, base, base, rows, name="restricted-union")


def _image(mapping: Sequence[int], mask: int) -> int:
    out = 0
    for x in bits_of(mask):
        out |= 1 << mapping[x]
    return out


def _check_surjection(mapping: Sequence[int], target: BaseSet) -> None:
    if set(mapping) != set(range(target.size)):
        raise ValueError("the map must be a surjection onto the target base")


def projection_relation(mapping: Sequence[int], target: BaseSet | int) -> KripkeRelation:
    """Rows (f[A], A) for a surjection f given as ``mapping[x] = f(x)``."""
    target = _base(target)
    _check_surjection(mapping, target)
    source = BaseSet(len(mapping))
    mapping = tuple(mapping)
    return KripkeRelation(1, source, target, outputs=lambda args: (_image(mapping, args[0]),), name="projection")


def inverse_projection_relation(mapping: Sequence[int], target: BaseSet | int) -> KripkeRelation:
    """Rows (A, f[A]): outputs are subsets of the domain of f."""
    target = _base(target)
    _check_surjection(mapping, target)
    domain = BaseSet(len(mapping))
    mapping = tuple(mapping)
    return KripkeRelation(
        1, target, domain,
        contains=lambda row: _image(mapping, row[0]) == row[1],
        name="inverse-projection",
    )


def nonempty_to_full_relation(base: BaseSet | int = 2) -> KripkeRelation:
    """Rows (Y, X) for every nonempty Y, together with (∅, ∅).

    Local but not separating. The (∅, ∅) row is what locality requires of
    the empty output.
    """
    base = _base(base)
    rows = {(y, base.full) for y in range(1, 1 << base.size)}
    rows.add((0, 0))
    return KripkeRelation(1, base, base, frozenset(rows), name="nonempty-to-full")


def catalog(base: BaseSet | int) -> dict[str, KripkeRelation]:
    """The built-in relations over one base (identity maps for the projections)."""
    base = _base(base)
    ident = tuple(range(base.size))
    return {
        "intersection": intersection_relation(base),
        "or": disjunction_relation(base),
        "and": conjunction_relation(base),
        "not": negation_relation(base),
        "restricted-union": restricted_union_relation(base),
        "projection": projection_relation(ident, base),
        "inverse-projection": inverse_projection_relation(ident, base),
    }


# ---------------------------------------------------------------------------
# Random local relations


def random_local_relation(
    rng: random.Random,
    arity: int,
    source_size: int,
    target_size: int,
    max_rows: int = 2,
    separating: bool = False,
) -> KripkeRelation:
    """Sample singleton sections, then close them under the locality rule.

    With ``separating`` each output element draws its input sets from its own
    block of a random partition of the source, per coordinate.
    """
    source, target = BaseSet(source_size), BaseSet(target_size)
    owner = [[rng.randrange(target_size + 1) for _ in range(source_size)] for _ in range(arity)]
    singles: dict[int, list[tuple[int, ...]]] = {}
    for y in range(target_size):
        allowed = []
        for i in range(arity):
            if separating:
                allowed.append(sum(1 << x for x in range(source_size) if owner[i][x] == y))
            else:
                allowed.append(source.full)
        count = rng.randint(0, max_rows) if rng.random() < 0.15 else rng.randint(1, max_rows)
        picks = {tuple(rng.randrange(1 << source_size) & allowed[i] for i in range(arity)) for _ in range(count)}
        singles[y] = sorted(picks)
    sections = local_closure_sections(singles, target_size, arity)
    rows = frozenset((a,) + t for a, ts in sections.items() for t in ts)
    return KripkeRelation(arity, source, target, rows, name="random-local")


# ---------------------------------------------------------------------------
# Extension files


def parse_kripke(text: str) -> KripkeRelation:
    """Read ``kripke n |X| |Y|`` then rows ``B ; A0 ; A1 ; ...``."""
    header = None
    rows: set[Row] = set()
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "kripke" or not all(p.isdigit() for p in parts[1:]):
                raise ParseError("expected header 'kripke n |X| |Y|'", no, 1)
            header = tuple(int(p) for p in parts[1:])
            source, target = BaseSet(header[1]), BaseSet(header[2])
            continue
        fields = [f.strip() for f in line.split(";")]
        if len(fields) != header[0] + 1:
            raise ParseError(f"expected {header[0] + 1} ';'-separated fields, got {len(fields)}", no)
        out = _parse_member(fields[0] or "-", target, no)
        ins = tuple(_parse_member(f or "-", source, no) for f in fields[1:])
        rows.add((out,) + ins)
    if header is None:
        raise ParseError("missing 'kripke n |X| |Y|' header")
    return KripkeRelation(header[0], source, target, frozenset(rows), name="file")


def format_kripke(rel: KripkeRelation) -> str:
    rel = materialize(rel)
    lines = [f"kripke {rel.arity} {rel.source.size} {rel.target.size}"]
    for row in sorted(rel.rows):  # type: ignore[arg-type]
        parts = [rel.target.format_subset(row[0])] + [rel.source.format_subset(a) for a in row[1:]]
        lines.append(" ; ".join(parts))
    return "\n".join(lines) + "\n"


def row_count(rel: KripkeRelation) -> int:
    return len(materialize(rel).rows)  # type: ignore[arg-type]


def singleton_sections(rel: KripkeRelation) -> dict[int, frozenset[tuple[int, ...]]]:
    rel = _require_small(rel)
    return {x: rel.section(1 << x) for x in range(rel.target.size)}

