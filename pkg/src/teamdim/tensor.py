"""Binary tensor operators on families and Kleene three-valued characteristic functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .errors import BaseMismatchError, EmptyFamilyError
from .setfam import BaseSet, Family, Interval

U = "u"
Trit = Union[int, str]


@dataclass(frozen=True)
class BoolOp2:
    """A binary truth function given by its outputs on 00, 01, 10, 11."""

    table: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        table = tuple(int(v) for v in self.table)
        if len(table) != 4 or any(v not in (0, 1) for v in table):
            raise ValueError("a binary operation needs four 0/1 outputs")
        object.__setattr__(self, "table", table)

    def __call__(self, a: int, b: int) -> int:
        return self.table[2 * a + b]

    @property
    def code(self) -> str:
        return "".join(str(v) for v in self.table)

    def is_monotone(self) -> bool:
        return all(
            self(a, b) <= self(a2, b2)
            for a in (0, 1) for b in (0, 1) for a2 in (a, 1) for b2 in (b, 1)
        )

    def is_commutative(self) -> bool:
        return self(0, 1) == self(1, 0)

    def is_associative(self) -> bool:
        return all(
            self(self(a, b), c) == self(a, self(b, c))
            for a in (0, 1) for b in (0, 1) for c in (0, 1)
        )

    def on_sets(self, a: int, b: int, full: int) -> int:
        """Apply the operation elementwise to two bitmasks."""
        out = 0
        for bit_a, bit_b, value in ((0, 0, self.table[0]), (0, 1, self.table[1]),
                                    (1, 0, self.table[2]), (1, 1, self.table[3])):
            if value:
                out |= (a if bit_a else ~a) & (b if bit_b else ~b)
        return out & full


OP_NAMES: dict[str, str] = {
    "false": "0000",
    "nor": "1000",
    "rminus": "0100",  # q and not p
    "notp": "1100",
    "minus": "0010",  # p and not q
    "notq": "1010",
    "xor": "0110",
    "nand": "1110",
    "and": "0001",
    "iff": "1001",
    "q": "0101",
    "implies": "1101",  # p -> q
    "p": "0011",
    "converse": "1011",  # q -> p
    "or": "0111",
    "true": "1111",
}


def op(spec: str | BoolOp2) -> BoolOp2:
    """Look up an operation by alias or by its four-bit table such as ``0111``."""
    if isinstance(spec, BoolOp2):
        return spec
    code = OP_NAMES.get(spec, spec).replace(" ", "")
    if len(code) != 4 or set(code) - {"0", "1"}:
        raise ValueError(f"unknown operation {spec!r}")
    return BoolOp2(tuple(int(c) for c in code))  # type: ignore[arg-type]


ALL_OPS = tuple(BoolOp2(tuple((i >> s) & 1 for s in (3, 2, 1, 0))) for i in range(16))  # type: ignore[misc]
OR = op("or")
AND = op("and")


@dataclass(frozen=True)
class KleeneChar:
    base: BaseSet
    values: tuple[Trit, ...]

    def __getitem__(self, element: int) -> Trit:
        return self.values[element]

    def ones(self) -> int:
        return sum(1 << i for i, v in enumerate(self.values) if v == 1)

    def not_zeros(self) -> int:
        return sum(1 << i for i, v in enumerate(self.values) if v != 0)


def char_function(fam: Family) -> KleeneChar:
    """Per element: 1 if every member has it, 0 if none has it, else u."""
    if not fam:
        raise EmptyFamilyError("the characteristic function of an empty family is undefined")
    always = fam.intersection_of_members()
    ever = fam.union_of_members()
    values: list[Trit] = []
    for i in range(fam.base.size):
        if always >> i & 1:
            values.append(1)
        elif ever >> i & 1:
            values.append(U)
        else:
            values.append(0)
    return KleeneChar(fam.base, tuple(values))


def _spread(value: Trit) -> tuple[int, ...]:
    return (0, 1) if value == U else (int(value),)


def kleene_extend(operation: BoolOp2) -> Callable[[Trit, Trit], Trit]:
    """Three-valued extension: the result is u exactly when the possible outputs disagree."""

    def extended(a: Trit, b: Trit) -> Trit:
        outs = {operation(x, y) for x in _spread(a) for y in _spread(b)}
        return outs.pop() if len(outs) == 1 else U

    return extended


def _check_bases(a: Family, b: Family) -> None:
    if not a.base.same_as(b.base):
        raise BaseMismatchError("tensor operands live on different bases")


def tensor_apply(operation: BoolOp2 | str, left: Family, right: Family) -> Family:
    operation = op(operation)
    _check_bases(left, right)
    full = left.base.full
    return Family(left.base, {operation.on_sets(a, b, full) for a in left for b in right})


def tensor_negation(fam: Family) -> Family:
    full = fam.base.full
    return Family(fam.base, (full & ~m for m in fam))


def tensor_interval_apply(operation: BoolOp2 | str, first: Interval, second: Interval, base: BaseSet | int) -> Interval:
    """Closed form of the tensor operator on two intervals via Kleene extension."""
    operation = op(operation)
    if isinstance(base, int):
        base = BaseSet(base)
    for piece in (first, second):
        base.check(piece.lower)
        base.check(piece.upper)
        if piece.lower & ~piece.upper:
            raise ValueError("interval bounds are not nested")
    ext = kleene_extend(operation)
    ones = maybe = 0
    for i in range(base.size):
        a = _interval_trit(first, i)
        b = _interval_trit(second, i)
        w = ext(a, b)
        if w == 1:
            ones |= 1 << i
        if w != 0:
            maybe |= 1 << i
    return Interval(ones, maybe)


def _interval_trit(piece: Interval, i: int) -> Trit:
    if piece.lower >> i & 1:
        return 1
    if piece.upper >> i & 1:
        return U
    return 0


def pointwise(operation: BoolOp2, left: KleeneChar, right: KleeneChar) -> KleeneChar:
    ext = kleene_extend(operation)
    return KleeneChar(left.base, tuple(ext(a, b) for a, b in zip(left.values, right.values)))
