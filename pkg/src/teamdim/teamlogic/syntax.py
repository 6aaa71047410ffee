"""Formula trees for first-order team logic with dependency atoms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from ..errors import ArityError

Vars = tuple[str, ...]


def _vars(items) -> Vars:
    return tuple(items)


def _show(xs: Vars) -> str:
    return " ".join(xs)


# -- literals ---------------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    left: str
    right: str
    negated: bool = False

    def __str__(self) -> str:
        return f"{'!' if self.negated else ''}{self.left} = {self.right}"


@dataclass(frozen=True)
class Rel:
    name: str
    args: Vars
    negated: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", _vars(self.args))

    def __str__(self) -> str:
        return f"{'!' if self.negated else ''}{self.name}({_show(self.args)})"


# -- atoms ------------------------------------------------------------------


@dataclass(frozen=True)
class Dep:
    """dep(x̄; y): the value of y is a function of x̄. Empty x̄ means y is constant."""

    determiners: Vars
    target: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "determiners", _vars(self.determiners))

    def __str__(self) -> str:
        return f"dep({_show(self.determiners)} ; {self.target})"


@dataclass(frozen=True)
class Const:
    """Every listed variable takes a single value across the team."""

    args: Vars

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", _vars(self.args))
        if not self.args:
            raise ArityError("const needs at least one variable")

    def __str__(self) -> str:
        return f"const({_show(self.args)})"


def _same_positive_length(kind: str, left: Vars, right: Vars) -> None:
    if not left or len(left) != len(right):
        raise ArityError(f"{kind} needs two nonempty tuples of equal length")


@dataclass(frozen=True)
class Exc:
    left: Vars
    right: Vars

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", _vars(self.left))
        object.__setattr__(self, "right", _vars(self.right))
        _same_positive_length("exc", self.left, self.right)

    def __str__(self) -> str:
        return f"exc({_show(self.left)} ; {_show(self.right)})"


@dataclass(frozen=True)
class Inc:
    left: Vars
    right: Vars

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", _vars(self.left))
        object.__setattr__(self, "right", _vars(self.right))
        _same_positive_length("inc", self.left, self.right)

    def __str__(self) -> str:
        return f"inc({_show(self.left)} ; {_show(self.right)})"


@dataclass(frozen=True)
class Ano:
    """Anonymity: every x̄-value is seen with at least two y-values."""

    left: Vars
    target: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", _vars(self.left))
        if not self.left:
            raise ArityError("ano needs a nonempty left tuple")

    def __str__(self) -> str:
        return f"ano({_show(self.left)} ; {self.target})"


@dataclass(frozen=True)
class Ind:
    """left ⊥_condition right; the condition may be empty (pure independence)."""

    left: Vars
    condition: Vars
    right: Vars

    def __post_init__(self) -> None:
        for name in ("left", "condition", "right"):
            object.__setattr__(self, name, _vars(getattr(self, name)))
        if not self.left or not self.right:
            raise ArityError("ind needs nonempty outer tuples")

    def __str__(self) -> str:
        return f"ind({_show(self.left)} ; {_show(self.condition)} ; {_show(self.right)})"


@dataclass(frozen=True)
class NonEmpty:
    def __str__(self) -> str:
        return "NE"


@dataclass(frozen=True)
class Even:
    args: Vars

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", _vars(self.args))
        if not self.args:
            raise ArityError("even needs at least one variable")

    def __str__(self) -> str:
        return f"even({_show(self.args)})"


@dataclass(frozen=True)
class Half:
    args: Vars

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", _vars(self.args))
        if not self.args:
            raise ArityError("half needs at least one variable")

    def __str__(self) -> str:
        return f"half({_show(self.args)})"


# -- connectives and quantifiers ---------------------------------------------

BINARY_WORDS = {"and": "and", "or": "or", "tand": "tand", "ior": "ior", "implies": "->"}
# Lower number binds more loosely.
PRECEDENCE = {"implies": 0, "ior": 1, "or": 2, "tand": 3, "and": 4}


@dataclass(frozen=True)
class Binary:
    """``and`` (conjunction), ``or`` (lax tensor disjunction), ``tand`` (tensor
    conjunction), ``ior`` (intuitionistic disjunction), ``implies``
    (intuitionistic implication)."""

    op: str
    left: "Formula"
    right: "Formula"

    def __post_init__(self) -> None:
        if self.op not in BINARY_WORDS:
            raise ValueError(f"unknown connective {self.op!r}")

    def __str__(self) -> str:
        return f"({self.left} {BINARY_WORDS[self.op]} {self.right})"


QUANT_WORDS = ("E", "A", "E1", "A1", "d1", "Q")


@dataclass(frozen=True)
class Quant:
    """``E``/``A`` (lax ∃, ∀), ``E1``/``A1`` (single-value ∃, ∀), ``d1``
    (split by value), ``Q`` (Lindström quantifier named ``qclass``)."""

    kind: str
    variables: Vars
    body: "Formula"
    qclass: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", _vars(self.variables))
        if self.kind not in QUANT_WORDS:
            raise ValueError(f"unknown quantifier {self.kind!r}")
        if not self.variables:
            raise ArityError("a quantifier needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ArityError("quantified variables must be distinct")
        if self.kind == "Q":
            if not self.qclass:
                raise ValueError("a Lindström quantifier needs a class name")
        elif len(self.variables) != 1:
            raise ArityError(f"{self.kind} binds exactly one variable")

    def __str__(self) -> str:
        head = f"Q {self.qclass} " if self.kind == "Q" else f"{self.kind} "
        return f"({head}{_show(self.variables)} . {self.body})"


Literal = Union[Eq, Rel]
Atom = Union[Dep, Const, Exc, Inc, Ano, Ind, NonEmpty, Even, Half]
Formula = Union[Eq, Rel, Dep, Const, Exc, Inc, Ano, Ind, NonEmpty, Even, Half, Binary, Quant]

LITERAL_TYPES = (Eq, Rel)
ATOM_TYPES = (Dep, Const, Exc, Inc, Ano, Ind, NonEmpty, Even, Half)


def atom_variables(node: Formula) -> Vars:
    """Variables mentioned by a literal or atom, in order of first occurrence."""
    if isinstance(node, Eq):
        seq: tuple[str, ...] = (node.left, node.right)
    elif isinstance(node, Rel):
        seq = node.args
    elif isinstance(node, Dep):
        seq = node.determiners + (node.target,)
    elif isinstance(node, (Const, Even, Half)):
        seq = node.args
    elif isinstance(node, (Exc, Inc)):
        seq = node.left + node.right
    elif isinstance(node, Ano):
        seq = node.left + (node.target,)
    elif isinstance(node, Ind):
        seq = node.left + node.condition + node.right
    elif isinstance(node, NonEmpty):
        seq = ()
    else:
        raise TypeError(f"not a literal or atom: {node!r}")
    return tuple(dict.fromkeys(seq))


def free_variables(node: Formula) -> Vars:
    """Free variables, in order of first occurrence."""
    out: dict[str, None] = {}

    def walk(f: Formula, bound: frozenset[str]) -> None:
        if isinstance(f, Binary):
            walk(f.left, bound)
            walk(f.right, bound)
        elif isinstance(f, Quant):
            if f.kind == "d1":
                # d1 x restricts the team by the value of x; x stays free.
                if f.variables[0] not in bound:
                    out.setdefault(f.variables[0])
                walk(f.body, bound)
            else:
                walk(f.body, bound | set(f.variables))
        else:
            for v in atom_variables(f):
                if v not in bound:
                    out.setdefault(v)

    walk(node, frozenset())
    return tuple(out)


def subformulas(node: Formula) -> Iterator[Formula]:
    yield node
    if isinstance(node, Binary):
        yield from subformulas(node.left)
        yield from subformulas(node.right)
    elif isinstance(node, Quant):
        yield from subformulas(node.body)


def relation_symbols(node: Formula) -> dict[str, int]:
    return {f.name: len(f.args) for f in subformulas(node) if isinstance(f, Rel)}


def uses(node: Formula, *kinds: type) -> bool:
    return any(isinstance(f, kinds) for f in subformulas(node))


def uses_connective(node: Formula, op: str) -> bool:
    return any(isinstance(f, Binary) and f.op == op for f in subformulas(node))


def uses_quantifier(node: Formula, kind: str) -> bool:
    return any(isinstance(f, Quant) and f.kind == kind for f in subformulas(node))


def depth(node: Formula) -> int:
    if isinstance(node, Binary):
        return 1 + max(depth(node.left), depth(node.right))
    if isinstance(node, Quant):
        return 1 + depth(node.body)
    return 0


# -- builders used by the translation catalog ---------------------------------


def conj(*parts: Formula) -> Formula:
    """Right-nested conjunction; a single part is returned unchanged."""
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Binary("and", p, out)
    return out


def disj(*parts: Formula) -> Formula:
    if not parts:
        raise ValueError("empty disjunction")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Binary("or", p, out)
    return out


def exists(variables: Vars | str, body: Formula) -> Formula:
    """Nested lax existentials, outermost first."""
    names = (variables,) if isinstance(variables, str) else tuple(variables)
    for v in reversed(names):
        body = Quant("E", (v,), body)
    return body


def forall(variables: Vars | str, body: Formula) -> Formula:
    names = (variables,) if isinstance(variables, str) else tuple(variables)
    for v in reversed(names):
        body = Quant("A", (v,), body)
    return body


def tuples_equal(left: Vars, right: Vars) -> Formula:
    """Componentwise equality, a conjunction of equalities."""
    return conj(*(Eq(a, b) for a, b in zip(left, right, strict=True)))


def tuples_differ(left: Vars, right: Vars) -> Formula:
    """Some component differs, a disjunction of negated equalities."""
    return disj(*(Eq(a, b, negated=True) for a, b in zip(left, right, strict=True)))
