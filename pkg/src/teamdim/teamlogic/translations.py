"""Catalog of known inter-definitions between atoms, as formula pairs.

Each entry pairs an atom (or other formula) with a defining formula over the
same free variables. Tuple lengths are parameters; the minimal instances use
length 1 everywhere.
"""

from __future__ import annotations

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
    Quant,
    conj,
    disj,
    exists,
    forall,
    tuples_differ,
    tuples_equal,
)


@dataclass(frozen=True)
class Translation:
    name: str
    target: Formula
    definition: Formula
    context: tuple[str, ...]
    description: str


def _tuple(stem: str, k: int) -> tuple[str, ...]:
    return (stem,) if k == 1 else tuple(f"{stem}{i}" for i in range(1, k + 1))


def _dep_all(determiners, targets) -> Formula:
    """Dependence on a tuple of targets, one atom per target."""
    return conj(*(Dep(determiners, t) for t in targets))


def _neq(a: str, b: str) -> Formula:
    return Eq(a, b, negated=True)


def dep_from_exclusion(k: int = 1) -> Translation:
    xs = _tuple("x", k)
    definition = forall("z", disj(Eq("z", "y"), Exc(xs + ("z",), xs + ("y",))))
    return Translation("dep-from-exc", Dep(xs, "y"), definition, xs + ("y",),
                       "dependence from exclusion of one higher arity")


def dep_from_independence(k: int = 1) -> Translation:
    xs, zs = _tuple("x", k), _tuple("z", k)
    body = conj(disj(tuples_differ(zs, xs), Eq("w", "y")), Ind(zs + ("y",), (), zs + ("w",)))
    definition = forall(zs, exists("w", body))
    return Translation("dep-from-ind", Dep(xs, "y"), definition, xs + ("y",),
                       "dependence from pure independence")


def exc_from_dep(k: int = 1) -> Translation:
    t1, t2, zs = _tuple("s", k), _tuple("t", k), _tuple("z", k)
    choice = disj(
        conj(Eq("u1", "u2"), tuples_differ(zs, t1)),
        conj(_neq("u1", "u2"), tuples_differ(zs, t2)),
    )
    definition = forall(zs, exists(("u1", "u2"), conj(Dep(zs, "u1"), Dep(zs, "u2"), choice)))
    return Translation("exc-from-dep", Exc(t1, t2), definition, t1 + t2,
                       "exclusion from dependence")


def exc_from_inc_ind(k: int = 1) -> Translation:
    xs, ys, zs = _tuple("x", k), _tuple("y", k), _tuple("z", k)
    body = conj(Inc(xs, zs), Ind(ys, (), zs), tuples_differ(ys, zs))
    return Translation("exc-from-inc-ind", Exc(xs, ys), exists(zs, body), xs + ys,
                       "exclusion from inclusion and pure independence")


def inc_from_independence(k: int = 1) -> Translation:
    t1, t2, zs = _tuple("s", k), _tuple("t", k), _tuple("z", k)
    body = disj(
        conj(tuples_differ(zs, t1), tuples_differ(zs, t2)),
        conj(_neq("v1", "v2"), tuples_differ(zs, t2)),
        conj(disj(Eq("v1", "v2"), tuples_equal(zs, t2)), Ind(zs, (), ("v1", "v2"))),
    )
    definition = forall(("v1", "v2") + zs, body)
    return Translation("inc-from-ind", Inc(t1, t2), definition, t1 + t2,
                       "inclusion from pure independence")


def inc_from_anonymity(k: int = 1) -> Translation:
    t1, t2, ys = _tuple("s", k), _tuple("t", k), _tuple("y", k)
    one_point = exists("a", forall("b", Eq("a", "b")))
    picked = disj(
        conj(Eq("w1", "w2"), tuples_equal(ys, t1)),
        conj(_neq("w1", "w2"), tuples_equal(ys, t2)),
    )
    rest = forall(("w1", "w2"), exists(ys + ("z",), conj(picked, Ano(ys, "z"))))
    return Translation("inc-from-ano", Inc(t1, t2), disj(one_point, rest), t1 + t2,
                       "inclusion from anonymity")


def ano_from_inclusion(k: int = 1) -> Translation:
    xs = _tuple("x", k)
    definition = exists("u", conj(_neq("u", "y"), Inc(xs + ("u",), xs + ("y",))))
    return Translation("ano-from-inc", Ano(xs, "y"), definition, xs + ("y",),
                       "anonymity from inclusion of one higher arity")


def cond_ind_from_dep_exc_inc(k: int = 1, l: int = 1, m: int = 1) -> Translation:
    t1, t2, t3 = _tuple("a", k), _tuple("b", l), _tuple("c", m)
    ps, qs, rs = _tuple("p", k), _tuple("q", l), _tuple("r", m)
    pqr = ps + qs + rs
    us = ("u1", "u2", "u3", "u4")
    cases = disj(
        conj(_neq("u1", "u2"), Exc(ps + qs, t1 + t2)),
        conj(Eq("u1", "u2"), _neq("u3", "u4"), Exc(ps + rs, t1 + t3)),
        conj(Eq("u1", "u2"), Eq("u3", "u4"), Inc(pqr, t1 + t2 + t3)),
    )
    body = conj(*(Dep(pqr, u) for u in us), cases)
    definition = forall(pqr, exists(us, body))
    return Translation("ind-from-dep-exc-inc", Ind(t2, t1, t3), definition, t1 + t2 + t3,
                       "conditional independence from dependence, exclusion and inclusion")


def cond_ind_from_pure(k: int = 1, l: int = 1, m: int = 1) -> Translation:
    xs, ys, zs = _tuple("x", k), _tuple("y", l), _tuple("z", m)
    ps, qs = _tuple("p", m), _tuple("q", m)
    us, ws = _tuple("u", k), _tuple("w", l)
    off = disj(tuples_differ(zs, ps), tuples_differ(zs, qs))
    body = conj(
        disj(off, tuples_equal(us + ws, xs + ys)),
        disj(off, tuples_differ(ps, qs), tuples_equal(zs, ps)),
        Ind(ps + us, (), qs + ws),
    )
    definition = forall(ps + qs, exists(us, exists(ws, body)))
    return Translation("ind-from-pure-ind", Ind(xs, zs, ys), definition, xs + zs + ys,
                       "conditional independence from pure independence")


def half_from_dep_exc(k: int = 1) -> Translation:
    xs, ys = _tuple("x", k), _tuple("y", k)
    definition = exists(ys, conj(_dep_all(ys, xs), Exc(xs, ys)))
    return Translation("half-from-dep-exc", Half(xs), definition, xs,
                       "at-most-half from dependence and exclusion")


def even_from_ind_inc_exc_dep(k: int = 1) -> Translation:
    xs, ys, zs = _tuple("x", k), _tuple("y", k), _tuple("z", k)
    body = conj(
        Ind(ys + zs, (), xs),
        Inc(ys, xs),
        Inc(zs, xs),
        disj(conj(Eq("u", "v"), Inc(xs, ys)), conj(_neq("u", "v"), Inc(xs, zs))),
        Exc(ys, zs),
        _dep_all(zs, ys),
        _dep_all(ys, zs),
    )
    definition = exists(("u", "v") + ys + zs, body)
    return Translation("even-from-atoms", Even(xs), definition, xs,
                       "parity from independence, inclusion, exclusion and dependence")


# -- single-value quantifiers and implication ---------------------------------


def forall_one_by_implication(phi: Formula, x: str, ctx: tuple[str, ...], tag: str) -> Translation:
    target = Quant("A1", (x,), phi)
    definition = Quant("A", (x,), Binary("implies", Const((x,)), phi))
    return Translation(f"A1-by-implies[{tag}]", target, definition, ctx,
                       "single-value universal via constancy and implication")


def split_by_forall_one(phi: Formula, x: str, fresh: str, ctx: tuple[str, ...], tag: str) -> Translation:
    target = Quant("d1", (x,), phi)
    definition = Quant("A1", (fresh,), disj(_neq(x, fresh), phi))
    return Translation(f"d1-by-A1[{tag}]", target, definition, ctx,
                       "value split via single-value universal")


def dep_by_split() -> Translation:
    return Translation("dep-by-d1", Dep(("x",), "y"), Quant("d1", ("x",), Const(("y",))), ("x", "y"),
                       "dependence via value split of constancy")


def dep_by_forall_one() -> Translation:
    definition = Quant("A1", ("z",), disj(_neq("z", "x"), Const(("y",))))
    return Translation("dep-by-A1", Dep(("x",), "y"), definition, ("x", "y"),
                       "dependence via single-value universal")


def dep_by_implication() -> Translation:
    definition = Binary("implies", Const(("x",)), Const(("y",)))
    return Translation("dep-by-implies", Dep(("x",), "y"), definition, ("x", "y"),
                       "dependence via implication between constancy atoms")


def exists_one_by_constancy() -> Translation:
    phi = disj(Eq("x", "y"), Exc(("x",), ("y",)))
    target = Quant("E1", ("x",), phi)
    definition = Quant("E", ("x",), conj(Const(("x",)), phi))
    return Translation("E1-by-const", target, definition, ("y",),
                       "single-value existential via constancy")


def translation_catalog(k: int = 1) -> list[Translation]:
    """The atom inter-definitions at tuple length ``k``."""
    return [
        dep_from_exclusion(k),
        dep_from_independence(k),
        exc_from_dep(k),
        exc_from_inc_ind(k),
        inc_from_independence(k),
        inc_from_anonymity(k),
        ano_from_inclusion(k),
        cond_ind_from_dep_exc_inc(k, k, k),
        cond_ind_from_pure(k, k, k),
    ]


def single_value_catalog() -> list[Translation]:
    return [
        forall_one_by_implication(Dep(("y",), "x"), "x", ("y",), "dep(y;x)"),
        forall_one_by_implication(disj(Eq("x", "y"), Const(("y",))), "x", ("y",), "x=y or const(y)"),
        split_by_forall_one(Const(("z",)), "x", "y", ("x", "z"), "const(z)"),
        split_by_forall_one(disj(Eq("x", "z"), Dep(("z",), "w")), "x", "y", ("x", "z", "w"), "x=z or dep(z;w)"),
        dep_by_split(),
        dep_by_forall_one(),
        dep_by_implication(),
        exists_one_by_constancy(),
    ]


def counting_catalog(k: int = 1) -> list[Translation]:
    return [half_from_dep_exc(k), even_from_ind_inc_exc_dep(k)]
