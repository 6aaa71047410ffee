"""Brute-force reference implementations used to cross-check the library.

Everything here works on plain Python frozensets of frozensets and shares no
code with ``teamdim``; the definitions are applied literally.
"""

from __future__ import annotations

from itertools import chain, combinations, product


def powerset(elements):
    elements = list(elements)
    return [frozenset(c) for c in chain.from_iterable(combinations(elements, k) for k in range(len(elements) + 1))]


def between(lower, upper):
    """All C with lower ⊆ C ⊆ upper."""
    free = sorted(upper - lower)
    return [lower | s for s in powerset(free)]


def as_sets(fam) -> frozenset:
    """Library family (int masks) to a frozenset of frozensets."""
    return frozenset(frozenset(i for i in range(fam.base.size) if m >> i & 1) for m in fam)


def is_convex(F) -> bool:
    return all(frozenset(c) in F for a in F for b in F if a <= b for c in between(a, b))


def shadow(F, top):
    return frozenset(b for b in F if b <= top and all(c in F for c in between(b, top)))


def dual_shadow(F, bottom):
    return frozenset(b for b in F if bottom <= b and all(c in F for c in between(bottom, b)))


def _min_cover(F, pieces) -> int:
    F = frozenset(F)
    if not F:
        return 0
    pieces = [p for p in set(pieces) if p]
    for k in range(1, len(F) + 1):
        for combo in combinations(pieces, k):
            if frozenset().union(*combo) == F:
                return k
    raise AssertionError("no cover found")


def upper_dimension(F) -> int:
    return _min_cover(F, [shadow(F, a) for a in F])


def dual_upper_dimension(F) -> int:
    return _min_cover(F, [dual_shadow(F, a) for a in F])


def intervals_inside(F):
    out = []
    for lo in F:
        for hi in F:
            if lo <= hi:
                members = frozenset(between(lo, hi))
                if members <= F:
                    out.append(members)
    return out


def cylindrical_dimension(F) -> int:
    return _min_cover(F, intervals_inside(F))


def vc_dimension(F, base_size: int) -> int:
    best = 0
    for k in range(base_size + 1):
        for A in combinations(range(base_size), k):
            A = frozenset(A)
            if {h & A for h in F} == set(powerset(A)):
                best = k
    return best


# -- team semantics reference for plain atoms ---------------------------------


def dep_holds(team, xs, y) -> bool:
    return all(s[y] == t[y] for s in team for t in team if all(s[x] == t[x] for x in xs))


def inc_holds(team, xs, ys) -> bool:
    return all(any(tuple(s[x] for x in xs) == tuple(t[y] for y in ys) for t in team) for s in team)


def exc_holds(team, xs, ys) -> bool:
    return all(tuple(s[x] for x in xs) != tuple(t[y] for y in ys) for s in team for t in team)


def ind_holds(team, xs, zs, ys) -> bool:
    for s in team:
        for t in team:
            if all(s[z] == t[z] for z in zs):
                if not any(
                    all(u[x] == s[x] for x in xs) and all(u[y] == t[y] for y in ys) and all(u[z] == s[z] for z in zs)
                    for u in team
                ):
                    return False
    return True


def all_teams(size: int, width: int):
    rows = list(product(range(size), repeat=width))
    return [frozenset(c) for c in chain.from_iterable(combinations(rows, k) for k in range(len(rows) + 1))]
