"""Small permutation groups held as explicit element sets.

Permutations are tuples ``p`` with ``p[i]`` the image of point ``i``.
Products compose left to right: ``mul(p, q)`` applies ``p`` first.  Every
routine here enumerates the whole group, so callers guard the order.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def identity(n: int) -> Perm:
    return tuple(range(n))


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    o = 1
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            o = o * k // gcd(o, k)
    return o


def commutator(p: Perm, q: Perm) -> Perm:
    return mul(mul(p, q), mul(inv(p), inv(q)))


class OrderGuard(RuntimeError):
    pass


def closure(gens: Sequence[Perm], degree: int, limit: int | None = None) -> list[Perm]:
    """All elements of the group generated by ``gens``, identity first, in BFS order."""
    e = identity(degree)
    seen = {e}
    out = [e]
    i = 0
    while i < len(out):
        x = out[i]
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                out.append(y)
                if limit is not None and len(out) > limit:
                    raise OrderGuard(f"group order exceeds {limit}")
        i += 1
    return out


def is_abelian(gens: Sequence[Perm]) -> bool:
    return all(mul(a, b) == mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


def normal_closure(seeds: Iterable[Perm], gens: Sequence[Perm], degree: int) -> tuple[list[Perm], list[Perm]]:
    """Elements and a generating set of the normal closure of ``seeds``."""
    e = identity(degree)
    gen_set: list[Perm] = []
    elems = {e}
    order = [e]

    def absorb(x: Perm):
        if x in elems:
            return
        gen_set.append(x)
        # extend the subgroup by x
        i = 0
        while i < len(order):
            for g in gen_set:
                y = mul(order[i], g)
                if y not in elems:
                    elems.add(y)
                    order.append(y)
            i += 1

    pending = list(seeds)
    while pending:
        x = pending.pop()
        if x in elems:
            continue
        absorb(x)
        for g in gens:
            pending.append(mul(mul(inv(g), x), g))
    return order, gen_set


def derived_subgroup(gens: Sequence[Perm], degree: int) -> tuple[list[Perm], list[Perm]]:
    seeds = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(seeds, gens, degree)


def is_metabelian(gens: Sequence[Perm], degree: int) -> bool:
    _, dgens = derived_subgroup(gens, degree)
    return is_abelian(dgens)


def is_metacyclic(elements: Sequence[Perm], gens: Sequence[Perm]) -> bool:
    """Search for a cyclic normal subgroup with cyclic quotient."""
    order = len(elements)
    done: set[frozenset] = set()
    for x in elements:
        # the cyclic subgroup <x>
        cyc = [identity(len(x))]
        y = x
        while y != cyc[0]:
            cyc.append(y)
            y = mul(y, x)
        key = frozenset(cyc)
        if key in done:
            continue
        done.add(key)
        if any(mul(mul(inv(g), x), g) not in key for g in gens):
            continue
        need = order // len(cyc)
        if need == 1:
            return True
        for z in elements:
            # order of z modulo <x>
            k, w = 1, z
            while w not in key:
                w = mul(w, z)
                k += 1
            if k == need:
                return True
    return False
