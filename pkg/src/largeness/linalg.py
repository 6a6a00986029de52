"""Exact integer linear algebra: Smith normal form and friends.

Matrices are plain lists of rows of Python ints.  Nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)] for row in a]


def determinant(m: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]], transforms: bool = True):
    """Return ``(D, U, V)`` with ``U * M * V == D``.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``; ``U`` and ``V``
    are unimodular.  Pivots are chosen by smallest nonzero magnitude, first in
    row-major order, so ``D`` is deterministic.  With ``transforms=False`` the
    returned ``U`` and ``V`` are ``None``.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    U = identity(rows) if transforms else None
    V = identity(cols) if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        if q == 0:
            return
        rs, rd = a[src], a[dst]
        for j in range(cols):
            if rs[j]:
                rd[j] -= q * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(rows):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(dst, src, q):  # col dst -= q * col src
        if q == 0:
            return
        for r in a:
            if r[src]:
                r[dst] -= q * r[src]
        if V is not None:
            for r in V:
                if r[src]:
                    r[dst] -= q * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                ri = a[i]
                for j in range(t, cols):
                    v = ri[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            # divisibility: fold an offending row into row t and go again
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
    return a, U, V


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...] = ()

    @property
    def min_generators(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.rank
        return " x ".join(parts) if parts else "1"


def _eliminate_units(rel: Sequence[Sequence[int]], ngens: int) -> tuple[IntMatrix, int]:
    # sparse pass: a relation with a +-1 entry lets that generator go,
    # which leaves the cokernel unchanged
    rows = [{j: v for j, v in enumerate(r) if v} for r in rel]
    rows = [r for r in rows if r]
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            cols.setdefault(j, set()).add(i)
    alive_rows = set(range(len(rows)))
    alive_cols = set(range(ngens))
    changed = True
    while changed:
        changed = False
        for i in sorted(alive_rows, key=lambda i: (len(rows[i]), i)):
            r = rows[i]
            unit = None
            for j in sorted(r, key=lambda j: len(cols[j])):
                if abs(r[j]) == 1:
                    unit = j
                    break
            if unit is None:
                continue
            u = r[unit]
            for k in sorted(cols[unit] - {i}):
                rk = rows[k]
                q = rk[unit] * u  # u is its own inverse
                for j, v in r.items():
                    nv = rk.get(j, 0) - q * v
                    if nv:
                        if j not in rk:
                            cols[j].add(k)
                        rk[j] = nv
                    elif j in rk:
                        del rk[j]
                        cols[j].discard(k)
                if not rk:
                    alive_rows.discard(k)
            for j in r:
                cols[j].discard(i)
            alive_rows.discard(i)
            alive_cols.discard(unit)
            del cols[unit]
            changed = True
            break
    col_list = sorted(alive_cols)
    pos = {j: n for n, j in enumerate(col_list)}
    dense = []
    for i in sorted(alive_rows):
        row = [0] * len(col_list)
        for j, v in rows[i].items():
            row[pos[j]] = v
        dense.append(row)
    return dense, len(col_list)


def invariants_from_matrix(rel: Sequence[Sequence[int]], ngens: int) -> AbelianInvariants:
    """Invariants of the cokernel of a relation matrix (rows = relations)."""
    rel, ngens = _eliminate_units(rel, ngens)
    if not rel or ngens == 0:
        return AbelianInvariants(ngens, ())
    d, _, _ = smith_normal_form(rel, transforms=False)
    diag = [d[i][i] for i in range(min(len(d), ngens))]
    nonzero = [x for x in diag if x]
    torsion = tuple(x for x in nonzero if x > 1)
    return AbelianInvariants(ngens - len(nonzero), torsion)


def relation_matrix(pres) -> IntMatrix:
    n = pres.ngens
    out = []
    for r in pres.relators:
        row = [0] * n
        for g, e in r.runs:
            row[g] += e
        out.append(row)
    return out


def abelian_invariants(pres) -> AbelianInvariants:
    """Invariants of ``G/G'`` for a presentation ``pres``."""
    return invariants_from_matrix(relation_matrix(pres), pres.ngens)


def integer_kernel(rel: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Basis (as rows) of ``{x in Z^ncols : rel * x = 0}``.

    The lattice returned is saturated, so each basis vector is primitive.
    """
    if not rel:
        return identity(ncols)
    d, _, v = smith_normal_form(rel, transforms=True)
    r = sum(1 for i in range(min(len(d), ncols)) if d[i][i])
    return [[v[i][j] for i in range(ncols)] for j in range(r, ncols)]


def char_poly(m: Sequence[Sequence[int]]) -> list[int]:
    """Characteristic polynomial ``det(tI - M)``, low degree first.

    Faddeev-LeVerrier with exact integer division.
    """
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("char_poly needs a square matrix")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = identity(n)
    a = [list(r) for r in m]
    for k in range(1, n + 1):
        am = matmul(a, mk)
        tr = sum(am[i][i] for i in range(n))
        c = -tr // k
        assert c * k == -tr
        coeffs[n - k] = c
        mk = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def content(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
