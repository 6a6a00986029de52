"""Coset enumeration, low-index subgroups and Reidemeister-Schreier rewriting.

Columns of a coset table are ordered ``g0, g0^-1, g1, g1^-1, ...``; a table
is *standardized* when cosets are numbered in order of first appearance
scanning rows top to bottom and columns left to right from coset 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .alexander import ResourceLimit
from .presentation import Presentation
from .words import Word

DEFAULT_MAX_COSETS = 1_000_000


def _columns(w: Word) -> list[int]:
    out = []
    for g, e in w.runs:
        out.extend([2 * g if e > 0 else 2 * g + 1] * abs(e))
    return out


def _inv(col: int) -> int:
    return col ^ 1


@dataclass(frozen=True)
class CosetTable:
    """Completed, standardized action of the generators on the cosets of a subgroup."""

    action: tuple[tuple[int, ...], ...]  # action[g][c]: coset c times generator g
    origin: Presentation
    subgroup_gens: tuple[Word, ...] = ()

    @property
    def index(self) -> int:
        return len(self.action[0]) if self.action else 1

    def inverse_action(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for perm in self.action:
            inv = [0] * len(perm)
            for c, d in enumerate(perm):
                inv[d] = c
            out.append(tuple(inv))
        return tuple(out)

    def full_table(self) -> list[list[int]]:
        inv = self.inverse_action()
        n = self.index
        return [[(self.action[k // 2] if k % 2 == 0 else inv[k // 2])[c] for k in range(2 * len(self.action))]
                for c in range(n)]

    def trace(self, w: Word, start: int = 0) -> int:
        inv = None
        c = start
        for g, e in w.runs:
            if e > 0:
                perm = self.action[g]
            else:
                if inv is None:
                    inv = self.inverse_action()
                perm = inv[g]
            for _ in range(abs(e)):
                c = perm[c]
        return c

    def check(self) -> list[str]:
        """Return the list of violated invariants (empty when valid)."""
        problems = []
        n = self.index
        if len(self.action) != self.origin.ngens:
            problems.append("action has wrong number of generators")
            return problems
        for g, perm in enumerate(self.action):
            if sorted(perm) != list(range(n)):
                problems.append(f"generator {self.origin.names[g]} does not act bijectively")
        if problems:
            return problems
        for k, r in enumerate(self.origin.relators):
            for c in range(n):
                if self.trace(r, c) != c:
                    problems.append(f"relator {k} moves coset {c}")
                    break
        for w in self.subgroup_gens:
            if self.trace(w, 0) != 0:
                problems.append("a subgroup generator does not fix coset 0")
                break
        if standardize(self.full_table()) != self.full_table():
            problems.append("table is not standardized")
        return problems

    def key(self) -> tuple:
        return tuple(x for row in self.full_table() for x in row)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "action": [list(p) for p in self.action],
            "subgroup_generators": [self.origin.format_word(w) for w in self.subgroup_gens],
        }

    @classmethod
    def from_json(cls, data: dict, origin: Presentation) -> "CosetTable":
        from .parsing import parse_word

        action = tuple(tuple(int(x) for x in p) for p in data["action"])
        gens = tuple(parse_word(s, origin.names) for s in data.get("subgroup_generators", []))
        return cls(action, origin, gens)


def standardize(table: Sequence[Sequence[int]], start: int = 0) -> list[list[int]]:
    """Renumber a complete table (rows = cosets, 2m columns) from ``start``."""
    order = [start]
    num = {start: 0}
    i = 0
    while i < len(order):
        row = table[order[i]]
        for d in row:
            if d not in num:
                num[d] = len(order)
                order.append(d)
        i += 1
    return [[num[d] for d in table[c]] for c in order]


def _from_full(full: Sequence[Sequence[int]], origin: Presentation, gens: Sequence[Word]) -> CosetTable:
    m = origin.ngens
    action = tuple(tuple(row[2 * g] for row in full) for g in range(m))
    return CosetTable(action, origin, tuple(gens))


def whole_group_table(p: Presentation) -> CosetTable:
    return CosetTable(tuple((0,) for _ in range(p.ngens)), p, tuple(Word.gen(g) for g in range(p.ngens)))


# --- Todd-Coxeter (HLT with coincidence processing) --------------------------------


def todd_coxeter(p: Presentation, gens: Sequence[Word] = (), max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of ``<gens>`` in the group presented by ``p``.

    Raises :class:`ResourceLimit` when more than ``max_cosets`` cosets would
    be defined; that says nothing about whether the index is finite.
    """
    m = p.ngens
    if m == 0:
        return CosetTable((), p, tuple(gens))
    ncol = 2 * m
    rels = [_columns(r) for r in p.relators]
    sgens = [_columns(w) for w in gens]
    table: list[list[int]] = [[-1] * ncol]
    parent = [0]

    def find(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c: int, x: int) -> int:
        if len(table) >= max_cosets:
            raise ResourceLimit(f"coset enumeration exceeded {max_cosets} cosets")
        d = len(table)
        table.append([-1] * ncol)
        parent.append(d)
        table[c][x] = d
        table[d][_inv(x)] = c
        return d

    def coincidence(a: int, b: int):
        queue: list[int] = []

        def merge(k: int, l: int):
            k, l = find(k), find(l)
            if k != l:
                lo, hi = min(k, l), max(k, l)
                parent[hi] = lo
                queue.append(hi)

        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(ncol):
                d = row[x]
                if d < 0:
                    continue
                ix = _inv(x)
                if table[d][ix] == g:
                    table[d][ix] = -1
                mu, nu = find(g), find(d)
                if table[mu][x] >= 0:
                    merge(nu, table[mu][x])
                elif table[nu][ix] >= 0:
                    merge(mu, table[nu][ix])
                else:
                    table[mu][x] = nu
                    table[nu][ix] = mu

    def scan_and_fill(a: int, w: list[int]):
        L = len(w)
        f, i = a, 0
        b, j = a, L - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][_inv(w[j])] >= 0:
                b = table[b][_inv(w[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][_inv(w[i])] = f
                return
            define(f, w[i])

    for w in sgens:
        if w:
            scan_and_fill(0, w)
            if find(0) != 0:
                break
    a = 0
    while a < len(table):
        if parent[a] == a:
            for w in rels:
                scan_and_fill(a, w)
                if parent[a] != a:
                    break
            if parent[a] == a:
                for x in range(ncol):
                    if table[a][x] < 0:
                        define(a, x)
        a += 1
    live = [c for c in range(len(table)) if parent[c] == c]
    full = {c: [find(d) for d in table[c]] for c in live}
    std = standardize(_dense(full, live), 0)
    return _from_full(std, p, gens)


def _dense(full: dict[int, list[int]], live: list[int]) -> list[list[int]]:
    pos = {c: i for i, c in enumerate(live)}
    return [[pos[d] for d in full[c]] for c in live]


# --- Schreier transversal and Reidemeister-Schreier ------------------------------


def schreier_tree(t: CosetTable) -> tuple[list[Word], set[tuple[int, int]]]:
    """Coset representatives and the set of tree edges ``(coset, generator)``.

    A tree edge ``(c, g)`` means the positive ``g``-edge out of ``c`` lies in
    the spanning tree read off the standardized table.
    """
    full = t.full_table()
    n = t.index
    reps: list[Word | None] = [None] * n
    reps[0] = Word()
    tree: set[tuple[int, int]] = set()
    for c in range(n):
        for col, d in enumerate(full[c]):
            if reps[d] is None:
                g = col // 2
                if col % 2 == 0:
                    reps[d] = reps[c] * Word.gen(g)
                    tree.add((c, g))
                else:
                    reps[d] = reps[c] * Word.gen(g, -1)
                    tree.add((d, g))
    return reps, tree  # type: ignore[return-value]


def schreier_generators(t: CosetTable) -> list[Word]:
    """Words in the ambient generators that generate the subgroup, one per non-tree edge."""
    reps, tree = schreier_tree(t)
    out = []
    for c in range(t.index):
        for g in range(t.origin.ngens):
            if (c, g) in tree:
                continue
            d = t.action[g][c]
            out.append(reps[c] * Word.gen(g) * reps[d].inverse())
    return out


@dataclass
class Rewriter:
    """Reidemeister-Schreier rewriting against a fixed table."""

    table: CosetTable

    def __post_init__(self):
        t = self.table
        self.reps, self.tree = schreier_tree(t)
        self.symbol: dict[tuple[int, int], int] = {}
        for c in range(t.index):
            for g in range(t.origin.ngens):
                if (c, g) not in self.tree:
                    self.symbol[(c, g)] = len(self.symbol)
        self.inv = t.inverse_action()

    @property
    def ngens(self) -> int:
        return len(self.symbol)

    def names(self) -> tuple[str, ...]:
        base = self.table.origin.names
        out = []
        used = set()
        for (c, g) in self.symbol:
            name = f"{base[g]}_{c}"
            while name in used:
                name += "_"
            used.add(name)
            out.append(name)
        return tuple(out)

    def rewrite(self, w: Word, start: int = 0) -> tuple[Word, int]:
        runs = []
        c = start
        act = self.table.action
        for g, e in w.runs:
            if e > 0:
                for _ in range(e):
                    s = self.symbol.get((c, g))
                    if s is not None:
                        runs.append((s, 1))
                    c = act[g][c]
            else:
                for _ in range(-e):
                    d = self.inv[g][c]
                    s = self.symbol.get((d, g))
                    if s is not None:
                        runs.append((s, -1))
                    c = d
        return Word(tuple(runs)), c

    def presentation(self) -> Presentation:
        rels = []
        for c in range(self.table.index):
            for r in self.table.origin.relators:
                w, end = self.rewrite(r, c)
                assert end == c
                rels.append(w)
        return Presentation(self.names(), tuple(rels))


def rs_presentation(p: Presentation, t: CosetTable, simplify: bool = False) -> Presentation:
    """Subgroup presentation on the Schreier generators.

    The raw output has one generator per non-tree edge and one relator per
    (coset, relator) pair.  With ``simplify`` a generator-elimination pass
    follows.
    """
    if t.origin != p:
        t = CosetTable(t.action, p, t.subgroup_gens)
    out = Rewriter(t).presentation()
    if simplify:
        from .presentation import simplify as _simplify

        out, _ = _simplify(out)
    return out


# --- products of tables ----------------------------------------------------------


def _table_from_action(action: Sequence[Sequence[int]], origin: Presentation) -> CosetTable:
    """Standardize a transitive action (given per generator) and attach Schreier generators."""
    m = origin.ngens
    n = len(action[0]) if action else 1
    inv = []
    for perm in action:
        ip = [0] * n
        for c, d in enumerate(perm):
            ip[d] = c
        inv.append(ip)
    full = [[(action[k // 2] if k % 2 == 0 else inv[k // 2])[c] for k in range(2 * m)] for c in range(n)]
    std = standardize(full, 0)
    t = _from_full(std, origin, ())
    return CosetTable(t.action, origin, tuple(schreier_generators(t)))


def intersect(t1: CosetTable, t2: CosetTable) -> CosetTable:
    """Table of the intersection of two subgroups (orbit of the base pair)."""
    if t1.origin.ngens != t2.origin.ngens:
        raise ValueError("tables are over different presentations")
    m = t1.origin.ngens
    start = (0, 0)
    num = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        a, b = order[i]
        for g in range(m):
            nxt = (t1.action[g][a], t2.action[g][b])
            if nxt not in num:
                num[nxt] = len(order)
                order.append(nxt)
        i += 1
    action = [[num[(t1.action[g][a], t2.action[g][b])] for (a, b) in order] for g in range(m)]
    return _table_from_action(action, t1.origin)


def preimage(p: Presentation, theta: Sequence[Word], tq: CosetTable) -> CosetTable:
    """Pull a subgroup of Q back along ``theta`` (generator images as words in Q).

    Raises ``ValueError`` when some relator of ``p`` does not act trivially
    through ``theta`` on the cosets of ``tq``.
    """
    if len(theta) != p.ngens:
        raise ValueError("theta needs one image per generator")
    n = tq.index
    perms = [[tq.trace(theta[g], c) for c in range(n)] for g in range(p.ngens)]
    # orbit of coset 0 under the pulled-back action
    seen = {0: 0}
    order = [0]
    i = 0
    while i < len(order):
        c = order[i]
        for g in range(p.ngens):
            d = perms[g][c]
            if d not in seen:
                seen[d] = len(order)
                order.append(d)
        i += 1
    action = [[seen[perms[g][c]] for c in order] for g in range(p.ngens)]
    for k, r in enumerate(p.relators):
        for c in order:
            d = c
            for gg, e in r.runs:
                perm = perms[gg]
                if e > 0:
                    for _ in range(e):
                        d = perm[d]
                else:
                    for _ in range(-e):
                        d = perm.index(d)
            if d != c:
                raise ValueError(f"theta is inconsistent with the table: relator {k} moves coset {c}")
    return _table_from_action(action, p)


# --- low-index subgroups (Sims-style backtracking) ---------------------------------


def low_index_subgroups(
    p: Presentation, max_index: int, max_nodes: int | None = None
) -> list[CosetTable]:
    """One standardized table per conjugacy class of subgroups of index ``<= max_index``.

    Output is sorted lexicographically by (index, flattened table).
    """
    return sorted(iter_low_index(p, max_index, max_nodes), key=lambda t: (t.index, t.key()))


def iter_low_index(p: Presentation, max_index: int, max_nodes: int | None = None) -> Iterator[CosetTable]:
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    m = p.ngens
    if m == 0:
        yield CosetTable((), p, ())
        return
    ncol = 2 * m
    N = max_index
    words = []
    for r in p.relators:
        cols = _columns(r)
        for w in (cols, [_inv(x) for x in reversed(cols)]):
            for k in range(len(w)):
                words.append(w[k:] + w[:k])
    by_first: list[list[list[int]]] = [[] for _ in range(ncol)]
    seen_rot = set()
    for w in words:
        key = tuple(w)
        if key in seen_rot:
            continue
        seen_rot.add(key)
        by_first[w[0]].append(w)

    table = [[-1] * ncol for _ in range(N)]
    n = 1
    nodes = 0

    def scan(c: int, w: list[int], trail: list, queue: list) -> bool:
        L = len(w)
        f, i = c, 0
        while i < L:
            d = table[f][w[i]]
            if d < 0:
                break
            f = d
            i += 1
        if i == L:
            return f == c
        b, j = c, L - 1
        while j >= i:
            d = table[b][_inv(w[j])]
            if d < 0:
                break
            b = d
            j -= 1
        if j < i:
            return f == b
        if j == i:
            x = w[i]
            ix = _inv(x)
            if table[b][ix] >= 0:
                return table[b][ix] == f
            table[f][x] = b
            table[b][ix] = f
            trail.append((f, x))
            trail.append((b, ix))
            queue.append((f, x))
        return True

    def propagate(queue: list, trail: list) -> bool:
        while queue:
            c, x = queue.pop()
            d = table[c][x]
            for w in by_first[x]:
                if not scan(c, w, trail, queue):
                    return False
            ix = _inv(x)
            for w in by_first[ix]:
                if not scan(d, w, trail, queue):
                    return False
        return True

    def canonical() -> bool:
        for s in range(1, n):
            num = {s: 0}
            order = [s]
            decided = False
            k = 0
            while k < len(order) and not decided:
                g = order[k]
                for x in range(ncol):
                    img = table[g][x]
                    cur = table[k][x]
                    if img < 0 or cur < 0:
                        decided = True
                        break
                    if img not in num:
                        num[img] = len(order)
                        order.append(img)
                    new = num[img]
                    if new < cur:
                        return False
                    if new > cur:
                        decided = True
                        break
                k += 1
        return True

    def first_gap() -> tuple[int, int] | None:
        for c in range(n):
            row = table[c]
            for x in range(ncol):
                if row[x] < 0:
                    return c, x
        return None

    def emit() -> CosetTable:
        full = [list(table[c]) for c in range(n)]
        t = _from_full(full, p, ())
        return CosetTable(t.action, p, tuple(schreier_generators(t)))

    def undo(trail: list):
        for c, x in trail:
            table[c][x] = -1

    def search() -> Iterator[CosetTable]:
        nonlocal n, nodes
        gap = first_gap()
        if gap is None:
            yield emit()
            return
        c, x = gap
        ix = _inv(x)
        limit = n + 1 if n < N else n
        for d in range(limit):
            if table[d][ix] >= 0:
                continue
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise ResourceLimit(f"low-index search exceeded {max_nodes} nodes")
            new = d == n
            if new:
                n += 1
            trail = [(c, x), (d, ix)]
            table[c][x] = d
            table[d][ix] = c
            ok = propagate([(c, x)], trail)
            if ok and canonical():
                yield from search()
            undo(trail)
            if new:
                n -= 1

    # the trivial partial table must also satisfy relators at coset 0
    yield from search()
