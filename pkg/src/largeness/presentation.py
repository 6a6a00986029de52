"""Finite presentations, homomorphisms onto Z, and Tietze moves."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .words import Word, cyclic_reduce, cyclic_normal_form, exponent_sum


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Generator names plus relator words.

    Relators are stored cyclically reduced; identity relators are dropped on
    construction.
    """

    names: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        rels = []
        for r in self.relators:
            core, _ = cyclic_reduce(r)
            if not core:
                continue
            if any(g >= len(self.names) or g < 0 for g in core.generators()):
                raise PresentationError(f"relator uses a generator outside 0..{len(self.names) - 1}")
            rels.append(core)
        object.__setattr__(self, "relators", tuple(rels))
        if len(set(self.names)) != len(self.names):
            raise PresentationError(f"duplicate generator names in {self.names}")

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def nrels(self) -> int:
        return len(self.relators)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def format_word(self, w: Word) -> str:
        from .parsing import format_word

        return format_word(w, self.names)

    def __str__(self) -> str:
        from .parsing import format_presentation

        return format_presentation(self)

    def exponent_matrix(self) -> list[list[int]]:
        return [[exponent_sum(r, g) for g in range(self.ngens)] for r in self.relators]

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def same_relators_as(self, other: "Presentation") -> bool:
        """Equal generator count and equal relators up to order, rotation and inversion."""
        if self.ngens != other.ngens:
            return False
        a = sorted(tuple(cyclic_normal_form(r).letters()) for r in self.relators)
        b = sorted(tuple(cyclic_normal_form(r).letters()) for r in other.relators)
        return a == b


def deficiency(p: Presentation) -> int:
    return p.ngens - p.nrels


@dataclass(frozen=True)
class Chi:
    """A homomorphism to Z, given by its values on the generators."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __call__(self, w: Word) -> int:
        return sum(self.values[g] * e for g, e in w.runs)

    def vanishes_on(self, p: Presentation) -> bool:
        return len(self.values) == p.ngens and all(self(r) == 0 for r in p.relators)

    @property
    def is_surjective(self) -> bool:
        g = 0
        for v in self.values:
            g = gcd(g, v)
        return g == 1

    def check(self, p: Presentation) -> None:
        if len(self.values) != p.ngens:
            raise PresentationError(f"chi has {len(self.values)} values for {p.ngens} generators")
        if not self.vanishes_on(p):
            raise PresentationError("chi does not vanish on every relator")
        if not self.is_surjective:
            raise PresentationError("chi is not surjective onto Z")


# --- Tietze moves ---------------------------------------------------------------


def _solve_for(rel: Word, g: int) -> Word:
    """Given a relator containing ``g`` exactly once, return ``w`` with ``g = w``."""
    letters = rel.letters()
    pos = [i for i, x in enumerate(letters) if abs(x) - 1 == g]
    if len(pos) != 1:
        raise PresentationError(f"generator {g} occurs {len(pos)} times in the relator; need exactly once")
    p = pos[0]
    rot = letters[p:] + letters[:p]
    rest = Word.from_letters(rot[1:])
    return rest.inverse() if rot[0] > 0 else rest


def eliminate(p: Presentation, g: int, r: int) -> tuple[Presentation, Word]:
    """Remove generator ``g`` using relator ``r``; also return ``g``'s expression.

    The expression is a word in the *old* generator indices not involving ``g``.
    """
    if not 0 <= r < p.nrels:
        raise PresentationError(f"no relator {r}")
    expr = _solve_for(p.relators[r], g)
    images = [Word.gen(i) for i in range(p.ngens)]
    images[g] = expr
    mapping = {i: (i if i < g else i - 1) for i in range(p.ngens) if i != g}
    rels = []
    for k, rel in enumerate(p.relators):
        if k == r:
            continue
        rels.append(rel.substitute(images).reindex(mapping))
    names = p.names[:g] + p.names[g + 1:]
    return Presentation(names, tuple(rels)), expr


def eliminate_generator(p: Presentation, g: int, r: int) -> Presentation:
    return eliminate(p, g, r)[0]


def eliminate_by_name(p: Presentation, name: str, r: int | None = None) -> Presentation:
    """Eliminate generator ``name``, picking the shortest relator that allows it."""
    g = p.index_of(name)
    if r is None:
        ok = [k for k, rel in enumerate(p.relators) if rel.occurrences(g) == 1]
        if not ok:
            raise PresentationError(f"no relator lets {name!r} be eliminated")
        r = min(ok, key=lambda k: (len(p.relators[k]), k))
    return eliminate_generator(p, g, r)


def drop_duplicate_relators(p: Presentation) -> tuple[Presentation, list[int]]:
    seen = set()
    keep, dropped = [], []
    for k, r in enumerate(p.relators):
        key = tuple(cyclic_normal_form(r).letters())
        if key in seen:
            dropped.append(k)
        else:
            seen.add(key)
            keep.append(r)
    return Presentation(p.names, tuple(keep)), dropped


def simplify(
    p: Presentation,
    keep: Iterable[str] = (),
    growth_cap: float = 4.0,
) -> tuple[Presentation, list[tuple]]:
    """Greedy generator elimination.

    Returns the simplified presentation and the list of moves, each either
    ``("eliminate", name, relator_index)`` or ``("drop", relator_index)``,
    which :func:`replay_tietze` reproduces.  An elimination is refused when
    it would push the total relator length past ``growth_cap`` times the
    starting length.
    """
    keep = set(keep)
    cap = max(growth_cap * p.total_length(), 1)
    moves: list[tuple] = []
    cur = p
    while True:
        cur2, dropped = drop_duplicate_relators(cur)
        for offset, k in enumerate(dropped):
            moves.append(("drop", k - offset))
        cur = cur2
        cands = []
        for k, rel in enumerate(cur.relators):
            for g in sorted(rel.generators()):
                if cur.names[g] not in keep and rel.occurrences(g) == 1:
                    cands.append((len(rel), k, g))
        cands.sort()
        for _, k, g in cands:
            nxt = eliminate_generator(cur, g, k)
            if nxt.total_length() <= cap:
                moves.append(("eliminate", cur.names[g], k))
                cur = nxt
                break
        else:
            break
    return cur, moves


def replay_tietze(p: Presentation, moves: Sequence[Sequence]) -> Presentation:
    cur = p
    for m in moves:
        if m[0] == "eliminate":
            cur = eliminate_generator(cur, cur.index_of(m[1]), int(m[2]))
        elif m[0] == "drop":
            k = int(m[1])
            rel = cur.relators[k]
            others = cur.relators[:k] + cur.relators[k + 1:]
            key = cyclic_normal_form(rel)
            if not any(cyclic_normal_form(o) == key for o in others):
                raise PresentationError(f"relator {k} is not a duplicate; cannot drop it")
            cur = Presentation(cur.names, others)
        else:
            raise PresentationError(f"unknown Tietze move {m!r}")
    return cur


# --- rebasing so that chi becomes a coordinate -----------------------------------


@dataclass
class ChiBasis:
    presentation: Presentation
    t_index: int
    chi: Chi
    moves: list[tuple] = field(default_factory=list)
    # old generator i equals substitution[i], a word in the new generators
    substitution: list[Word] = field(default_factory=list)
    # new generator j equals inverse_substitution[j], a word in the old generators
    inverse_substitution: list[Word] = field(default_factory=list)


def abelianized_chi_basis(p: Presentation, chi: Chi, names: Sequence[str] | None = None) -> ChiBasis:
    """Change the free basis so ``chi`` sends one generator to 1 and the rest to 0.

    Uses a Euclidean sequence of Nielsen moves on the generators; each move
    ``("right", j, i, q)`` replaces new generator ``y_j`` by ``y_j y_i^-q``
    (equivalently old ``y_j = y_j' y_i^q``), and ``("inv", i)`` inverts
    ``y_i``.
    """
    chi.check(p)
    n = p.ngens
    v = list(chi.values)
    sub = [Word.gen(i) for i in range(n)]  # old -> new
    inv = [Word.gen(i) for i in range(n)]  # new -> old
    moves: list[tuple] = []
    while sum(1 for x in v if x) > 1:
        i = min((k for k in range(n) if v[k]), key=lambda k: (abs(v[k]), k))
        for j in range(n):
            if j == i or not v[j]:
                continue
            q = v[j] // v[i]
            if q == 0:
                continue
            v[j] -= q * v[i]
            # y_j(old basis) = y_j' * y_i^q
            phi = [Word.gen(k) for k in range(n)]
            phi[j] = Word.gen(j) * Word.gen(i, q)
            sub = [w.substitute(phi) for w in sub]
            inv[j] = inv[j] * inv[i] ** (-q)
            moves.append(("right", j, i, -q))
    t = next(k for k in range(n) if v[k])
    if v[t] == -1:
        phi = [Word.gen(k) for k in range(n)]
        phi[t] = Word.gen(t, -1)
        sub = [w.substitute(phi) for w in sub]
        inv[t] = inv[t].inverse()
        v[t] = 1
        moves.append(("inv", t))
    assert v[t] == 1
    rels = tuple(r.substitute(sub) for r in p.relators)
    new = Presentation(tuple(names) if names else p.names, rels)
    return ChiBasis(new, t, Chi(tuple(v)), moves, sub, inv)
