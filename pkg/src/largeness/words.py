"""Reduced words in free groups, stored as runs of generator powers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Run = tuple[int, int]


def _reduce(runs: Iterable[Run]) -> tuple[Run, ...]:
    out: list[list[int]] = []
    for g, e in runs:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True, order=True)
class Word:
    """A freely reduced word; ``runs`` is a tuple of ``(generator, exponent)``.

    Adjacent runs always carry different generators and no exponent is zero,
    so structural equality is equality in the free group.
    """

    runs: tuple[Run, ...] = ()

    def __post_init__(self):
        reduced = _reduce(self.runs)
        if reduced != self.runs:
            object.__setattr__(self, "runs", reduced)

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Word":
        return cls(((g, e),))

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "Word":
        """Build from signed letters ``g+1`` / ``-(g+1)``."""
        return cls(tuple((abs(x) - 1, 1 if x > 0 else -1) for x in letters))

    def letters(self) -> list[int]:
        out = []
        for g, e in self.runs:
            s = g + 1 if e > 0 else -(g + 1)
            out.extend([s] * abs(e))
        return out

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.runs)

    def __bool__(self) -> bool:
        return bool(self.runs)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.runs)))

    def generators(self) -> set[int]:
        return {g for g, _ in self.runs}

    def occurrences(self, g: int) -> int:
        return sum(abs(e) for h, e in self.runs if h == g)

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Apply the homomorphism sending generator ``i`` to ``images[i]``."""
        out: list[Run] = []
        for g, e in self.runs:
            img = images[g] if e > 0 else images[g].inverse()
            for _ in range(abs(e)):
                out.extend(img.runs)
        return Word(tuple(out))

    def reindex(self, mapping: dict[int, int]) -> "Word":
        return Word(tuple((mapping[g], e) for g, e in self.runs))

    def __repr__(self) -> str:
        if not self.runs:
            return "Word(1)"
        return "Word(" + " ".join(f"x{g}^{e}" for g, e in self.runs) + ")"


def multiply(u: Word, v: Word) -> Word:
    return Word(u.runs + v.runs)


def power(w: Word, n: int) -> Word:
    if n < 0:
        w, n = w.inverse(), -n
    return Word(w.runs * n)


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return Word(u.runs + v.runs + u.inverse().runs + v.inverse().runs)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w = conjugator * core * conjugator^-1``."""
    runs = list(w.runs)
    conj: list[Run] = []
    while len(runs) >= 2 and runs[0][0] == runs[-1][0]:
        g, e1 = runs[0]
        e2 = runs[-1][1]
        if (e1 > 0) == (e2 > 0):
            break
        m = min(abs(e1), abs(e2))
        # peel m letters off each end
        s = 1 if e1 > 0 else -1
        conj.append((g, s * m))
        r1 = e1 - s * m
        r2 = e2 + s * m
        runs = ([(g, r1)] if r1 else []) + runs[1:-1] + ([(g, r2)] if r2 else [])
    return Word(tuple(runs)), Word(tuple(conj))


def is_cyclically_reduced(w: Word) -> bool:
    r = w.runs
    return len(r) < 2 or r[0][0] != r[-1][0] or (r[0][1] > 0) == (r[-1][1] > 0)


def exponent_sum(w: Word, g: int) -> int:
    return sum(e for h, e in w.runs if h == g)


def rotations(w: Word) -> list[Word]:
    """All cyclic rotations (letter by letter) of a cyclically reduced word."""
    letters = w.letters()
    return [Word.from_letters(letters[i:] + letters[:i]) for i in range(len(letters))] or [w]


def cyclic_normal_form(w: Word) -> Word:
    """Canonical representative of the cyclic word of ``w`` and its inverse."""
    core, _ = cyclic_reduce(w)
    cands = rotations(core) + rotations(core.inverse())
    return min(cands, key=lambda x: tuple(x.letters()))


# --- Nielsen reduction -------------------------------------------------------

Move = tuple  # ("inv", i) | ("right", i, j, e) | ("left", i, j, e)


def apply_move(tup: Sequence[Word], move: Move) -> list[Word]:
    out = list(tup)
    if move[0] == "inv":
        out[move[1]] = out[move[1]].inverse()
    elif move[0] == "right":
        _, i, j, e = move
        out[i] = out[i] * power(out[j], e)
    elif move[0] == "left":
        _, i, j, e = move
        out[i] = power(out[j], e) * out[i]
    else:
        raise ValueError(f"unknown move {move!r}")
    return out


def replay_moves(tup: Sequence[Word], moves: Iterable[Move]) -> list[Word]:
    out = list(tup)
    for m in moves:
        out = apply_move(out, m)
    return out


def _letter_key(x: int) -> tuple[int, int]:
    return (abs(x), 0 if x > 0 else 1)


def _half_key(w: Word) -> tuple:
    # ordering in the style of Lyndon-Schupp: length, then the smaller of the
    # left halves of w and w^-1, then the larger one
    letters = w.letters()
    n = len(letters)
    h = (n + 1) // 2
    left = tuple(_letter_key(x) for x in letters[:h])
    inv = [-x for x in reversed(letters)]
    left_inv = tuple(_letter_key(x) for x in inv[:h])
    return (n, min(left, left_inv), max(left, left_inv), tuple(_letter_key(x) for x in letters))


def nielsen_reduce(tup: Sequence[Word], rank: int | None = None) -> tuple[list[Word], list[Move]]:
    """Nielsen-reduce a tuple of words.

    Returns the reduced tuple and the list of elementary moves which, replayed
    with :func:`replay_moves`, transforms the input into the output.  Total
    length never increases along the way.  Identity entries are left in place.
    """
    cur = list(tup)
    log: list[Move] = []
    n = len(cur)

    def candidates():
        for i in range(n):
            if not cur[i]:
                continue
            for j in range(n):
                if j == i or not cur[j]:
                    continue
                for e in (1, -1):
                    yield ("right", i, j, e), cur[i] * power(cur[j], e)
                    yield ("left", i, j, e), power(cur[j], e) * cur[i]

    while True:
        moved = False
        for move, new in candidates():
            if len(new) < len(cur[move[1]]):
                cur[move[1]] = new
                log.append(move)
                moved = True
                break
        if moved:
            continue
        # no length-decreasing move: try length-preserving moves that lower the
        # well-order key
        for move, new in candidates():
            i = move[1]
            if len(new) == len(cur[i]) and _half_key(new) < _half_key(cur[i]):
                cur[i] = new
                log.append(move)
                moved = True
                break
        if moved:
            continue
        break
    # orient single letters positively
    for i, w in enumerate(cur):
        if len(w) == 1 and w.runs[0][1] < 0:
            cur[i] = w.inverse()
            log.append(("inv", i))
    return cur, log


def is_letter_basis(tup: Sequence[Word], rank: int) -> bool:
    """True when ``tup`` is a permutation of the free generators up to inversion."""
    if len(tup) != rank:
        return False
    seen = set()
    for w in tup:
        if len(w) != 1:
            return False
        seen.add(w.runs[0][0])
    return seen == set(range(rank))
