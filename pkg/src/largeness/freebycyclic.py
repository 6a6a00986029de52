"""Free-group automorphisms, mapping tori and a certifier for reducible maps.

For an automorphism ``f`` of the free group on ``x_1..x_n`` the mapping
torus is ``<t, x_1, ..., x_n | t x_i t^-1 = f(x_i)>``; the stable letter
``t`` is generator 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import sympy

from .alexander import alexander_polynomial
from .cosets import (
    CosetTable,
    Rewriter,
    intersect,
    preimage,
    rs_presentation,
    schreier_generators,
    todd_coxeter,
)
from .linalg import abelian_invariants, char_poly, determinant, integer_kernel, relation_matrix
from .presentation import Chi, Presentation
from .verdict import LARGE, UNKNOWN, AlexanderVanishes, Verdict
from .words import Word, exponent_sum, is_letter_basis, nielsen_reduce, replay_moves


def default_names(n: int) -> tuple[str, ...]:
    if n <= 3:
        return tuple("xyz"[:n])
    if n % 2 == 0 and n <= 6:
        k = n // 2
        return tuple("abc"[:k]) + tuple("xyz"[:k])
    return tuple(f"x{i + 1}" for i in range(n))


@dataclass(frozen=True)
class FreeEndomorphism:
    """``x_i -> images[i]`` on the free group of rank ``len(images)``."""

    images: tuple[Word, ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if not self.names:
            object.__setattr__(self, "names", default_names(len(self.images)))
        if len(self.names) != len(self.images):
            raise ValueError("one name per generator")
        for w in self.images:
            if any(g >= self.rank for g in w.generators()):
                raise ValueError("image uses a generator outside the free basis")

    @property
    def rank(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int, names: Sequence[str] = ()) -> "FreeEndomorphism":
        return cls(tuple(Word.gen(i) for i in range(n)), tuple(names))

    @classmethod
    def parse(cls, images: Sequence[str], names: Sequence[str] = ()) -> "FreeEndomorphism":
        from .parsing import parse_word

        names = tuple(names) or default_names(len(images))
        return cls(tuple(parse_word(s, names) for s in images), names)

    def __call__(self, w: Word) -> Word:
        return w.substitute(self.images)

    def compose(self, other: "FreeEndomorphism") -> "FreeEndomorphism":
        """``self`` after ``other``."""
        return FreeEndomorphism(tuple(self(w) for w in other.images), self.names)

    def power(self, k: int) -> "FreeEndomorphism":
        if k < 0:
            inv = is_automorphism(self)
            if inv is None:
                raise ValueError("not an automorphism")
            return inv.power(-k)
        out = FreeEndomorphism.identity(self.rank, self.names)
        for _ in range(k):
            out = self.compose(out)
        return out

    def matrix(self) -> list[list[int]]:
        """Abelianized action on Z^n; column ``j`` is the image of ``x_j``."""
        return [[exponent_sum(self.images[j], i) for j in range(self.rank)] for i in range(self.rank)]

    def format(self) -> list[str]:
        from .parsing import format_word

        return [format_word(w, self.names) for w in self.images]


def is_automorphism(f: FreeEndomorphism) -> FreeEndomorphism | None:
    """The inverse of ``f`` when ``f`` is an automorphism, else ``None``.

    Nielsen reduction of the image tuple reaches a signed permutation of the
    basis exactly for automorphisms.  Replaying the recorded moves on the
    basis itself gives words ``W_j`` with ``f(W_j) = x_pi(j)``, hence the
    inverse.
    """
    n = f.rank
    if abs(determinant(f.matrix())) != 1:
        return None
    reduced, moves = nielsen_reduce(list(f.images), n)
    if not is_letter_basis(reduced, n):
        return None
    basis = [Word.gen(i) for i in range(n)]
    ws = replay_moves(basis, moves)
    inv_images: list[Word | None] = [None] * n
    for j, v in enumerate(reduced):
        g, e = v.runs[0]
        inv_images[g] = ws[j] if e > 0 else ws[j].inverse()
    g = FreeEndomorphism(tuple(inv_images), f.names)  # type: ignore[arg-type]
    if any(f(g.images[i]) != basis[i] or g(f.images[i]) != basis[i] for i in range(n)):
        raise AssertionError("Nielsen inverse failed to verify")
    return g


def mapping_torus(f: FreeEndomorphism, stable: str = "t") -> Presentation:
    if is_automorphism(f) is None:
        raise ValueError("mapping torus needs an automorphism")
    shift = {i: i + 1 for i in range(f.rank)}
    rels = []
    for i, w in enumerate(f.images):
        rels.append(Word(((0, 1), (i + 1, 1), (0, -1))) * w.reindex(shift).inverse())
    return Presentation((stable,) + f.names, tuple(rels))


def double(f: FreeEndomorphism) -> FreeEndomorphism:
    """``f`` on the first block and an index-shifted copy on the second."""
    n = f.rank
    shift = {i: i + n for i in range(n)}
    images = f.images + tuple(w.reindex(shift) for w in f.images)
    if f.names == default_names(n):
        names = default_names(2 * n)
    else:
        names = f.names + tuple(x + "'" for x in f.names)
    return FreeEndomorphism(images, names)


def restriction_and_quotient(f: FreeEndomorphism, r: int) -> tuple[FreeEndomorphism, FreeEndomorphism]:
    """Split ``F = A * B`` with ``A`` on the first ``r`` generators, ``f(A) = A``.

    The quotient map deletes every ``A`` letter from the images of ``B``.
    """
    n = f.rank
    if not 0 < r < n:
        raise ValueError("split must leave both blocks nonempty")
    for i in range(r):
        if any(g >= r for g in f.images[i].generators()):
            raise ValueError(f"image of {f.names[i]} leaves the invariant block")
    fr = FreeEndomorphism(f.images[:r], f.names[:r])
    q_images = []
    for w in f.images[r:]:
        q_images.append(Word(tuple((g - r, e) for g, e in w.runs if g >= r)))
    fq = FreeEndomorphism(tuple(q_images), f.names[r:])
    if is_automorphism(fq) is None:
        raise RuntimeError("quotient map is not an automorphism")
    return fr, fq


def characteristic_polynomial(f: FreeEndomorphism) -> list[int]:
    return char_poly(f.matrix())


# --- PV polynomials -------------------------------------------------------------------


def _unit_circle_roots(p: sympy.Poly) -> bool:
    """Exact test for a root of modulus 1 (``p(+-1) != 0`` already checked).

    A root on the circle is shared with the reversed polynomial.  The common
    factor is then palindromic of even degree ``2d``, so ``z^-d g(z)`` is a
    polynomial ``h`` in ``w = z + 1/z``, and roots on the circle correspond
    to real roots of ``h`` in ``[-2, 2]``.
    """
    z = p.gen
    rev = sympy.Poly(list(reversed(p.all_coeffs())), z)
    g = sympy.gcd(p, rev)
    if g.degree() <= 0:
        return False
    c = g.all_coeffs()  # high to low
    deg = len(c) - 1
    if deg % 2 or c != list(reversed(c)):
        return True  # cannot happen once +-1 are excluded; be conservative
    d = deg // 2
    w = sympy.Symbol("w")
    dk = [sympy.Integer(2), w]  # z^k + z^-k as a polynomial in w
    while len(dk) <= d:
        dk.append(sympy.expand(w * dk[-1] - dk[-2]))
    h = c[d]
    for k in range(1, d + 1):
        h += c[d - k] * dk[k]
    hp = sympy.Poly(sympy.expand(h), w)
    return hp.count_roots(-2, 2) > 0


def _frac(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def _outside_count(p: sympy.Poly) -> int:
    """Roots of modulus > 1 with multiplicity, by exact isolation and refinement."""
    eps = Fraction(1, 4)
    while True:
        total = 0
        undecided = False
        real_boxes, complex_boxes = p.intervals(all=True, eps=eps)
        for (box, mult) in real_boxes:
            lo, hi = _frac(box[0]), _frac(box[1])
            if lo > 1 or hi < -1:
                total += mult
            elif not (-1 < lo and hi < 1):
                undecided = True
        for (corners, mult) in complex_boxes:
            c1, c2 = corners
            xs = sorted((_frac(sympy.re(c1)), _frac(sympy.re(c2))))
            ys = sorted((_frac(sympy.im(c1)), _frac(sympy.im(c2))))
            far = max(x * x for x in xs) + max(y * y for y in ys)
            nx = 0 if xs[0] <= 0 <= xs[1] else min(x * x for x in xs)
            ny = 0 if ys[0] <= 0 <= ys[1] else min(y * y for y in ys)
            if nx + ny > 1:
                total += mult
            elif far >= 1:
                undecided = True
        if not undecided:
            return total
        eps /= 16


def is_pv_polynomial(coeffs: Sequence[int]) -> bool:
    """``coeffs`` low degree first; monic, one root outside the unit circle, none on it."""
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2 or coeffs[-1] != 1:
        raise ValueError("need a monic polynomial of degree at least 1")
    z = sympy.Symbol("z")
    p = sympy.Poly(list(reversed(coeffs)), z)
    if p.eval(1) == 0 or p.eval(-1) == 0:
        return False
    if _unit_circle_roots(p):
        return False
    return _outside_count(p) == 1


# --- the reducible-automorphism certifier ----------------------------------------------


def cyclic_cover_table(p: Presentation, stable: int, k: int) -> CosetTable:
    """Kernel of ``G -> Z/k`` sending the stable letter to 1 and the rest to 0."""
    gens = [Word.gen(stable, k)] + [Word.gen(g) for g in range(p.ngens) if g != stable]
    return todd_coxeter(p, gens, max_cosets=max(4 * k, 64))


def _exp_t(w: Word) -> int:
    return exponent_sum(w, 0)


def _cycle_length(table: CosetTable, g: int, start: int = 0) -> int:
    c, k = table.action[g][start], 1
    while c != start:
        c = table.action[g][c]
        k += 1
    return k


def certify_reducible_largeness(
    f: FreeEndomorphism, r: int, witness_r: CosetTable, witness_q: CosetTable
) -> Verdict:
    """Build a finite-index subgroup with a vanishing Alexander polynomial.

    ``G`` is the mapping torus of ``f`` with invariant block ``A`` (first
    ``r`` generators).  ``witness_r`` and ``witness_q`` are subgroups with
    first Betti number at least 2 of the mapping tori of the restriction and
    of the quotient map.  The second block must map into itself as well, so
    that killing it is a homomorphism onto the restriction's mapping torus.
    """
    fr, fq = restriction_and_quotient(f, r)
    g_full = mapping_torus(f)
    g_r, g_q = mapping_torus(fr), mapping_torus(fq)
    diag: dict = {"split": r}
    for label, w, base in (("restriction", witness_r, g_r), ("quotient", witness_q, g_q)):
        if w.origin.names != base.names or w.origin.relators != base.relators:
            raise ValueError(f"{label} witness is not a table over the {label} mapping torus")
        b1 = abelian_invariants(rs_presentation(base, w)).rank
        diag[f"{label}_betti"] = b1
        if b1 < 2:
            raise ValueError(f"{label} witness has first Betti number {b1} < 2")

    n = f.rank
    # rho kills the second block, theta kills the first; generator 0 is t throughout
    rho = [Word.gen(0)] + [Word.gen(i + 1) for i in range(r)] + [Word() for _ in range(n - r)]
    theta = [Word.gen(0)] + [Word() for _ in range(r)] + [Word.gen(i + 1) for i in range(n - r)]

    # an element t' of the restriction witness with least positive t-exponent
    sgens = schreier_generators(witness_r)
    k = 0
    for w in sgens:
        k = gcd(k, _exp_t(w))
    tprime = next((w for w in sgens if abs(_exp_t(w)) == k), None)
    if k == 0 or tprime is None:
        return Verdict(UNKNOWN, None, {**diag, "reason": "no element of least t-exponent among Schreier generators"})
    # theta(t') = s^k, so align with the t-cycle of the quotient witness
    ell = _cycle_length(witness_q, 0)
    j = k * ell // gcd(k, ell)
    diag.update({"t_exponent": k, "quotient_t_cycle": ell, "power": j})

    l_j = intersect(witness_r, cyclic_cover_table(g_r, 0, j))
    try:
        big_j = preimage(g_full, rho, l_j)
        h_pull = preimage(g_full, theta, witness_q)
    except ValueError as exc:
        return Verdict(UNKNOWN, None, {**diag, "reason": f"projection is not a homomorphism: {exc}"})
    k_table = intersect(big_j, h_pull)
    diag["index"] = k_table.index

    # Hom(H, Z) killing s^j
    h_pres = rs_presentation(g_q, witness_q)
    basis = integer_kernel(relation_matrix(h_pres), h_pres.ngens)
    rw = Rewriter(witness_q)

    def value(vec, w: Word) -> int:
        word, end = rw.rewrite(w, 0)
        assert end == 0
        return sum(vec[g] * e for g, e in word.runs)

    sj = Word.gen(0, j)
    vals = [value(v, sj) for v in basis]
    chi_h = None
    if len(basis) >= 2:
        a, b = vals[0], vals[1]
        cand = [b * x - a * y for x, y in zip(basis[0], basis[1])]
        if any(cand):
            chi_h = cand
    if chi_h is None:
        return Verdict(UNKNOWN, None, {**diag, "reason": "no homomorphism of the quotient witness kills the t-power"})

    k_gens = schreier_generators(k_table)
    values = [value(chi_h, w.substitute(theta)) for w in k_gens]
    c = 0
    for v in values:
        c = gcd(c, v)
    if c == 0:
        return Verdict(UNKNOWN, None, {**diag, "reason": "pulled-back homomorphism is zero"})
    chi = Chi(tuple(v // c for v in values))
    k_pres = rs_presentation(g_full, k_table)
    delta = alexander_polynomial(k_pres, chi)
    diag["alexander"] = str(delta)
    diag["chi_support"] = sum(1 for v in chi.values if v)
    if not delta.is_zero():
        return Verdict(UNKNOWN, None, {**diag, "reason": "Alexander polynomial is nonzero"})
    return Verdict(LARGE, AlexanderVanishes((k_table,), chi, None), diag)
