from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DOUBLED_G0, P, words
from largeness.linalg import abelian_invariants
from largeness.parsing import ParseError, format_presentation, parse_presentation, parse_word
from largeness.presentation import (
    Chi,
    Presentation,
    PresentationError,
    abelianized_chi_basis,
    deficiency,
    eliminate_by_name,
    eliminate_generator,
    replay_tietze,
    simplify,
)
from largeness.words import Word, exponent_sum, replay_moves


def test_deficiency_examples():
    assert deficiency(P("< a, t | t a^2 t^-1 a^-3 >")) == 1
    assert deficiency(P(DOUBLED_G0)) == 1
    assert deficiency(P("< a, b >")) == 2


def test_eliminate_generator_to_bs23():
    p = P("< a, b, t | b a^-2, t b t^-1 a^-3 >")
    q = eliminate_generator(p, p.index_of("b"), 0)
    assert q.same_relators_as(P("< a, t | t a^2 t^-1 a^-3 >"))
    assert deficiency(q) == deficiency(p)


def test_eliminating_the_double_cover_down_to_two_generators():
    # the relabelled order a -> x -> b -> y -> c -> z -> ab
    p = P("< t, a, x, b, y, c, z | t a t^-1 = x, t x t^-1 = b, t b t^-1 = y, "
          "t y t^-1 = c, t c t^-1 = z, t z t^-1 = a b >")
    for name in "xbycz":
        p = eliminate_by_name(p, name)
    assert p.same_relators_as(P("< t, a | t^6 a t^-4 a^-1 t^-2 a^-1 >"))
    assert deficiency(p) == 1


def test_eliminate_refuses_repeated_generator():
    p = P("< a, b | a b a b >")
    with pytest.raises(PresentationError):
        eliminate_generator(p, 0, 0)


def test_simplify_moves_replay():
    p = P("< a, b, c, t | b a^-2, c b^-1 a, t c t^-1 a^-3 >")
    q, moves = simplify(p)
    assert replay_tietze(p, moves) == q
    assert q.ngens == 2 and deficiency(q) == deficiency(p)


def test_chi_basis_already_normal():
    p = P("< x, y | x y x y^-1 >")
    with pytest.raises(PresentationError):
        abelianized_chi_basis(p, Chi((1, 2)))
    b = abelianized_chi_basis(p, Chi((0, 1)))
    assert b.t_index == 1 and b.moves == []


def test_chi_basis_euclid():
    p = P("< x, y | x^3 y^-2 x^-3 y^2 >")
    b = abelianized_chi_basis(p, Chi((2, 3)))
    assert sorted(b.chi.values) == [0, 1]
    assert b.chi.values[b.t_index] == 1
    # the recorded substitutions are mutually inverse
    n = p.ngens
    for i in range(n):
        assert b.substitution[i].substitute(b.inverse_substitution) == Word.gen(i)
        assert b.inverse_substitution[i].substitute(b.substitution) == Word.gen(i)
    assert replay_moves([Word.gen(i) for i in range(n)], b.moves) == b.inverse_substitution


def test_chi_not_surjective():
    with pytest.raises(PresentationError):
        abelianized_chi_basis(P("< x, y | x y x^-1 y^-1 >"), Chi((2, 4)))


@st.composite
def chi_presentations(draw):
    n = draw(st.integers(2, 3))
    rels = draw(st.lists(words(rank=n, max_runs=6), min_size=1, max_size=n - 1))
    names = tuple("xyz"[:n])
    # make every relator vanish on a random primitive chi by appending a correction
    values = draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n).filter(lambda v: gcd(*v) == 1))
    fixed = []
    k = next(i for i, v in enumerate(values) if abs(v) == min(abs(x) for x in values if x))
    for r in rels:
        s = sum(values[g] * e for g, e in r.runs)
        if s % values[k]:
            continue
        fixed.append(r * Word.gen(k, -s // values[k]))
    p = Presentation(names, tuple(fixed))
    return p, Chi(tuple(values))


@given(chi_presentations())
def test_chi_basis_properties(data):
    p, chi = data
    b = abelianized_chi_basis(p, chi)
    q = b.presentation
    assert deficiency(q) == deficiency(p)
    assert sum(1 for v in b.chi.values if v) == 1 and b.chi.values[b.t_index] == 1
    for r in q.relators:
        assert sum(b.chi.values[g] * e for g, e in r.runs) == 0
    assert abelian_invariants(q) == abelian_invariants(p)


@given(chi_presentations())
def test_elimination_preserves_deficiency_and_abelianization(data):
    p, _ = data
    q, _ = simplify(p)
    assert deficiency(q) >= deficiency(p)
    assert abelian_invariants(q) == abelian_invariants(p)


# --- text format --------------------------------------------------------------------


def test_parse_presentations_from_the_literature():
    assert P("⟨a,t | t a^2 t^{-1} = a^3⟩") == P("< a, t | t a^2 t^-1 a^-3 >")
    p = P("< a, t | [a,t][t,a^-1][a,t]^-1 = [t,a^-1]^2 >")
    assert p.nrels == 1 and exponent_sum(p.relators[0], 1) == 0
    assert P("< a, b | >").nrels == 0


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as e:
        parse_presentation("< a, t | t q >")
    assert e.value.pos == 11
    with pytest.raises(ParseError):
        parse_presentation("< a, a | a >")
    with pytest.raises(ParseError):
        parse_word("a ^", ("a",))


def test_greedy_names():
    p = P("< x1, x, y | x1 x y >")
    assert p.relators[0].runs == ((0, 1), (1, 1), (2, 1))


@given(st.lists(words(rank=3, max_runs=6), max_size=3))
def test_round_trip(rels):
    p = Presentation(("a", "b", "t"), tuple(rels))
    assert parse_presentation(format_presentation(p)) == p
