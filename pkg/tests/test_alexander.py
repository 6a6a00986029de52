import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import BAUMSLAG_GERSTEN, BS, DELTA_T_MINUS_2, P, words
from largeness.alexander import (
    alexander_mod_p,
    alexander_polynomial,
    fox_derivative_eval,
    howie_large_test,
    word_image,
)
from largeness.analysis import chi_candidates
from largeness.laurent import LaurentPoly, gcd_all, poly_gcd
from largeness.linalg import abelian_invariants
from largeness.presentation import Chi, Presentation
from largeness.words import Word

L = LaurentPoly.from_coeffs
T0A1 = Chi((0, 1))  # generators named (a, t)


# --- Laurent arithmetic -------------------------------------------------------------


def test_canonical_form_normalizes_units():
    assert LaurentPoly.from_dict({-3: -2, -2: 3}).canonical() == L([-2, 3])
    assert L([4, -2], low=5).canonical() == L([-4, 2])
    assert L([1, 1], modulus=2).canonical() == L([1, 1], modulus=2)
    assert LaurentPoly.zero().canonical().is_zero()


def test_string_form():
    assert str(L([-3, 2])) == "2*t - 3"
    assert str(L([1])) == "1"


def test_gcd_over_integers_and_fields():
    a = L([-1, 1]) * L([2, 1])
    b = L([-1, 1]) * L([5, 0, 1])
    assert poly_gcd(a, b).canonical() == L([-1, 1])
    assert gcd_all([L([2, 4]), L([6, 12])]).canonical() == L([2, 4]).canonical()
    assert poly_gcd(L([1, 1], modulus=2), L([1, 0, 1], modulus=2)).canonical() == L([1, 1], modulus=2)


laurents = st.builds(
    lambda cs, low: L(cs, low=low),
    st.lists(st.integers(-5, 5), max_size=5),
    st.integers(-3, 3),
)


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert (a - a).is_zero()


@given(laurents, laurents)
def test_gcd_divides_both(a, b):
    assume(a or b)
    g = poly_gcd(a, b)
    assert a.divexact(g) * g == a and b.divexact(g) * g == b


# --- Fox calculus --------------------------------------------------------------------


def test_fox_examples():
    for m, n in [(1, 2), (2, 3), (2, 4), (6, 9)]:
        r = P(BS[m, n]).relators[0]
        assert fox_derivative_eval(r, 0, T0A1) == L([-n, m])
    x = Word.gen(0)
    assert fox_derivative_eval(x, 0, (5,)) == L([1])
    bg = P(BAUMSLAG_GERSTEN).relators[0]
    assert fox_derivative_eval(bg, 0, T0A1) == L([-1])


@given(words(rank=3), words(rank=3), st.tuples(*[st.integers(-2, 2)] * 3), st.integers(0, 2))
def test_fox_product_rule(u, v, chi, g):
    lhs = fox_derivative_eval(u * v, g, chi)
    rhs = fox_derivative_eval(u, g, chi) + LaurentPoly.monomial(word_image(u, chi)) * fox_derivative_eval(v, g, chi)
    assert lhs == rhs


@given(words(rank=3), st.tuples(*[st.integers(-2, 2)] * 3))
def test_fox_fundamental_identity(w, chi):
    total = LaurentPoly.zero()
    for g in range(3):
        total = total + fox_derivative_eval(w, g, chi) * (LaurentPoly.monomial(chi[g]) - 1)
    assert total == LaurentPoly.monomial(word_image(w, chi)) - 1


# --- Alexander polynomials -----------------------------------------------------------


def test_alexander_examples():
    assert alexander_polynomial(P(BS[2, 3]), T0A1) == L([-3, 2])
    assert alexander_polynomial(P(DELTA_T_MINUS_2), T0A1) == L([-2, 1])
    p = P("< a, b, t | [t,a], [t,b] >")
    assert alexander_polynomial(p, Chi((1, 0, 0))).is_zero()


def test_alexander_mod_p_examples():
    assert alexander_mod_p(P(BS[2, 4]), T0A1, 2).is_zero()
    assert alexander_mod_p(P(BS[2, 3]), T0A1, 2) == L([1], modulus=2)
    assert alexander_mod_p(P(DELTA_T_MINUS_2), T0A1, 3) == L([1, 1], modulus=3)
    with pytest.raises(ValueError):
        alexander_mod_p(P("< a, t | [t,a], a^2 >"), T0A1, 2)


def test_howie_examples():
    cert = howie_large_test(P(BS[2, 4]), T0A1)
    assert cert is not None and cert.prime == 2 and cert.subgroups == ()
    cert = howie_large_test(P("< a, b, t | [t,a], [t,b] >"), Chi((1, 0, 0)))
    assert cert is not None and cert.prime is None
    assert howie_large_test(P(BS[2, 3]), T0A1) is None


@st.composite
def one_relator_zero_sum(draw):
    rel = draw(words(rank=2, max_runs=7))
    s = sum(e for g, e in rel.runs if g == 1)
    return Presentation(("a", "t"), (rel * Word.gen(1, -s) if s else rel,))


@given(one_relator_zero_sum())
def test_delta_at_one_is_torsion_order(p):
    inv = abelian_invariants(p)
    assume(inv.rank == 1)
    chi = chi_candidates(p, 1)[0]
    delta = alexander_polynomial(p, chi)
    assert abs(delta.at_one()) == inv.torsion_order


@given(st.lists(words(rank=3, max_runs=5), min_size=2, max_size=2))
def test_delta_at_one_is_torsion_order_three_generators(rels):
    p = Presentation(("x", "y", "z"), tuple(rels))
    inv = abelian_invariants(p)
    assume(inv.rank == 1)
    chi = chi_candidates(p, 1)[0]
    assert abs(alexander_polynomial(p, chi).at_one()) == inv.torsion_order
