from hypothesis import given
from hypothesis import strategies as st

from conftest import BS, G0, G0_WITNESS, P
from largeness.cosets import rs_presentation, todd_coxeter
from largeness.linalg import (
    abelian_invariants,
    char_poly,
    determinant,
    integer_kernel,
    matmul,
    relation_matrix,
    smith_normal_form,
)
from largeness.parsing import parse_word


def test_snf_small_examples():
    d, u, v = smith_normal_form([[2, 0], [0, 3]])
    assert d == [[1, 0], [0, 6]]
    d, _, _ = smith_normal_form([[-1, 0]])
    assert d == [[1, 0]]


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_snf_is_a_unimodular_diagonalization(m):
    d, u, v = smith_normal_form(m)
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    assert matmul(matmul(u, m), v) == d
    diag = []
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
            elif x:
                diag.append(x)
    assert all(x > 0 for x in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=3))
def test_kernel_vectors_are_annihilated(m):
    for k in integer_kernel(m, 3):
        assert all(sum(r[j] * k[j] for j in range(3)) == 0 for r in m)


def test_abelian_invariants_examples():
    assert (abelian_invariants(P(BS[2, 3])).rank, abelian_invariants(P(BS[2, 3])).torsion) == (1, ())
    inv = abelian_invariants(P(BS[1, -1]))
    assert (inv.rank, inv.torsion) == (1, (2,))
    assert relation_matrix(P(BS[1, -1])) == [[2, 0]]


def test_index_fourteen_subgroup_abelianization():
    g0 = P(G0)
    table = todd_coxeter(g0, [parse_word(s, g0.names) for s in G0_WITNESS])
    inv = abelian_invariants(rs_presentation(g0, table))
    assert (inv.rank, inv.torsion) == (2, (2, 4))


def test_char_poly_examples():
    assert char_poly([[0, 0, 1], [1, 0, 1], [0, 1, 0]]) == [-1, -1, 0, 1]
    assert char_poly([[1, 0], [0, 1]]) == [1, -2, 1]
    assert char_poly([[2, 0], [0, 3]]) == [6, -5, 1]


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_char_poly_constant_term_is_signed_determinant(m):
    c = char_poly(m)
    assert c[0] == -determinant(m)
    assert c[2] == -sum(m[i][i] for i in range(3))
