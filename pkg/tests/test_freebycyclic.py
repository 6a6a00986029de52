import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import DOUBLED_G0, G0, P
from largeness.cosets import whole_group_table
from largeness.freebycyclic import (
    FreeEndomorphism,
    certify_reducible_largeness,
    characteristic_polynomial,
    double,
    is_automorphism,
    is_pv_polynomial,
    mapping_torus,
    restriction_and_quotient,
)
from largeness.linalg import abelian_invariants
from largeness.presentation import deficiency
from largeness.verify import check_certificate
from largeness.words import Word

ALPHA = ("y", "z", "x y")


def test_automorphism_examples():
    f = FreeEndomorphism.parse(ALPHA)
    g = is_automorphism(f)
    assert g is not None
    assert is_automorphism(FreeEndomorphism.parse(["x^2", "y"])) is None
    inv = is_automorphism(FreeEndomorphism.parse(["x y", "y"]))
    assert inv == FreeEndomorphism.parse(["x y^-1", "y"])


def test_mapping_torus_examples():
    assert mapping_torus(FreeEndomorphism.identity(1)) == P("< t, x | t x t^-1 x^-1 >")
    assert mapping_torus(FreeEndomorphism.parse(ALPHA)) == P(G0)
    assert mapping_torus(double(FreeEndomorphism.parse(ALPHA))) == P(DOUBLED_G0)
    with pytest.raises(ValueError):
        mapping_torus(FreeEndomorphism.parse(["x^2", "y"]))


def test_double_examples():
    assert double(FreeEndomorphism.identity(1)).images == FreeEndomorphism.identity(2).images
    assert double(FreeEndomorphism.parse(ALPHA)).format() == ["b", "c", "a b", "y", "z", "x y"]


def test_split_examples():
    f = FreeEndomorphism.parse(ALPHA)
    fr, fq = restriction_and_quotient(double(f), 3)
    assert fr.images == f.images and fq.images == f.images
    ident = FreeEndomorphism.identity(2)
    assert [h.images for h in restriction_and_quotient(ident, 1)] == [(Word.gen(0),), (Word.gen(0),)]
    with pytest.raises(ValueError):
        restriction_and_quotient(FreeEndomorphism.parse(["y", "x"]), 1)


def test_pv_examples():
    assert characteristic_polynomial(FreeEndomorphism.parse(ALPHA)) == [-1, -1, 0, 1]
    assert is_pv_polynomial([-1, -1, 0, 1])
    assert not is_pv_polynomial([-1, 0, 1])
    assert is_pv_polynomial([1, -3, 1])
    assert not is_pv_polynomial([-1, 0, 0, 1])
    assert not is_pv_polynomial([1, 0, 1])
    # Salem-type: one root outside but others on the circle
    assert not is_pv_polynomial([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    assert is_pv_polynomial([1, -5, 1])
    assert not is_pv_polynomial([-5, 0, 1])


@st.composite
def automorphisms(draw):
    n = draw(st.integers(1, 3))
    images = [Word.gen(i) for i in range(n)]
    for _ in range(draw(st.integers(0, 6))):
        i = draw(st.integers(0, n - 1))
        kind = draw(st.sampled_from(["invert", "left", "right", "swap"]))
        if kind == "invert" or n == 1:
            images[i] = images[i].inverse()
            continue
        j = draw(st.integers(0, n - 1).filter(lambda j: j != i))
        if kind == "swap":
            images[i], images[j] = images[j], images[i]
        elif kind == "left":
            images[i] = images[j] * images[i]
        else:
            images[i] = images[i] * images[j].inverse()
    return FreeEndomorphism(tuple(images))


@given(automorphisms())
def test_inverse_round_trip(f):
    g = is_automorphism(f)
    assert g is not None
    for i in range(f.rank):
        assert f(g.images[i]) == Word.gen(i) and g(f.images[i]) == Word.gen(i)


@given(automorphisms())
def test_betti_number_from_the_matrix(f):
    p = mapping_torus(f)
    assert deficiency(p) == 1
    m = sympy.Matrix(f.matrix()) - sympy.eye(f.rank)
    assert abelian_invariants(p).rank == 1 + f.rank - m.rank()


def test_certifier_preconditions():
    f = double(FreeEndomorphism.parse(ALPHA))
    tr, tq = (whole_group_table(mapping_torus(h)) for h in restriction_and_quotient(f, 3))
    with pytest.raises(ValueError, match="Betti number 1"):
        certify_reducible_largeness(f, 3, tr, tq)
    with pytest.raises(ValueError, match="not a table over"):
        certify_reducible_largeness(f, 3, tq, tr)


def test_certifier_on_the_identity_is_checked():
    ident = FreeEndomorphism.identity(2)
    fr, fq = restriction_and_quotient(ident, 1)
    tr, tq = (whole_group_table(mapping_torus(h)) for h in (fr, fq))
    v = certify_reducible_largeness(ident, 1, tr, tq)
    if v.is_large:
        assert check_certificate(mapping_torus(ident), v.certificate)
