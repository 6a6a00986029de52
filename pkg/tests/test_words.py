from hypothesis import given
from hypothesis import strategies as st

from conftest import words
from largeness.parsing import parse_word
from largeness.words import (
    Word,
    commutator,
    cyclic_reduce,
    exponent_sum,
    is_cyclically_reduced,
    is_letter_basis,
    multiply,
    nielsen_reduce,
    replay_moves,
)

AT = ("a", "t")
XYZ = ("x", "y", "z")


def w(text, names=AT):
    return parse_word(text, names)


def test_parse_runs():
    assert w("t a^2 t^-1 a^-1").runs == ((1, 1), (0, 2), (1, -1), (0, -1))


def test_commutator_sugar():
    assert w("[a,t]") == w("a t a^-1 t^-1")
    assert commutator(Word.gen(0), Word.gen(1)) == w("a t a^-1 t^-1")


def test_free_reduction_to_identity():
    assert w("a a^-1") == Word()
    assert len(Word()) == 0


def test_multiply_examples():
    ab = ("a", "t", "b")
    assert multiply(w("a t", ab), w("t^-1 b", ab)) == w("a b", ab)
    x = w("t a^3 t^-2 a")
    assert multiply(x, x.inverse()) == Word()
    assert multiply(w("a^2"), w("a^3")) == w("a^5")


def test_cyclic_reduce_examples():
    core, conj = cyclic_reduce(w("t a t^-1"))
    assert (core, conj) == (w("a"), w("t"))
    for text in ["t a^2 t^-1 a^-1", "a t a^-1 t^-1"]:
        assert cyclic_reduce(w(text)) == (w(text), Word())


def test_exponent_sums_of_two_generator_relator():
    r = w("t^6 a t^-4 a^-1 t^-2 a^-1")
    assert exponent_sum(r, 1) == 0
    assert exponent_sum(r, 0) == -1
    assert exponent_sum(Word(), 0) == 0


def test_nielsen_examples():
    red, log = nielsen_reduce([w("x y", XYZ), w("y", XYZ)], 2)
    assert red == [w("x", XYZ), w("y", XYZ)]
    assert len(log) == 1
    red, _ = nielsen_reduce([w("x", XYZ), w("y", XYZ), Word()], 3)
    assert red[2] == Word()
    red, log = nielsen_reduce([w("y", XYZ), w("z", XYZ), w("x y", XYZ)], 3)
    assert sum(len(u) for u in red) == 3
    assert is_letter_basis(red, 3)


@given(words(), words(), words())
def test_associativity(u, v, x):
    assert (u * v) * x == u * (v * x)


@given(words(), words())
def test_length_subadditive_and_reduction_idempotent(u, v):
    uv = multiply(u, v)
    assert len(uv) <= len(u) + len(v)
    assert Word(uv.runs) == uv
    assert all(a[0] != b[0] for a, b in zip(uv.runs, uv.runs[1:]))
    assert all(e for _, e in uv.runs)


@given(words())
def test_cyclic_reduce_is_a_fixed_point(x):
    core, conj = cyclic_reduce(x)
    assert is_cyclically_reduced(core)
    assert cyclic_reduce(core)[0] == core
    assert conj * core * conj.inverse() == x


@given(words(rank=3), words(rank=3), st.integers(0, 2))
def test_exponent_sum_is_a_homomorphism(u, v, g):
    assert exponent_sum(u * v, g) == exponent_sum(u, g) + exponent_sum(v, g)


@given(st.lists(words(rank=3, max_runs=5), min_size=1, max_size=4))
def test_nielsen_never_grows_and_replays(tup):
    red, log = nielsen_reduce(tup, 3)
    assert replay_moves(tup, log) == red
    total = sum(len(x) for x in tup)
    cur = list(tup)
    for move in log:
        cur = replay_moves(cur, [move])
        assert sum(len(x) for x in cur) <= total
        total = sum(len(x) for x in cur)
    assert sum(len(x) for x in red) <= sum(len(x) for x in tup)
