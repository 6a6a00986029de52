import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import BS, G0, G0_WITNESS, P, words
from largeness.cosets import (
    CosetTable,
    ResourceLimit,
    Rewriter,
    intersect,
    low_index_subgroups,
    preimage,
    rs_presentation,
    standardize,
    todd_coxeter,
    whole_group_table,
)
from largeness.linalg import abelian_invariants
from largeness.parsing import parse_word
from largeness.presentation import Presentation, deficiency
from largeness.words import Word


def gens(p, *texts):
    return [parse_word(s, p.names) for s in texts]


def test_todd_coxeter_examples():
    s3 = P("< x, y | x^2, y^3, (x y)^2 >")
    assert todd_coxeter(s3, gens(s3, "x")).index == 3
    assert todd_coxeter(P("< x | x^5 >")).index == 5
    g0 = P(G0)
    t = todd_coxeter(g0, gens(g0, *G0_WITNESS))
    assert t.index == 14
    assert t.check() == []


def test_todd_coxeter_budget():
    with pytest.raises(ResourceLimit):
        todd_coxeter(P("< x | x^50 >"), max_cosets=10)


def test_low_index_examples():
    assert [t.index for t in low_index_subgroups(P("< a, b >"), 2)] == [1, 2, 2, 2]
    assert [t.index for t in low_index_subgroups(P("< x | x^6 >"), 6)] == [1, 2, 3, 6]


def test_rs_examples():
    torus = P("< a, t | [t,a] >")
    t = todd_coxeter(torus, gens(torus, "a", "t^2"))
    assert t.index == 2
    inv = abelian_invariants(rs_presentation(torus, t))
    assert (inv.rank, inv.torsion) == (2, ())
    klein = P(BS[1, -1])
    t = todd_coxeter(klein, gens(klein, "a", "t^2"))
    inv = abelian_invariants(rs_presentation(klein, t))
    assert (inv.rank, inv.torsion) == (2, ())


def test_rewriter_is_consistent_with_the_table():
    p = P(BS[1, 2])
    for t in low_index_subgroups(p, 4):
        rw = Rewriter(t)
        for g in range(p.ngens):
            for c in range(t.index):
                _, end = rw.rewrite(Word.gen(g), c)
                assert end == t.action[g][c]


def test_intersections():
    f2 = P("< a, b >")
    index2 = [t for t in low_index_subgroups(f2, 2) if t.index == 2]
    for t in index2:
        assert intersect(t, t) == t
        assert intersect(whole_group_table(f2), t).action == t.action
    assert intersect(index2[0], index2[1]).index == 4


def test_preimages():
    p = P(BS[1, 2])
    ident = [Word.gen(g) for g in range(p.ngens)]
    for t in low_index_subgroups(p, 4):
        assert preimage(p, ident, t).action == t.action
    # kill the B block of the doubled example: index is preserved
    cor = P("< t, a, b, c, x, y, z | t a t^-1 = b, t b t^-1 = c, t c t^-1 = a b, "
            "t x t^-1 = y, t y t^-1 = z, t z t^-1 = x y >")
    g0 = P(G0)
    theta = [Word.gen(0)] + [Word()] * 3 + [Word.gen(i) for i in (1, 2, 3)]
    tq = todd_coxeter(g0, gens(g0, *G0_WITNESS))
    assert preimage(cor, theta, tq).index == 14
    with pytest.raises(ValueError):
        preimage(g0, [Word.gen(0), Word.gen(1), Word.gen(1), Word.gen(1)], tq)


def test_table_round_trip():
    g0 = P(G0)
    t = todd_coxeter(g0, gens(g0, *G0_WITNESS))
    assert CosetTable.from_json(t.to_json(), g0) == t


@st.composite
def deficiency_one(draw):
    n = draw(st.integers(2, 3))
    rels = draw(st.lists(words(rank=n, max_runs=5, max_exp=2).filter(len), min_size=n - 1, max_size=n - 1))
    return Presentation(tuple("abc"[:n]), tuple(rels))


@given(deficiency_one())
def test_rs_keeps_deficiency_one(p):
    for t in low_index_subgroups(p, 3)[:4]:
        h = rs_presentation(p, t)
        assert deficiency(h) == 1
        assert len(t.action) == p.ngens and t.check() == []
        # the Schreier generators themselves generate a subgroup of the same index
        assert todd_coxeter(p, t.subgroup_gens).action == t.action


def _brute_force_classes(p: Presentation, n: int) -> set:
    perms = list(itertools.permutations(range(n)))
    classes = set()
    for action in itertools.product(perms, repeat=p.ngens):
        t = CosetTable(tuple(action), p)
        if any(t.trace(r, c) != c for r in p.relators for c in range(n)):
            continue
        # transitive?
        seen, todo = {0}, [0]
        while todo:
            c = todo.pop()
            for perm in action:
                if perm[c] not in seen:
                    seen.add(perm[c])
                    todo.append(perm[c])
        if len(seen) < n:
            continue
        full = t.full_table()
        forms = [tuple(map(tuple, standardize(full, s))) for s in range(n)]
        classes.add(min(forms))
    return classes


@pytest.mark.parametrize("text", ["< a, b >", "< x, y | x^2, y^3, (x y)^2 >", BS[1, 2], "< a, t | [t,a] >"])
def test_low_index_matches_brute_force(text):
    p = P(text)
    found = low_index_subgroups(p, 4)
    for n in range(1, 5):
        mine = set()
        for t in found:
            if t.index != n:
                continue
            full = t.full_table()
            mine.add(min(tuple(map(tuple, standardize(full, s))) for s in range(n)))
        assert len(mine) == sum(1 for t in found if t.index == n)
        assert mine == _brute_force_classes(p, n)
