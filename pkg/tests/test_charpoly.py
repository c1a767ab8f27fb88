import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chroma import poly as P
from chroma.charpoly import (
    agreement,
    char_poly_product,
    char_poly_normalized,
    char_poly_oracle,
    classify,
)
from chroma.corpus import random_tree
from chroma.rewrite import eliminate_division, prune, reduce_width, retract
from chroma.tree import decided_set, parse_tree, symbolic_values
from conftest import DATA
from strategies import small_fields

SINGLE_IN = "input 1\nleaf 2 in\nroot 2\n"
ZERO_TREE = (DATA / "zero.tree").read_text()


def off_path_tree(eq_label, neq_label):
    # root tests x - 1 (eq -> off-path branch on x*x - x), neq -> out
    return parse_tree(
        "input 1\nconst 2 1\nsub 3 1 2\nmul 4 1 1\nsub 5 4 1\n"
        f"leaf 6 {eq_label}\nleaf 7 {neq_label}\nbranch 8 5 6 7\nleaf 9 out\nbranch 10 3 8 9\nroot 10\n"
    )


def test_classify_single_on_path_branch():
    c = classify(parse_tree(ZERO_TREE))
    assert c.on_path == [4] and c.eq_in == [] and c.neq_in == []


def test_classify_off_path():
    assert classify(off_path_tree("in", "out")).eq_in == [8]
    assert classify(off_path_tree("out", "in")).neq_in == [8]
    assert classify(off_path_tree("out", "out")).neither == [8]
    assert classify(off_path_tree("in", "in")).eq_in == [8]
    assert classify(off_path_tree("in", "out")).parent == {8: 10}


def test_classify_rejects_wide_trees():
    with pytest.raises(ValueError):
        classify(parse_tree((DATA / "comb.tree").read_text()))


def test_oracle_examples(gf4, gf5):
    assert char_poly_oracle(parse_tree(ZERO_TREE), gf4) == (1, 0, 0, 1)
    empty = parse_tree("input 1\nleaf 2 out\nroot 2\n")
    assert char_poly_oracle(empty, gf4) == P.ZERO
    t = parse_tree((DATA / "square_minus_x.tree").read_text())
    chi = char_poly_oracle(t, gf5)
    assert [P.evaluate(gf5, chi, x) for x in gf5.elements()] == [1, 1, 0, 0, 0]
    u = P.sub(gf5, P.mul(gf5, P.X, P.X), P.X)
    assert chi == P.reduce_field(gf5, P.sub(gf5, P.ONE, P.pow_poly(gf5, u, 4)))


def test_product_formula_disagrees_on_zero_tree(gf4):
    t = parse_tree(ZERO_TREE)
    assert char_poly_product(t, gf4) == P.X
    assert agreement(gf4, char_poly_product(t, gf4), char_poly_oracle(t, gf4)) == [0, 1, 2, 3]


def test_product_formula_on_single_leaf(gf4):
    t = parse_tree(SINGLE_IN)
    assert char_poly_product(t, gf4) == P.ONE == char_poly_oracle(t, gf4)


def test_product_formula_after_case_i_retract(gf4):
    t = parse_tree((DATA / "comb.tree").read_text())
    r, _ = retract(t, 13, gf4)
    c = classify(r)
    assert c.eq_in and not c.neq_in
    vals = symbolic_values(r, gf4)

    def Z(b):
        u = vals[r.nodes[b].src]
        return P.sub(gf4, P.ONE, P.reduce_field(gf4, P.pow_poly(gf4, u, 3)))

    for b in c.eq_in:
        factor = P.sub(gf4, P.ONE, P.mul(gf4, Z(b), Z(c.parent[b])))
        assert set(P.values(gf4, factor).values()) <= {0, 1}
    chi = char_poly_product(r, gf4)
    # the on-path factor is a bare u, so the product need not be 0/1 valued
    assert agreement(gf4, chi, char_poly_oracle(r, gf4)) == [0, 1, 3]


def test_normalized_matches_oracle_on_examples(gf4, gf5):
    for text, F in [(ZERO_TREE, gf4), (SINGLE_IN, gf4), ((DATA / "square_minus_x.tree").read_text(), gf5)]:
        t = parse_tree(text)
        assert char_poly_normalized(t, F) == char_poly_oracle(t, F)


trees = st.builds(
    lambda F, seed, div, split: (F, random_tree(random.Random(seed), F, division=div, splitting=split)),
    small_fields, st.integers(0, 10**6), st.booleans(), st.booleans(),
)


@given(trees)
def test_normalized_equals_oracle(ft):
    F, t = ft
    r, _ = reduce_width(prune(eliminate_division(t), F), F)
    assert char_poly_normalized(r, F) == char_poly_oracle(r, F)


@given(trees)
def test_oracle_is_the_indicator(ft):
    F, t = ft
    d = eliminate_division(t)
    chi = char_poly_oracle(d, F)
    members = decided_set(d, F)
    assert P.degree(chi) < F.q
    assert all(P.evaluate(F, chi, x) == (1 if x in members else 0) for x in F.elements())
