import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chroma.corpus import random_tree
from chroma.tree import (
    DecisionTree,
    EvaluationError,
    Node,
    TreeError,
    decided_on_domain,
    decided_set,
    dump_tree,
    evaluate,
    parse_tree,
    symbolic_values,
)
from chroma import poly as P
from conftest import DATA
from strategies import FIELDS, small_fields


def load(name, ctx=None):
    return parse_tree((DATA / name).read_text(), ctx)


def test_zero_tree(gf4):
    t = load("zero.tree")
    assert evaluate(t, gf4, 0)[0] is True
    assert all(evaluate(t, gf4, x)[0] is False for x in range(1, 4))
    assert decided_set(t, gf4) == {0}
    assert t.size == 1 and t.width == 0


def test_square_minus_x_tree(gf5):
    t = load("square_minus_x.tree")
    assert [evaluate(t, gf5, x)[0] for x in gf5.elements()] == [True, True, False, False, False]
    assert t.size == 3


def test_unreachable_in_leaves_decide_nothing(gf4):
    # x*x - x*x is identically zero, so only the eq fork is taken
    t = parse_tree("input 1\nmul 2 1 1\nsub 3 2 2\nleaf 4 out\nleaf 5 in\nbranch 6 3 4 5\nroot 6\n")
    assert decided_set(t, gf4) == frozenset()


def test_path_info_lists_placed_nodes(gf5):
    t = load("square_minus_x.tree")
    label, info = evaluate(t, gf5, 3)
    assert info.nodes == (2, 3, 6, 5)
    assert info.internal == 3


def test_division_by_zero_is_reported(gf4):
    t = load("inverse.tree")
    with pytest.raises(EvaluationError) as exc:
        evaluate(t, gf4, 0)
    assert exc.value.x == 0 and exc.value.node == 3
    members, undefined = decided_on_domain(t, gf4)
    assert members == {1} and undefined == {0}
    with pytest.raises(EvaluationError):
        decided_set(t, gf4)


def test_unused_values_sit_above_the_root(gf4):
    t = parse_tree(
        "input 1\nmul 2 1 1\nconst 3 2\nmul 4 3 2\nleaf 5 in\nleaf 6 out\nbranch 7 2 5 6\nroot 7\n"
    )
    assert t.unused_values == (3, 4)
    assert t.top_values == (2, 3, 4)
    assert t.size == 4
    assert evaluate(t, gf4, 0)[1].nodes == (2, 3, 4, 7, 5)


def test_generic_path_and_distance():
    t = load("comb.tree")
    assert t.generic_path == (15, 14)
    assert t.distance == {15: 0, 13: 1, 11: 2}
    assert t.width == 2
    assert t.parent[11] == 13


@pytest.mark.parametrize("text,msg", [
    ("input 1\nleaf 2 in\nbranch 3 1 2 9\nroot 3\n", "not a branch or leaf"),
    ("input 1\nleaf 2 maybe\nroot 2\n", "line 2"),
    ("input 1\nfrob 2 1\nroot 2\n", "line 2: unknown node kind"),
    ("input 1\nadd 2 1\nroot 1\n", "line 2"),
    ("input 1\nleaf 2 in\n", "missing 'root"),
    ("leaf 2 in\nroot 2\n", "input"),
    ("input 1\nadd 2 3 1\nadd 3 2 1\nleaf 4 in\nleaf 5 out\nbranch 6 2 4 5\nroot 6\n", "depends on itself"),
    ("input 1\nleaf 2 in\nleaf 3 out\nbranch 4 1 2 2\nroot 4\n", "two parents"),
])
def test_malformed_trees(text, msg):
    with pytest.raises(TreeError, match=msg):
        parse_tree(text)


def test_constants_are_checked_against_the_field(gf4):
    with pytest.raises(TreeError, match="line 2"):
        parse_tree("input 1\nconst 2 7\nleaf 3 in\nleaf 4 out\nbranch 5 2 3 4\nroot 5\n", gf4)


def test_nodes_are_immutable():
    with pytest.raises(AttributeError):
        Node(1, "input", ()).kind = "leaf"


trees = st.builds(
    lambda F, seed, div, split: (F, random_tree(random.Random(seed), F, division=div, splitting=split)),
    small_fields, st.integers(0, 10**6), st.booleans(), st.booleans(),
)


@given(trees)
def test_round_trip(ft):
    F, t = ft
    assert parse_tree(dump_tree(t), F) == t


@given(trees)
def test_corpus_shape_limits(ft):
    F, t = ft
    assert len([n for n in t.nodes.values() if n.kind != "input"]) <= 15
    depth = max(len([c for c in p if t.nodes[c].kind == "branch"]) for p in t.control_paths())
    assert depth <= 6


@given(trees)
def test_symbolic_values_match_evaluation(ft):
    F, t = ft
    if not t.is_polynomial():
        return
    sym = symbolic_values(t, F)
    for x in F.elements():
        label, _ = evaluate(t, F, x)
        c = t.root
        while t.nodes[c].kind == "branch":
            nd = t.nodes[c]
            c = nd.eq if P.evaluate(F, sym[nd.src], x) == 0 else nd.neq
        assert t.nodes[c].label == label


@given(trees)
def test_size_counts_the_longest_placed_path(ft):
    F, t = ft
    for x in F.elements():
        try:
            _, info = evaluate(t, F, x)
        except EvaluationError:
            continue
        assert info.internal <= t.size


def test_tree_equality_and_hash():
    a = parse_tree((DATA / "zero.tree").read_text())
    b = DecisionTree(list(a.nodes.values()), a.root)
    assert a == b and hash(a) == hash(b)
