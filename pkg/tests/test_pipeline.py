import random

from hypothesis import given
from hypothesis import strategies as st

from chroma.corpus import random_corpus, random_tree
from chroma.pipeline import SCHEMA, full_pipeline, render_report
from chroma.slp import ps_bound
from chroma.tree import parse_tree
from conftest import DATA
from strategies import small_fields


def load(name):
    return parse_tree((DATA / name).read_text())


def test_zero_tree_pipeline(gf4):
    r = full_pipeline(load("zero.tree"), gf4)
    assert r.complexity.L == 2 and r.complexity.passed
    assert r.complexity.bound == 48
    assert r.chi == (1, 0, 0, 1)
    assert r.product_disagree == [0, 1, 2, 3]


def test_comb_pipeline_records_rounds(gf4):
    r = full_pipeline(load("comb.tree"), gf4)
    assert [s.width for s in r.stages] == [2, 2, 2, 1]
    assert len(r.rounds) == 1 and r.rounds[0].rules == ["case-I/row-4"]
    assert r.best[0] == "paterson-stockmeyer"
    text = render_report(r, gf4)
    assert text.startswith(f"schema: {SCHEMA}\n")
    assert "round 1: width 2->1" in text


def test_division_warning(gf4):
    r = full_pipeline(load("inverse.tree"), gf4)
    assert r.undefined == {0} and r.extended == {0: False}
    assert "warning: division by zero at x=0" in render_report(r, gf4)


def test_bushy_tree_over_gf8(gf8):
    # depth-6 complete tree of tests x - c; PS alone needs at most 2*3 + 3 = 9 steps
    lines = ["input 1"]
    nid = [1]

    def new(text):
        nid[0] += 1
        lines.append(text.format(i=nid[0]))
        return nid[0]

    consts = {c: new(f"const {{i}} {c}") for c in range(8)}
    diffs = {c: new(f"sub {{i}} 1 {consts[c]}") for c in range(8)}
    rng = random.Random(6)

    def grow(d):
        if d == 6:
            return new(f"leaf {{i}} {rng.choice(['in', 'out'])}")
        eq, neq = grow(d + 1), grow(d + 1)
        return new(f"branch {{i}} {diffs[rng.randrange(8)]} {eq} {neq}")

    root = grow(0)
    t = parse_tree("\n".join(lines + [f"root {root}"]))
    r = full_pipeline(t, gf8)
    assert r.complexity.bound >= 432
    assert r.ps_seq.L <= ps_bound(7) <= 9
    assert r.complexity.passed and r.ps_seq_valid and r.tree_seq_valid


def test_corpus_is_deterministic(gf4):
    a = random_corpus(gf4, 10, seed=3)
    b = random_corpus(gf4, 10, seed=3)
    assert a == b


trees = st.builds(
    lambda F, seed, div, split: (F, random_tree(random.Random(seed), F, division=div, splitting=split)),
    small_fields, st.integers(0, 10**6), st.booleans(), st.booleans(),
)


@given(trees)
def test_pipeline_invariants(ft):
    F, t = ft
    r = full_pipeline(t, F)
    assert not r.notes
    assert r.tree_seq_valid and r.ps_seq_valid
    assert r.complexity.passed
    assert r.chi_normalized == r.chi
    sizes = {s.name: s.size for s in r.stages}
    assert sizes["prune"] <= sizes["input"]
    assert sizes["divfree"] <= 4 * sizes["input"]
    assert r.final.width <= 1
