"""Seeded random inputs: decision trees and small connected graphs."""
from __future__ import annotations

import itertools
import random

from .coloring import OrientedGraph
from .field import FieldCtx
from .tree import DecisionTree, TreeBuilder


def random_tree(rng: random.Random, ctx: FieldCtx, max_depth: int = 6, max_nodes: int = 15,
                division: bool = True, splitting: bool = False) -> DecisionTree:
    """A random tree with at most ``max_nodes`` nodes besides the input.

    Branch nesting is at most ``max_depth``.  Tests are computations built
    from the input, constants and earlier values.  With ``splitting``, each
    test is the best of a few candidates at dividing the inputs that reach
    the branch, so most branches survive pruning and the tree stays wide.
    """
    # division trees lean on div so most of them actually divide
    ops = ["add", "sub", "mul", "scale"] + (["div"] * 4 if division else [])
    b = TreeBuilder()
    x = b.add("input")
    values = [x]
    table = {x: {a: a for a in ctx.elements()}}
    # nodes still available once every pending leaf is paid for
    free = max_nodes - 1

    def add(kind, *args):
        nonlocal free
        free -= 1
        v = b.add(kind, *args)
        vals = {}
        for a in ctx.elements():
            try:
                if kind == "const":
                    vals[a] = args[0]
                elif kind == "scale":
                    vals[a] = ctx.mul(args[0], table[args[1]][a])
                else:
                    vals[a] = getattr(ctx, kind)(table[args[0]][a], table[args[1]][a])
            except (ZeroDivisionError, KeyError):
                pass
        table[v] = vals
        values.append(v)
        return v

    def new_value(r, reach):
        # every branch still needs 2 free slots after its test is built
        v = r.choice(values)
        if reach and r.random() < 0.5 and free >= 4:
            # v - v(a) vanishes on the preimage of v(a); v * (v - v(a)) on zeros of v as well
            known = [table[v][a] for a in sorted(reach) if a in table[v]]
            if known:
                w = add("sub", v, add("const", r.choice(known)))
                return add("mul", v, w) if r.random() < 0.5 and free >= 3 else w
        for _ in range(r.randint(1, 2)):
            op = r.choice(ops)
            if op == "scale":
                if free < 3:
                    break
                v = add("scale", r.randrange(1, ctx.q), v)
                continue
            if free >= 4 and r.random() < 0.3:
                other = add("const", r.randrange(ctx.q))
            elif free >= 3:
                other = r.choice(values)
            else:
                break
            l, rr = (v, other) if r.random() < 0.5 else (other, v)
            v = add(op, l, rr)
        return v

    def split(v, reach):
        zero = {a for a in reach if table[v].get(a) == 0}
        nonzero = {a for a in reach if a in table[v] and table[v][a] != 0}
        return zero, nonzero

    def choose_test(reach):
        nonlocal free
        if not splitting:
            return new_value(rng, reach)
        best = None
        for seed in [rng.random() for _ in range(6)]:
            mark = (b._next, len(values), free)
            v = new_value(random.Random(seed), reach)
            zero, nonzero = split(v, reach)
            score = (bool(zero) and bool(nonzero), len(zero), free - mark[2])
            if best is None or score > best[0]:
                best = (score, seed)
            for i in range(mark[0], b._next):
                b.nodes.pop(i, None)
                table.pop(i, None)
            b._next, free = mark[0], mark[2]
            del values[mark[1]:]
        return new_value(random.Random(best[1]), reach)

    def grow(depth, reach, off_path):
        nonlocal free
        stop = 0.25 * depth / max_depth + (0.0 if splitting and off_path else 0.1)
        if depth >= max_depth or free < 2 or (splitting and len(reach) < 2) or rng.random() < stop:
            return b.add("leaf", rng.random() < 0.5)
        src = choose_test(reach)
        free -= 2  # the branch itself and its second leaf
        zero, nonzero = split(src, reach)
        eq = grow(depth + 1, zero, True)
        neq = grow(depth + 1, nonzero, off_path)
        return b.add("branch", src, eq, neq)

    b.root = grow(0, set(ctx.elements()), False)
    return b.build(strip=False)


def random_corpus(ctx: FieldCtx, count: int, seed: int, division_share: float = 0.5,
                  splitting_share: float = 0.5) -> list[DecisionTree]:
    rng = random.Random(seed)
    return [
        random_tree(rng, ctx, division=rng.random() < division_share,
                    splitting=rng.random() < splitting_share)
        for _ in range(count)
    ]


def random_connected_graph(rng: random.Random, num_vertices: int, num_edges: int) -> OrientedGraph:
    """Random spanning tree plus extra distinct edges, random orientations."""
    pairs = list(itertools.combinations(range(1, num_vertices + 1), 2))
    if num_edges > len(pairs) or num_edges < num_vertices - 1:
        raise ValueError("edge count out of range for a simple connected graph")
    order = list(range(1, num_vertices + 1))
    rng.shuffle(order)
    chosen = set()
    for i in range(1, num_vertices):
        a, c = order[i], order[rng.randrange(i)]
        chosen.add((min(a, c), max(a, c)))
    rest = [p for p in pairs if p not in chosen]
    rng.shuffle(rest)
    chosen.update(rest[: num_edges - len(chosen)])
    edges = [(a, c) if rng.random() < 0.5 else (c, a) for a, c in sorted(chosen)]
    return OrientedGraph(num_vertices, tuple(edges))


def named_graphs() -> dict[str, OrientedGraph]:
    return {
        "triangle": OrientedGraph(3, ((1, 2), (2, 3), (3, 1))),
        "k4": OrientedGraph(4, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))),
        "k4_minus_edge": OrientedGraph(4, ((3, 1), (1, 2), (2, 4), (4, 3), (3, 2))),
        "c4": OrientedGraph(4, ((1, 2), (2, 3), (3, 4), (4, 1))),
        "c5": OrientedGraph(5, ((1, 2), (2, 3), (3, 4), (4, 5), (5, 1))),
        "path3": OrientedGraph(3, ((1, 2), (2, 3))),
        "star4": OrientedGraph(4, ((1, 2), (1, 3), (1, 4))),
        "fan5": OrientedGraph(5, ((1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (3, 4), (4, 5))),
    }


def k4_minus_edge_line(ctx: FieldCtx):
    """A line theta(t) = A + t B through the array of K4 minus an edge, hitting it at t = 1.

    Entries are polynomials in the color c, so the array lives over any field.
    """
    from .witness import ArrayLine, array_from_function

    m1 = ctx.minus_one

    def base(v, e, c):
        return (
            (c, 0, 0, 0, 1),
            (0, 0, 1, 0, c),
            (0, 0, 0, c, 0),
            (0, 0, c, 0, 0),
        )[v][e]

    def direction(v, e, c):
        return (
            (0, 1, 0, 0, m1),
            (0, c, 0, 0, 0),
            (1, 0, 0, 0, 1),
            (0, 0, 0, 1, 0),
        )[v][e]

    return ArrayLine(array_from_function(4, 5, ctx, base), array_from_function(4, 5, ctx, direction))


def graph_sample(seed: int = 0, count: int = 200) -> list[OrientedGraph]:
    """Named graphs plus random connected ones with |V| <= 5, |E| <= 7."""
    rng = random.Random(seed)
    out = list(named_graphs().values())
    while len(out) < count:
        nv = rng.randint(2, 5)
        max_e = min(7, nv * (nv - 1) // 2)
        ne = rng.randint(nv - 1, max_e)
        out.append(random_connected_graph(rng, nv, ne))
    return out

