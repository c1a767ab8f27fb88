"""Colorability of oriented graphs by nonzero field elements.

A graph is F-colorable when its vertices can receive values in F* with
adjacent vertices distinct.  The rank route: for an edge weighting
alpha: E -> F minus {0, -1}, the |V| x |E| matrix with 1 at the tail and
alpha(e) at the head of every edge has a nonzero left kernel exactly when
some proper coloring satisfies c_tail + alpha(e) c_head = 0 on every edge.
"""
from __future__ import annotations

import itertools
import os
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import linalg
from . import poly as P
from .field import FieldCtx, enumerate_nonzero_nonminusone, field_create


class GraphError(ValueError):
    pass


class ColoringConsistencyError(AssertionError):
    """A kernel vector failed to be a proper coloring (should be impossible)."""


@dataclass(frozen=True)
class OrientedGraph:
    """Vertices 1..num_vertices; edge (a, b) runs from tail a to head b."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.num_vertices < 1:
            raise GraphError("graph needs at least one vertex")
        for i, (a, b) in enumerate(self.edges, 1):
            if not (1 <= a <= self.num_vertices and 1 <= b <= self.num_vertices):
                raise GraphError(f"edge {i} ({a}, {b}) names a vertex outside 1..{self.num_vertices}")
            if a == b:
                raise GraphError(f"edge {i} is a self-loop at vertex {a}")
        if not self.is_connected():
            raise GraphError("graph is not connected")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbours(self) -> dict[int, set[int]]:
        adj = {v: set() for v in range(1, self.num_vertices + 1)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_connected(self) -> bool:
        adj = self.neighbours()
        seen, stack = {1}, [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_vertices

    def flipped(self, index: int) -> "OrientedGraph":
        edges = list(self.edges)
        a, b = edges[index]
        edges[index] = (b, a)
        return OrientedGraph(self.num_vertices, tuple(edges))


def parse_graph(text: str) -> OrientedGraph:
    """Read the line format ``graph <V> <E>`` followed by ``e <tail> <head>`` lines.

    Blank lines and ``#`` comments are ignored.  Errors name the line.
    """
    lines = [
        (no, line.split("#", 1)[0].split())
        for no, line in enumerate(text.splitlines(), 1)
    ]
    lines = [(no, toks) for no, toks in lines if toks]
    if not lines:
        raise GraphError("line 1: empty graph file")
    no, head = lines[0]
    if len(head) != 3 or head[0] != "graph":
        raise GraphError(f"line {no}: expected 'graph <V> <E>'")
    try:
        nv, ne = int(head[1]), int(head[2])
    except ValueError:
        raise GraphError(f"line {no}: vertex and edge counts must be integers") from None
    edges = []
    for no, toks in lines[1:]:
        if len(toks) != 3 or toks[0] != "e":
            raise GraphError(f"line {no}: expected 'e <tail> <head>'")
        try:
            edges.append((int(toks[1]), int(toks[2])))
        except ValueError:
            raise GraphError(f"line {no}: vertex ids must be integers") from None
    if len(edges) != ne:
        raise GraphError(f"line {lines[0][0]}: header promises {ne} edges, found {len(edges)}")
    return OrientedGraph(nv, tuple(edges))


def dump_graph(g: OrientedGraph) -> str:
    out = [f"graph {g.num_vertices} {g.num_edges}"]
    out += [f"e {a} {b}" for a, b in g.edges]
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ColorArray:
    """A |V| x |E| x (q-1) array; ``data[v][e][c-1]`` holds entry (v, e, c).

    Indices v, e are 0-based here; colors c are nonzero field encodings.
    """

    rows: int
    cols: int
    q: int
    data: tuple

    def entry(self, v: int, e: int, c: int) -> int:
        if c == 0:
            raise IndexError("the color index ranges over nonzero elements")
        return self.data[v][e][c - 1]


def build_array(g: OrientedGraph, ctx: FieldCtx) -> ColorArray:
    """A(v, e, c) = 1 at the tail of e, c at the head, 0 elsewhere."""
    q = ctx.q
    data = []
    for v in range(1, g.num_vertices + 1):
        row = []
        for tail, head in g.edges:
            if v == tail:
                row.append((1,) * (q - 1))
            elif v == head:
                row.append(tuple(range(1, q)))
            else:
                row.append((0,) * (q - 1))
        data.append(tuple(row))
    return ColorArray(g.num_vertices, g.num_edges, q, tuple(data))


def check_alpha(ctx: FieldCtx, alpha: Sequence[int]) -> None:
    bad = [a for a in alpha if a == 0 or a == ctx.minus_one]
    if bad:
        raise ValueError(f"edge weights must avoid 0 and -1, got {list(alpha)}")


def project(a: ColorArray, alpha: Sequence[int]) -> linalg.FieldMatrix:
    """The |V| x |E| slice selecting color alpha[e] in edge e's fiber."""
    if len(alpha) != a.cols:
        raise ValueError(f"alpha has {len(alpha)} entries for {a.cols} edges")
    if any(c == 0 or c >= a.q for c in alpha):
        raise ValueError(f"alpha values must be nonzero field elements, got {list(alpha)}")
    return [[a.data[v][e][alpha[e] - 1] for e in range(a.cols)] for v in range(a.rows)]


def projected_matrix(g: OrientedGraph, ctx: FieldCtx, alpha: Sequence[int]) -> linalg.FieldMatrix:
    check_alpha(ctx, alpha)
    return project(build_array(g, ctx), alpha)


def alpha_maps(ctx: FieldCtx, num_edges: int, full_fiber: bool = False):
    """All edge weightings, lexicographic in edge index and encoding.

    Weights avoid 0 and -1.  With ``full_fiber`` every nonzero color is
    allowed, which walks all (q-1)^|E| slices of the array.
    """
    values = ctx.nonzero() if full_fiber else enumerate_nonzero_nonminusone(ctx)
    return itertools.product(values, repeat=num_edges)


def is_proper(g: OrientedGraph, ctx: FieldCtx, colors: Sequence[int]) -> bool:
    if len(colors) != g.num_vertices or any(not 0 < c < ctx.q for c in colors):
        return False
    return all(colors[a - 1] != colors[b - 1] for a, b in g.edges)


def extract_coloring(ctx: FieldCtx, kernel_vec: Sequence[int], alpha: Sequence[int],
                     g: OrientedGraph) -> tuple[int, ...]:
    """Read a kernel vector of the projected matrix as a vertex coloring.

    Every edge forces c_tail = -alpha(e) c_head with alpha(e) not in {0, -1},
    so on a connected graph one nonzero coordinate makes all of them nonzero
    and adjacent ones distinct.  Both facts are checked.
    """
    c = tuple(kernel_vec)
    if not any(c):
        raise ValueError("kernel vector is zero")
    for (tail, head), a in zip(g.edges, alpha):
        if c[tail - 1] != ctx.neg(ctx.mul(a, c[head - 1])):
            raise ValueError(f"vector is not in the left kernel at edge ({tail}, {head})")
    if any(x == 0 for x in c):
        raise ColoringConsistencyError(f"kernel vector {c} has a zero coordinate")
    if not is_proper(g, ctx, c):
        raise ColoringConsistencyError(f"kernel vector {c} gives equal colors on an edge")
    return c


def _first_witness(g, ctx, alphas):
    arr = build_array(g, ctx)
    for alpha in alphas:
        if linalg.rank(ctx, project(arr, alpha)) < g.num_vertices:
            return alpha
    return None


def _scan_chunk(args):
    g, p, n, alphas = args
    return _first_witness(g, field_create(p, n), alphas)


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("CHROMA_THREADS", "1")))
    except ValueError:
        return 1


def decide_colorable(g: OrientedGraph, ctx: FieldCtx, workers: int | None = None):
    """Search edge weightings for a rank-deficient projection.

    Returns ``(alpha, coloring)`` for the first witness in enumeration order,
    or ``None`` when the graph is not F-colorable.  Trees (|E| < |V|) always
    have a kernel, so the first weighting already works.
    """
    arr = build_array(g, ctx)
    if g.num_edges < g.num_vertices:
        alpha = next(iter(alpha_maps(ctx, g.num_edges)))
        witness = alpha
    else:
        workers = workers or _default_workers()
        if workers > 1:
            witness = _parallel_scan(g, ctx, workers)
        else:
            witness = _first_witness(g, ctx, alpha_maps(ctx, g.num_edges))
        if witness is None:
            return None
    M = project(arr, witness)
    kernel = linalg.left_kernel(ctx, M)
    coloring = extract_coloring(ctx, kernel[0], witness, g)
    return tuple(witness), coloring


def _parallel_scan(g, ctx, workers):
    alphas = list(alpha_maps(ctx, g.num_edges))
    size = max(1, len(alphas) // (workers * 4))
    chunks = [alphas[i:i + size] for i in range(0, len(alphas), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves chunk order, so the first hit is the first witness
        for hit in pool.map(_scan_chunk, [(g, ctx.p, ctx.n, c) for c in chunks]):
            if hit is not None:
                return hit
    return None


def brute_force_colorable(g: OrientedGraph, ctx: FieldCtx) -> tuple[int, ...] | None:
    """Backtracking search for a proper coloring V -> F*; parallel edges collapse."""
    adj = g.neighbours()
    n = g.num_vertices
    colors = [0] * (n + 1)

    def place(v):
        if v > n:
            return True
        for c in ctx.nonzero():
            if all(colors[w] != c for w in adj[v] if w < v):
                colors[v] = c
                if place(v + 1):
                    return True
        colors[v] = 0
        return False

    return tuple(colors[1:]) if place(1) else None


def edge_products(ctx: FieldCtx, g: OrientedGraph, colors: Sequence[int]) -> list[int]:
    """Per edge, prod over alpha in F minus {0,-1} of (c_tail + alpha c_head)."""
    out = []
    for tail, head in g.edges:
        acc = 1
        for a in enumerate_nonzero_nonminusone(ctx):
            acc = ctx.mul(acc, ctx.add(colors[tail - 1], ctx.mul(a, colors[head - 1])))
        out.append(acc)
    return out


def fermat_identity(ctx: FieldCtx) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Both sides of (X - Y) prod_{alpha != 0, -1} (X + alpha Y) = X^(q-1) - Y^(q-1).

    Each side is a homogeneous form of degree q - 1, stored as the coefficient
    of X^i Y^(q-1-i) at index i.  Products of such forms are convolutions, so
    the expansion reuses univariate multiplication.
    """
    lhs = (ctx.minus_one, 1)
    for a in enumerate_nonzero_nonminusone(ctx):
        lhs = P.mul(ctx, lhs, (a, 1))
    rhs = P.normalize([ctx.minus_one] + [0] * (ctx.q - 2) + [1])
    return lhs, rhs
