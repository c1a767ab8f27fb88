"""Walk the 4-vertex, 5-edge fixture over GF(4): witnesses, the 4x4 determinant, and the line through it."""
import itertools
from pathlib import Path

from chroma import poly as P
from chroma.coloring import alpha_maps, brute_force_colorable, build_array, decide_colorable, parse_graph, project
from chroma.corpus import k4_minus_edge_line
from chroma.field import field_create
from chroma.linalg import det, rank
from chroma.witness import f_alpha

DATA = Path(__file__).resolve().parent.parent / "data"


def main():
    ctx = field_create(2, 2)
    g = parse_graph((DATA / "example1.graph").read_text())
    arr = build_array(g, ctx)

    witnesses = [a for a in alpha_maps(ctx, g.num_edges) if rank(ctx, project(arr, a)) < g.num_vertices]
    print("rank-deficient maps:", " ".join(",".join(map(str, a)) for a in witnesses))
    print("decide_colorable:", decide_colorable(g, ctx))
    print("backtracking:", brute_force_colorable(g, ctx))

    zeros = [a for a in itertools.product(ctx.nonzero(), repeat=4)
             if det(ctx, [row[:4] for row in project(arr, (*a, 1))]) == 0]
    print(f"det without the last edge vanishes at {len(zeros)} of {(ctx.q - 1) ** 4} points, e.g.",
          ",".join(map(str, zeros[0])))

    line = k4_minus_edge_line(ctx)
    hits = []
    for alpha in alpha_maps(ctx, line.cols, full_fiber=True):
        f = f_alpha(ctx, line, alpha)
        if P.evaluate(ctx, f, 1) == 0:
            hits.append((alpha, f))
    print(f"maps with f_alpha(1) = 0 on the line: {len(hits)} of {(ctx.q - 1) ** line.cols}")
    for alpha, f in hits[:5]:
        print("  alpha", ",".join(map(str, alpha)), "f", P.render(f))


if __name__ == "__main__":
    main()
