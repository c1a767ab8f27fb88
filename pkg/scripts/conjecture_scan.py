"""Degree report for the witness product along A(g1) + t A(g2)."""
import argparse
from pathlib import Path

from chroma.coloring import parse_graph
from chroma.field import parse_field
from chroma.witness import MODES, conjecture_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="2^2")
    ap.add_argument("--mode", choices=MODES, default="all_minors")
    ap.add_argument("graph1", type=Path)
    ap.add_argument("graph2", type=Path)
    args = ap.parse_args()

    ctx = parse_field(args.field)
    g1, g2 = (parse_graph(p.read_text()) for p in (args.graph1, args.graph2))
    rep = conjecture_scan(g1, g2, ctx, args.mode)
    degs = rep.deg_f
    print(f"field GF({ctx.q}), {len(rep.alphas)} maps, mode {args.mode}")
    print(f"deg f_alpha: min {min(degs)} max {max(degs)}")
    if rep.deg_phi is None:
        print("phi = 0: some f_alpha vanishes identically")
        return 1
    print(f"deg phi: {rep.deg_phi} (bound {rep.deg_phi_bound})")
    print(f"deg chi: {rep.deg_chi}")
    print(f"sqrt(deg chi) - 1: {rep.ps_reference:.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
