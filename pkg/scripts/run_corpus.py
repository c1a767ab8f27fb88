"""Run the tree pipeline over a seeded random corpus and print summary figures."""
import argparse
from collections import Counter

from chroma.corpus import random_corpus
from chroma.field import parse_field
from chroma.pipeline import full_pipeline
from chroma.rewrite import eliminate_division, reduce_width
from chroma.tree import decided_on_domain


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="2^3")
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    ctx = parse_field(args.field)
    limit = 6 * ctx.log_q
    rules, widths = Counter(), Counter()
    worst_growth, worst_ratio, failures = 0, 0.0, 0
    for t in random_corpus(ctx, args.count, args.seed):
        members, undefined = decided_on_domain(t, ctx)
        rep = full_pipeline(t, ctx)
        widths[t.width] += 1
        failures += bool(rep.notes) or not rep.complexity.passed
        if rep.complexity.ratio is not None:
            worst_ratio = max(worst_ratio, rep.complexity.ratio)
        # the unpruned division-free tree keeps more width, so it exercises more rounds
        narrow, rounds = reduce_width(eliminate_division(t), ctx)
        got, _ = decided_on_domain(narrow, ctx)
        failures += {x for x in got if x not in undefined} != set(members)
        for rd in rep.rounds + rounds:
            rules.update(rd.rules)
            worst_growth = max(worst_growth, rd.growth)
            failures += rd.growth > limit

    print(f"field GF({ctx.q}), {args.count} trees, seed {args.seed}")
    print("input widths:", " ".join(f"{w}:{n}" for w, n in sorted(widths.items())))
    print("retract rules:", " ".join(f"{r}:{n}" for r, n in sorted(rules.items())) or "none")
    print(f"worst round growth: {worst_growth} (limit {limit})")
    print(f"max L/(log q |T|): {worst_ratio:.3f} (bound 24)")
    print(f"failures: {failures}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
