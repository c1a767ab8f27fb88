"""End-to-end: decision tree -> characteristic polynomial -> short sequence."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import poly as P
from .charpoly import agreement, char_poly_product, char_poly_normalized, char_poly_oracle
from .field import FieldCtx
from .rewrite import WidthRound, eliminate_division, prune, reduce_width
from .slp import (
    ComplexityReport,
    ComputationSequence,
    compile_tree,
    paterson_stockmeyer,
    validate,
)
from .tree import DecisionTree, decided_on_domain


@dataclass
class StageSizes:
    name: str
    size: int
    width: int
    branches: int


@dataclass
class PipelineReport:
    field: str
    original: DecisionTree
    final: DecisionTree
    stages: list[StageSizes]
    rounds: list[WidthRound]
    undefined: frozenset[int]
    extended: dict[int, bool]
    chi: P.Poly
    chi_product: P.Poly
    product_disagree: list[int]
    chi_normalized: P.Poly
    tree_seq: ComputationSequence
    ps_seq: ComputationSequence
    tree_seq_valid: bool
    ps_seq_valid: bool
    complexity: ComplexityReport
    notes: list[str] = field(default_factory=list)

    @property
    def best(self) -> tuple[str, ComputationSequence]:
        if self.ps_seq.L < self.tree_seq.L:
            return "paterson-stockmeyer", self.ps_seq
        return "tree", self.tree_seq


def _stage(name, t):
    return StageSizes(name, t.size, t.width, len(t.branches()))


def full_pipeline(t: DecisionTree, ctx: FieldCtx) -> PipelineReport:
    """prune -> eliminate_division -> reduce_width -> compile, with every check recorded.

    chi is the characteristic polynomial of the final (division-free, hence
    total) tree.  It matches the input tree wherever the input evaluates;
    ``extended`` lists the inputs where the input tree divides by zero and the
    label the final tree gives them.
    """
    members, undefined = decided_on_domain(t, ctx)
    stages = [_stage("input", t)]
    pruned = prune(t, ctx)
    stages.append(_stage("prune", pruned))
    divfree = prune(eliminate_division(pruned), ctx)
    stages.append(_stage("divfree", divfree))
    narrow, rounds = reduce_width(divfree, ctx)
    stages.append(_stage("width", narrow))

    chi = char_poly_oracle(narrow, ctx)
    chi_prod = char_poly_product(narrow, ctx)
    chi_norm = char_poly_normalized(narrow, ctx)
    final_members = {x for x in ctx.elements() if P.evaluate(ctx, chi, x) == 1}
    notes = []
    if {x for x in final_members if x not in undefined} != set(members):
        notes.append("decided set changed on the domain of definition")
    tree_seq = compile_tree(narrow, ctx)
    ps_seq = paterson_stockmeyer(chi, ctx)
    tree_ok = validate(tree_seq, chi, ctx, reduce=True)
    ps_ok = validate(ps_seq, chi, ctx, reduce=True)
    best_L = min(tree_seq.L, ps_seq.L)
    complexity = ComplexityReport(best_L, ctx.log_q, t.size, P.degree(chi))
    return PipelineReport(
        field=str(ctx),
        original=t,
        final=narrow,
        stages=stages,
        rounds=rounds,
        undefined=undefined,
        extended={x: x in final_members for x in sorted(undefined)},
        chi=chi,
        chi_product=chi_prod,
        product_disagree=agreement(ctx, chi_prod, chi),
        chi_normalized=chi_norm,
        tree_seq=tree_seq,
        ps_seq=ps_seq,
        tree_seq_valid=tree_ok,
        ps_seq_valid=ps_ok,
        complexity=complexity,
        notes=notes,
    )


SCHEMA = "chroma-tree-report 1"


def render_report(r: PipelineReport, ctx: FieldCtx) -> str:
    c = r.complexity
    lines = [f"schema: {SCHEMA}", f"field: {r.field}"]
    for s in r.stages:
        lines.append(f"stage {s.name}: size={s.size} width={s.width} branches={s.branches}")
    for i, rd in enumerate(r.rounds, 1):
        lines.append(
            f"round {i}: width {rd.width_before}->{rd.width_after} size {rd.size_before}->{rd.size_after} "
            f"growth={rd.growth} limit={6 * ctx.log_q} rules={','.join(rd.rules)}"
        )
    if not r.undefined:
        lines.append("undefined: none")
    for x, v in r.extended.items():
        lines.append(f"warning: division by zero at x={x}; the division-free tree puts it {'in' if v else 'out'}")
    lines.append("chi coefficients: lowest degree first")
    lines.append(f"chi oracle: {P.render(r.chi)}")
    lines.append(f"chi normalized: {P.render(r.chi_normalized)}")
    lines.append(f"chi product-formula: {P.render(r.chi_product)}")
    lines.append("table: x oracle normalized product-formula")
    for x in ctx.elements():
        vals = (P.evaluate(ctx, f, x) for f in (r.chi, r.chi_normalized, r.chi_product))
        lines.append(f"row: {x} " + " ".join(map(str, vals)))
    agree = ctx.q - len(r.product_disagree)
    lines.append(
        f"product-formula agreement: {agree}/{ctx.q}"
        + (f" differs at {' '.join(map(str, r.product_disagree))}" if r.product_disagree else "")
    )
    lines.append(f"slp tree: L={r.tree_seq.L} valid={'yes' if r.tree_seq_valid else 'no'}")
    lines.append(f"slp paterson-stockmeyer: L={r.ps_seq.L} valid={'yes' if r.ps_seq_valid else 'no'}")
    name, _ = r.best
    lines.append(f"L: {c.L} ({name})")
    lines.append(
        f"bound: 24*{c.log_q}*{c.tree_size} = {c.bound} -> {'pass' if c.passed else 'FAIL'}"
    )
    lines.append(f"generic lower bound sqrt(d)-1: {c.ps_reference:.4f} (d={c.degree})")
    lines += [f"note: {n}" for n in r.notes]
    return "\n".join(lines) + "\n"
