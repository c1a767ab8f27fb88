"""Characteristic polynomials of decided sets.

Three routes to chi, the polynomial of degree < q that is 1 on the decided
set and 0 elsewhere:

* ``char_poly_oracle``: interpolate the exhaustively evaluated indicator.
* ``char_poly_normalized``: sum over 'in' leaves of the product, along the
  leaf's path, of 1 - u^(q-1) for '=' forks and u^(q-1) for '!=' forks.
* ``char_poly_product``: the product formula over the classified branches of a
  width <= 1 tree, evaluated as written.  It is not {0,1}-valued in general,
  so it is only ever compared against the oracle, never trusted.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import poly as P
from .field import FieldCtx
from .tree import DecisionTree, decided_set, symbolic_values


@dataclass
class NodeClassification:
    on_path: list[int]
    eq_in: list[int]
    neq_in: list[int]
    neither: list[int]
    parent: dict[int, int] = field(default_factory=dict)


def classify(t: DecisionTree) -> NodeClassification:
    """Split branches of a width <= 1 tree.

    ``on_path`` are the generic-path branches.  An off-path branch whose '='
    leaf is 'in' goes to ``eq_in`` (a zero test implies membership); one whose
    only 'in' leaf is on the '!=' side goes to ``neq_in``; two 'out' leaves
    go to ``neither``.  ``parent`` maps each off-path branch to the
    generic-path branch above it.
    """
    if t.width > 1:
        raise ValueError(f"classification needs width <= 1, tree has width {t.width}")
    on_path = [c for c in t.generic_path if t.nodes[c].kind == "branch"]
    out = NodeClassification(on_path, [], [], [])
    for b, d in sorted(t.distance.items()):
        if d == 0:
            continue
        nd = t.nodes[b]
        eq, neq = t.nodes[nd.eq].label, t.nodes[nd.neq].label
        if eq:
            out.eq_in.append(b)
        elif neq:
            out.neq_in.append(b)
        else:
            out.neither.append(b)
        out.parent[b] = t.parent[b]
    return out


def _power(ctx, u):
    return P.reduce_field(ctx, P.pow_poly(ctx, u, ctx.q - 1))


def char_poly_product(t: DecisionTree, ctx: FieldCtx) -> P.Poly:
    """prod_{on path} u * prod_{eq_in} (1 - Z(u) Z(u_parent)) * prod_{neq_in} (1 - u Z(u_parent)),

    with Z(u) = 1 - u^(q-1), reduced modulo x^q - x.
    """
    cls = classify(t)
    vals = symbolic_values(t, ctx)

    def u(b):
        return vals[t.nodes[b].src]

    def Z(b):
        return P.sub(ctx, P.ONE, _power(ctx, u(b)))

    def mul(a, b):
        return P.reduce_field(ctx, P.mul(ctx, a, b))

    chi = P.ONE
    for b in cls.on_path:
        chi = mul(chi, u(b))
    for b in cls.eq_in:
        chi = mul(chi, P.sub(ctx, P.ONE, mul(Z(b), Z(cls.parent[b]))))
    for b in cls.neq_in:
        chi = mul(chi, P.sub(ctx, P.ONE, mul(u(b), Z(cls.parent[b]))))
    return chi


def char_poly_normalized(t: DecisionTree, ctx: FieldCtx) -> P.Poly:
    vals = symbolic_values(t, ctx)
    total = P.ZERO

    def walk(c, reach):
        nonlocal total
        nd = t.nodes[c]
        if nd.kind == "leaf":
            if nd.label:
                total = P.add(ctx, total, reach)
            return
        n = _power(ctx, vals[nd.src])
        on_neq = P.reduce_field(ctx, P.mul(ctx, reach, n))
        walk(nd.eq, P.sub(ctx, reach, on_neq))
        walk(nd.neq, on_neq)

    walk(t.root, P.ONE)
    return total


def char_poly_oracle(t: DecisionTree, ctx: FieldCtx) -> P.Poly:
    members = decided_set(t, ctx)
    return P.interpolate(ctx, {x: int(x in members) for x in ctx.elements()})


def agreement(ctx: FieldCtx, f: P.Poly, g: P.Poly) -> list[int]:
    """Points of F where f and g differ (empty means they agree as functions)."""
    return [x for x in ctx.elements() if P.evaluate(ctx, f, x) != P.evaluate(ctx, g, x)]
