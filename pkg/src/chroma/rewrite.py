"""Semantics-preserving rewrites of decision trees.

prune               drop forks no input takes and computations no branch uses
eliminate_division  carry every value as numerator/denominator, so no node divides
retract             collapse a two-level segment off the generic path into one test
reduce_width        retract layer by layer until every branch is within one
                    decision of the generic path
"""
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

from .field import FieldCtx
from .tree import (
    DecisionTree,
    EvaluationError,
    Node,
    TreeBuilder,
    evaluate,
    strip_dead_values,
)


class RetractError(ValueError):
    pass


# -- prune ----------------------------------------------------------------------

def fork_usage(t: DecisionTree, ctx: FieldCtx) -> dict[int, set[bool]]:
    """Per branch, which forks (True for '=') some well-defined input takes."""
    used: dict[int, set[bool]] = {b: set() for b in t.branches()}
    for x in ctx.elements():
        try:
            _, path = evaluate(t, ctx, x)
        except EvaluationError:
            continue
        ctrl = [c for c in path.nodes if not t.nodes[c].is_value]
        for c, nxt in zip(ctrl, ctrl[1:]):
            used[c].add(nxt == t.nodes[c].eq)
    return used


def prune(t: DecisionTree, ctx: FieldCtx) -> DecisionTree:
    used = fork_usage(t, ctx)
    if not any(used.values()):
        # nothing evaluates; there is no behaviour to preserve beyond the shape
        return strip_dead_values(t)
    b = t.edit()

    def walk(c, parent):
        nd = t.nodes[c]
        if nd.kind != "branch":
            return
        forks = used[c]
        if len(forks) == 1:
            keep, drop = (nd.eq, nd.neq) if True in forks else (nd.neq, nd.eq)
            b.remove_control(drop)
            del b.nodes[c]
            b.replace_child(parent, c, keep)
            walk(keep, parent)
        else:
            walk(nd.eq, c)
            walk(nd.neq, c)

    walk(t.root, None)
    return b.build()


def is_pruned(t: DecisionTree, ctx: FieldCtx) -> bool:
    used = fork_usage(t, ctx)
    return all(len(f) == 2 for f in used.values()) and not t.unused_values


# -- division elimination ---------------------------------------------------

def eliminate_division(t: DecisionTree) -> DecisionTree:
    """Rewrite every value u as a pair (num, den) with u = num/den.

    input (x, 1); const (c, 1); c*u (c*n, d); u*v (nu*nv, du*dv);
    u/v (nu*dv, du*nv); u+-v (nu*dv +- du*nv, du*dv).  A branch on u tests
    num directly, which is zero exactly when u is wherever u is defined.
    """
    if t.is_polynomial():
        return t
    b = TreeBuilder()
    pair: dict[int, tuple[int, int]] = {}
    x = b.add("input")
    one = b.add("const", 1)
    for v in t.topo_order:
        nd = t.nodes[v]
        k = nd.kind
        if k == "input":
            pair[v] = (x, one)
        elif k == "const":
            pair[v] = (b.add("const", nd.args[0]), one)
        elif k == "scale":
            n, d = pair[nd.args[1]]
            pair[v] = (b.add("scale", nd.args[0], n), d)
        else:
            (n1, d1), (n2, d2) = pair[nd.args[0]], pair[nd.args[1]]
            if k == "mul":
                pair[v] = (b.add("mul", n1, n2), b.add("mul", d1, d2))
            elif k == "div":
                pair[v] = (b.add("mul", n1, d2), b.add("mul", d1, n2))
            else:
                cross1 = b.add("mul", n1, d2)
                cross2 = b.add("mul", d1, n2)
                pair[v] = (b.add(k, cross1, cross2), b.add("mul", d1, d2))

    def copy(c):
        nd = t.nodes[c]
        if nd.kind == "leaf":
            return b.add("leaf", nd.label)
        eq, neq = copy(nd.eq), copy(nd.neq)
        return b.add("branch", pair[nd.src][0], eq, neq)

    b.root = copy(t.root)
    return b.build()


# -- RETRACT ------------------------------------------------------------------

@dataclass(frozen=True)
class _K:
    """A known constant inside a decision-polynomial expression."""

    v: int


class NodeEmitter:
    """Builds decision polynomials as tree computation nodes.

    Constants are folded so no node multiplies by 0 or 1 needlessly, and each
    power u^(q-1) is built once by square-and-multiply.
    """

    def __init__(self, b: TreeBuilder, ctx: FieldCtx):
        self.b, self.ctx = b, ctx
        self._pow: dict[int, int] = {}

    def one(self):
        return _K(1)

    def _node(self, a):
        if isinstance(a, _K):
            return self.b.add("const", a.v) if a.v != 1 else self.b.const_one()
        return a

    def mul(self, a, c):
        F = self.ctx
        if isinstance(a, _K) and isinstance(c, _K):
            return _K(F.mul(a.v, c.v))
        if isinstance(c, _K):
            a, c = c, a
        if isinstance(a, _K):
            if a.v == 0:
                return _K(0)
            return c if a.v == 1 else self.b.add("scale", a.v, c)
        return self.b.add("mul", a, c)

    def add(self, a, c):
        if isinstance(a, _K) and isinstance(c, _K):
            return _K(self.ctx.add(a.v, c.v))
        if a == _K(0):
            return c
        if c == _K(0):
            return a
        return self.b.add("add", self._node(a), self._node(c))

    def sub(self, a, c):
        if isinstance(a, _K) and isinstance(c, _K):
            return _K(self.ctx.sub(a.v, c.v))
        if c == _K(0):
            return a
        if a == _K(0):
            return self.b.add("scale", self.ctx.minus_one, c)
        return self.b.add("sub", self._node(a), self._node(c))

    def N(self, u):
        """u^(q-1): 1 on nonzero u, 0 on zero."""
        if isinstance(u, _K):
            return _K(self.ctx.pow(u.v, self.ctx.q - 1))
        if u not in self._pow:
            k = self.ctx.q - 1
            acc = u
            for bit in bin(k)[3:]:
                acc = self.b.add("mul", acc, acc)
                if bit == "1":
                    acc = self.b.add("mul", acc, u)
            self._pow[u] = acc
        return self._pow[u]

    def Z(self, u):
        """1 - u^(q-1): 1 on zero u, 0 elsewhere."""
        return self.sub(self.one(), self.N(u))

    def finish(self, a) -> int:
        return self._node(a)


class ValueEmitter:
    """The same expression language evaluated on field elements."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx

    def one(self):
        return 1

    def mul(self, a, c):
        return self.ctx.mul(a, c)

    def add(self, a, c):
        return self.ctx.add(a, c)

    def sub(self, a, c):
        return self.ctx.sub(a, c)

    def N(self, u):
        return self.ctx.pow(u, self.ctx.q - 1)

    def Z(self, u):
        return self.ctx.sub(1, self.N(u))

    def finish(self, a):
        return a


@dataclass(frozen=True)
class RetractRow:
    """One row of a RETRACT table.

    The new branch tests ``build(E, u_nu, u_mu) = 0``; its '=' leaf is 'in'.
    Case I ``labels`` is (label of nu's leaf child, mu sits on nu's '=' fork,
    the 'in' leaf sits on mu's '=' fork).  Case II ``labels`` lists the four
    leaf labels for (nu=0, mu=0), (nu=0, mu!=0), (nu!=0, mu=0), (nu!=0, mu!=0).
    """

    case: str
    number: int
    labels: tuple[bool, ...]
    build: Callable
    printed_labels: tuple[bool, ...] | None = None

    @property
    def name(self) -> str:
        return f"case-{self.case}/row-{self.number}"


IN, OUT = True, False

CASE_I_ROWS = (
    RetractRow("I", 1, (IN, True, True), lambda E, v, m: E.mul(E.Z(v), m)),
    RetractRow("I", 2, (IN, True, False), lambda E, v, m: E.mul(E.Z(v), E.Z(m))),
    RetractRow("I", 3, (IN, False, True), lambda E, v, m: E.mul(m, v)),
    RetractRow("I", 4, (IN, False, False), lambda E, v, m: E.mul(E.Z(m), v)),
    RetractRow("I", 5, (OUT, True, True), lambda E, v, m: E.sub(E.one(), E.mul(E.Z(v), E.Z(m)))),
    RetractRow("I", 6, (OUT, True, False), lambda E, v, m: E.sub(E.one(), E.mul(E.Z(v), E.N(m)))),
    RetractRow("I", 7, (OUT, False, True), lambda E, v, m: E.sub(E.one(), E.mul(E.Z(m), E.N(v)))),
    RetractRow("I", 8, (OUT, False, False), lambda E, v, m: E.sub(E.one(), E.mul(E.N(v), E.N(m)))),
)

CASE_II_ROWS = (
    # Printed with the pattern out,in,in,out (a duplicate of row 2), but the
    # polynomial vanishes exactly when u_mu = 0, i.e. it decides in,out,in,out.
    RetractRow("II", 1, (IN, OUT, IN, OUT),
               lambda E, v, m: E.add(E.mul(E.Z(v), m), E.mul(m, v)),
               printed_labels=(OUT, IN, IN, OUT)),
    RetractRow("II", 2, (OUT, IN, IN, OUT),
               lambda E, v, m: E.add(E.mul(E.Z(m), E.Z(v)), E.mul(m, v))),
    RetractRow("II", 3, (IN, OUT, OUT, IN),
               lambda E, v, m: E.add(E.mul(E.Z(v), m), E.mul(E.Z(m), v))),
    RetractRow("II", 4, (OUT, IN, OUT, IN),
               lambda E, v, m: E.add(E.mul(E.Z(m), E.Z(v)), E.mul(E.Z(m), v))),
)

_CASE_I = {r.labels: r for r in CASE_I_ROWS}
_CASE_II = {r.labels: r for r in CASE_II_ROWS}


def case_i_segment(labels, v: int, m: int) -> bool:
    """Label the original Case I segment gives when u_nu = v and u_mu = m."""
    leaf_label, mu_on_eq, in_on_eq = labels
    if (v == 0) != mu_on_eq:
        return leaf_label
    return (m == 0) == in_on_eq


def case_ii_segment(labels, v: int, m: int) -> bool:
    return labels[(0 if v == 0 else 2) + (0 if m == 0 else 1)]


def row_mismatches(row: RetractRow, ctx: FieldCtx, labels=None) -> list[tuple[int, int]]:
    """Points (u_nu, u_mu) where the row's test disagrees with the segment."""
    labels = row.labels if labels is None else labels
    segment = case_i_segment if row.case == "I" else case_ii_segment
    E = ValueEmitter(ctx)
    bad = []
    for v in ctx.elements():
        for m in ctx.elements():
            decided = row.build(E, v, m) == 0
            if decided != segment(labels, v, m):
                bad.append((v, m))
    return bad


def _vanishing(E, t: DecisionTree, c: int, target: bool):
    """(cost, build) for an expression that is 0 exactly when the outcome below c is ``target``.

    ``cost`` counts the power chains ``build()`` will emit.
    """
    nd = t.nodes[c]
    labels = {nd.label} if nd.kind == "leaf" else {t.nodes[nd.eq].label, t.nodes[nd.neq].label}
    if len(labels) == 1:
        hit = labels == {target}
        return 0, lambda: _K(0) if hit else E.one()
    if t.nodes[nd.eq].label == target:
        return 0, lambda: nd.src
    return 1, lambda: E.Z(nd.src)


def _fallback(E, t: DecisionTree, nu: int) -> tuple[object, bool]:
    """Sound test for any segment shape: Z(u_nu) e_eq + N(u_nu) e_neq = 0.

    Each e vanishes exactly when its child's outcome is the target label.  The
    target ('in' or 'out') is whichever needs fewer power chains, so at most
    two chains are built.  Returns the expression and the target label, which
    goes on the new branch's '=' leaf.
    """
    nd = t.nodes[nu]
    best = None
    for target in (True, False):
        parts = [_vanishing(E, t, c, target) for c in (nd.eq, nd.neq)]
        cost = sum(k for k, _ in parts)
        if best is None or cost < best[0]:
            best = (cost, target, parts)
    _, target, (eq_part, neq_part) = best
    v = nd.src
    expr = E.add(E.mul(E.Z(v), eq_part[1]()), E.mul(E.N(v), neq_part[1]()))
    return expr, target


def segment_shape(t: DecisionTree, nu: int) -> str:
    nd = t.nodes.get(nu)
    if nd is None or nd.kind != "branch":
        raise RetractError(f"node {nu} is not a branch")
    kids = [t.nodes[nd.eq], t.nodes[nd.neq]]
    for k in kids:
        if k.kind == "branch" and any(t.nodes[g].kind != "leaf" for g in (k.eq, k.neq)):
            raise RetractError(f"branch {k.id} below {nu} does not end in two leaves")
    n_dec = sum(k.kind == "branch" for k in kids)
    if n_dec == 0:
        raise RetractError(f"branch {nu} has no branch child to retract")
    return "I" if n_dec == 1 else "II"


def match_row(t: DecisionTree, nu: int) -> RetractRow | None:
    """The table row matching the segment at nu, or None for the fallback."""
    shape = segment_shape(t, nu)
    nd = t.nodes[nu]
    eq, neq = t.nodes[nd.eq], t.nodes[nd.neq]

    def opposite(k):
        return t.nodes[k.eq].label != t.nodes[k.neq].label

    if shape == "I":
        mu, leaf, mu_on_eq = (eq, neq, True) if eq.kind == "branch" else (neq, eq, False)
        if not opposite(mu):
            return None
        return _CASE_I[(leaf.label, mu_on_eq, t.nodes[mu.eq].label)]
    if eq.src != neq.src or not (opposite(eq) and opposite(neq)):
        return None
    key = tuple(t.nodes[c].label for c in (eq.eq, eq.neq, neq.eq, neq.neq))
    return _CASE_II.get(key)


def retract(t: DecisionTree, nu: int, ctx: FieldCtx) -> tuple[DecisionTree, str]:
    """Replace the segment below branch nu by one branch with two leaves.

    Returns the new tree and the rule used (a table row, or ``fallback``).
    """
    if nu in t.generic_path:
        raise RetractError(f"branch {nu} lies on the generic path")
    row = match_row(t, nu)
    b = t.edit()
    E = NodeEmitter(b, ctx)
    nd = t.nodes[nu]
    if row is None:
        (expr, on_eq), rule = _fallback(E, t, nu), "fallback"
    else:
        mu = t.nodes[nd.eq] if t.nodes[nd.eq].kind == "branch" else t.nodes[nd.neq]
        expr, rule, on_eq = row.build(E, nd.src, mu.src), row.name, True
    test = E.finish(expr)
    leaf_eq = b.add("leaf", on_eq)
    leaf_neq = b.add("leaf", not on_eq)
    xi = b.add("branch", test, leaf_eq, leaf_neq)
    b.remove_control(nu)
    b.replace_child(t.parent.get(nu), nu, xi)
    return b.build(), rule


@dataclass
class WidthRound:
    width_before: int
    width_after: int
    size_before: int
    size_after: int
    rules: list[str] = field(default_factory=list)

    @property
    def growth(self) -> int:
        return self.size_after - self.size_before


def reduce_width(t: DecisionTree, ctx: FieldCtx) -> tuple[DecisionTree, list[WidthRound]]:
    """Retract at the parents of all farthest branches until <T> <= 1."""
    rounds = []
    while t.width > 1:
        w = t.width
        targets = sorted({t.parent[m] for m, d in t.distance.items() if d == w})
        before = t
        rules = []
        for nu in targets:
            t, rule = retract(t, nu, ctx)
            rules.append(rule)
        rounds.append(WidthRound(w, t.width, before.size, t.size, rules))
        if t.width >= w:
            raise AssertionError(f"retraction did not reduce width {w}")
    return t, rounds
