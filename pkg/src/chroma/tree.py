"""Decision trees over a finite field.

The tree is stored the way it is written down: a pool of value nodes
(``input``, ``const``, ``scale``, ``add``, ``sub``, ``mul``, ``div``) and a
binary tree of control nodes (``branch`` and ``leaf``).  A branch tests one
value against zero.  Each computation sits on a root-to-leaf path just above
the first branch that needs it; computations no branch needs sit at the top,
right below the input.  Path lengths count those computations plus the
branches, never the input node or the leaf.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from . import poly as P
from .field import FieldCtx

VALUE_KINDS = ("input", "const", "scale", "add", "sub", "mul", "div")
BINARY = ("add", "sub", "mul", "div")


class TreeError(ValueError):
    pass


class EvaluationError(ZeroDivisionError):
    def __init__(self, x: int, node: int):
        super().__init__(f"division by zero at node {node} for input x = {x}")
        self.x = x
        self.node = node


@dataclass(frozen=True)
class Node:
    id: int
    kind: str
    args: tuple = ()

    @property
    def operands(self) -> tuple[int, ...]:
        if self.kind in BINARY:
            return self.args
        if self.kind == "scale":
            return (self.args[1],)
        return ()

    @property
    def is_value(self) -> bool:
        return self.kind in VALUE_KINDS

    # branch accessors
    @property
    def src(self) -> int:
        return self.args[0]

    @property
    def eq(self) -> int:
        return self.args[1]

    @property
    def neq(self) -> int:
        return self.args[2]

    @property
    def label(self) -> bool:
        return self.args[0]


@dataclass(frozen=True)
class PathInfo:
    nodes: tuple[int, ...]
    label: bool
    internal: int


class DecisionTree:
    """Immutable decision tree; rewrites build new trees via :class:`TreeBuilder`."""

    def __init__(self, nodes: Iterable[Node], root: int):
        self.nodes: dict[int, Node] = {}
        for nd in nodes:
            if nd.id in self.nodes:
                raise TreeError(f"duplicate node id {nd.id}")
            self.nodes[nd.id] = nd
        self.root = root
        self._check()

    def __repr__(self):
        return f"DecisionTree({len(self.nodes)} nodes, root={self.root})"

    def __eq__(self, other):
        return isinstance(other, DecisionTree) and self.nodes == other.nodes and self.root == other.root

    def __hash__(self):
        return hash((self.root, tuple(sorted(self.nodes.items()))))

    # -- structure ----------------------------------------------------------
    def _check(self):
        inputs = [n.id for n in self.nodes.values() if n.kind == "input"]
        if len(inputs) != 1:
            raise TreeError(f"tree needs exactly one input node, found {len(inputs)}")
        self.input = inputs[0]
        for nd in self.nodes.values():
            for o in nd.operands:
                if o not in self.nodes or not self.nodes[o].is_value:
                    raise TreeError(f"node {nd.id} uses {o}, which is not a value node")
            if nd.kind == "branch":
                if nd.src not in self.nodes or not self.nodes[nd.src].is_value:
                    raise TreeError(f"branch {nd.id} tests {nd.src}, which is not a value node")
                for c in (nd.eq, nd.neq):
                    if c not in self.nodes or self.nodes[c].kind not in ("branch", "leaf"):
                        raise TreeError(f"branch {nd.id} child {c} is not a branch or leaf")
        if self.root not in self.nodes or self.nodes[self.root].kind not in ("branch", "leaf"):
            raise TreeError(f"root {self.root} must be a branch or leaf")
        seen = set()
        stack = [self.root]
        while stack:
            c = stack.pop()
            if c in seen:
                raise TreeError(f"control node {c} has two parents")
            seen.add(c)
            nd = self.nodes[c]
            if nd.kind == "branch":
                stack += [nd.eq, nd.neq]
        stray = {n.id for n in self.nodes.values() if not n.is_value} - seen
        if stray:
            raise TreeError(f"control nodes {sorted(stray)} are unreachable from the root")
        self.topo_order  # raises on cycles

    @cached_property
    def topo_order(self) -> tuple[int, ...]:
        """Value nodes, operands before users, ties by id."""
        order, state = [], {}

        def visit(v):
            if state.get(v) == 1:
                raise TreeError(f"value node {v} depends on itself")
            if state.get(v) == 2:
                return
            state[v] = 1
            for o in self.nodes[v].operands:
                visit(o)
            state[v] = 2
            order.append(v)

        for v in sorted(i for i, n in self.nodes.items() if n.is_value):
            visit(v)
        return tuple(order)

    @cached_property
    def _rank(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.topo_order)}

    def deps(self, v: int) -> frozenset[int]:
        """Computation nodes needed to produce value v (v included, input excluded)."""
        return self._deps[v]

    @cached_property
    def _deps(self) -> dict[int, frozenset[int]]:
        out = {}
        for v in self.topo_order:
            nd = self.nodes[v]
            s = set()
            for o in nd.operands:
                s |= out[o]
            if nd.kind != "input":
                s.add(v)
            out[v] = frozenset(s)
        return out

    def branches(self) -> list[int]:
        return sorted(i for i, n in self.nodes.items() if n.kind == "branch")

    def leaves(self) -> list[int]:
        return sorted(i for i, n in self.nodes.items() if n.kind == "leaf")

    @cached_property
    def parent(self) -> dict[int, int]:
        out = {}
        for b in self.branches():
            nd = self.nodes[b]
            out[nd.eq] = b
            out[nd.neq] = b
        return out

    @cached_property
    def used_values(self) -> frozenset[int]:
        s = set()
        for b in self.branches():
            s |= self.deps(self.nodes[b].src)
        return frozenset(s)

    @cached_property
    def unused_values(self) -> tuple[int, ...]:
        return tuple(v for v in self.topo_order
                     if v not in self.used_values and self.nodes[v].kind != "input")

    @cached_property
    def top_values(self) -> tuple[int, ...]:
        """Computations placed above the root: unused values and whatever they need."""
        need = set()
        for v in self.unused_values:
            need |= self.deps(v)
        return tuple(v for v in self.topo_order if v in need)

    def control_paths(self) -> list[tuple[int, ...]]:
        out = []

        def walk(c, prefix):
            nd = self.nodes[c]
            if nd.kind == "leaf":
                out.append(prefix + (c,))
            else:
                walk(nd.eq, prefix + (c,))
                walk(nd.neq, prefix + (c,))

        walk(self.root, ())
        return out

    def placed(self, control_path: Iterable[int]) -> list[int]:
        """Full node sequence of a control path, computations included."""
        seq = list(self.top_values)
        done = set(seq)
        for c in control_path:
            nd = self.nodes[c]
            if nd.kind == "branch":
                new = sorted(self.deps(nd.src) - done, key=self._rank.__getitem__)
                seq += new
                done.update(new)
            seq.append(c)
        return seq

    @cached_property
    def size(self) -> int:
        """|T|: the most internal nodes (computations and branches) on any path."""
        return max(len(self.placed(p)) - 1 for p in self.control_paths())

    @cached_property
    def generic_path(self) -> tuple[int, ...]:
        """Control nodes reached by taking the nonzero fork at every branch."""
        path, c = [], self.root
        while True:
            path.append(c)
            nd = self.nodes[c]
            if nd.kind == "leaf":
                return tuple(path)
            c = nd.neq

    @cached_property
    def distance(self) -> dict[int, int]:
        """Per branch: how many branches separate it from the generic path.

        Branches on the generic path have distance 0; a branch hanging off it
        has distance 1, its branch children 2, and so on.
        """
        on_path = set(self.generic_path)
        out = {}

        def walk(c, d):
            nd = self.nodes[c]
            if nd.kind != "branch":
                return
            d = 0 if c in on_path else d + 1
            out[c] = d
            walk(nd.eq, d)
            walk(nd.neq, d)

        walk(self.root, 0)
        return out

    @cached_property
    def width(self) -> int:
        """<T>: the largest branch distance (0 without off-path branches)."""
        return max(self.distance.values(), default=0)

    def is_polynomial(self) -> bool:
        return not any(n.kind == "div" for n in self.nodes.values())

    def edit(self) -> "TreeBuilder":
        return TreeBuilder(self.nodes.values(), self.root)


class TreeBuilder:
    """Mutable scratch space for rewrites."""

    def __init__(self, nodes: Iterable[Node] = (), root: int | None = None):
        self.nodes = {n.id: n for n in nodes}
        self.root = root
        self._next = max(self.nodes, default=0) + 1

    def add(self, kind: str, *args) -> int:
        i = self._next
        self._next += 1
        self.nodes[i] = Node(i, kind, tuple(args))
        return i

    def replace_child(self, parent: int | None, old: int, new: int):
        if parent is None:
            self.root = new
            return
        nd = self.nodes[parent]
        src, eq, neq = nd.args
        self.nodes[parent] = Node(parent, "branch", (src, new if eq == old else eq, new if neq == old else neq))

    def remove_control(self, c: int):
        nd = self.nodes.pop(c)
        if nd.kind == "branch":
            self.remove_control(nd.eq)
            self.remove_control(nd.neq)

    def const_one(self) -> int:
        for n in self.nodes.values():
            if n.kind == "const" and n.args[0] == 1:
                return n.id
        return self.add("const", 1)

    def build(self, strip: bool = True) -> DecisionTree:
        t = DecisionTree(self.nodes.values(), self.root)
        return strip_dead_values(t) if strip else t


def strip_dead_values(t: DecisionTree) -> DecisionTree:
    """Drop computations that feed no branch."""
    keep = t.used_values | {t.input}
    nodes = [n for n in t.nodes.values() if not n.is_value or n.id in keep]
    if len(nodes) == len(t.nodes):
        return t
    return DecisionTree(nodes, t.root)


# -- evaluation ---------------------------------------------------------------

class _PolyAlgebra:
    """Values as polynomials in x, reduced modulo x^q - x."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx

    def const(self, c):
        return P.const(c)

    def scale(self, c, a):
        return P.scale(self.ctx, c, a)

    def add(self, a, b):
        return P.add(self.ctx, a, b)

    def sub(self, a, b):
        return P.sub(self.ctx, a, b)

    def mul(self, a, b):
        return P.reduce_field(self.ctx, P.mul(self.ctx, a, b))

    def div(self, a, b):
        raise TreeError("symbolic evaluation needs a division-free tree")


class _FieldAlgebra:
    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx

    def const(self, c):
        return c

    def scale(self, c, a):
        return self.ctx.mul(c, a)

    def add(self, a, b):
        return self.ctx.add(a, b)

    def sub(self, a, b):
        return self.ctx.sub(a, b)

    def mul(self, a, b):
        return self.ctx.mul(a, b)

    def div(self, a, b):
        return self.ctx.div(a, b)


def _apply(nd: Node, vals: dict, alg):
    k = nd.kind
    if k == "const":
        return alg.const(nd.args[0])
    if k == "scale":
        return alg.scale(nd.args[0], vals[nd.args[1]])
    a, b = vals[nd.args[0]], vals[nd.args[1]]
    return getattr(alg, k)(a, b)


def evaluate(t: DecisionTree, ctx: FieldCtx, x: int) -> tuple[bool, PathInfo]:
    """Run the tree on x; raises :class:`EvaluationError` on division by zero."""
    alg = _FieldAlgebra(ctx)
    vals = {t.input: x}
    seq = list(t.top_values)
    done = set(seq)
    for v in seq:
        vals[v] = _checked(t, v, vals, alg, x)
    c = t.root
    while True:
        nd = t.nodes[c]
        if nd.kind == "leaf":
            seq.append(c)
            return nd.label, PathInfo(tuple(seq), nd.label, len(seq) - 1)
        new = sorted(t.deps(nd.src) - done, key=t._rank.__getitem__)
        for v in new:
            vals[v] = _checked(t, v, vals, alg, x)
        seq += new
        done.update(new)
        seq.append(c)
        c = nd.eq if vals[nd.src] == 0 else nd.neq


def _checked(t, v, vals, alg, x):
    try:
        return _apply(t.nodes[v], vals, alg)
    except ZeroDivisionError:
        raise EvaluationError(x, v) from None


def decided_on_domain(t: DecisionTree, ctx: FieldCtx) -> tuple[frozenset[int], frozenset[int]]:
    """(members, undefined): the decided set where evaluation succeeds, and the
    inputs where it divides by zero."""
    members, undefined = set(), set()
    for x in ctx.elements():
        try:
            label, _ = evaluate(t, ctx, x)
        except EvaluationError:
            undefined.add(x)
            continue
        if label:
            members.add(x)
    return frozenset(members), frozenset(undefined)


def decided_set(t: DecisionTree, ctx: FieldCtx) -> frozenset[int]:
    members, undefined = decided_on_domain(t, ctx)
    if undefined:
        x = min(undefined)
        evaluate(t, ctx, x)  # re-raise with the offending node
    return members


def symbolic_values(t: DecisionTree, ctx: FieldCtx) -> dict[int, P.Poly]:
    """Every value node as a function of x (a polynomial of degree < q)."""
    alg = _PolyAlgebra(ctx)
    vals = {t.input: P.X}
    for v in t.topo_order:
        if v != t.input:
            vals[v] = _apply(t.nodes[v], vals, alg)
    return vals


# -- text format --------------------------------------------------------------

def parse_tree(text: str, ctx: FieldCtx | None = None) -> DecisionTree:
    """Parse the line format; field elements are checked against ctx if given.

    ``input <id>`` | ``const <id> <elem>`` | ``scale <id> <elem> <src>`` |
    ``add|sub|mul|div <id> <a> <b>`` | ``branch <id> <src> <eq> <neq>`` |
    ``leaf <id> in|out`` | ``root <id>``
    """
    nodes, root = [], None
    for no, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        kind, rest = toks[0], toks[1:]
        try:
            if kind == "root":
                (r,) = rest
                if root is not None:
                    raise TreeError("second root line")
                root = int(r)
                continue
            if kind == "leaf":
                i, lab = rest
                if lab not in ("in", "out"):
                    raise TreeError(f"leaf label must be 'in' or 'out', got {lab!r}")
                nodes.append(Node(int(i), "leaf", (lab == "in",)))
                continue
            ints = [int(s) for s in rest]
            arity = {"input": 1, "const": 2, "scale": 3, "branch": 4, **{b: 3 for b in BINARY}}
            if kind not in arity:
                raise TreeError(f"unknown node kind {kind!r}")
            if len(ints) != arity[kind]:
                raise TreeError(f"{kind} takes {arity[kind]} fields, got {len(ints)}")
            if ctx is not None and kind in ("const", "scale") and not 0 <= ints[1] < ctx.q:
                raise TreeError(f"{ints[1]} is not an element of GF({ctx.q})")
            nodes.append(Node(ints[0], kind, tuple(ints[1:])))
        except (TreeError, ValueError) as exc:
            raise TreeError(f"line {no}: {exc}") from None
    if root is None:
        raise TreeError("missing 'root <id>' line")
    return DecisionTree(nodes, root)


def dump_tree(t: DecisionTree) -> str:
    lines = []
    for i in sorted(t.nodes):
        nd = t.nodes[i]
        if nd.kind == "leaf":
            lines.append(f"leaf {i} {'in' if nd.label else 'out'}")
        else:
            lines.append(" ".join([nd.kind, str(i), *map(str, nd.args)]))
    lines.append(f"root {t.root}")
    return "\n".join(lines) + "\n"
