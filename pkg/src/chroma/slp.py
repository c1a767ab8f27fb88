"""Computation sequences (straight-line programs) and their length L.

Step i computes g_i = (linear combination) * (linear combination) of
1, g_0 = x, ..., g_{i-1}; the output is c + sum c_i g_i.  Additions and
scalar multiples are free, so L is just the number of steps.

A linear combination is a tuple of ``(slot, coefficient)`` pairs sorted by
slot, with slot ``-1`` standing for the constant 1.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from . import poly as P
from .field import FieldCtx
from .tree import DecisionTree

ONE_SLOT = -1
Lin = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Step:
    left: Lin
    right: Lin


@dataclass(frozen=True)
class ComputationSequence:
    steps: tuple[Step, ...]
    output: Lin

    @property
    def L(self) -> int:
        return len(self.steps)

    def check_wiring(self):
        for i, st in enumerate(self.steps, 1):
            for slot, _ in st.left + st.right:
                if not ONE_SLOT <= slot < i:
                    raise ValueError(f"step g_{i} refers to g_{slot}, which is not yet computed")
        for slot, _ in self.output:
            if not ONE_SLOT <= slot <= len(self.steps):
                raise ValueError(f"output refers to missing g_{slot}")


def _lin(d: dict[int, int]) -> Lin:
    return tuple(sorted((k, v) for k, v in d.items() if v))


def _is_const(a: Lin) -> bool:
    return all(slot == ONE_SLOT for slot, _ in a)


def _const_value(a: Lin) -> int:
    return dict(a).get(ONE_SLOT, 0)


class SLPBuilder:
    """Accumulates steps; combinations are manipulated for free."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.steps: list[Step] = []

    def x(self) -> Lin:
        return ((0, 1),)

    def const(self, c: int) -> Lin:
        return _lin({ONE_SLOT: c})

    def add(self, a: Lin, b: Lin) -> Lin:
        d = dict(a)
        for k, v in b:
            d[k] = self.ctx.add(d.get(k, 0), v)
        return _lin(d)

    def scale(self, c: int, a: Lin) -> Lin:
        return _lin({k: self.ctx.mul(c, v) for k, v in a})

    def sub(self, a: Lin, b: Lin) -> Lin:
        return self.add(a, self.scale(self.ctx.minus_one, b))

    def mul(self, a: Lin, b: Lin) -> Lin:
        if _is_const(a):
            return self.scale(_const_value(a), b)
        if _is_const(b):
            return self.scale(_const_value(b), a)
        self.steps.append(Step(a, b))
        return ((len(self.steps), 1),)

    def power(self, a: Lin, k: int) -> Lin:
        """a^k by left-to-right square-and-multiply."""
        if k < 1:
            raise ValueError("exponent must be >= 1")
        acc = a
        for bit in bin(k)[3:]:
            acc = self.mul(acc, acc)
            if bit == "1":
                acc = self.mul(acc, a)
        return acc

    def finish(self, out: Lin) -> ComputationSequence:
        return ComputationSequence(tuple(self.steps), out)


def expand(seq: ComputationSequence, ctx: FieldCtx, reduce: bool = True) -> list[P.Poly]:
    """g_0..g_r as polynomials (reduced mod x^q - x when ``reduce``)."""
    seq.check_wiring()
    gs = [P.X]

    def combo(lin):
        acc = P.ZERO
        for slot, c in lin:
            term = P.const(c) if slot == ONE_SLOT else P.scale(ctx, c, gs[slot])
            acc = P.add(ctx, acc, term)
        return acc

    for st in seq.steps:
        g = P.mul(ctx, combo(st.left), combo(st.right))
        gs.append(P.reduce_field(ctx, g) if reduce else g)
    return gs


def output_poly(seq: ComputationSequence, ctx: FieldCtx, reduce: bool = True) -> P.Poly:
    gs = expand(seq, ctx, reduce)
    acc = P.ZERO
    for slot, c in seq.output:
        acc = P.add(ctx, acc, P.const(c) if slot == ONE_SLOT else P.scale(ctx, c, gs[slot]))
    return acc


def validate(seq: ComputationSequence, f: P.Poly, ctx: FieldCtx, reduce: bool = False) -> bool:
    """Does seq compute f?  With ``reduce``, equality is as functions on F."""
    out = output_poly(seq, ctx, reduce)
    if reduce:
        return out == P.reduce_field(ctx, f)
    return out == f


def build_power(k: int, ctx: FieldCtx) -> ComputationSequence:
    b = SLPBuilder(ctx)
    return b.finish(b.power(b.x(), k))


def paterson_stockmeyer(f: P.Poly, ctx: FieldCtx) -> ComputationSequence:
    """Baby steps x^2..x^s, then Horner in y = x^s over blocks of degree < s.

    s = ceil(sqrt(d + 1)) capped at d, so L = (s - 1) + floor(d / s) at most.
    """
    b = SLPBuilder(ctx)
    d = P.degree(f)
    if d < 1:
        return b.finish(b.const(f[0] if f else 0))
    s = min(d, math.isqrt(d) + 1)  # ceil(sqrt(d + 1))
    powers = [b.const(1), b.x()]
    for j in range(2, s + 1):
        powers.append(b.mul(powers[j // 2], powers[(j + 1) // 2]))

    def block(j):
        acc = b.const(0)
        for i in range(s):
            k = j * s + i
            if k <= d and f[k]:
                acc = b.add(acc, b.scale(f[k], powers[i]))
        return acc

    m = d // s
    h = block(m)
    for j in range(m - 1, -1, -1):
        h = b.add(b.mul(h, powers[s]), block(j))
    return b.finish(h)


def ps_bound(d: int) -> int:
    """2 ceil(sqrt(d+1)) + ceil(log2 d)."""
    return 2 * math.ceil(math.sqrt(d + 1)) + (max(d - 1, 0)).bit_length()


def compile_tree(t: DecisionTree, ctx: FieldCtx) -> ComputationSequence:
    """A sequence for the tree's characteristic function.

    Tree multiplications become steps (scalar ones are free).  Walking down
    from the root, ``reach`` is 1 exactly on inputs that arrive at the node;
    at each branch reach * u^(q-1) goes to the '!=' child and the remainder
    to the '=' child, one step per branch plus one shared power chain per
    tested value.  Subtrees with a single label need no test at all.
    """
    if t.width > 1:
        raise ValueError(f"compile_tree needs width <= 1, tree has width {t.width}")
    if not t.is_polynomial():
        raise ValueError("compile_tree needs a division-free tree")
    b = SLPBuilder(ctx)
    vals: dict[int, Lin] = {t.input: b.x()}
    powers: dict[int, Lin] = {}

    def value(v):
        if v not in vals:
            nd = t.nodes[v]
            k = nd.kind
            if k == "const":
                vals[v] = b.const(nd.args[0])
            elif k == "scale":
                vals[v] = b.scale(nd.args[0], value(nd.args[1]))
            else:
                a, c = value(nd.args[0]), value(nd.args[1])
                vals[v] = getattr(b, k)(a, c)
        return vals[v]

    labels: dict[int, set[bool]] = {}

    def leaf_labels(c):
        if c not in labels:
            nd = t.nodes[c]
            labels[c] = {nd.label} if nd.kind == "leaf" else leaf_labels(nd.eq) | leaf_labels(nd.neq)
        return labels[c]

    def walk(c, reach):
        lab = leaf_labels(c)
        if lab == {True}:
            return reach
        if lab == {False}:
            return b.const(0)
        nd = t.nodes[c]
        if nd.src not in powers:
            powers[nd.src] = b.power(value(nd.src), ctx.q - 1)
        on_neq = b.mul(reach, powers[nd.src])
        on_eq = b.sub(reach, on_neq)
        return b.add(walk(nd.eq, on_eq), walk(nd.neq, on_neq))

    return b.finish(walk(t.root, b.const(1)))


@dataclass(frozen=True)
class ComplexityReport:
    L: int
    log_q: int
    tree_size: int
    degree: int

    @property
    def bound(self) -> int:
        return 24 * self.log_q * self.tree_size

    @property
    def ps_reference(self) -> float:
        """sqrt(d) - 1, the lower bound for generic polynomials of degree d."""
        return math.sqrt(max(self.degree, 0)) - 1

    @property
    def passed(self) -> bool:
        return self.L <= self.bound

    @property
    def ratio(self) -> float | None:
        denom = self.log_q * self.tree_size
        return self.L / denom if denom else None


# -- text format ----------------------------------------------------------------

def _fmt_lin(a: Lin) -> str:
    terms = [str(c) if slot == ONE_SLOT else f"{c}*{slot}" for slot, c in a]
    return "(" + " ".join(terms) + ")"


def dump_slp(seq: ComputationSequence) -> str:
    lines = [f"g {i} : {_fmt_lin(s.left)} * {_fmt_lin(s.right)}" for i, s in enumerate(seq.steps, 1)]
    const = _const_value(seq.output)
    rest = tuple(p for p in seq.output if p[0] != ONE_SLOT)
    lines.append(f"out : {const} {_fmt_lin(rest)}")
    return "\n".join(lines) + "\n"


_TERM = re.compile(r"^(\d+)(?:\*(\d+))?$")


def _parse_lin(text: str) -> Lin:
    d = {}
    for tok in text.split():
        m = _TERM.match(tok)
        if not m:
            raise ValueError(f"bad term {tok!r}")
        slot = ONE_SLOT if m.group(2) is None else int(m.group(2))
        d[slot] = int(m.group(1))
    return _lin(d)


def parse_slp(text: str) -> ComputationSequence:
    steps, output = [], None
    for no, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        m = re.match(r"^g (\d+) : \(([^)]*)\) \* \(([^)]*)\)$", line)
        if m:
            if int(m.group(1)) != len(steps) + 1:
                raise ValueError(f"line {no}: steps must be numbered consecutively from 1")
            steps.append(Step(_parse_lin(m.group(2)), _parse_lin(m.group(3))))
            continue
        m = re.match(r"^out : (\d+) \(([^)]*)\)$", line)
        if m:
            output = _lin({**dict(_parse_lin(m.group(2))), ONE_SLOT: int(m.group(1))})
            continue
        raise ValueError(f"line {no}: cannot parse {line!r}")
    if output is None:
        raise ValueError("missing 'out' line")
    return ComputationSequence(tuple(steps), output)
