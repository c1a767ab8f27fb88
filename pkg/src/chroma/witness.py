"""Root-based membership in the coloring variety.

Along a line theta(t) = A + t B in array space, each edge weighting alpha
gives a |V| x |E| matrix over F[t].  Its witness polynomial f_alpha is the
monic gcd of a family of maximal minors; f_alpha(t0) = 0 marks theta(t0)
as rank deficient for that alpha.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

from . import linalg
from . import poly as P
from .coloring import ColorArray, OrientedGraph, alpha_maps, build_array, project
from .field import FieldCtx

MODES = ("all_minors", "delta")


@dataclass(frozen=True)
class ArrayLine:
    base: ColorArray
    direction: ColorArray

    def __post_init__(self):
        b, d = self.base, self.direction
        if (b.rows, b.cols, b.q) != (d.rows, d.cols, d.q):
            raise ValueError("line base and direction have different shapes")

    @property
    def rows(self):
        return self.base.rows

    @property
    def cols(self):
        return self.base.cols

    def matrix(self, alpha: Sequence[int]) -> linalg.PolyMatrix:
        """pi_alpha(theta(t)) as a matrix of degree <= 1 polynomials."""
        A = project(self.base, alpha)
        B = project(self.direction, alpha)
        return [[P.normalize((a, b)) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]

    def point(self, ctx: FieldCtx, alpha: Sequence[int], t0: int) -> linalg.FieldMatrix:
        return linalg.evaluate_matrix(ctx, self.matrix(alpha), t0)


def array_from_function(rows: int, cols: int, ctx: FieldCtx, fn) -> ColorArray:
    """Build a ColorArray whose entry (v, e, c) is ``fn(v, e, c)`` (0-based v, e)."""
    data = tuple(
        tuple(tuple(fn(v, e, c) for c in ctx.nonzero()) for e in range(cols))
        for v in range(rows)
    )
    return ColorArray(rows, cols, ctx.q, data)


def graph_line(g1: OrientedGraph, g2: OrientedGraph, ctx: FieldCtx) -> ArrayLine:
    """theta(t) = A_{g1} + t A_{g2}."""
    if (g1.num_vertices, g1.num_edges) != (g2.num_vertices, g2.num_edges):
        raise ValueError(
            f"graphs differ in size: {g1.num_vertices}/{g1.num_edges} vs "
            f"{g2.num_vertices}/{g2.num_edges} vertices/edges"
        )
    return ArrayLine(build_array(g1, ctx), build_array(g2, ctx))


def minors(ctx: FieldCtx, M: linalg.PolyMatrix, mode: str) -> list[P.Poly]:
    if mode == "all_minors":
        return linalg.maximal_minors(ctx, M)
    if mode == "delta":
        return linalg.major_cofactors(ctx, M)
    raise ValueError(f"unknown minor mode {mode!r}; expected one of {MODES}")


def f_alpha(ctx: FieldCtx, line: ArrayLine, alpha: Sequence[int], mode: str = "all_minors") -> P.Poly:
    if line.rows > line.cols:
        raise ValueError("witness polynomials need |V| <= |E|")
    return P.monic_gcd(ctx, minors(ctx, line.matrix(alpha), mode))


@dataclass
class AlphaDetail:
    alpha: tuple[int, ...]
    f: P.Poly
    f_delta: P.Poly
    value: int
    value_delta: int
    rank: int


@dataclass
class Membership:
    answer: bool
    answer_delta: bool
    rows: int
    details: list[AlphaDetail] = field(default_factory=list)

    @property
    def rank_answer(self) -> bool:
        """Ground truth from elimination at the point itself."""
        return any(d.rank < self.rows for d in self.details)


def membership_via_roots(ctx: FieldCtx, line: ArrayLine, t0: int) -> Membership:
    """Is theta(t0) in the coloring variety?  Yes iff some f_alpha(t0) = 0.

    The delta-mode answer and the per-alpha rank at t0 ride along for
    comparison; ``answer`` uses all maximal minors.
    """
    details = []
    for alpha in alpha_maps(ctx, line.cols):
        M = line.matrix(alpha)
        f = P.monic_gcd(ctx, linalg.maximal_minors(ctx, M))
        fd = P.monic_gcd(ctx, linalg.major_cofactors(ctx, M))
        rk = linalg.rank(ctx, linalg.evaluate_matrix(ctx, M, t0))
        details.append(AlphaDetail(tuple(alpha), f, fd, P.evaluate(ctx, f, t0),
                                   P.evaluate(ctx, fd, t0), rk))
    return Membership(
        answer=any(d.value == 0 for d in details),
        answer_delta=any(d.value_delta == 0 for d in details),
        rows=line.rows,
        details=details,
    )


@dataclass
class WitnessReport:
    mode: str
    alphas: list[tuple[int, ...]]
    f: list[P.Poly]
    phi: P.Poly
    chi: P.Poly
    q: int
    rows: int
    edges: int

    @property
    def deg_f(self) -> list[int]:
        return [P.degree(f) for f in self.f]

    @property
    def deg_phi(self) -> int | None:
        return P.degree(self.phi) if self.phi else None

    @property
    def deg_chi(self) -> int | None:
        return P.degree(self.chi) if self.chi else None

    @property
    def deg_phi_bound(self) -> int:
        return self.rows * (self.q - 2) ** self.edges

    @property
    def ps_reference(self) -> float | None:
        """sqrt(deg chi) - 1, the generic lower bound on nonscalar multiplications."""
        d = self.deg_chi
        return None if d is None else math.sqrt(d) - 1


def conjecture_scan(g1: OrientedGraph, g2: OrientedGraph, ctx: FieldCtx,
                    mode: str = "all_minors") -> WitnessReport:
    """Phi = prod_alpha f_alpha along A_{g1} + t A_{g2}, and chi = Phi^(q-1).

    Each f_alpha is monic, so Phi is monic unless some f_alpha vanishes
    identically, in which case Phi = chi = 0 and the degrees are None.
    """
    line = graph_line(g1, g2, ctx)
    alphas, fs = [], []
    phi = P.ONE
    for alpha in alpha_maps(ctx, line.cols):
        f = f_alpha(ctx, line, alpha, mode)
        alphas.append(tuple(alpha))
        fs.append(f)
        phi = P.mul(ctx, phi, f)
    chi = P.pow_poly(ctx, phi, ctx.q - 1)
    return WitnessReport(mode, alphas, fs, phi, chi, ctx.q, line.rows, line.cols)
