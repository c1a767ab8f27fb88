"""Univariate polynomials over a FieldCtx.

A polynomial is a tuple of field encodings, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  All functions take the
field as first argument.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

from .field import FieldCtx

Poly = tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


def normalize(coeffs: Iterable[int]) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def const(c: int) -> Poly:
    return (c,) if c else ()


def degree(a: Poly) -> int:
    """Degree, with deg 0 = -1."""
    return len(a) - 1


def add(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F.add(out[i], y)
    return normalize(out)


def neg(F: FieldCtx, a: Poly) -> Poly:
    return tuple(F.neg(c) for c in a)


def sub(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    return add(F, a, neg(F, b))


def scale(F: FieldCtx, c: int, a: Poly) -> Poly:
    if c == 0:
        return ZERO
    return tuple(F.mul(c, x) for x in a)


def mul(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    fmul, fadd = F._mul, F._add
    for i, x in enumerate(a):
        if x == 0:
            continue
        row = fmul[x]
        for j, y in enumerate(b):
            out[i + j] = fadd[out[i + j]][row[y]]
    return normalize(out)


def divmod_poly(F: FieldCtx, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    qt = [0] * max(0, len(a) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        f = F.mul(c, inv_lead)
        qt[k - db] = f
        for i, y in enumerate(b):
            r[k - db + i] = F.sub(r[k - db + i], F.mul(f, y))
    return normalize(qt), normalize(r[:db] if db else [])


def pow_poly(F: FieldCtx, a: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("negative exponent")
    result, base = ONE, a
    while k:
        if k & 1:
            result = mul(F, result, base)
        k >>= 1
        if k:
            base = mul(F, base, base)
    return result


def evaluate(F: FieldCtx, a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def monic(F: FieldCtx, a: Poly) -> Poly:
    a = normalize(a)
    if not a:
        return ZERO
    return scale(F, F.inv(a[-1]), a)


def gcd(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    a, b = monic(F, a), monic(F, b)
    while b:
        a, b = b, monic(F, divmod_poly(F, a, b)[1])
    return a


def monic_gcd(F: FieldCtx, polys: Iterable[Poly]) -> Poly:
    """Monic gcd of a list; the gcd of an empty or all-zero list is 0."""
    g = ZERO
    for f in polys:
        g = gcd(F, g, f)
        if g == ONE:
            break
    return g


def reduce_field(F: FieldCtx, a: Poly) -> Poly:
    """Reduce modulo x^q - x, i.e. keep only the function a induces on F."""
    q = F.q
    if len(a) <= q:
        return a
    out = list(a[:q])
    for k in range(q, len(a)):
        # x^k == x^(k - (q-1)) as functions; exponents >= 1 stay >= 1
        e = (k - 1) % (q - 1) + 1
        out[e] = F.add(out[e], a[k])
    return normalize(out)


def interpolate(F: FieldCtx, values: Mapping[int, int]) -> Poly:
    """Lagrange interpolation through every point of F.

    Returns the unique polynomial of degree <= q-1 with the given values.
    """
    missing = [x for x in F.elements() if x not in values]
    if missing:
        raise ValueError(f"interpolation needs all {F.q} points; missing {missing}")
    points = list(F.elements())
    result = ZERO
    for a in points:
        ya = values[a]
        if ya == 0:
            continue
        basis, denom = ONE, 1
        for b in points:
            if b != a:
                basis = mul(F, basis, (F.neg(b), 1))
                denom = F.mul(denom, F.sub(a, b))
        result = add(F, result, scale(F, F.div(ya, denom), basis))
    return result


def values(F: FieldCtx, a: Poly) -> dict[int, int]:
    return {x: evaluate(F, a, x) for x in F.elements()}


def render(a: Sequence[int]) -> str:
    """Space separated coefficients, lowest degree first; ``0`` for zero."""
    return " ".join(map(str, a)) if a else "0"
