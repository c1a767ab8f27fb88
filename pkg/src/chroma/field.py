"""Arithmetic in GF(p^n).

Elements are plain ints: the element c_0 + c_1 g + ... + c_{n-1} g^{n-1}
(g a root of the modulus) is encoded as sum(c_i * p**i).  A FieldCtx owns
the modulus and precomputed add/mul tables, so every operation is a table
lookup.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _polymulmod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _polyrem_p(a, m, p):
    """Remainder of a modulo the monic polynomial m, coefficients mod p."""
    a = list(a)
    d = len(m) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for i in range(d + 1):
                a[k - d + i] = (a[k - d + i] - c * m[i]) % p
    return a[:d] + [0] * max(0, d - len(a))


def _is_irreducible(coeffs, p):
    """Trial division by every monic polynomial of degree 1..n//2."""
    n = len(coeffs) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_polyrem_p(coeffs, divisor, p)):
                return False
    return True


def canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n with the smallest encoding of (c_0..c_{n-1}).

    Returned as a coefficient tuple, lowest degree first, leading 1 included.
    """
    if n == 1:
        return (0, 1)
    for code in range(p**n):
        low = [(code // p**i) % p for i in range(n)]
        cand = low + [1]
        if low[0] == 0:
            continue
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible polynomial of degree {n} over GF({p})")


@dataclass(frozen=True)
class FieldCtx:
    p: int
    n: int
    modulus: tuple[int, ...]
    _add: tuple = field(repr=False, compare=False)
    _mul: tuple = field(repr=False, compare=False)
    _neg: tuple = field(repr=False, compare=False)
    _inv: tuple = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def log_q(self) -> int:
        """ceil(log2 q), the logarithm used in every complexity bound."""
        return (self.q - 1).bit_length()

    def __str__(self):
        return f"{self.p}^{self.n}"

    # -- encoding -----------------------------------------------------------
    def decode(self, k: int) -> tuple[int, ...]:
        if not 0 <= k < self.q:
            raise ValueError(f"{k} is not an element of GF({self.q})")
        return tuple((k // self.p**i) % self.p for i in range(self.n))

    def encode(self, coeffs) -> int:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.n or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"bad coefficient vector {coeffs!r} for GF({self.q})")
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    @property
    def minus_one(self) -> int:
        return self._neg[1]

    # -- arithmetic ---------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        while k:
            if k & 1:
                result = self._mul[result][a]
            a = self._mul[a][a]
            k >>= 1
        return result


def field_create(p: int, n: int = 1) -> FieldCtx:
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    q = p**n
    if q < 4:
        raise ValueError(f"GF({q}) is too small: need q >= 4 so that F minus {{0, -1}} has two elements")
    modulus = canonical_modulus(p, n)
    elems = [tuple((k // p**i) % p for i in range(n)) for k in range(q)]

    def enc(c):
        return sum(x * p**i for i, x in enumerate(c))

    add = tuple(
        tuple(enc(tuple((x + y) % p for x, y in zip(a, b))) for b in elems) for a in elems
    )
    neg = tuple(enc(tuple((-x) % p for x in a)) for a in elems)
    mul = tuple(
        tuple(enc(_polyrem_p(_polymulmod_p(a, b, p), modulus, p)) for b in elems)
        for a in elems
    )
    inv = [0] * q
    for a in range(1, q):
        inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
    return FieldCtx(p, n, modulus, add, mul, neg, tuple(inv))


def parse_field(spec: str) -> FieldCtx:
    """Parse a "p^n" string such as "2^2" or "5^1" (a bare "7" means n = 1)."""
    try:
        if "^" in spec:
            p, n = spec.split("^")
            return field_create(int(p), int(n))
        return field_create(int(spec), 1)
    except ValueError as exc:
        raise ValueError(f"invalid field spec {spec!r}: {exc}") from None


def enumerate_nonzero_nonminusone(ctx: FieldCtx) -> list[int]:
    """The q - 2 admissible edge weights F minus {0, -1}, in encoding order."""
    m1 = ctx.minus_one
    return [a for a in ctx.elements() if a != 0 and a != m1]
