import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from chroma import poly as P
from strategies import field_and_polys, fields


def test_indicator_of_zero_over_gf4(gf4):
    chi = P.interpolate(gf4, {x: int(x == 0) for x in gf4.elements()})
    assert chi == (1, 0, 0, 1)


def test_indicator_of_zero_one_over_gf5(gf5):
    chi = P.interpolate(gf5, {x: int(x in (0, 1)) for x in gf5.elements()})
    u = P.sub(gf5, P.mul(gf5, P.X, P.X), P.X)
    expected = P.reduce_field(gf5, P.sub(gf5, P.ONE, P.pow_poly(gf5, u, 4)))
    assert chi == expected


def test_interpolate_requires_every_point(gf4):
    with pytest.raises(ValueError):
        P.interpolate(gf4, {0: 1, 1: 0})


def test_reduce_field_keeps_x_to_the_q_minus_1(gf4):
    assert P.reduce_field(gf4, (0, 0, 0, 0, 1)) == P.X
    assert P.reduce_field(gf4, (0, 0, 0, 1)) == (0, 0, 0, 1)
    assert P.reduce_field(gf4, (0, 0, 0, 0, 0, 0, 1)) == (0, 0, 0, 1)
    assert P.reduce_field(gf4, (0, 0, 0, 0, 0, 0, 0, 1)) == P.X


def test_degree_and_render():
    assert P.degree(P.ZERO) == -1
    assert P.degree((0, 0, 3)) == 2
    assert P.render(P.ZERO) == "0"
    assert P.render((1, 0, 2)) == "1 0 2"


def test_monic_gcd_of_nothing_is_zero(gf5):
    assert P.monic_gcd(gf5, []) == P.ZERO
    assert P.monic_gcd(gf5, [P.ZERO, P.ZERO]) == P.ZERO


def test_gcd_example(gf5):
    a = P.mul(gf5, (4, 1), (2, 1))  # (x - 1)(x + 2)
    b = P.mul(gf5, (4, 1), (3, 1))  # (x - 1)(x + 3)
    assert P.monic_gcd(gf5, [a, b]) == (4, 1)


@given(field_and_polys(2))
def test_divmod(fp):
    F, (a, b) = fp
    a, b = P.normalize(a), P.normalize(b)
    assume(b)
    q, r = P.divmod_poly(F, a, b)
    assert P.add(F, P.mul(F, q, b), r) == a
    assert P.degree(r) < P.degree(b)


@given(field_and_polys(3))
def test_ring_laws(fp):
    F, (a, b, c) = fp
    a, b, c = map(P.normalize, (a, b, c))
    assert P.mul(F, a, P.add(F, b, c)) == P.add(F, P.mul(F, a, b), P.mul(F, a, c))
    assert P.sub(F, P.add(F, a, b), b) == a
    assert P.degree(P.mul(F, a, b)) == (P.degree(a) + P.degree(b) if a and b else -1)


@given(field_and_polys(2), st.data())
def test_evaluation_is_a_homomorphism(fp, data):
    F, (a, b) = fp
    x = data.draw(st.integers(0, F.q - 1))
    assert P.evaluate(F, P.mul(F, a, b), x) == F.mul(P.evaluate(F, a, x), P.evaluate(F, b, x))


@given(field_and_polys(2))
def test_gcd_divides_and_is_monic(fp):
    F, (a, b) = fp
    g = P.monic_gcd(F, [a, b])
    if not g:
        assert not P.normalize(a) and not P.normalize(b)
        return
    assert g[-1] == 1
    for f in (a, b):
        assert P.divmod_poly(F, P.normalize(f), g)[1] == P.ZERO


@given(field_and_polys(1, max_deg=20))
def test_reduce_field_preserves_functions(fp):
    F, (a,) = fp
    r = P.reduce_field(F, a)
    assert P.degree(r) < F.q
    assert P.values(F, r) == P.values(F, P.normalize(a))


@given(fields, st.data())
def test_interpolation_round_trip(F, data):
    vals = {x: data.draw(st.integers(0, F.q - 1)) for x in F.elements()}
    f = P.interpolate(F, vals)
    assert P.degree(f) < F.q
    assert P.values(F, f) == vals
