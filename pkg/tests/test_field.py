import pytest
from hypothesis import given
from hypothesis import strategies as st

from chroma.field import (
    canonical_modulus,
    enumerate_nonzero_nonminusone,
    field_create,
    is_prime,
    parse_field,
)
from strategies import field_and_elements, fields


def test_gf4_tables_match_hand_computation(gf4):
    assert gf4.modulus == (1, 1, 1)
    # omega = 2, omega^2 = omega + 1 = 3
    assert gf4.mul(2, 2) == 3
    assert gf4.mul(2, 3) == 1
    assert gf4.inv(2) == 3
    assert gf4.add(2, 3) == 1
    assert gf4.minus_one == 1


@pytest.mark.parametrize("p,n,expected", [
    (5, 1, (0, 1)),
    (3, 2, (1, 0, 1)),
    (2, 3, (1, 1, 0, 1)),
    (2, 2, (1, 1, 1)),
])
def test_canonical_modulus(p, n, expected):
    assert canonical_modulus(p, n) == expected


def test_gf9_minus_one_and_encoding(gf9):
    assert gf9.minus_one == 2
    assert gf9.decode(5) == (2, 1)
    assert gf9.encode((2, 1)) == 5
    # x^2 = -1 in GF(9) with modulus x^2 + 1
    assert gf9.mul(3, 3) == 2


@pytest.mark.parametrize("spec", ["2^1", "3^1", "4^1", "6^2", "x", "2^", ""])
def test_rejects_bad_fields(spec):
    with pytest.raises(ValueError):
        parse_field(spec)


def test_parse_field_forms():
    assert str(parse_field("2^3")) == "2^3"
    assert parse_field("7").q == 7


def test_inverse_of_zero_raises(gf8):
    with pytest.raises(ZeroDivisionError):
        gf8.inv(0)


def test_log_q():
    assert [field_create(*pn).log_q for pn in [(2, 2), (5, 1), (2, 3), (3, 2), (7, 1)]] == [2, 3, 3, 4, 3]


def test_edge_weights(gf5):
    assert enumerate_nonzero_nonminusone(gf5) == [1, 2, 3]


def test_is_prime():
    assert [k for k in range(30) if is_prime(k)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(field_and_elements(3))
def test_field_axioms(fe):
    F, (a, b, c) = fe
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b


@given(fields, st.data())
def test_fermat(F, data):
    a = data.draw(st.integers(0, F.q - 1))
    assert F.pow(a, F.q) == a
    assert F.pow(a, F.q - 1) == (1 if a else 0)


@given(fields)
def test_multiplicative_group_is_cyclic(F):
    orders = set()
    for a in F.nonzero():
        k, acc = 1, a
        while acc != 1:
            acc, k = F.mul(acc, a), k + 1
        orders.add(k)
    assert max(orders) == F.q - 1
