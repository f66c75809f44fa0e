from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import RING3, polynomials
from linklct.polyring import (
    GREVLEX,
    LEX,
    MonomialOrder,
    PolynomialParseError,
    RingDescriptor,
    RingMismatchError,
    TBLOCK,
    XBLOCK,
    determinant,
    elimination_order,
    format_polynomial,
    generic_matrix,
    matrix_minors,
    matrix_names,
    parse_polynomial,
)

P = polynomials()


@given(P, P, P)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RING3.zero()
    assert a * RING3.one() == a


@given(P, P)
def test_degree_is_additive(a, b):
    if a.is_zero() or b.is_zero():
        assert (a * b).is_zero()
    else:
        assert (a * b).degree() == a.degree() + b.degree()


@given(P, P)
def test_block_order_valuation(a, b):
    # min x-block degree is a valuation: v(ab) = v(a) + v(b)
    if a.is_zero() or b.is_zero():
        return
    names = ["x", "y"]
    assert (a * b).block_degree_min(names) == a.block_degree_min(names) + b.block_degree_min(names)


@given(P)
def test_format_parse_roundtrip(a):
    assert parse_polynomial(format_polynomial(a), RING3) == a


@given(P, P)
def test_exact_divide_inverts_product(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_divide(b) == a


def test_exact_divide_rejects_remainder():
    x, y = RING3.gens()[:2]
    with pytest.raises(ArithmeticError):
        (x * x + y).exact_divide(x)


@given(st.tuples(*[st.integers(0, 4)] * 3), st.tuples(*[st.integers(0, 4)] * 3), st.tuples(*[st.integers(0, 4)] * 3))
def test_orders_are_multiplicative(a, b, c):
    for order in (GREVLEX, LEX, elimination_order(["x"]), MonomialOrder("weight", weights=(1, 2, 0))):
        key = order.key_function(RING3)
        ac = tuple(i + k for i, k in zip(a, c))
        bc = tuple(j + k for j, k in zip(b, c))
        if key(a) < key(b):
            assert key(ac) < key(bc)
        assert key(a) >= key((0, 0, 0))


def test_grevlex_and_lex_disagree_where_expected():
    # equal degree: grevlex prefers the smaller last exponent, lex the larger first one
    g = GREVLEX.key_function(RING3)
    l = LEX.key_function(RING3)
    assert g((0, 2, 0)) > g((1, 0, 1))
    assert l((1, 0, 1)) > l((0, 2, 0))


def test_parser_accepts_rationals_and_powers(ring3):
    p = ring3.parse("3/2*x^2*y - (x + z)^2 + 7")
    x, y, z = ring3.gens()
    assert p == Fraction(3, 2) * x**2 * y - (x + z) ** 2 + 7


@pytest.mark.parametrize(
    "text, token",
    [("x +* y", "*"), ("x y", "y"), ("x + w", "w"), ("(x + y", "<end>"), ("x ^ y", "y"), ("x $ y", "$")],
)
def test_parser_errors_name_token(ring3, text, token):
    with pytest.raises(PolynomialParseError) as err:
        ring3.parse(text)
    assert err.value.token == token
    assert "column" in str(err.value)


def test_parser_error_line_number(ring3):
    with pytest.raises(PolynomialParseError) as err:
        parse_polynomial("x +", ring3, line=4)
    assert "line 4" in str(err.value)


def test_ring_mismatch():
    other = RingDescriptor.simple(["a"])
    with pytest.raises(RingMismatchError):
        RING3.var("x") + other.var("a")


def test_blocks_extend_restrict():
    r = RING3.extend(TBLOCK, ["t1", "t2"])
    assert r.variables == ("x", "y", "z", "t1", "t2")
    assert r.block(TBLOCK) == ("t1", "t2")
    assert r.tag_of("x") == XBLOCK
    back = r.restrict(["t1", "t2"])
    assert back.variables == RING3.variables
    assert RING3.fresh_name("x") != "x"


def test_to_ring_and_substitute():
    r = RING3.extend(TBLOCK, ["t"])
    p = RING3.parse("x*y + z")
    q = p.to_ring(r)
    assert q.ring == r and q.to_ring(RING3) == p
    s = p.substitute({"x": RING3.parse("y + 1")})
    assert s == RING3.parse("y^2 + y + z")
    assert p.evaluate({"x": 2, "y": 3, "z": Fraction(1, 2)}) == Fraction(13, 2)


def test_primitive_and_monic():
    p = RING3.parse("-4/3*x + 2*y")
    assert p.primitive() == RING3.parse("2*x - 3*y")
    assert p.monic() == RING3.parse("x - 3/2*y")


@pytest.mark.parametrize("m, n, r", [(2, 2, 1), (3, 2, 2), (3, 3, 2), (4, 3, 3), (4, 4, 2)])
def test_minor_count(m, n, r):
    names = matrix_names("x", m, n)
    ring = RingDescriptor.simple([v for row in names for v in row])
    minors = matrix_minors(generic_matrix(ring, names), r)
    assert len(minors) == comb(m, r) * comb(n, r)
    assert all(p.is_homogeneous() and p.degree() == r for p in minors)


def test_determinant_multilinear():
    names = matrix_names("a", 3, 3)
    ring = RingDescriptor.simple([v for row in names for v in row])
    M = generic_matrix(ring, names)
    d = determinant(M)
    assert len(d) == 6
    swapped = [M[1], M[0], M[2]]
    assert determinant(swapped) == -d


def test_matrix_names_past_nine():
    assert matrix_names("x", 10, 2)[9][1] == "x10_2"
    assert matrix_names("x", 2, 2)[1][0] == "x21"
