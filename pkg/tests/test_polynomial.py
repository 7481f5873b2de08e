import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newtondiag.errors import DimensionError, PolynomialSyntaxError
from newtondiag.polynomial import (
    Polynomial,
    add,
    divide_by_hyperplane,
    evaluate,
    format_polynomial,
    is_in_H,
    mul,
    parse,
    scale,
    subtract_monomial,
    substitute,
    term_count,
)

from reference import hyperplane_points, polynomial_value

F_TEXT = "x1^3 + 3*x1*x2 + x2^3"
EQ24_TEXT = "x^3 + 3*x^2*z + 3*x*z^2 + z^3 + 3*x*y + 3*y*z + y^3"


def P(text, n):
    return parse(text, n)


# -- parsing and printing ------------------------------------------------------

def test_parse_cubic():
    p = P(F_TEXT, 2)
    assert dict(p.terms) == {(3, 0): 1, (1, 1): 3, (0, 3): 1}


def test_parse_zero():
    p = P("0", 3)
    assert p.is_zero() and p.degree is None and term_count(p) == 0


def test_parse_aliases_and_like_terms():
    p = P("x + y + x*z + y*z + z^2", 3)
    assert term_count(p) == 5 and p.degree == 2
    assert P("x*y + y*x - 2*x1*x2 + 1/2", 2) == Polynomial.constant(2, Fraction(1, 2))


def test_aliases_only_up_to_four_variables():
    with pytest.raises(PolynomialSyntaxError):
        P("x + y", 5)
    assert P("x1 + x5", 5).degree == 1


@pytest.mark.parametrize("text, pos", [("x^3 +", 5), ("3*/x", 2), ("x1^", 3), ("x1 ) ", 3)])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(PolynomialSyntaxError) as err:
        P(text, 2)
    assert err.value.position == pos


def test_index_and_dimension_errors():
    with pytest.raises(PolynomialSyntaxError):
        P("x3", 2)
    with pytest.raises(DimensionError):
        P("x1", 0)
    with pytest.raises(DimensionError):
        add(P("x", 2), P("x", 3))


def test_canonical_format():
    assert format_polynomial(P("y^3 + x^3 + 3*x*y", 2)) == "x1^3 + 3*x1*x2 + x2^3"
    assert format_polynomial(P("1 - 1/2*x", 2), aliases=True) == "-1/2*x + 1"
    assert format_polynomial(Polynomial.zero(4)) == "0"


exponents = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=9)
polys3 = st.dictionaries(exponents, coefficients, max_size=8).map(lambda t: Polynomial(3, t))


@given(polys3)
def test_parse_format_round_trip(p):
    assert parse(format_polynomial(p), 3) == p
    assert parse(format_polynomial(p, aliases=True), 3) == p


# -- arithmetic --------------------------------------------------------------------

def test_arithmetic_examples():
    s = P("x + y", 2)
    assert dict(mul(s, s).terms) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert add(s, scale(-1, s)).is_zero()
    assert subtract_monomial(s, (1, 0), 1) == P("y", 2)


def test_eq24_reassembled_from_cubic_quotient():
    q_f, r = divide_by_hyperplane(P(F_TEXT, 2))
    assert r.is_zero()
    x, y, z = (Polynomial.variable(3, i) for i in (1, 2, 3))
    lifted = substitute(q_f, [x + z, y])
    p = mul(P("x + y + z - 1", 3), lifted) + 1
    assert p == P(EQ24_TEXT, 3)


@given(polys3, polys3)
def test_ring_laws(p, q):
    assert add(p, q) == add(q, p)
    assert mul(p, q) == mul(q, p)
    point = (Fraction(1, 3), Fraction(-2), Fraction(5, 7))
    assert evaluate(mul(p, q), point) == evaluate(p, point) * evaluate(q, point)
    assert evaluate(p, point) == polynomial_value(dict(p.terms), point)


# -- division by s - 1 ------------------------------------------------------------

def test_division_examples():
    q, r = divide_by_hyperplane(P("x + y", 2))
    assert q == Polynomial.constant(2, 1) and r.is_zero()
    q, r = divide_by_hyperplane(P(F_TEXT, 2))
    assert q == P("x^2 - x*y + y^2 + x + y + 1", 2) and r.is_zero()
    _, r = divide_by_hyperplane(P("x^2", 2))
    assert not r.is_zero()


@settings(max_examples=200)
@given(polys3)
def test_division_round_trip(p):
    q, r = divide_by_hyperplane(p)
    s1 = Polynomial.hyperplane_sum(3) - 1
    assert s1 * q + r == p - 1
    assert all(alpha[0] == 0 for alpha in r.terms)


def test_hyperplane_oracle_agreement():
    rng = random.Random(7)
    in_h = 0
    for trial in range(100):
        n = rng.choice([2, 3])
        terms = {tuple(rng.randint(0, 3) for _ in range(n)): Fraction(rng.randint(0, 5), rng.randint(1, 3))
                 for _ in range(rng.randint(1, 5))}
        p = Polynomial(n, terms)
        if trial % 3 == 0:
            # force a member of the ideal shifted by one
            p = (Polynomial.hyperplane_sum(n) - 1) * p + 1
        _, r = divide_by_hyperplane(p)
        pts = hyperplane_points(rng, n, 20)
        if r.is_zero():
            in_h += 1
            assert all(polynomial_value(dict(p.terms), x) == 1 for x in pts)
        else:
            witness = is_in_H(p)
            if witness.point is not None:
                assert sum(witness.point) == 1
                assert polynomial_value(dict(p.terms), witness.point) != 1
    assert in_h >= 30


def test_membership():
    assert is_in_H(P(EQ24_TEXT, 3))
    assert is_in_H(P("x + y + x*z + y*z + z^2", 3))
    m = is_in_H(P("x^2", 2))
    assert not m and m.point == (0, 1)
    m = is_in_H(P("2*x - x^2 + y", 2))
    assert not m and m.negative_term == (2, 0)


def test_evaluate_examples():
    assert evaluate(P(F_TEXT, 2), (Fraction(1, 2), Fraction(1, 2))) == 1
    assert evaluate(Polynomial.hyperplane_sum(3), (Fraction(1, 5), Fraction(3, 5), Fraction(1, 5))) == 1
    assert evaluate(Polynomial.zero(2), (3, 4)) == 0
    with pytest.raises(DimensionError):
        evaluate(P("x", 2), (1,))


def test_term_count_growth_under_s():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(2, 4)
        p = Polynomial(n, {tuple(rng.randint(0, 3) for _ in range(n)): 1 for _ in range(rng.randint(1, 6))})
        assert term_count(Polynomial.hyperplane_sum(n) * p) <= n * term_count(p)
    mono = Polynomial.monomial((2, 1, 0))
    assert term_count(Polynomial.hyperplane_sum(3) * mono) == 3
