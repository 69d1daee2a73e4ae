from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from utpoly.errors import EmptyPolynomial, NotMultilinear, PolySyntaxError
from utpoly.freealg import MultilinearPoly, Permutation, commutator_product, format_poly, standard_poly
from utpoly.parsing import parse


def test_commutator():
    p = parse("x1*x2 - x2*x1")
    assert p.coefficient((1, 2)) == 1
    assert p.coefficient((2, 1)) == -1
    assert len(p) == 2
    assert parse("[x1,x2]") == p


def test_maltsev_generator_expands_to_four_terms():
    p = parse("[x1,x2]*[x3,x4]")
    assert len(p) == 2**2
    assert {c for _, c in p.items()} == {1, -1}
    assert p == commutator_product(2)


def test_repeated_variable():
    with pytest.raises(NotMultilinear):
        parse("x1*x1")


def test_missing_variable():
    with pytest.raises(NotMultilinear, match="x2"):
        parse("x1*x3")


def test_mixed_lengths():
    with pytest.raises(NotMultilinear):
        parse("(x1 + x2)*x3")


def test_zero_literal_and_cancellation():
    assert parse(" 0 ").is_zero()
    with pytest.raises(EmptyPolynomial):
        parse("x1*x2 - x1*x2")


@pytest.mark.parametrize(
    "text",
    ["", "x1 +", "x1 * * x2", "[x1 x2]", "[x1,x2", "x1)", "2/0 x1", "x0", "y1", "3", "x1 x2"],
)
def test_syntax_errors(text):
    with pytest.raises(PolySyntaxError):
        parse(text)


def test_coefficients():
    p = parse("1/2 x1*x2 + 3*x2*x1")
    assert p.coefficient((1, 2)) == Fraction(1, 2)
    assert p.coefficient((2, 1)) == 3
    assert parse("2x1") == MultilinearPoly(1, {(1,): 2})


def test_leading_sign_and_unicode_minus():
    assert parse("-x2*x1 + x1*x2") == standard_poly(2)
    assert parse("x1*x2 − x2*x1") == standard_poly(2)


def test_nested_commutator():
    # [[x1,x2],x3] = x1x2x3 - x2x1x3 - x3x1x2 + x3x2x1
    expected = MultilinearPoly(3, {(1, 2, 3): 1, (2, 1, 3): -1, (3, 1, 2): -1, (3, 2, 1): 1})
    assert parse("[[x1,x2],x3]") == expected


def test_commutator_of_products():
    # [x1*x2, x3] = x1x2x3 - x3x1x2
    assert parse("[x1*x2, x3]") == MultilinearPoly(3, {(1, 2, 3): 1, (3, 1, 2): -1})


def test_distributes_over_parentheses():
    assert parse("x3*(x1*x2 - x2*x1)") == MultilinearPoly(3, {(3, 1, 2): 1, (3, 2, 1): -1})


def test_scaled_bracket():
    assert parse("2[x1,x2]") == standard_poly(2).scale(2)


def test_error_offsets():
    with pytest.raises(PolySyntaxError) as info:
        parse("x1 + ?")
    assert info.value.position == 5


coeffs = st.fractions(max_denominator=12).filter(lambda c: c != 0)


@st.composite
def polys(draw):
    m = draw(st.integers(1, 4))
    words = draw(st.lists(st.permutations(range(1, m + 1)), min_size=1, max_size=8, unique_by=tuple))
    return MultilinearPoly(m, {tuple(w): draw(coeffs) for w in words})


@settings(max_examples=200)
@given(polys())
def test_round_trip(p):
    assert parse(format_poly(p)) == p


@pytest.mark.parametrize("m", range(1, 6))
def test_round_trip_generators(m):
    assert parse(format_poly(standard_poly(m))) == standard_poly(m)
    if m <= 3:
        cp = commutator_product(m)
        assert parse(format_poly(cp)) == cp


def test_zero_round_trip():
    assert parse(format_poly(parse("0"))) == parse("0")


def test_large_index():
    p = parse("x10*" + "*".join(f"x{i}" for i in range(1, 10)))
    assert p.arity == 10
    assert Permutation((10, *range(1, 10))) in p.terms
