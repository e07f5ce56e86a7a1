import numpy as np
import pytest

from moyalcalc import (
    ExpressionError,
    MoyalElement,
    SymplecticStructure,
    format_element,
    monomial,
    parse_expression,
    plane_wave,
    pointwise,
    unit,
)

S2 = SymplecticStructure(2, 1.0)


def test_two_term_example():
    e = parse_expression("x1^2 x2 + (0+1i) W[1.0,0.0]", S2)
    expect = monomial(S2, (2, 1)) + plane_wave(S2, (1.0, 0.0), 1j)
    assert len(e.terms) == 2
    assert (e - expect).norm() == 0.0


def test_index_error_with_position():
    with pytest.raises(ExpressionError) as err:
        parse_expression("x3", S2)
    assert err.value.column == 1
    with pytest.raises(ExpressionError) as err:
        parse_expression("x1 + x7^2", S2)
    assert err.value.column == 6


def test_syntax_errors_carry_positions():
    with pytest.raises(ExpressionError):
        parse_expression("x1 +", S2)
    with pytest.raises(ExpressionError):
        parse_expression("W[1.0]", S2)  # wrong arity
    with pytest.raises(ExpressionError):
        parse_expression("x1 ) x2", S2)


def test_explicit_and_implicit_products_agree():
    a = parse_expression("2.0*x1*x2", S2)
    b = parse_expression("2.0 x1 x2", S2)
    assert (a - b).norm() == 0.0
    assert (a - monomial(S2, (1, 1), 2.0)).norm() == 0.0


def test_products_are_pointwise():
    # x1 * x1 is the monomial x1^2, with no star correction term
    a = parse_expression("x1 x2", S2)
    assert len(a.terms) == 1
    w = parse_expression("W[0.5,0.0] W[0.5,0.0]", S2)
    assert (w - plane_wave(S2, (1.0, 0.0))).norm() == 0.0


def test_complex_literal_forms():
    assert (parse_expression("2.5", S2) - unit(S2, 2.5)).norm() == 0.0
    assert (parse_expression("2.5i", S2) - unit(S2, 2.5j)).norm() == 0.0
    assert (parse_expression("(1.5-0.5i)", S2) - unit(S2, 1.5 - 0.5j)).norm() == 0.0
    assert (parse_expression("(-1+2i)", S2) - unit(S2, -1 + 2j)).norm() == 0.0


def test_parenthesised_sums():
    e = parse_expression("(x1 + x2) (x1 - x2)", S2)
    expect = monomial(S2, (2, 0)) - monomial(S2, (0, 2))
    assert (e - expect).norm() < 1e-15


def test_round_trip_corpus():
    """print(parse(s)) is the identity on printed forms for 50 random elements."""
    rng = np.random.default_rng(23)
    for _ in range(50):
        terms = {}
        for _t in range(int(rng.integers(1, 5))):
            alpha = tuple(int(v) for v in rng.integers(0, 4, size=2))
            k = tuple(float(v) / 4.0 for v in rng.integers(-6, 7, size=2))
            terms[(alpha, k)] = complex(
                rng.normal(), float(rng.integers(0, 2)) * rng.normal()
            )
        a = MoyalElement(S2, terms)
        printed = format_element(a)
        reparsed = parse_expression(printed, S2)
        assert (a - reparsed).norm() == 0.0
        assert format_element(reparsed) == printed


def test_wave_negative_components():
    e = parse_expression("W[-1.5,0.25]", S2)
    assert (e - plane_wave(S2, (-1.5, 0.25))).norm() == 0.0
