from fractions import Fraction

import pytest

from apolar_rank.errors import DegreeError, ParseError, PreconditionError
from apolar_rank.parser import parse
from apolar_rank.polynomial import Polynomial


def test_separating_cubic_expansion():
    f = parse("x0^2*x2 + 6*x1^2*x3 - 3*(x0+x1)^2*x4", 4)
    assert f.degree == 3
    # x0^2 x2, 6 x1^2 x3, -3 x0^2 x4, -6 x0 x1 x4, -3 x1^2 x4
    assert len(f.terms) == 5
    assert f.coefficient((1, 1, 0, 0, 1)) == -6


def test_single_monomial():
    f = parse("x0^3", 0)
    assert f.terms == {(3,): 1}


def test_cancellation_and_nonzero():
    assert parse("x0*x1 - x1*x0", 1).is_zero()
    with pytest.raises(PreconditionError):
        parse("x0*x1 - x1*x0", 1, nonzero=True)


def test_rationals_implicit_products_and_signs():
    f = parse("-3/2 x0 x1 + (x0 - x1)^2", 1)
    assert f.coefficient((1, 1)) == Fraction(-7, 2)
    assert f.coefficient((0, 2)) == 1
    assert parse("--x0", 0) == Polynomial.monomial((1,))


def test_inhomogeneous_lists_degrees():
    with pytest.raises(DegreeError, match=r"\[1, 2\]"):
        parse("x0^2 + x1", 1)
    assert parse("x0^2 + x1", 1, homogeneous=False).degrees() == {1, 2}


@pytest.mark.parametrize("text,pos", [("x0 +", 4), ("x0 ^", 4), ("x3", 0), ("x0 + )", 5), ("(x0", 3)])
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse(text, 1)
    assert exc.value.position == pos


def test_division_by_zero_literal():
    with pytest.raises(ParseError):
        parse("1/0*x0", 0)
