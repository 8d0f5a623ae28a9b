import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from apolar_rank.errors import DegreeError, PreconditionError
from apolar_rank.polynomial import (DualElement, LinearForm, PointDiffTerm, Polynomial, act,
                                    apolar_product, compose, dehomogenize, dual_of, evaluate,
                                    homogenize, monomials, monomials_upto, multinomial,
                                    power_of_form, primal_of, variable)

from _gen import random_form

SEPARATING = "x0^2*x2 + 6*x1^2*x3 - 3*(x0+x1)^2*x4"


def test_monomial_order_is_lex_with_x0_first():
    assert monomials(3, 2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert len(monomials_upto(2, 3)) == 10
    assert multinomial((1, 2, 2)) == 30


def test_apolar_product_examples(P):
    assert apolar_product(P("x0^3", 1), P("x0^3", 1)) == 1
    assert apolar_product(P("x0*x1", 1), P("x0*x1", 1)) == Fraction(1, 2)
    assert apolar_product(P("x0^2", 1), P("(x0 + 2*x1)^2", 1)) == 1
    with pytest.raises(DegreeError):
        apolar_product(P("x0^2", 1), P("x0^3", 1))


def test_dual_of_examples(P):
    f = P("x0*x1^2*x2^2", 2)
    lam = dual_of(f)
    assert lam.terms == {(1, 2, 2): Fraction(1, 30)}
    g = P("x0^2 + x1^2", 1)
    lg = dual_of(g)
    assert lg(P("x0^2", 1)) == 1
    assert lg(P("x0*x1", 1)) == 0
    assert dual_of(Polynomial.zero(2), 3).is_zero()
    assert primal_of(lam) == f


def test_act_examples():
    d0d1 = DualElement(2, 2, {(1, 1): 1})
    assert act(variable(2, 0), d0d1) == DualElement(2, 1, {(0, 1): 1})
    assert act(variable(2, 1), DualElement(2, 1, {(1, 0): 1})).is_zero()
    x0x1 = Polynomial.monomial((1, 1))
    assert act(x0x1, DualElement(2, 3, {(2, 1): 1})) == DualElement(2, 1, {(1, 0): 1})
    with pytest.raises(DegreeError):
        act(Polynomial.monomial((2, 1)), DualElement(2, 2, {(1, 1): 1}))


def test_homogenize_dehomogenize(P):
    assert dehomogenize(P("x0^2*x2", 4)) == Polynomial.monomial((0, 1, 0, 0))
    affine = Polynomial(1, {(2,): 1, (0,): 1})
    assert homogenize(affine, 2) == P("x1^2 + x0^2", 1)
    f = P(SEPARATING, 4)
    assert homogenize(dehomogenize(f), 3) == f
    with pytest.raises(DegreeError):
        homogenize(affine, 1)


def test_power_of_form_and_evaluate(P):
    assert power_of_form((1, 1), 2) == P("x0^2 + 2*x0*x1 + x1^2", 1)
    assert evaluate(P("x0*x1^2", 1), (1, -1)) == 1
    assert power_of_form(LinearForm((0, 1, 0)), 3) == P("x1^3", 2)


def test_require_form_and_zero(P):
    with pytest.raises(PreconditionError):
        Polynomial.zero(2).require_form()
    assert P("x0*x1 - x1*x0", 1).is_zero()


def test_point_diff_term():
    # 1_(2) o d_1^2 on x1^3 -> 6 * 2 = 12
    t = PointDiffTerm((Fraction(2),), Polynomial.monomial((2,)))
    assert t.apply(Polynomial.monomial((3,))) == 12
    assert t.on_monomial((3,)) == 12
    assert t.on_monomial((1,)) == 0
    with pytest.raises(PreconditionError):
        PointDiffTerm((0,), Polynomial.zero(1))


def test_compose_is_substitution(P):
    f = P("x0^2*x1", 1)
    g = [[1, 2], [0, 1]]
    # f(g x) = (x0 + 2 x1)^2 * x1
    assert compose(f, g) == P("(x0 + 2*x1)^2*x1", 1)


def test_bombieri_round_trip(P):
    f = P(SEPARATING, 4)
    assert Polynomial.from_bombieri(5, f.bombieri()) == f


# -- properties ----------------------------------------------------------------

def forms(nvars, d):
    return st.dictionaries(st.sampled_from(monomials(nvars, d)),
                           st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3)),
                           max_size=6).map(lambda t: Polynomial(nvars, t))


shapes = st.tuples(st.integers(1, 4), st.integers(0, 4))


@settings(max_examples=80, deadline=None)
@given(shapes.flatmap(lambda s: st.tuples(forms(*s), forms(*s))))
def test_apolar_product_symmetric(pair):
    f, g = pair
    assert apolar_product(f, g) == apolar_product(g, f)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pairing_identity(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    d = rng.randint(1, 5)
    k = rng.randint(0, d)
    f = random_form(rng, n, d)
    p = random_form(rng, n, k)
    q = random_form(rng, n, d - k)
    assert act(p, dual_of(f))(q) == apolar_product(f, p * q)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_evaluation_law(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    d = rng.randint(1, 4)
    g = random_form(rng, n, d)
    k = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n))
    assert apolar_product(g, power_of_form(k, d)) == evaluate(g, k)


@settings(max_examples=60, deadline=None)
@given(shapes.flatmap(lambda s: forms(*s)))
def test_dual_round_trip(f):
    assert primal_of(dual_of(f)) == f
    assert Polynomial.from_bombieri(f.nvars, f.bombieri()) == f
