import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from apolar_rank import linalg
from apolar_rank.apolarity import (apolar_component, colon_with_maximal, derivative_closure,
                                   hilbert_function, inverse_system_dimension, is_apolar)
from apolar_rank.errors import DegreeError, PreconditionError
from apolar_rank.polynomial import PointDiffTerm, Polynomial, apolar_product, monomials, variable

from _gen import random_form

SEPARATING = "x0^2*x2 + 6*x1^2*x3 - 3*(x0+x1)^2*x4"


def _span(polys, nvars, degree):
    mons = monomials(nvars, degree)
    return [[p.coefficient(m) for m in mons] for p in polys]


def _same_space(a, b, nvars, degree):
    ra, rb = _span(a, nvars, degree), _span(b, nvars, degree)
    return linalg.rank(ra) == linalg.rank(rb) == linalg.rank(ra + rb)


def test_monomial_apolar_ideal(P):
    alpha = (1, 2, 2)
    f = Polynomial.monomial(alpha)
    for k in range(6):
        comp = apolar_component(f, k)
        want = [Polynomial.monomial(m) for m in monomials(3, k)
                if any(e > a for e, a in zip(m, alpha))]
        assert _same_space(list(comp.basis), want, 3, k)
        assert comp.ambient_dimension == math.comb(2 + k, k)


def test_pure_power_linear_component(P):
    comp = apolar_component(P("x0^4", 3), 1)
    assert _same_space(list(comp.basis), [variable(4, i) for i in (1, 2, 3)], 4, 1)
    assert comp.contains(P("x1 - 2*x3", 3))
    assert not comp.contains(P("x0", 3))


def test_component_above_degree_is_everything(P):
    assert apolar_component(P("x0*x1", 1), 3).dimension == 4


def test_hilbert_goldens(P):
    assert hilbert_function(P("x0*x1^2*x2^2", 2)) == [1, 3, 5, 5, 3, 1]
    assert hilbert_function(P("x0^4", 2)) == [1, 1, 1, 1, 1]
    assert hilbert_function(P(SEPARATING, 4)) == [1, 5, 5, 1]
    with pytest.raises(PreconditionError):
        hilbert_function(Polynomial.zero(2))


def test_is_apolar_examples(P):
    f = P("x0*x1^2*x2^2", 2)
    assert is_apolar([P("x1^3", 2), P("x2^3", 2)], f)
    assert not is_apolar([P("x0", 2)], P("x0^3", 2))
    # points of the root-of-unity decomposition: pivot x0 has the smallest exponent
    eps = Fraction(1, 2)
    gens = [Polynomial.monomial((0, 3, 0)) - Polynomial.monomial((3, 0, 0)).scale(eps ** 3),
            Polynomial.monomial((0, 0, 3)) - Polynomial.monomial((3, 0, 0)).scale(eps ** 3)]
    assert is_apolar(gens, f)
    with pytest.raises(DegreeError):
        is_apolar([P("x0^4", 2)], P("x0^3", 2))


def test_separating_cubic_colon(P):
    f = P(SEPARATING, 4)
    colon = colon_with_maximal(f, 2)
    assert _same_space(list(colon.basis), [variable(5, i) for i in (2, 3, 4)], 5, 1)
    assert colon.dimension == 3
    assert colon.steps == 3
    # one multiplication step is not enough for this cubic
    assert colon_with_maximal(f, 2, saturate=False).dimension == 0


def test_colon_of_pure_power(P):
    f = P("x0^3", 3)
    colon = colon_with_maximal(f, 2)
    assert _same_space(list(colon.basis), [variable(4, i) for i in (1, 2, 3)], 4, 1)
    assert _same_space(list(colon_with_maximal(f, 2, saturate=False).basis),
                       [variable(4, i) for i in (1, 2, 3)], 4, 1)


def test_colon_of_generic_binary_cubic(P):
    f = P("x0^3 + x1^3 + (x0 + 2*x1)^3", 1)
    assert hilbert_function(f) == [1, 2, 2, 1]
    assert colon_with_maximal(f, 2).dimension == 0


def test_colon_degree_range(P):
    with pytest.raises(DegreeError):
        colon_with_maximal(P("x0^3", 1), 0)
    with pytest.raises(DegreeError):
        colon_with_maximal(P("x0^3", 1), 4)


def test_inverse_system_dimension_examples():
    phi = Polynomial.monomial((1, 2, 2))
    assert inverse_system_dimension([PointDiffTerm((0, 0, 0), phi)]) == 18
    assert inverse_system_dimension([PointDiffTerm((1, 2), Polynomial.constant(2, 3)),
                                     PointDiffTerm((0, 5), Polynomial.constant(2, 1))]) == 2
    r2 = 2 ** 0.5
    a, b = 3.0, -1.0
    terms = [PointDiffTerm((0.0, 1.0), Polynomial(2, {(1, 0): a, (0, 0): b})),
             PointDiffTerm((r2, 1.0), Polynomial.constant(2, 2.0)),
             PointDiffTerm((-r2, -1.0), Polynomial.constant(2, 5.0))]
    assert inverse_system_dimension(terms) == 4
    with pytest.raises(PreconditionError):
        inverse_system_dimension([PointDiffTerm((1, 1), Polynomial.constant(2, 1)),
                                  PointDiffTerm((1, 1), Polynomial.constant(2, 2))])


def test_derivative_closure():
    phi = Polynomial.monomial((2, 1))
    closure = derivative_closure(phi)
    assert len(closure) == 6


# -- properties ----------------------------------------------------------------

seeds = st.integers(0, 10 ** 6)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_hilbert_symmetry_and_complement(seed):
    rng = random.Random(seed)
    f = random_form(rng, rng.randint(1, 4), rng.randint(1, 5))
    h = hilbert_function(f)
    assert h.is_symmetric()
    for k in range(f.degree + 1):
        comp = apolar_component(f, k)
        assert comp.dimension + h[k] == comp.ambient_dimension
        for p in comp.basis:
            for m in monomials(f.nvars, f.degree - k):
                assert apolar_product(p * Polynomial.monomial(m), f) == 0


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_is_apolar_monotone(seed):
    rng = random.Random(seed)
    f = random_form(rng, rng.randint(1, 3), rng.randint(2, 4))
    k = rng.randint(1, f.degree)
    basis = list(apolar_component(f, k).basis)
    assume(basis)
    gens = basis[:2]
    assert is_apolar(gens, f)
    assert is_apolar(gens + [Polynomial.zero(f.nvars)], f)
    other = apolar_component(f, rng.randint(1, f.degree)).basis
    assert is_apolar(gens + list(other), f)
    extra = random_form(rng, f.nvars, k)
    assert is_apolar(gens + [extra], f) == is_apolar([extra], f)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_single_step_colon_recheck(seed):
    rng = random.Random(seed)
    f = random_form(rng, rng.randint(2, 4), rng.randint(2, 4), density=0.3)
    k = rng.randint(1, f.degree)
    colon = colon_with_maximal(f, k, saturate=False)
    for g in colon.basis:
        for i in range(f.nvars):
            for h in monomials(f.nvars, f.degree - k):
                assert apolar_product(variable(f.nvars, i) * g * Polynomial.monomial(h), f) == 0


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_saturated_colon_recheck(seed):
    rng = random.Random(seed)
    f = random_form(rng, rng.randint(2, 4), 3, density=0.3)
    colon = colon_with_maximal(f, 2)
    gens = list(apolar_component(f, 2).basis)
    e = colon.steps
    deg = 1 + e
    ideal = [g * Polynomial.monomial(m) for g in gens for m in monomials(f.nvars, deg - 2)]
    rows = _span(ideal, f.nvars, deg)
    base = linalg.rank(rows) if rows else 0
    for g in colon.basis:
        for m in monomials(f.nvars, e):
            extra = _span([g * Polynomial.monomial(m)], f.nvars, deg)
            assert (linalg.rank(rows + extra) if rows else linalg.rank(extra)) == base
    # and the single-step colon is contained in it
    small = colon_with_maximal(f, 2, saturate=False)
    if small.basis:
        assert all(colon.contains(g) for g in small.basis)
