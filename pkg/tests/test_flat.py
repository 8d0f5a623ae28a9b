import math
import random
from fractions import Fraction

import pytest

from apolar_rank import linalg
from apolar_rank.errors import (ContainmentError, DegreeError, FlatExtensionError,
                                NotConnectedError, PreconditionError)
from apolar_rank.flat import (MonomialSet, TruncatedFunctional, extend, flat_test, greedy_basis,
                              hankel, truncate)
from apolar_rank.polynomial import (PointDiffTerm, Polynomial, apolar_product,
                                    monomials_upto)

from _gen import distinct_points, power_sum

SEPARATING = "x0^2*x2 + 6*x1^2*x3 - 3*(x0+x1)^2*x4"


def deg_upto(n, k):
    return MonomialSet(monomials_upto(n, k))


def test_truncate_pure_power(P):
    lam = truncate(P("x0^4", 2))
    assert lam((0, 0)) == 1
    assert all(lam(b) == 0 for b in monomials_upto(2, 4) if any(b))
    with pytest.raises(DegreeError):
        lam((3, 2))


@pytest.mark.parametrize("d", [3, 4, 5])
def test_truncate_matches_pairing(P, d):
    f = P(f"x0^{d - 1}*x1", 1)
    lam = truncate(f)
    assert lam((1,)) == Fraction(1, d)
    assert lam((1,)) == apolar_product(f, P(f"x1*x0^{d - 1}", 1))


def test_truncate_monomial_is_one_derivative_at_a_point():
    alpha = (3, 1, 2)
    d = sum(alpha)
    lam = truncate(Polynomial.monomial(alpha))
    # 1_(0,0) o c * d1 d2^2 with c = alpha_0! / d!
    term = PointDiffTerm((0, 0), Polynomial.monomial(alpha[1:]).scale(
        Fraction(math.factorial(alpha[0]), math.factorial(d))))
    for beta in monomials_upto(2, d):
        assert term.on_monomial(beta) == lam(beta)


def test_truncate_singular_change(P):
    with pytest.raises(PreconditionError):
        truncate(P("x0^2", 1), [[1, 2], [2, 4]])


def test_hankel_examples(P):
    assert hankel(truncate(P("x0^3", 1)), [(0,)], [(0,)]) == [[1]]
    lam = truncate(P("(x0+x1)^4 + (x0-x1)^4", 1))
    h = hankel(lam, [(0,), (1,)], [(0,), (1,)])
    assert linalg.rank(h) == 2
    # divisors of x1 x2^2 give an anti-diagonal block
    lam = truncate(Polynomial.monomial((6, 1, 2)))
    divisors = [(a, b) for a in range(2) for b in range(3)]
    h = hankel(lam, divisors, divisors)
    assert linalg.rank(h) == 6


def test_monomial_set_connectivity():
    assert MonomialSet(((0, 0), (1, 0), (1, 1))).is_connected_to_one()
    assert not MonomialSet(((0, 0), (1, 1))).is_connected_to_one()
    assert not MonomialSet(((1, 0),)).is_connected_to_one()
    assert len(MonomialSet(((0, 0),)).plus()) == 3


def test_flat_test_examples(P):
    rng = random.Random(4)
    pts = distinct_points(rng, 3, 3)
    lam = truncate(power_sum(pts, 6))
    B = greedy_basis(lam, 2)
    assert len(B) == 3
    Bp = B.plus()
    assert flat_test(lam, B, B, Bp, Bp)
    # a single point at the origin of the chart
    one = TruncatedFunctional(2, 2, {(0, 0): 1})
    assert flat_test(one, [(0, 0)], [(0, 0)], deg_upto(2, 1), deg_upto(2, 1))


def test_flat_test_errors():
    lam = truncate(Polynomial.monomial((4, 0)))
    with pytest.raises(NotConnectedError):
        flat_test(lam, [(1,)], [(0,)], [(0,), (1,)], [(0,), (1,)])
    with pytest.raises(ContainmentError):
        flat_test(lam, [(0,)], [(0,)], [(1,)], [(0,)])
    with pytest.raises(ContainmentError):
        flat_test(lam, [(0,), (1,)], [(0,), (1,)], [(0,), (1,)], [(0,), (1,)])


def test_separating_cubic_cannot_pose_a_rank_five_test(P):
    # the moments of degree <= 3 do not cover B+ . B+ for any five-element B
    lam = truncate(P(SEPARATING, 4))
    B = deg_upto(4, 1)
    assert len(B) == 5
    with pytest.raises(ContainmentError):
        flat_test(lam, B, B, deg_upto(4, 2), deg_upto(4, 1))


def test_extend_single_point():
    k = (Fraction(2), Fraction(3), Fraction(-1))
    lam = truncate(power_sum([k], 4))
    cert = extend(lam, [(0, 0)])
    assert cert.mult == [[[Fraction(3, 2)]], [[Fraction(-1, 2)]]]


def test_extend_three_points_eigenvalues():
    rng = random.Random(11)
    pts = distinct_points(rng, 3, 3)
    lam = truncate(power_sum(pts, 4))
    cert = extend(lam, greedy_basis(lam, 1))
    assert cert.commutator_residual == 0
    for i in range(2):
        t = __import__("sympy").Matrix(cert.mult[i])
        eig = sorted(t.eigenvals(multiple=True))
        assert eig == sorted(p[i + 1] / p[0] for p in pts)


def test_extend_monomial_nilpotent():
    # the dehomogenising variable must dominate so that B+ . B stays in range
    alpha = (6, 1, 2)
    lam = truncate(Polynomial.monomial(alpha))
    divisors = MonomialSet(((0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)))
    cert = extend(lam, divisors)
    for m in cert.mult:
        p = m
        for _ in range(5):
            p = linalg.matmul(p, m)
        assert linalg.is_zero_matrix(p)


def test_corrupted_functional_is_rejected():
    rng = random.Random(3)
    lam = truncate(power_sum(distinct_points(rng, 3, 3), 6))
    B = greedy_basis(lam, 2)
    bad = TruncatedFunctional(2, 6, {**lam.values, (1, 1): lam((1, 1)) + 1})
    with pytest.raises(FlatExtensionError, match="commute"):
        extend(bad, B)


def test_extend_rejects_singular_block(P):
    lam = truncate(P("x0^4", 1))
    with pytest.raises(FlatExtensionError):
        extend(lam, [(0,), (1,)])


def test_certificate_functional_reproduces_moments():
    rng = random.Random(5)
    lam = truncate(power_sum(distinct_points(rng, 2, 2), 5))
    cert = extend(lam, greedy_basis(lam, 2))
    for beta in monomials_upto(1, 5):
        assert cert.functional(beta) == lam(beta)
    js = cert.to_json()
    assert js["rank"] == 2 and js["commutator_residual"] == "0"
