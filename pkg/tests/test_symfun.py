import itertools
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from symf.coef import CoefPoly, UnassignedParameterError
from symf.symfun import (
    SymFun, add, adjoint, apply_diff, evaluate, gen_e, gen_h, gen_p, gen_q, hall_inner, mul,
    partitions, partitions_upto, scale, z_lambda,
)


def p(*parts):
    return SymFun.p(*parts)


def brute_h(k, xs):
    """Complete homogeneous polynomial by summing all monomials."""
    total = mpq(0)
    for combo in itertools.combinations_with_replacement(xs, k):
        term = mpq(1)
        for x in combo:
            term *= x
        total += term
    return total


def brute_e(k, xs):
    total = mpq(0)
    for combo in itertools.combinations(xs, k):
        term = mpq(1)
        for x in combo:
            term *= x
        total += term
    return total


# -- ring operations --------------------------------------------------------------

def test_add_mul_scale():
    assert add(p(1), p(1)) == p(1) * 2
    assert mul(p(2), p(3)).coefficient((3, 2)) == 1
    assert mul(p(2), SymFun.zero()).is_zero()
    assert scale(CoefPoly.var("t"), p(1)).coefficient((1,)) == CoefPoly.var("t")


# -- generators -----------------------------------------------------------------------

def test_generator_values():
    assert gen_h(0) == SymFun.one()
    assert gen_h(-3).is_zero()
    assert gen_h(2) == (p(1, 1) + p(2)) * mpq(1, 2)
    assert gen_e(0) == SymFun.one()
    assert gen_e(1) == p(1)
    assert gen_e(2) == (p(1, 1) - p(2)) * mpq(1, 2)
    assert gen_q(0) == SymFun.one()
    assert gen_q(-2).is_zero()
    assert gen_q(1) == p(1) * 2


@pytest.mark.parametrize("k", range(0, 7))
def test_h_e_against_monomial_expansion(k):
    xs = [mpq(1, 2), mpq(-3), mpq(2, 7)]
    assert gen_h(k).evaluate(xs) == brute_h(k, xs)
    assert gen_e(k).evaluate(xs) == brute_e(k, xs)


@pytest.mark.parametrize("n", range(1, 11))
def test_newton_identity(n):
    rhs = SymFun.zero()
    for i in range(1, n + 1):
        rhs = rhs + gen_p(i) * gen_h(n - i)
    assert gen_h(n) * n == rhs


@pytest.mark.parametrize("k", range(1, 11))
def test_h_e_inverse_series(k):
    acc = SymFun.zero()
    for i in range(k + 1):
        term = gen_e(i) * gen_h(k - i)
        acc = acc + (term if i % 2 == 0 else -term)
    assert acc.is_zero()


@pytest.mark.parametrize("k", range(0, 11))
def test_q_lives_in_odd_subring(k):
    assert gen_q(k).is_odd()


def test_q_from_odd_exponential():
    # Q(u) = exp(2 sum_{n odd} p_n u^n / n), compared up to u^5 at a point
    xs = [mpq(1, 3), mpq(-2, 5)]
    for k in range(6):
        direct = mpq(0)
        for i in range(k + 1):
            direct += brute_e(i, xs) * brute_h(k - i, xs)
        assert gen_q(k).evaluate(xs) == direct


# -- adjoints -------------------------------------------------------------------------------

def test_adjoint_examples():
    assert apply_diff(adjoint(p(1)), p(1)) == SymFun.one()
    assert apply_diff(adjoint(gen_h(2)), gen_h(2)) == SymFun.one()
    assert apply_diff(adjoint(gen_e(2)), gen_h(2)).is_zero()
    assert apply_diff(adjoint(gen_e(1)), SymFun.one()).is_zero()
    assert apply_diff(adjoint(gen_h(3)), p(2)).is_zero()
    assert apply_diff(adjoint(p(2)), p(2, 2)) == p(2) * 4


@pytest.mark.parametrize("mu", [mu for mu in partitions_upto(6)])
def test_adjoints_vanish_above_degree(mu):
    f = p(*mu)
    for l in range(sum(mu) + 1, sum(mu) + 3):
        assert apply_diff(adjoint(gen_e(l)), f).is_zero()
        assert apply_diff(adjoint(gen_h(l)), f).is_zero()


@pytest.mark.parametrize("a,b", [(a, b) for a in range(-4, 5) for b in range(-4, 5)])
def test_h_perp_e_commutation(a, b):
    # H^perp(u) E(v) = (1 + v/u) E(v) H^perp(u), coefficient of u^{-a} v^b
    for mu in partitions_upto(5):
        f = p(*mu)
        lhs = apply_diff(adjoint(gen_h(a)), gen_e(b) * f) if a >= 0 else SymFun.zero()
        rhs = SymFun.zero()
        if a >= 0:
            rhs = rhs + gen_e(b) * apply_diff(adjoint(gen_h(a)), f)
        if a >= 1:
            rhs = rhs + gen_e(b - 1) * apply_diff(adjoint(gen_h(a - 1)), f)
        assert lhs == rhs


def test_adjoint_matches_inner_product():
    # <h_k^perp f, g> = <f, h_k g>
    f, g = gen_h(3) + p(2, 1), gen_e(1)
    assert hall_inner(apply_diff(adjoint(gen_h(2)), f), g) == hall_inner(f, gen_h(2) * g)


# -- evaluation and inner product ---------------------------------------------------------------

def test_evaluate_examples():
    assert evaluate(gen_h(2), [1, 1], {}) == 3
    assert evaluate(p(3), [2], {}) == 8
    assert evaluate(gen_q(1), ["1/2", "1/3"], {}) == mpq(5, 3)


def test_evaluate_needs_parameters():
    f = p(1) * CoefPoly.var("t")
    with pytest.raises(UnassignedParameterError, match="'t'"):
        f.evaluate([1])
    assert f.evaluate([1, 2], {"t": "1/3"}) == 1


def test_hall_inner_examples():
    assert hall_inner(p(1), p(1)) == 1
    assert hall_inner(p(2), p(2)) == 2
    assert hall_inner(gen_h(2), gen_e(2)) == 0
    assert hall_inner(gen_h(2), gen_h(2)) == 1
    assert z_lambda((2, 1, 1)) == 4


def random_symfun(rng, degree, nterms=4):
    pool = [mu for mu in partitions_upto(degree)]
    f = SymFun.zero()
    for mu in rng.sample(pool, min(nterms, len(pool))):
        f = f + p(*mu) * rng.randint(-9, 9)
    return f


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_evaluate_is_ring_morphism(seed):
    rng = random.Random(seed)
    f, g = random_symfun(rng, 5), random_symfun(rng, 5)
    xs = [mpq(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(3)]
    assert (f * g).evaluate(xs) == f.evaluate(xs) * g.evaluate(xs)
    assert (f + g).evaluate(xs) == f.evaluate(xs) + g.evaluate(xs)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_schur_orthonormality_sample(seed):
    # h_k has norm 1 and <h_k, p_k> = 1
    k = seed % 6 + 1
    assert hall_inner(gen_h(k), gen_h(k)) == 1
    assert hall_inner(gen_h(k), gen_p(k)) == 1


def test_partitions_enumeration():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert [len(partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_canonical_storage_is_order_independent():
    f = SymFun.from_terms([((1, 2), 3), ((2, 1), -3)])
    assert f.is_zero()
