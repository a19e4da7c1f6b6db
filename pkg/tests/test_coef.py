from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from symf.coef import CoefPoly, UnassignedParameterError, rat, rat_str


def test_rat_parsing():
    assert rat("-3/6") == mpq(-1, 2)
    assert rat(" 4 ") == 4
    assert rat(Fraction(2, 3)) == mpq(2, 3)
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(ValueError):
        rat("1.5")
    with pytest.raises(ZeroDivisionError):
        rat("1/0")


def test_rat_str_canonical():
    assert rat_str(mpq(-6, 4)) == "-3/2"
    assert rat_str(mpq(5)) == "5"


def test_no_zero_coefficients():
    t = CoefPoly.var("t")
    p = (t + 1) - t
    assert p == 1 and p.is_constant()
    assert (t - t).is_zero()
    assert len(t * 0) == 0


def test_evaluate_and_unassigned():
    t, a = CoefPoly.var("t"), CoefPoly.var("a1")
    p = t * t * a - 3
    assert p.evaluate({"t": 2, "a1": "1/2"}) == -1
    with pytest.raises(UnassignedParameterError) as exc:
        p.evaluate({"t": 1})
    assert exc.value.name == "a1"


def test_subs_and_truncate():
    b = CoefPoly.var("beta")
    p = (b + 1) ** 3
    assert p.truncate("beta", 1) == 3 * b + 1
    assert p.subs({"beta": -1}).is_zero()


small = st.integers(-5, 5)
polys = st.lists(st.tuples(small, small, small), max_size=4).map(
    lambda terms: sum((CoefPoly.var("t", e1 % 3) * CoefPoly.var("b", e2 % 2) * c for e1, e2, c in terms),
                      CoefPoly()))


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p - p == CoefPoly()


@given(polys, polys, st.integers(-4, 4), st.integers(-4, 4))
def test_evaluation_is_a_morphism(p, q, tv, bv):
    env = {"t": tv, "b": bv}
    assert (p * q).evaluate(env) == p.evaluate(env) * q.evaluate(env)
