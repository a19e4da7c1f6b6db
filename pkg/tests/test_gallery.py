import random
from itertools import combinations_with_replacement, product
from math import comb

import pytest
from gmpy2 import mpq

from conftest import SHAPE_E, gallery_matrices
from symf.coef import CoefPoly
from symf.gallery import (
    PolySeq, TruncationError, cumulative_matrix, g_coeffs, gen_binom, grothendieck_dual,
    grothendieck_dual_matrix, grothendieck_dual_vertex, grothendieck_jt, grothendieck_stable,
    laurent_rows_matrix, multiparameter_matrix, pascal_matrix, poly_seq, toeplitz_matrix,
)
from symf.oracles import (
    EvalPoint, grothendieck_alternant_eval, grothendieck_beta_coefficients, random_point,
    transformed_symmetrized_eval,
)
from symf.symfun import SymFun, gen_h, partitions, partitions_upto
from symf.transform import (
    Verdict, check_inverse, delta_reexpansion_check, identity_matrix, transformed_family,
)
from symf.vertex import GammaPlus, GammaPlusAt, iterate_field, schur_jt

ONE = SymFun.one()
p = SymFun.p


def poly_from_roots(roots):
    """Coefficients (low to high) of prod (x - r)."""
    c = [mpq(1)]
    for r in roots:
        c = [mpq(0)] + c
        for k in range(len(c) - 1):
            c[k] -= r * c[k + 1]
    return c


def brute_h(k, a):
    if k < 0:
        return mpq(0)
    total = mpq(0)
    for combo in combinations_with_replacement(a, k):
        v = mpq(1)
        for x in combo:
            v *= x
        total += v
    return total


def rand_params(seed, n):
    rng = random.Random(seed)
    return [mpq(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]


def same_window(A, B, lo=-6, hi=6):
    return all(A.entry(i, j) == B.entry(i, j) for i in range(lo, hi + 1) for j in range(lo, hi + 1))


# -- helpers ------------------------------------------------------------------------------

def test_gen_binom():
    assert gen_binom(5, 2) == 10
    assert gen_binom(-1, 3) == -1
    assert gen_binom(-2, 2) == 3
    assert gen_binom(0, 0) == 1 and gen_binom(0, 1) == 0
    assert gen_binom(3, -1) == 0
    for a in range(0, 7):
        for m in range(0, 7):
            assert gen_binom(a, m) == comb(a, m)


# -- polynomial sequences ------------------------------------------------------------------------

def test_cumulative_polys():
    fs = poly_seq(cumulative_matrix(), 5)
    assert fs.coeffs(3) == {1: 1, 2: 1, 3: 1}
    for k in range(1, 6):
        assert fs.coeffs(k) == {s: 1 for s in range(1, k + 1)}
    assert fs.check_shape()


def test_pascal_polys():
    fs = poly_seq(pascal_matrix(), 6)
    x = mpq(7, 3)
    for k in range(1, 7):
        assert fs.evaluate(k, x) == x * (x - 1) ** (k - 1)
    assert fs.check_shape()


def test_multiparameter_polys():
    a = rand_params(1, 8)
    fs = poly_seq(multiparameter_matrix(a), 6)
    for k in range(1, 7):
        want = [mpq(0)] + poly_from_roots(a[:k - 1])
        got = [fs.coeffs(k).get(s, CoefPoly()) for s in range(len(want))]
        assert got == [CoefPoly.const(c) for c in want]
    assert fs.check_shape()


def test_toeplitz_not_of_block_shape():
    fs = poly_seq(gallery_matrices()["toeplitz"], 3)
    assert fs.coeffs(1) == {1: 1, 0: mpq(1, 2)}
    assert not fs.check_shape()


def test_infinite_row_rejected():
    A = gallery_matrices()["toeplitz"].inverse
    with pytest.raises(ValueError):
        poly_seq(A, 2)


def test_polyseq_evaluate_laurent():
    fs = PolySeq(({0: CoefPoly.const(1)}, {-1: CoefPoly.const(2), 1: CoefPoly.var("c")}))
    assert fs.evaluate(1, 2, {"c": 3}) == 1 + 6
    assert not fs.is_laurent_free()


def test_g_from_inverse_columns():
    A = cumulative_matrix()
    # g_k(x) = f_{-k}(1/x); f_{-k}(x) = (x - 1) / x^{k+1}
    for k in range(1, 5):
        assert g_coeffs(A, k, -8, 8) == {k: 1, k + 1: -1}
        assert g_coeffs(A, -k, -8, 8) == {-s: 1 for s in range(1, k + 1)}


# -- builders ------------------------------------------------------------------------------------

def test_toeplitz_trivial_symbol():
    assert same_window(toeplitz_matrix({0: 1}), identity_matrix())
    with pytest.raises(ValueError):
        toeplitz_matrix({0: 0})


def test_toeplitz_symbolic_row_expansion():
    A = toeplitz_matrix({0: 1, 1: "c"})
    c = SymFun.const(CoefPoly.var("c"))
    got = transformed_family(A, (2, 1), GammaPlusAt(0))
    assert got == p(3) * mpq(-1, 3) + p(1) * p(1) * p(1) * mpq(1, 3) + c * p(1) * p(1) + c * c * p(1)
    with pytest.raises(ValueError):
        toeplitz_matrix({0: "c", 1: 1}).inverse


@pytest.mark.parametrize("symbol", [{0: 1, 1: "c"}, {-1: 2, 0: 1, 2: "1/3"}])
def test_toeplitz_generating_identity(symbol):
    A = toeplitz_matrix(symbol)
    a = {k: SymFun.const(CoefPoly.coerce(v) if not isinstance(v, str) or not v[0].isalpha()
                         else CoefPoly.var(v)) for k, v in symbol.items()}
    for lam in [(1,), (2,), (2, 1), (1, 2), (3, 1), (2, 2, 1)]:
        rhs = SymFun.zero()
        for shifts in product(a, repeat=len(lam)):
            alpha = tuple(l - s for l, s in zip(lam, shifts))
            coef = ONE
            for s in shifts:
                coef = coef * a[s]
            rhs = rhs + coef * iterate_field(GammaPlus, alpha)
        assert transformed_family(A, lam) == rhs, lam


def test_multiparameter_zero_is_identity():
    assert same_window(multiparameter_matrix([0] * 10), identity_matrix(), -8, 8)


def test_multiparameter_ones_is_pascal():
    assert same_window(multiparameter_matrix([1] * 12), pascal_matrix(), -10, 10)


def test_multiparameter_needs_parameters():
    A = multiparameter_matrix([1, 2])
    with pytest.raises(ValueError):
        A.entry(3, 5)


def test_pascal_entries():
    P = pascal_matrix()
    assert P.entry(-3, -2) == -2 and P.entry(-3, -1) == 1 and P.entry(-3, -3) == 1
    assert P.entry(2, 4) == 3 and P.entry(1, 7) == 1
    assert P.entry(0, 0) == 1 and P.entry(-1, 1) == 0


def test_laurent_rows():
    A = laurent_rows_matrix({2: {-2: 1, -1: "c"}})
    assert A.entry(-2, -1) == CoefPoly.var("c")
    assert A.entry(5, 5) == 1
    with pytest.raises(ValueError):
        laurent_rows_matrix({0: {0: 1}})


# -- identities --------------------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(3))
def test_multiparameter_transitions(seed):
    a = rand_params(seed, 8)
    x = rand_params(100 + seed, 1)[0]

    def fact(n):
        v = mpq(1)
        for r in a[:n]:
            v *= x - r
        return v

    for n in range(0, 7):
        assert x ** n == sum(brute_h(n - k, a[:k + 1]) * fact(k) for k in range(n + 1))


@pytest.mark.parametrize("seed", range(3))
def test_multiparameter_reciprocal_identity(seed):
    # sum_{k>0} (x|a)_{k-1} / (y|a)_k = 1/(y - x), read coefficientwise in x^m y^{-r}
    a = rand_params(seed, 10)
    order = 8
    for m in range(order + 1):
        for r in range(1, order + 2):
            total = mpq(0)
            for k in range(1, r + 1):
                xs = poly_from_roots(a[:k - 1])
                if m < len(xs):
                    total += xs[m] * brute_h(r - k, a[:k])
            assert total == (1 if r == m + 1 else 0), (m, r)
    assert delta_reexpansion_check(multiparameter_matrix(a), range(-6, 7)) is Verdict.TRUE


def test_cumulative_reciprocal_identity():
    # sum_{k>0} (1 - x^k)(y - 1) / (y^{k+1} (1 - x)) for |x| < |y|, coefficient of x^m y^{-r};
    # the sum telescopes to sum_m x^m y^{-m-1} = 1/(y - x)
    for m in range(0, 8):
        for r in range(0, 10):
            total = 0
            for k in range(m + 1, 12):
                if r == k:
                    total += 1
                if r == k + 1:
                    total -= 1
            assert total == (1 if r == m + 1 else 0)
    assert delta_reexpansion_check(cumulative_matrix(), range(-6, 7)) is Verdict.TRUE


@pytest.mark.parametrize("name", SHAPE_E)
def test_closed_form_inverse_window(name):
    A = gallery_matrices()[name]
    assert check_inverse(A, A.inverse, range(-8, 9)) is Verdict.TRUE


def test_pascal_v_expansion():
    # coefficient of v^lam in S(v_1/(1+v_1), ..., v_l/(1+v_l)) is the transformed Schur function
    P = pascal_matrix()
    for lam in [(1,), (3,), (2, 1), (3, 1), (2, 2), (2, 1, 1)]:
        total = SymFun.zero()
        for alpha in product(*(range(1, l + 1) for l in lam)):
            c = 1
            for a_i, l_i in zip(alpha, lam):
                c *= gen_binom(-a_i, l_i - a_i)
            if c:
                total = total + schur_jt(alpha) * c
        assert total == transformed_family(P, lam, GammaPlusAt(0)), lam


def test_inhomogeneous_hl_oracle():
    P = pascal_matrix()
    polys = [{0: 1}] + [{s: (-1) ** (k - s) * comb(k - 1, s - 1) for s in range(1, k + 1)}
                        for k in range(1, 6)]
    for lam in [(1,), (2, 1), (3, 1), (2, 2, 1)]:
        F = transformed_family(P, lam)
        for seed in range(3):
            pt = random_point(len(lam) + 1, (lam, seed), ("t",))
            assert F.evaluate(pt.xs, pt.params) == transformed_symmetrized_eval(polys, lam, pt)


# -- Grothendieck ---------------------------------------------------------------------------------

def test_grothendieck_small():
    assert grothendieck_stable((), 3) == ONE
    G1 = grothendieck_stable((1,), 3)
    x1, x2, b = mpq(2, 3), mpq(-5, 4), mpq(3, 7)
    assert G1.evaluate([x1], {"beta": b}) == x1
    assert G1.evaluate([x1, x2], {"beta": b}) == x1 + x2 + b * x1 * x2
    assert grothendieck_alternant_eval((1,), EvalPoint((x1, x2), {"beta": b})) == x1 + x2 + b * x1 * x2


def test_grothendieck_order_validation():
    with pytest.raises(ValueError):
        grothendieck_stable((1,), -1)
    assert issubclass(TruncationError, ArithmeticError)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1)])
def test_grothendieck_vertex_vs_determinant(lam):
    assert grothendieck_stable(lam, 4) == grothendieck_jt(lam, 4)


@pytest.mark.parametrize("lam", [(1,), (2, 1), (2, 2), (3, 1, 1)])
def test_grothendieck_beta_coefficients(lam):
    n = 3
    order = n * (n - 1) // 2
    G = grothendieck_stable(lam, order + 1)
    for seed in range(2):
        xs = random_point(n, (lam, seed)).xs
        poly = G.evaluate_p(xs)
        coeffs = grothendieck_beta_coefficients(lam, xs)
        for k in range(order + 2):
            want = coeffs[k] if k < len(coeffs) else 0
            assert poly.degree("beta") <= order
            got = sum((c for m, c in poly.items() if dict(m).get("beta", 0) == k), mpq(0))
            assert got == want, (lam, k)


def test_dual_grothendieck_values():
    beta = SymFun.const(CoefPoly.var("beta"))
    assert grothendieck_dual(()) == ONE
    for k in range(1, 5):
        assert grothendieck_dual((k,)) == gen_h(k)
    assert grothendieck_dual((2, 1)) == schur_jt((2, 1)) - beta * gen_h(2)
    assert grothendieck_dual((2, 1)) == (p(1) ** 3 - p(3)) * mpq(1, 3) - beta * (p(1) * p(1) + p(2)) * mpq(1, 2)


@pytest.mark.parametrize("lam", [lam for d in range(1, 6) for lam in partitions(d) if len(lam) <= 3])
def test_dual_grothendieck_three_routes(lam):
    g = grothendieck_dual(lam)
    assert grothendieck_dual_vertex(lam) == g
    A, mu = grothendieck_dual_matrix(lam)
    assert transformed_family(A, mu, GammaPlusAt(0)) == g


@pytest.mark.parametrize("n", [1, 2, 3])
def test_change_of_variables_sign(n):
    # tilde s_lam(1 + beta y) / prod(1 + beta y_i) = sign * beta^|mu| G_mu(y; beta),
    # mu_{n-k+1} = lam_k - k; the sign comes out as (-1)^{n(n-1)/2}
    P = pascal_matrix()
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    for lam in [c for c in product(range(1, 5), repeat=n) if all(c[i] < c[i + 1] for i in range(n - 1))]:
        mu = tuple(lam[n - k] - (n - k + 1) for k in range(1, n + 1))
        s = transformed_family(P, lam, GammaPlusAt(0))
        for seed in range(2):
            pt = random_point(n, (lam, seed), ("beta",))
            b = pt.param("beta")
            xs = [1 + b * y for y in pt.xs]
            if any(x == 0 for x in xs):
                continue
            prod_x = mpq(1)
            for x in xs:
                prod_x *= x
            lhs = s.evaluate(xs) / prod_x
            rhs = b ** sum(mu) * grothendieck_alternant_eval(mu, pt)
            assert lhs == sign * rhs, (lam, mu)
